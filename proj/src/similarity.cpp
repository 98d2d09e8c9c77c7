#include "tempo/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "tempo/errors.hpp"
#include "tempo/parallel.hpp"

namespace tempo {

std::string_view measure_name(Measure measure) {
    switch (measure) {
    case Measure::nmi: return "nmi";
    case Measure::unmi: return "unmi";
    case Measure::inmi: return "inmi";
    }
    return "?";
}

Measure parse_measure(std::string_view name) {
    if (name == "nmi") return Measure::nmi;
    if (name == "unmi") return Measure::unmi;
    if (name == "inmi") return Measure::inmi;
    throw InvalidConfigError("unknown measure: " + std::string(name));
}

ContingencyTable ContingencyTable::over_scope(const Partition& p1, const Partition& p2,
                                              std::span<const NodeId> scope) {
    ContingencyTable table;
    table.total = static_cast<std::int64_t>(scope.size());

    std::vector<Label> l1(scope.size());
    std::vector<Label> l2(scope.size());
    for (std::size_t i = 0; i < scope.size(); ++i) {
        l1[i] = p1.label_of(scope[i]);
        l2[i] = p2.label_of(scope[i]);
    }

    table.row_labels = l1;
    std::sort(table.row_labels.begin(), table.row_labels.end());
    table.row_labels.erase(std::unique(table.row_labels.begin(), table.row_labels.end()),
                           table.row_labels.end());
    table.col_labels = l2;
    std::sort(table.col_labels.begin(), table.col_labels.end());
    table.col_labels.erase(std::unique(table.col_labels.begin(), table.col_labels.end()),
                           table.col_labels.end());

    const std::size_t rows = table.row_labels.size();
    const std::size_t cols = table.col_labels.size();
    table.counts.assign(rows * cols, 0);
    table.row_marginals.assign(rows, 0);
    table.col_marginals.assign(cols, 0);

    auto row_index = [&](Label l) {
        return static_cast<std::size_t>(
            std::lower_bound(table.row_labels.begin(), table.row_labels.end(), l) -
            table.row_labels.begin());
    };
    auto col_index = [&](Label l) {
        return static_cast<std::size_t>(
            std::lower_bound(table.col_labels.begin(), table.col_labels.end(), l) -
            table.col_labels.begin());
    };

    for (std::size_t i = 0; i < scope.size(); ++i) {
        const std::size_t r = row_index(l1[i]);
        const std::size_t c = col_index(l2[i]);
        table.counts[r * cols + c] += 1;
        table.row_marginals[r] += 1;
        table.col_marginals[c] += 1;
    }
    return table;
}

double nmi_from_table(const ContingencyTable& table) {
    if (table.total <= 0) throw EmptyInputError("contingency table over an empty scope");

    const std::size_t rows = table.row_labels.size();
    const std::size_t cols = table.col_labels.size();

    // Bijection structure (every row and column has one nonzero cell) means
    // the partitions are identical up to relabelling: exactly 1.
    bool bijection = true;
    for (std::size_t r = 0; r < rows && bijection; ++r) {
        int nonzero = 0;
        for (std::size_t c = 0; c < cols; ++c)
            if (table.at(r, c) > 0) ++nonzero;
        if (nonzero != 1) bijection = false;
    }
    for (std::size_t c = 0; c < cols && bijection; ++c) {
        int nonzero = 0;
        for (std::size_t r = 0; r < rows; ++r)
            if (table.at(r, c) > 0) ++nonzero;
        if (nonzero != 1) bijection = false;
    }
    if (bijection) return 1.0;

    const double n = static_cast<double>(table.total);
    double h1 = 0.0;
    for (std::int64_t c : table.row_marginals) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / n;
        h1 -= p * std::log(p);
    }
    double h2 = 0.0;
    for (std::int64_t c : table.col_marginals) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / n;
        h2 -= p * std::log(p);
    }
    if (h1 + h2 == 0.0) return 1.0; // single trivial community on both sides

    double mi = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const std::int64_t joint = table.at(r, c);
            if (joint == 0) continue;
            const double ratio = (n * static_cast<double>(joint)) /
                                 (static_cast<double>(table.row_marginals[r]) *
                                  static_cast<double>(table.col_marginals[c]));
            mi += static_cast<double>(joint) / n * std::log(ratio);
        }
    }

    const double value = 2.0 * mi / (h1 + h2);
    return std::clamp(value, 0.0, 1.0);
}

double nmi(const Partition& p1, const Partition& p2) {
    if (p1.empty() || p2.empty()) throw EmptyInputError("nmi over an empty node set");
    const std::vector<NodeId> n1 = p1.nodes();
    const std::vector<NodeId> n2 = p2.nodes();
    if (n1 != n2)
        throw NodeSetMismatchError("nmi requires identical node sets; use unmi or inmi for "
                                   "partitions over different node sets");
    return nmi_from_table(ContingencyTable::over_scope(p1, p2, n1));
}

AugmentedPair augment_union(const Partition& p1, const Partition& p2) {
    if (p1.empty() && p2.empty()) throw EmptyInputError("augment_union of two empty partitions");

    AugmentedPair pair;
    const std::vector<NodeId> n1 = p1.nodes();
    const std::vector<NodeId> n2 = p2.nodes();
    pair.union_nodes.reserve(n1.size() + n2.size());
    std::set_union(n1.begin(), n1.end(), n2.begin(), n2.end(),
                   std::back_inserter(pair.union_nodes));

    Label max1 = std::numeric_limits<Label>::min();
    for (const auto& [node, label] : p1.entries()) max1 = std::max(max1, label);
    Label max2 = std::numeric_limits<Label>::min();
    for (const auto& [node, label] : p2.entries()) max2 = std::max(max2, label);
    pair.virtual_label_1 = p1.empty() ? 0 : max1 + 1;
    pair.virtual_label_2 = p2.empty() ? 0 : max2 + 1;

    std::vector<std::pair<NodeId, Label>> e1;
    std::vector<std::pair<NodeId, Label>> e2;
    e1.reserve(pair.union_nodes.size());
    e2.reserve(pair.union_nodes.size());
    for (NodeId node : pair.union_nodes) {
        e1.emplace_back(node, p1.contains(node) ? p1.label_of(node) : pair.virtual_label_1);
        e2.emplace_back(node, p2.contains(node) ? p2.label_of(node) : pair.virtual_label_2);
    }
    pair.labels1 = Partition(std::move(e1), p1.window_start(), p1.window_end());
    pair.labels2 = Partition(std::move(e2), p2.window_start(), p2.window_end());
    return pair;
}

double unmi(const Partition& p1, const Partition& p2) {
    const AugmentedPair pair = augment_union(p1, p2);
    return nmi(pair.labels1, pair.labels2);
}

double inmi(const Partition& p1, const Partition& p2) {
    const std::vector<NodeId> n1 = p1.nodes();
    const std::vector<NodeId> n2 = p2.nodes();
    std::vector<NodeId> shared;
    std::set_intersection(n1.begin(), n1.end(), n2.begin(), n2.end(), std::back_inserter(shared));
    if (shared.empty())
        throw EmptyIntersectionError("inmi requires at least one shared node");
    return nmi_from_table(ContingencyTable::over_scope(p1, p2, shared));
}

SimilarityMatrix pairwise_matrix(std::span<const Partition> partitions, Measure measure,
                                 int workers) {
    if (partitions.size() < 2)
        throw InvalidConfigError("pairwise_matrix requires at least 2 partitions");
    if (measure == Measure::nmi) {
        const std::vector<NodeId> first = partitions[0].nodes();
        for (std::size_t i = 1; i < partitions.size(); ++i) {
            if (partitions[i].nodes() != first)
                throw NodeSetMismatchError("pairwise nmi requires identical node sets across all "
                                           "partitions; use unmi or inmi");
        }
    }

    const std::size_t n = partitions.size();
    SimilarityMatrix matrix;
    matrix.measure = measure;
    matrix.window_starts.reserve(n);
    for (const Partition& p : partitions) matrix.window_starts.push_back(p.window_start());
    matrix.values.assign(n, std::vector<double>(n, 0.0));

    // upper triangle (with diagonal) as a flat index space
    std::vector<std::pair<std::uint32_t, std::uint32_t>> cells;
    cells.reserve(n * (n + 1) / 2);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i; j < n; ++j) cells.emplace_back(i, j);

    parallel_for(cells.size(), workers, [&](std::size_t idx) {
        const auto [i, j] = cells[idx];
        double value;
        try {
            switch (measure) {
            case Measure::nmi: value = nmi(partitions[i], partitions[j]); break;
            case Measure::unmi: value = unmi(partitions[i], partitions[j]); break;
            default: value = inmi(partitions[i], partitions[j]); break;
            }
        } catch (const EmptyIntersectionError&) {
            value = std::numeric_limits<double>::quiet_NaN();
        } catch (const EmptyInputError&) {
            value = std::numeric_limits<double>::quiet_NaN();
        }
        matrix.values[i][j] = value;
        matrix.values[j][i] = value;
    });
    return matrix;
}

} // namespace tempo
