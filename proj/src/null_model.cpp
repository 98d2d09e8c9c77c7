#include "tempo/null_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "tempo/errors.hpp"
#include "tempo/parallel.hpp"
#include "tempo/random.hpp"

namespace tempo {

namespace {

inline std::uint64_t edge_key(NodeId u, NodeId v) {
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

} // namespace

Snapshot degree_preserving_rewire(const Snapshot& snapshot, std::uint64_t seed, int swap_factor) {
    if (snapshot.edge_count() < 2)
        throw CannotRewireError("degree_preserving_rewire requires at least 2 edges");
    if (swap_factor <= 0) throw InvalidConfigError("swap_factor must be positive");

    std::vector<std::pair<NodeId, NodeId>> edges = snapshot.edges;
    std::unordered_set<std::uint64_t> present;
    present.reserve(edges.size() * 2);
    for (const auto& [u, v] : edges) present.insert(edge_key(u, v));

    std::mt19937_64 rng(seed);
    const std::size_t m = edges.size();
    const std::size_t attempts = m * static_cast<std::size_t>(swap_factor);
    for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
        const std::size_t i = static_cast<std::size_t>(uniform_index(rng, m));
        const std::size_t j = static_cast<std::size_t>(uniform_index(rng, m));
        const bool crossed = uniform_index(rng, 2) != 0;
        if (i == j) continue;
        auto [a, b] = edges[i];
        auto [c, d] = edges[j];
        // two ways to repair the degree sequence after cutting both edges
        const NodeId p1 = a;
        const NodeId q1 = crossed ? d : c;
        const NodeId p2 = b;
        const NodeId q2 = crossed ? c : d;
        if (p1 == q1 || p2 == q2) continue; // self-loop
        auto e1 = std::minmax(p1, q1);
        auto e2 = std::minmax(p2, q2);
        if (e1 == e2) continue; // both replacements are the same pair
        const std::uint64_t k1 = edge_key(e1.first, e1.second);
        const std::uint64_t k2 = edge_key(e2.first, e2.second);
        const std::uint64_t old1 = edge_key(a, b);
        const std::uint64_t old2 = edge_key(c, d);
        if (k1 == old1 && k2 == old2) continue; // no-op
        present.erase(old1);
        present.erase(old2);
        if (present.count(k1) || present.count(k2)) {
            present.insert(old1);
            present.insert(old2);
            continue; // would duplicate an existing edge
        }
        present.insert(k1);
        present.insert(k2);
        edges[i] = {e1.first, e1.second};
        edges[j] = {e2.first, e2.second};
    }

    Snapshot out;
    out.window_start = snapshot.window_start;
    out.window_end = snapshot.window_end;
    out.nodes = snapshot.nodes;
    std::sort(edges.begin(), edges.end());
    out.edges = std::move(edges);
    return out;
}

ZScoreReport modularity_zscore(const Snapshot& snapshot, int sample_count, double resolution,
                               std::uint64_t seed, const Detector& detector, int swap_factor,
                               int workers) {
    if (sample_count < 2) throw InvalidConfigError("modularity_zscore requires sample_count >= 2");
    if (snapshot.edge_count() < 2)
        throw CannotRewireError("modularity_zscore requires at least 2 edges");

    const Detector detect = detector
        ? detector
        : Detector([](const Snapshot& s, double res, std::uint64_t sd) { return louvain(s, res, sd); });

    ZScoreReport report;
    report.sample_count = sample_count;
    report.q_observed = modularity(snapshot, detect(snapshot, resolution, seed), resolution);

    report.sample_modularities.assign(static_cast<std::size_t>(sample_count), 0.0);
    parallel_for(static_cast<std::size_t>(sample_count), workers, [&](std::size_t k) {
        const std::uint64_t sample_seed = seed ^ (static_cast<std::uint64_t>(k) + 1);
        Snapshot rewired = degree_preserving_rewire(snapshot, sample_seed, swap_factor);
        Partition partition = detect(rewired, resolution, sample_seed);
        report.sample_modularities[k] = modularity(rewired, partition, resolution);
    });

    double sum = 0.0;
    for (double q : report.sample_modularities) sum += q;
    report.null_mean = sum / static_cast<double>(sample_count);
    double ss = 0.0;
    for (double q : report.sample_modularities) {
        const double d = q - report.null_mean;
        ss += d * d;
    }
    report.null_std = std::sqrt(ss / static_cast<double>(sample_count - 1));

    if (report.null_std > 0.0) {
        report.z = (report.q_observed - report.null_mean) / report.null_std;
        report.z_defined = true;
    } else {
        report.z = std::numeric_limits<double>::quiet_NaN();
        report.z_defined = false;
    }
    return report;
}

} // namespace tempo
