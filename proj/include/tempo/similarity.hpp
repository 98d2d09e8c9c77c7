#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "tempo/community.hpp"
#include "tempo/types.hpp"

namespace tempo {

enum class Measure { nmi, unmi, inmi };

std::string_view measure_name(Measure measure);
Measure parse_measure(std::string_view name);

// Joint label-count matrix for two partitions over an explicit node scope,
// with row/column marginals. Rows index the distinct labels of the first
// partition (sorted), columns those of the second.
struct ContingencyTable {
    std::vector<Label> row_labels;
    std::vector<Label> col_labels;
    std::vector<std::int64_t> counts; // row-major, row_labels.size() x col_labels.size()
    std::vector<std::int64_t> row_marginals;
    std::vector<std::int64_t> col_marginals;
    std::int64_t total = 0;

    std::int64_t at(std::size_t r, std::size_t c) const {
        return counts[r * col_labels.size() + c];
    }

    // Every node in scope must be labelled by both partitions.
    static ContingencyTable over_scope(const Partition& p1, const Partition& p2,
                                       std::span<const NodeId> scope);
};

// 2*I(L1;L2) / (H(L1)+H(L2)) from a contingency table, natural logarithms.
// Exactly 1 when the partitions match up to a label bijection (each row and
// column of the table has a single nonzero cell), which covers the
// degenerate case where both entropies vanish.
double nmi_from_table(const ContingencyTable& table);

// Classic NMI; requires identical non-empty node sets. Throws
// NodeSetMismatchError (pointing at unmi/inmi) when the sets differ.
double nmi(const Partition& p1, const Partition& p2);

// Both labellings extended over the union of the node sets: nodes missing
// from one partition land in that side's reserved virtual community.
struct AugmentedPair {
    std::vector<NodeId> union_nodes; // sorted
    Partition labels1;               // over union_nodes; V2-V1 carries virtual_label_1
    Partition labels2;               // over union_nodes; V1-V2 carries virtual_label_2
    Label virtual_label_1 = 0;       // distinct from every real label of p1
    Label virtual_label_2 = 0;       // distinct from every real label of p2
};

AugmentedPair augment_union(const Partition& p1, const Partition& p2);

// NMI of the union-augmented labellings.
double unmi(const Partition& p1, const Partition& p2);

// NMI of both partitions restricted to the shared nodes. Throws
// EmptyIntersectionError when no node is shared.
double inmi(const Partition& p1, const Partition& p2);

// Pairwise similarity across a snapshot sequence. Entries are independent;
// undefined pairs (empty intersection for inmi) become NaN rather than
// errors. Symmetric with the diagonal computed like any other pair.
struct SimilarityMatrix {
    Measure measure = Measure::nmi;
    std::vector<Time> window_starts;         // axis labels
    std::vector<std::vector<double>> values; // square, NaN = undefined

    std::size_t size() const { return values.size(); }
};

SimilarityMatrix pairwise_matrix(std::span<const Partition> partitions, Measure measure,
                                 int workers = 1);

} // namespace tempo
