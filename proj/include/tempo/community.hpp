#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tempo/temporal_graph.hpp"
#include "tempo/types.hpp"

namespace tempo {

// Node-to-community assignment for one snapshot. Entries are kept sorted by
// node id; labels may be arbitrary integers until canonicalized.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<std::pair<NodeId, Label>> entries, Time window_start = 0,
                       Time window_end = 0);

    const std::vector<std::pair<NodeId, Label>>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    bool contains(NodeId node) const;
    Label label_of(NodeId node) const; // throws IncompletePartitionError when absent

    std::vector<NodeId> nodes() const;
    std::size_t community_count() const;

    // Communities renumbered 0..C-1 by first appearance over ascending node
    // ids, so equal partitions compare equal entry-for-entry.
    Partition canonicalized() const;

    Time window_start() const { return window_start_; }
    Time window_end() const { return window_end_; }

private:
    std::vector<std::pair<NodeId, Label>> entries_;
    Time window_start_ = 0;
    Time window_end_ = 0;
};

// Q = (1/2m) * sum_ij (A_ij - resolution * k_i k_j / 2m) * delta(c_i, c_j)
// on the simple undirected snapshot. Throws UndefinedModularityError for
// edgeless snapshots and IncompletePartitionError when a node is unlabelled.
double modularity(const Snapshot& snapshot, const Partition& partition, double resolution = 1.0);

// Greedy multilevel modularity maximization. Node visit order is a seeded
// shuffle per level; equal-gain moves go to the smallest community id, so a
// fixed (snapshot, resolution, seed) always yields the same partition. The
// result is canonicalized and never scores below the all-singletons
// partition. Isolated nodes end up in singleton communities.
Partition louvain(const Snapshot& snapshot, double resolution = 1.0, std::uint64_t seed = 0);

// Size of the largest connected component over the node count, in (0, 1].
double lcc_proportion(const Snapshot& snapshot);

// |edges| / |nodes| on the deduplicated simple graph.
double edge_node_ratio(const Snapshot& snapshot);

struct SnapshotStats {
    Time window_start = 0;
    Time window_end = 0;
    std::size_t node_count = 0;
    std::size_t edge_count = 0;
    double edge_node_ratio = 0.0;
    double lcc_proportion = 0.0;
    std::optional<double> modularity; // empty for edgeless snapshots
    std::size_t community_count = 0;
};

SnapshotStats snapshot_stats(const Snapshot& snapshot, const Partition& partition,
                             double resolution = 1.0);

} // namespace tempo
