#include "tempo/community.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "tempo/errors.hpp"
#include "tempo/random.hpp"

namespace tempo {

Partition::Partition(std::vector<std::pair<NodeId, Label>> entries, Time window_start,
                     Time window_end)
    : entries_(std::move(entries)), window_start_(window_start), window_end_(window_end) {
    std::sort(entries_.begin(), entries_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < entries_.size(); ++i) {
        if (entries_[i].first == entries_[i - 1].first)
            throw std::invalid_argument("partition: duplicate node id");
    }
}

bool Partition::contains(NodeId node) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), node,
                               [](const auto& e, NodeId n) { return e.first < n; });
    return it != entries_.end() && it->first == node;
}

Label Partition::label_of(NodeId node) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), node,
                               [](const auto& e, NodeId n) { return e.first < n; });
    if (it == entries_.end() || it->first != node)
        throw IncompletePartitionError("node " + std::to_string(node) + " has no community label");
    return it->second;
}

std::vector<NodeId> Partition::nodes() const {
    std::vector<NodeId> out;
    out.reserve(entries_.size());
    for (const auto& [node, label] : entries_) out.push_back(node);
    return out;
}

std::size_t Partition::community_count() const {
    std::unordered_set<Label> labels;
    labels.reserve(entries_.size());
    for (const auto& [node, label] : entries_) labels.insert(label);
    return labels.size();
}

Partition Partition::canonicalized() const {
    std::unordered_map<Label, Label> remap;
    remap.reserve(entries_.size());
    std::vector<std::pair<NodeId, Label>> out;
    out.reserve(entries_.size());
    Label next = 0;
    for (const auto& [node, label] : entries_) {
        auto [it, inserted] = remap.emplace(label, next);
        if (inserted) ++next;
        out.emplace_back(node, it->second);
    }
    return Partition(std::move(out), window_start_, window_end_);
}

namespace {

// Dense index of a node within a snapshot's sorted node list.
int node_index(const Snapshot& s, NodeId node) {
    auto it = std::lower_bound(s.nodes.begin(), s.nodes.end(), node);
    return static_cast<int>(it - s.nodes.begin());
}

// Weighted graph for the aggregation levels. A self-loop of weight w
// contributes 2w to its node's degree.
struct LevelGraph {
    std::vector<std::vector<std::pair<int, double>>> adj; // no self entries
    std::vector<double> loops;
    std::vector<double> degree;
    double two_m = 0.0;

    int size() const { return static_cast<int>(adj.size()); }
};

LevelGraph level_graph_from(const Snapshot& s) {
    LevelGraph g;
    const int n = static_cast<int>(s.node_count());
    g.adj.resize(n);
    g.loops.assign(n, 0.0);
    g.degree.assign(n, 0.0);
    for (const auto& [u, v] : s.edges) {
        int ui = node_index(s, u);
        int vi = node_index(s, v);
        g.adj[ui].emplace_back(vi, 1.0);
        g.adj[vi].emplace_back(ui, 1.0);
        g.degree[ui] += 1.0;
        g.degree[vi] += 1.0;
    }
    g.two_m = 2.0 * static_cast<double>(s.edge_count());
    return g;
}

// One pass structure of local moving; returns the community of each node.
// Moves happen only on strictly positive improvement; among equal best
// gains the smallest community id wins.
std::vector<int> local_moving(const LevelGraph& g, double resolution, std::mt19937_64& rng) {
    const int n = g.size();
    std::vector<int> comm(n);
    std::iota(comm.begin(), comm.end(), 0);
    std::vector<double> comm_tot(g.degree);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    shuffle_values(order, rng);

    // scratch: weight from the current node to each touched community
    std::vector<double> weight_to(n, 0.0);
    std::vector<int> touched;

    bool moved = true;
    while (moved) {
        moved = false;
        for (int idx = 0; idx < n; ++idx) {
            const int i = order[idx];
            const int own = comm[i];

            touched.clear();
            for (const auto& [j, w] : g.adj[i]) {
                const int c = comm[j];
                if (weight_to[c] == 0.0) touched.push_back(c);
                weight_to[c] += w;
            }

            comm_tot[own] -= g.degree[i];
            const double scale = resolution * g.degree[i] / g.two_m;
            double best_gain = weight_to[own] - scale * comm_tot[own];
            int best_comm = own;
            for (int c : touched) {
                if (c == own) continue;
                const double gain = weight_to[c] - scale * comm_tot[c];
                const bool better = gain > best_gain;
                const bool tie_between_moves = gain == best_gain && best_comm != own && c < best_comm;
                if (better || tie_between_moves) {
                    best_gain = gain;
                    best_comm = c;
                }
            }
            comm_tot[best_comm] += g.degree[i];
            if (best_comm != own) {
                comm[i] = best_comm;
                moved = true;
            }

            for (int c : touched) weight_to[c] = 0.0;
        }
    }
    return comm;
}

// Collapses communities into single nodes, preserving total weight.
LevelGraph aggregate(const LevelGraph& g, const std::vector<int>& comm,
                     std::vector<int>& dense_of_comm, int& community_count) {
    const int n = g.size();
    dense_of_comm.assign(n, -1);
    int next = 0;
    for (int i = 0; i < n; ++i) {
        if (dense_of_comm[comm[i]] == -1) dense_of_comm[comm[i]] = next++;
    }
    community_count = next;

    LevelGraph out;
    out.adj.resize(next);
    out.loops.assign(next, 0.0);
    out.degree.assign(next, 0.0);
    out.two_m = g.two_m;

    std::unordered_map<std::int64_t, double> cross; // (c1, c2) with c1 < c2
    for (int i = 0; i < n; ++i) {
        const int ci = dense_of_comm[comm[i]];
        out.loops[ci] += g.loops[i];
        for (const auto& [j, w] : g.adj[i]) {
            if (j < i) continue; // each undirected pair once
            const int cj = dense_of_comm[comm[j]];
            if (ci == cj) {
                out.loops[ci] += w;
            } else {
                const std::int64_t key =
                    (static_cast<std::int64_t>(std::min(ci, cj)) << 32) | std::max(ci, cj);
                cross[key] += w;
            }
        }
    }
    std::vector<std::pair<std::int64_t, double>> cross_sorted(cross.begin(), cross.end());
    std::sort(cross_sorted.begin(), cross_sorted.end());
    for (const auto& [key, w] : cross_sorted) {
        const int a = static_cast<int>(key >> 32);
        const int b = static_cast<int>(key & 0xffffffff);
        out.adj[a].emplace_back(b, w);
        out.adj[b].emplace_back(a, w);
    }
    for (int c = 0; c < next; ++c) {
        double k = 2.0 * out.loops[c];
        for (const auto& [j, w] : out.adj[c]) k += w;
        out.degree[c] = k;
    }
    return out;
}

} // namespace

double modularity(const Snapshot& snapshot, const Partition& partition, double resolution) {
    if (snapshot.edge_count() == 0)
        throw UndefinedModularityError("modularity is undefined on an edgeless snapshot");

    std::unordered_map<Label, int> dense;
    std::vector<std::int64_t> intra;
    std::vector<std::int64_t> degree_sum;
    auto dense_label = [&](Label l) {
        auto [it, inserted] = dense.emplace(l, static_cast<int>(intra.size()));
        if (inserted) {
            intra.push_back(0);
            degree_sum.push_back(0);
        }
        return it->second;
    };

    std::unordered_map<NodeId, int> label_of_node;
    label_of_node.reserve(snapshot.node_count());
    for (NodeId node : snapshot.nodes)
        label_of_node.emplace(node, dense_label(partition.label_of(node)));

    for (const auto& [u, v] : snapshot.edges) {
        const int cu = label_of_node.at(u);
        const int cv = label_of_node.at(v);
        degree_sum[cu] += 1;
        degree_sum[cv] += 1;
        if (cu == cv) intra[cu] += 1;
    }

    const double m = static_cast<double>(snapshot.edge_count());
    double q = 0.0;
    for (std::size_t c = 0; c < intra.size(); ++c) {
        const double frac = static_cast<double>(degree_sum[c]) / (2.0 * m);
        q += static_cast<double>(intra[c]) / m - resolution * frac * frac;
    }
    return q;
}

Partition louvain(const Snapshot& snapshot, double resolution, std::uint64_t seed) {
    if (snapshot.node_count() == 0)
        throw EmptySnapshotError("louvain requires a snapshot with at least one node");

    const int n0 = static_cast<int>(snapshot.node_count());
    std::vector<int> node_comm(n0);
    std::iota(node_comm.begin(), node_comm.end(), 0);

    if (snapshot.edge_count() > 0) {
        std::mt19937_64 rng(seed);
        LevelGraph graph = level_graph_from(snapshot);
        while (true) {
            std::vector<int> comm = local_moving(graph, resolution, rng);
            std::vector<int> dense_of_comm;
            int community_count = 0;
            LevelGraph next = aggregate(graph, comm, dense_of_comm, community_count);
            for (int v = 0; v < n0; ++v) node_comm[v] = dense_of_comm[comm[node_comm[v]]];
            if (community_count == graph.size()) break; // no merge happened
            graph = std::move(next);
        }
    }

    std::vector<std::pair<NodeId, Label>> entries;
    entries.reserve(snapshot.node_count());
    for (int i = 0; i < n0; ++i)
        entries.emplace_back(snapshot.nodes[i], static_cast<Label>(node_comm[i]));
    return Partition(std::move(entries), snapshot.window_start, snapshot.window_end)
        .canonicalized();
}

double lcc_proportion(const Snapshot& snapshot) {
    if (snapshot.node_count() == 0)
        throw EmptySnapshotError("lcc_proportion requires at least one node");

    // union-find over dense node indices
    const int n = static_cast<int>(snapshot.node_count());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::vector<int> size(n, 1);
    auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const auto& [u, v] : snapshot.edges) {
        int a = find(node_index(snapshot, u));
        int b = find(node_index(snapshot, v));
        if (a == b) continue;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
    }
    int largest = 0;
    for (int i = 0; i < n; ++i) {
        if (parent[i] == i) largest = std::max(largest, size[i]);
    }
    return static_cast<double>(largest) / static_cast<double>(n);
}

double edge_node_ratio(const Snapshot& snapshot) {
    if (snapshot.node_count() == 0)
        throw EmptySnapshotError("edge_node_ratio requires at least one node");
    return static_cast<double>(snapshot.edge_count()) / static_cast<double>(snapshot.node_count());
}

SnapshotStats snapshot_stats(const Snapshot& snapshot, const Partition& partition,
                             double resolution) {
    SnapshotStats stats;
    stats.window_start = snapshot.window_start;
    stats.window_end = snapshot.window_end;
    stats.node_count = snapshot.node_count();
    stats.edge_count = snapshot.edge_count();
    stats.edge_node_ratio = edge_node_ratio(snapshot);
    stats.lcc_proportion = lcc_proportion(snapshot);
    if (snapshot.edge_count() > 0) stats.modularity = modularity(snapshot, partition, resolution);
    stats.community_count = partition.community_count();
    return stats;
}

} // namespace tempo
