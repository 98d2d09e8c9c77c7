// Test-side reference implementations, deliberately independent of the
// library code paths they check: direct-summation information measures in
// long double, exhaustive modularity maximization with integer arithmetic,
// and a linear-scan window extractor.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "tempo/community.hpp"
#include "tempo/random.hpp"
#include "tempo/temporal_graph.hpp"
#include "tempo/types.hpp"

namespace oracles {

using tempo::Label;
using tempo::NodeId;
using tempo::Partition;
using tempo::Snapshot;
using tempo::TemporalGraph;
using tempo::Time;

using LabelMap = std::map<NodeId, Label>;

inline LabelMap to_map(const Partition& p) {
    LabelMap m;
    for (const auto& [node, label] : p.entries()) m.emplace(node, label);
    return m;
}

inline Partition make_partition(std::initializer_list<std::pair<NodeId, Label>> entries,
                                Time start = 0, Time end = 1) {
    return Partition(std::vector<std::pair<NodeId, Label>>(entries), start, end);
}

// NMI over identical node sets, summed term by term.
inline long double nmi_direct(const LabelMap& l1, const LabelMap& l2) {
    const long double n = static_cast<long double>(l1.size());
    std::map<Label, std::int64_t> m1;
    std::map<Label, std::int64_t> m2;
    std::map<std::pair<Label, Label>, std::int64_t> joint;
    for (const auto& [node, label] : l1) {
        m1[label] += 1;
        joint[{label, l2.at(node)}] += 1;
    }
    for (const auto& [node, label] : l2) m2[label] += 1;

    long double h1 = 0.0L;
    for (const auto& [label, c] : m1) h1 -= c / n * std::log(c / n);
    long double h2 = 0.0L;
    for (const auto& [label, c] : m2) h2 -= c / n * std::log(c / n);
    if (h1 + h2 == 0.0L) return 1.0L;

    long double mi = 0.0L;
    for (const auto& [rs, c] : joint) {
        mi += c / n * std::log(n * c / (static_cast<long double>(m1[rs.first]) * m2[rs.second]));
    }
    return 2.0L * mi / (h1 + h2);
}

// Union variant expanded into its three mutual-information terms (common
// cells, virtual row, virtual column) and two-term entropies. Marginals of
// real labels are counted over that partition's own node set; each virtual
// community's marginal is the size of the other side's private node set.
inline long double unmi_direct(const Partition& p1, const Partition& p2) {
    const LabelMap l1 = to_map(p1);
    const LabelMap l2 = to_map(p2);

    std::map<Label, std::int64_t> n1; // marginals over V1
    std::map<Label, std::int64_t> n2; // marginals over V2
    for (const auto& [node, label] : l1) n1[label] += 1;
    for (const auto& [node, label] : l2) n2[label] += 1;

    std::map<std::pair<Label, Label>, std::int64_t> joint; // over the intersection
    std::map<Label, std::int64_t> only2;                   // V2-V1 by L2 label
    std::map<Label, std::int64_t> only1;                   // V1-V2 by L1 label
    std::int64_t n_union = 0;
    std::int64_t only1_total = 0;
    std::int64_t only2_total = 0;
    std::set<NodeId> all;
    for (const auto& [node, label] : l1) all.insert(node);
    for (const auto& [node, label] : l2) all.insert(node);
    n_union = static_cast<std::int64_t>(all.size());
    for (NodeId node : all) {
        const bool in1 = l1.count(node) > 0;
        const bool in2 = l2.count(node) > 0;
        if (in1 && in2) {
            joint[{l1.at(node), l2.at(node)}] += 1;
        } else if (in1) {
            only1[l1.at(node)] += 1;
            ++only1_total;
        } else {
            only2[l2.at(node)] += 1;
            ++only2_total;
        }
    }

    const long double nu = static_cast<long double>(n_union);
    long double mi = 0.0L;
    for (const auto& [rs, c] : joint) {
        mi += c / nu *
              std::log(nu * c /
                       (static_cast<long double>(n1[rs.first]) * n2[rs.second]));
    }
    for (const auto& [s, c] : only2) { // virtual community of scheme 1 against label s
        mi += c / nu * std::log(nu * c / (static_cast<long double>(only2_total) * n2[s]));
    }
    for (const auto& [r, c] : only1) { // label r against virtual community of scheme 2
        mi += c / nu * std::log(nu * c / (static_cast<long double>(n1[r]) * only1_total));
    }

    long double h1 = 0.0L;
    for (const auto& [label, c] : n1) h1 -= c / nu * std::log(c / nu);
    if (only2_total > 0) h1 -= only2_total / nu * std::log(only2_total / nu);
    long double h2 = 0.0L;
    for (const auto& [label, c] : n2) h2 -= c / nu * std::log(c / nu);
    if (only1_total > 0) h2 -= only1_total / nu * std::log(only1_total / nu);

    if (h1 + h2 == 0.0L) return 1.0L;
    return 2.0L * mi / (h1 + h2);
}

// Intersection variant: joint counts over shared nodes, marginals with the
// off-side counts subtracted.
inline long double inmi_direct(const Partition& p1, const Partition& p2) {
    const LabelMap l1 = to_map(p1);
    const LabelMap l2 = to_map(p2);

    std::map<Label, std::int64_t> full1;
    std::map<Label, std::int64_t> full2;
    std::map<Label, std::int64_t> q1; // labelled r in L1 and absent from V2
    std::map<Label, std::int64_t> q2;
    std::map<std::pair<Label, Label>, std::int64_t> joint;
    std::int64_t n_shared = 0;
    for (const auto& [node, label] : l1) {
        full1[label] += 1;
        if (!l2.count(node)) q1[label] += 1;
    }
    for (const auto& [node, label] : l2) {
        full2[label] += 1;
        if (!l1.count(node)) q2[label] += 1;
    }
    for (const auto& [node, label] : l1) {
        auto it = l2.find(node);
        if (it == l2.end()) continue;
        joint[{label, it->second}] += 1;
        ++n_shared;
    }

    const long double ni = static_cast<long double>(n_shared);
    long double mi = 0.0L;
    for (const auto& [rs, c] : joint) {
        const long double rest1 = static_cast<long double>(full1[rs.first] - q1[rs.first]);
        const long double rest2 = static_cast<long double>(full2[rs.second] - q2[rs.second]);
        mi += c / ni * std::log(c * ni / (rest1 * rest2));
    }
    long double h1 = 0.0L;
    for (const auto& [label, c] : full1) {
        const std::int64_t rest = c - q1[label];
        if (rest > 0) h1 -= rest / ni * std::log(rest / ni);
    }
    long double h2 = 0.0L;
    for (const auto& [label, c] : full2) {
        const std::int64_t rest = c - q2[label];
        if (rest > 0) h2 -= rest / ni * std::log(rest / ni);
    }
    if (h1 + h2 == 0.0L) return 1.0L;
    return 2.0L * mi / (h1 + h2);
}

// Restriction of a partition to a node subset (for checking inmi against
// plain nmi).
inline Partition restrict_partition(const Partition& p, const std::vector<NodeId>& scope) {
    std::vector<std::pair<NodeId, Label>> entries;
    for (NodeId node : scope) entries.emplace_back(node, p.label_of(node));
    return Partition(std::move(entries), p.window_start(), p.window_end());
}

inline std::vector<NodeId> shared_nodes(const Partition& p1, const Partition& p2) {
    const auto n1 = p1.nodes();
    const auto n2 = p2.nodes();
    std::vector<NodeId> shared;
    std::set_intersection(n1.begin(), n1.end(), n2.begin(), n2.end(), std::back_inserter(shared));
    return shared;
}

// Exhaustive modularity maximization (resolution 1) over every set
// partition, compared through the integer 4m^2 * Q = 4m*intra - sum D_c^2.
struct ExhaustiveBest {
    double q = 0.0;
    std::vector<int> assignment; // by node index in snapshot order
};

inline ExhaustiveBest best_partition_exhaustive(const Snapshot& s) {
    const int n = static_cast<int>(s.node_count());
    std::vector<std::pair<int, int>> edges;
    for (const auto& [u, v] : s.edges) {
        auto iu = std::lower_bound(s.nodes.begin(), s.nodes.end(), u) - s.nodes.begin();
        auto iv = std::lower_bound(s.nodes.begin(), s.nodes.end(), v) - s.nodes.begin();
        edges.emplace_back(static_cast<int>(iu), static_cast<int>(iv));
    }
    std::vector<std::int64_t> degree(n, 0);
    for (const auto& [u, v] : edges) {
        degree[u] += 1;
        degree[v] += 1;
    }
    const std::int64_t m = static_cast<std::int64_t>(edges.size());

    auto q_numerator = [&](const std::vector<int>& a) {
        std::int64_t intra = 0;
        for (const auto& [u, v] : edges)
            if (a[u] == a[v]) ++intra;
        std::vector<std::int64_t> dsum(n, 0);
        for (int i = 0; i < n; ++i) dsum[a[i]] += degree[i];
        std::int64_t dsq = 0;
        for (std::int64_t d : dsum) dsq += d * d;
        return 4 * m * intra - dsq;
    };

    std::vector<int> a(n, 0);
    std::vector<int> best_a(n, 0);
    std::int64_t best_num = q_numerator(a);
    // iterate restricted growth strings
    while (true) {
        int i = n - 1;
        for (; i > 0; --i) {
            int max_prefix = 0;
            for (int j = 0; j < i; ++j) max_prefix = std::max(max_prefix, a[j]);
            if (a[i] <= max_prefix) break;
        }
        if (i == 0) break;
        a[i] += 1;
        for (int j = i + 1; j < n; ++j) a[j] = 0;
        const std::int64_t num = q_numerator(a);
        if (num > best_num) {
            best_num = num;
            best_a = a;
        }
    }

    ExhaustiveBest best;
    best.q = static_cast<double>(best_num) / (4.0 * static_cast<double>(m) * static_cast<double>(m));
    best.assignment = best_a;
    return best;
}

// Linear-scan window extraction, one full pass over the events per window.
inline std::vector<Snapshot> windows_direct(const TemporalGraph& g, Time window_length,
                                            Time stride) {
    std::vector<Snapshot> out;
    if (g.empty()) return out;
    for (Time start = g.t_min(); start <= g.t_max(); start += stride) {
        Snapshot snap;
        snap.window_start = start;
        snap.window_end = start + window_length;
        std::set<NodeId> nodes;
        std::set<std::pair<NodeId, NodeId>> edges;
        for (const auto& e : g.events()) {
            if (e.time < start || e.time >= start + window_length) continue;
            nodes.insert(e.src);
            nodes.insert(e.dst);
            if (e.src != e.dst) edges.insert({std::min(e.src, e.dst), std::max(e.src, e.dst)});
        }
        snap.nodes.assign(nodes.begin(), nodes.end());
        snap.edges.assign(edges.begin(), edges.end());
        out.push_back(std::move(snap));
    }
    return out;
}

// Random partition pair over a shared universe: overlaps range from empty
// to full, label counts 1..10.
inline std::pair<Partition, Partition> random_partition_pair(std::mt19937_64& rng,
                                                             int max_universe = 200) {
    using tempo::uniform_index;
    const std::size_t universe = 1 + uniform_index(rng, static_cast<std::uint64_t>(max_universe));
    std::vector<NodeId> ids(universe);
    for (std::size_t i = 0; i < universe; ++i) ids[i] = static_cast<NodeId>(i);

    auto sample_set = [&](std::size_t count) {
        std::vector<NodeId> pool = ids;
        tempo::shuffle_values(pool, rng);
        pool.resize(count);
        std::sort(pool.begin(), pool.end());
        return pool;
    };

    const std::size_t size1 = 1 + uniform_index(rng, universe);
    std::size_t size2 = 1 + uniform_index(rng, universe);
    std::vector<NodeId> v1 = sample_set(size1);
    std::vector<NodeId> v2;
    switch (uniform_index(rng, 4)) {
    case 0: v2 = v1; break; // identical node sets
    case 1: {               // disjoint from v1 when possible
        std::vector<NodeId> rest;
        std::set_difference(ids.begin(), ids.end(), v1.begin(), v1.end(),
                            std::back_inserter(rest));
        if (rest.empty()) {
            v2 = v1;
        } else {
            tempo::shuffle_values(rest, rng);
            rest.resize(1 + uniform_index(rng, rest.size()));
            std::sort(rest.begin(), rest.end());
            v2 = rest;
        }
        break;
    }
    default: v2 = sample_set(size2); break;
    }

    const int k1 = 1 + static_cast<int>(uniform_index(rng, 10));
    const int k2 = 1 + static_cast<int>(uniform_index(rng, 10));
    std::vector<std::pair<NodeId, Label>> e1;
    for (NodeId node : v1) e1.emplace_back(node, static_cast<Label>(uniform_index(rng, k1)));
    std::vector<std::pair<NodeId, Label>> e2;
    for (NodeId node : v2) e2.emplace_back(node, static_cast<Label>(uniform_index(rng, k2)));
    return {Partition(std::move(e1)), Partition(std::move(e2))};
}

} // namespace oracles
