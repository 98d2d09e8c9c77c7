#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "oracles.hpp"
#include "tempo/errors.hpp"
#include "tempo/null_model.hpp"
#include "tempo/random.hpp"

using namespace tempo;

namespace {

Snapshot make_snapshot(std::initializer_list<std::pair<NodeId, NodeId>> edges,
                       std::initializer_list<NodeId> extra_nodes = {}) {
    Snapshot s;
    s.window_end = 1;
    std::set<NodeId> nodes(extra_nodes);
    std::set<std::pair<NodeId, NodeId>> dedup;
    for (const auto& [u, v] : edges) {
        nodes.insert(u);
        nodes.insert(v);
        dedup.insert({std::min(u, v), std::max(u, v)});
    }
    s.nodes.assign(nodes.begin(), nodes.end());
    s.edges.assign(dedup.begin(), dedup.end());
    return s;
}

std::map<NodeId, int> degree_sequence(const Snapshot& s) {
    std::map<NodeId, int> deg;
    for (NodeId node : s.nodes) deg[node] = 0;
    for (const auto& [u, v] : s.edges) {
        deg[u] += 1;
        deg[v] += 1;
    }
    return deg;
}

bool is_simple(const Snapshot& s) {
    std::set<std::pair<NodeId, NodeId>> seen;
    for (const auto& [u, v] : s.edges) {
        if (u == v) return false;
        if (u > v) return false;
        if (!seen.insert({u, v}).second) return false;
    }
    return true;
}

Snapshot random_graph(std::mt19937_64& rng, int n, double p) {
    Snapshot s;
    s.window_end = 1;
    for (int i = 0; i < n; ++i) s.nodes.push_back(static_cast<NodeId>(i));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (uniform_real01(rng) < p) s.edges.emplace_back(i, j);
        }
    }
    return s;
}

// two k-cliques joined by one bridge edge
Snapshot planted_two_cliques(int k) {
    Snapshot s;
    s.window_end = 1;
    for (int i = 0; i < 2 * k; ++i) s.nodes.push_back(static_cast<NodeId>(i));
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) s.edges.emplace_back(i, j);
    for (int i = k; i < 2 * k; ++i)
        for (int j = i + 1; j < 2 * k; ++j) s.edges.emplace_back(i, j);
    s.edges.emplace_back(k - 1, k);
    std::sort(s.edges.begin(), s.edges.end());
    return s;
}

} // namespace

TEST_CASE("rewiring forced graphs keeps the only possible degree sequence") {
    Snapshot path = make_snapshot({{0, 1}, {1, 2}});
    for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
        Snapshot r = degree_preserving_rewire(path, seed);
        CHECK(degree_sequence(r) == degree_sequence(path));
        CHECK(is_simple(r));
        CHECK(r.nodes == path.nodes);
    }

    Snapshot cycle = make_snapshot({{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    for (std::uint64_t seed : {5ULL, 6ULL, 7ULL}) {
        Snapshot r = degree_preserving_rewire(cycle, seed);
        for (const auto& [node, degree] : degree_sequence(r)) CHECK(degree == 2);
        CHECK(is_simple(r));
    }

    Snapshot triangles = make_snapshot({{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    for (std::uint64_t seed : {2ULL, 3ULL, 4ULL}) {
        Snapshot r = degree_preserving_rewire(triangles, seed);
        for (const auto& [node, degree] : degree_sequence(r)) CHECK(degree == 2);
        CHECK(is_simple(r));
    }
}

TEST_CASE("rewiring preserves degrees and simplicity on random graphs") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        Snapshot s = random_graph(rng, 18, 0.25);
        if (s.edge_count() < 2) continue;
        for (int k = 0; k < 5; ++k) {
            Snapshot r = degree_preserving_rewire(s, rng());
            CHECK(degree_sequence(r) == degree_sequence(s));
            CHECK(is_simple(r));
            CHECK(r.edge_count() == s.edge_count());
            CHECK(r.nodes == s.nodes);
        }
    }
}

TEST_CASE("rewiring needs at least two edges") {
    Snapshot one = make_snapshot({{0, 1}});
    CHECK_THROWS_AS(degree_preserving_rewire(one, 0), CannotRewireError);
}

TEST_CASE("rewiring is deterministic per seed and actually mixes") {
    std::mt19937_64 rng(29);
    Snapshot s = random_graph(rng, 24, 0.3);
    Snapshot a = degree_preserving_rewire(s, 1234);
    Snapshot b = degree_preserving_rewire(s, 1234);
    CHECK(a.edges == b.edges);
    Snapshot c = degree_preserving_rewire(s, 4321);
    CHECK(a.edges != c.edges);
    CHECK(a.edges != s.edges);
}

TEST_CASE("planted two-clique graph is highly significant") {
    Snapshot s = planted_two_cliques(20);
    ZScoreReport report = modularity_zscore(s, 100, 1.0, 7);
    REQUIRE(report.z_defined);
    CHECK(report.q_observed > 0.45);
    CHECK(report.z > 3.0);
    // no null sample reaches the observed modularity
    for (double q : report.sample_modularities) CHECK(q < report.q_observed);
}

TEST_CASE("zero null variance yields an undefined z flag") {
    Snapshot s = make_snapshot({{0, 1}, {2, 3}});
    Detector one_block = [](const Snapshot& snap, double, std::uint64_t) {
        std::vector<std::pair<NodeId, Label>> entries;
        for (NodeId node : snap.nodes) entries.emplace_back(node, 0);
        return Partition(std::move(entries));
    };
    ZScoreReport report = modularity_zscore(s, 10, 1.0, 3, one_block);
    CHECK(report.q_observed == 0.0);
    CHECK_FALSE(report.z_defined);
    CHECK(std::isnan(report.z));
    CHECK(report.null_std == 0.0);
}

TEST_CASE("identical inputs give bitwise-identical reports") {
    Snapshot s = planted_two_cliques(8);
    ZScoreReport a = modularity_zscore(s, 25, 1.0, 11);
    ZScoreReport b = modularity_zscore(s, 25, 1.0, 11);
    CHECK(a.q_observed == b.q_observed);
    CHECK(a.null_mean == b.null_mean);
    CHECK(a.null_std == b.null_std);
    CHECK(a.z == b.z);
    CHECK(a.sample_modularities == b.sample_modularities);
}

TEST_CASE("worker count does not change the report") {
    Snapshot s = planted_two_cliques(8);
    ZScoreReport serial = modularity_zscore(s, 24, 1.0, 5, {}, 10, 1);
    ZScoreReport parallel = modularity_zscore(s, 24, 1.0, 5, {}, 10, 4);
    CHECK(serial.sample_modularities == parallel.sample_modularities);
    CHECK(serial.z == parallel.z);
}

TEST_CASE("stored samples reproduce the reported mean and deviation") {
    Snapshot s = planted_two_cliques(10);
    ZScoreReport report = modularity_zscore(s, 40, 1.0, 17);
    REQUIRE(report.sample_modularities.size() == 40);
    double mean = 0.0;
    for (double q : report.sample_modularities) mean += q;
    mean /= 40.0;
    double ss = 0.0;
    for (double q : report.sample_modularities) ss += (q - mean) * (q - mean);
    const double sd = std::sqrt(ss / 39.0);
    CHECK(std::abs(mean - report.null_mean) <= 1e-12);
    CHECK(std::abs(sd - report.null_std) <= 1e-12);
    CHECK(std::abs((report.q_observed - mean) / sd - report.z) <= 1e-12);
}

TEST_CASE("z-score rejects degenerate sample counts and graphs") {
    Snapshot s = planted_two_cliques(5);
    CHECK_THROWS_AS(modularity_zscore(s, 1, 1.0, 0), InvalidConfigError);
    Snapshot tiny = make_snapshot({{0, 1}});
    CHECK_THROWS_AS(modularity_zscore(tiny, 10, 1.0, 0), CannotRewireError);
}
