#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>
#include <tuple>

#include "oracles.hpp"
#include "tempo/errors.hpp"
#include "tempo/random.hpp"
#include "tempo/temporal_graph.hpp"

using namespace tempo;

namespace {

TemporalGraph graph_from(std::initializer_list<std::tuple<const char*, const char*, Time>> events) {
    TemporalGraphBuilder builder;
    for (const auto& [src, dst, time] : events) builder.add_event(src, dst, time);
    return builder.build();
}

bool snapshots_equal(const std::vector<Snapshot>& a, const std::vector<Snapshot>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].window_start != b[i].window_start || a[i].window_end != b[i].window_end ||
            a[i].nodes != b[i].nodes || a[i].edges != b[i].edges)
            return false;
    }
    return true;
}

} // namespace

TEST_CASE("ingest sorts events by time and tracks bounds") {
    std::istringstream in("a,b,5\nb,c,3");
    EdgeListFormat format;
    format.delimiter = ',';
    IngestReport report;
    TemporalGraph g = ingest_events(in, format, &report);

    REQUIRE(g.event_count() == 2);
    CHECK(g.events()[0].time == 3);
    CHECK(g.node_name(g.events()[0].src) == "b");
    CHECK(g.node_name(g.events()[0].dst) == "c");
    CHECK(g.events()[1].time == 5);
    CHECK(g.node_name(g.events()[1].src) == "a");
    CHECK(g.t_min() == 3);
    CHECK(g.t_max() == 5);
    CHECK(g.universe_size() == 3);
    CHECK(report.parsed_events == 2);
    CHECK(report.malformed_lines == 0);
}

TEST_CASE("ingest rejects streams without parseable events") {
    std::istringstream empty("");
    EdgeListFormat format;
    CHECK_THROWS_AS(ingest_events(empty, format), ParseError);

    std::istringstream comments("# a comment\n\n# another\n");
    CHECK_THROWS_AS(ingest_events(comments, format), ParseError);
}

TEST_CASE("ingest counts malformed lines with line numbers") {
    std::istringstream in("a b 1\nonly-two-fields 2\nc d 7\n e  f   9 \n");
    EdgeListFormat format;
    IngestReport report;
    TemporalGraph g = ingest_events(in, format, &report);
    CHECK(g.event_count() == 3);
    CHECK(report.malformed_lines == 1);
    REQUIRE(report.malformed_samples.size() == 1);
    CHECK(report.malformed_samples[0].first == 2);
}

TEST_CASE("ingest fails fast on a non-integer time field") {
    std::istringstream in("a b 1\na c noon\n");
    EdgeListFormat format;
    try {
        ingest_events(in, format);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("ingest honors header flag and weight column") {
    std::istringstream in("src dst t w\na b 1 2.5\nb c 2 bad\nc d 3 1.0\n");
    EdgeListFormat format;
    format.has_header = true;
    format.weight_col = 3;
    IngestReport report;
    TemporalGraph g = ingest_events(in, format, &report);
    CHECK(g.event_count() == 2);
    CHECK(g.events()[0].weight == 2.5);
    CHECK(report.malformed_lines == 1); // the unparseable weight
}

TEST_CASE("restrict_time keeps the half-open range and recomputes the universe") {
    TemporalGraph g = graph_from({{"a", "b", 1}, {"c", "d", 5}, {"e", "f", 9}});

    TemporalGraph cut = restrict_time(g, 0, 6);
    REQUIRE(cut.event_count() == 2);
    CHECK(cut.t_min() == 1);
    CHECK(cut.t_max() == 5);
    CHECK(cut.universe_size() == 4);

    TemporalGraph none = restrict_time(g, 100, 200);
    CHECK(none.empty());
    CHECK(none.universe_size() == 0);

    TemporalGraph all = restrict_time(g, g.t_min(), g.t_max() + 1);
    REQUIRE(all.event_count() == g.event_count());
    for (std::size_t i = 0; i < all.event_count(); ++i) {
        CHECK(all.events()[i].src == g.events()[i].src);
        CHECK(all.events()[i].time == g.events()[i].time);
    }

    CHECK_THROWS_AS(restrict_time(g, 5, 5), InvalidIntervalError);
    CHECK_THROWS_AS(restrict_time(g, 6, 2), InvalidIntervalError);
}

TEST_CASE("extract_snapshots anchors at t_min and slides by the stride") {
    TemporalGraphBuilder builder;
    for (int t = 0; t < 20; ++t) builder.add_event("u" + std::to_string(t), "v", t);
    TemporalGraph g = builder.build();

    std::vector<Snapshot> snaps = extract_snapshots(g, 10, 1);
    REQUIRE(snaps.size() == 20);
    CHECK(snaps[0].window_start == 0);
    CHECK(snaps[0].window_end == 10);
    CHECK(snaps[1].window_start == 1);
    CHECK(snaps[1].window_end == 11);
    CHECK(snaps.back().window_start == 19);
}

TEST_CASE("snapshots collapse multi-edges and drop self-loops") {
    TemporalGraph g = graph_from({{"a", "b", 1}, {"a", "b", 2}, {"a", "a", 3}});
    std::vector<Snapshot> snaps = extract_snapshots(g, 10, 10);
    REQUIRE(snaps.size() == 1);
    const Snapshot& s = snaps[0];
    REQUIRE(s.edge_count() == 1);
    CHECK(s.node_count() == 2);
}

TEST_CASE("a node touched only by a self-loop still counts as active") {
    TemporalGraph g = graph_from({{"a", "b", 0}, {"c", "c", 1}});
    std::vector<Snapshot> snaps = extract_snapshots(g, 5, 5);
    REQUIRE(snaps.size() == 1);
    CHECK(snaps[0].node_count() == 3);
    CHECK(snaps[0].edge_count() == 1);
}

TEST_CASE("an event at the window end lands in the next window only") {
    TemporalGraph g = graph_from({{"a", "b", 0}, {"c", "d", 10}});
    std::vector<Snapshot> snaps = extract_snapshots(g, 10, 5);
    REQUIRE(snaps.size() == 3);
    CHECK(snaps[0].window_end == 10);
    CHECK(snaps[0].edge_count() == 1); // only the t=0 event
    CHECK(snaps[1].edge_count() == 1); // [5, 15) holds t=10
    CHECK(snaps[2].edge_count() == 1);
}

TEST_CASE("extract_snapshots validates window and stride") {
    TemporalGraph g = graph_from({{"a", "b", 1}});
    CHECK_THROWS_AS(extract_snapshots(g, 0, 1), InvalidWindowError);
    CHECK_THROWS_AS(extract_snapshots(g, 5, 0), InvalidWindowError);
    CHECK_THROWS_AS(extract_snapshots(g, 5, 6), InvalidWindowError);
    CHECK(extract_snapshots(TemporalGraph{}, 5, 1).empty());
}

TEST_CASE("half-open membership matches a per-event scan") {
    std::mt19937_64 rng(7);
    TemporalGraphBuilder builder;
    for (int i = 0; i < 200; ++i) {
        builder.add_event("n" + std::to_string(uniform_index(rng, 12)),
                          "n" + std::to_string(uniform_index(rng, 12)),
                          static_cast<Time>(uniform_index(rng, 50)));
    }
    TemporalGraph g = builder.build();

    for (const auto& [window, stride] : std::vector<std::pair<Time, Time>>{
             {5, 1}, {7, 3}, {10, 10}, {1, 1}, {50, 13}}) {
        std::vector<Snapshot> got = extract_snapshots(g, window, stride);
        std::vector<Snapshot> expected = oracles::windows_direct(g, window, stride);
        CHECK(snapshots_equal(got, expected));
        // window count formula against the span
        const Time span = g.t_max() - g.t_min() + 1;
        CHECK(got.size() == static_cast<std::size_t>((span - 1) / stride + 1));
    }
}

TEST_CASE("non-overlapping snapshots cover the node universe") {
    std::mt19937_64 rng(11);
    TemporalGraphBuilder builder;
    for (int i = 0; i < 300; ++i) {
        builder.add_event("n" + std::to_string(uniform_index(rng, 40)),
                          "n" + std::to_string(uniform_index(rng, 40)),
                          static_cast<Time>(uniform_index(rng, 500)));
    }
    TemporalGraph g = builder.build();

    std::vector<Snapshot> snaps = extract_snapshots(g, 37, 37);
    std::set<NodeId> covered;
    std::size_t total_events = 0;
    for (const Snapshot& s : snaps) {
        covered.insert(s.nodes.begin(), s.nodes.end());
        total_events += g.events_in(s.window_start, s.window_end).size();
        CHECK(s.edge_count() <= g.events_in(s.window_start, s.window_end).size());
        for (const auto& [u, v] : s.edges) {
            CHECK(u < v);
            CHECK(std::binary_search(s.nodes.begin(), s.nodes.end(), u));
            CHECK(std::binary_search(s.nodes.begin(), s.nodes.end(), v));
        }
    }
    CHECK(total_events == g.event_count());
    CHECK(covered.size() == g.universe_size());

    // determinism
    CHECK(snapshots_equal(snaps, extract_snapshots(g, 37, 37)));
}

TEST_CASE("duration strings accept s/m/h/d suffixes") {
    CHECK(parse_duration("90") == 90);
    CHECK(parse_duration("45s") == 45);
    CHECK(parse_duration("30m") == 1800);
    CHECK(parse_duration("12h") == 43200);
    CHECK(parse_duration("10d") == 864000);
    CHECK_THROWS_AS(parse_duration("0d"), InvalidWindowError);
    CHECK_THROWS_AS(parse_duration("abc"), InvalidWindowError);
    CHECK_THROWS_AS(parse_duration(""), InvalidWindowError);
}
