#pragma once

#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tempo/types.hpp"

namespace tempo {

struct TemporalEvent {
    NodeId src = 0;
    NodeId dst = 0;
    Time time = 0;
    double weight = 1.0; // parsed when a weight column is mapped; snapshots ignore it
};

// Simple undirected graph induced by one half-open window [window_start,
// window_end): self-loops dropped, parallel events collapsed to one edge.
// Endpoints of self-loop events still count as active nodes.
struct Snapshot {
    Time window_start = 0;
    Time window_end = 0;
    std::vector<NodeId> nodes;                    // sorted, unique
    std::vector<std::pair<NodeId, NodeId>> edges; // u < v, sorted, unique

    bool empty() const { return nodes.empty(); }
    std::size_t node_count() const { return nodes.size(); }
    std::size_t edge_count() const { return edges.size(); }
};

// Timestamped event sequence over an interned node universe. Events stay
// sorted by time (stable on ties); the object is immutable once built and
// safe to share across threads.
class TemporalGraph {
public:
    TemporalGraph() : names_(std::make_shared<std::vector<std::string>>()) {}

    const std::vector<TemporalEvent>& events() const { return events_; }
    bool empty() const { return events_.empty(); }
    std::size_t event_count() const { return events_.size(); }

    Time t_min() const;
    Time t_max() const;

    // Node ids that appear in at least one event, sorted.
    const std::vector<NodeId>& node_universe() const { return universe_; }
    std::size_t universe_size() const { return universe_.size(); }

    const std::string& node_name(NodeId id) const { return (*names_)[id]; }
    std::shared_ptr<const std::vector<std::string>> name_table() const { return names_; }

    // Events with start <= time < end, as a view into the sorted sequence.
    std::span<const TemporalEvent> events_in(Time start, Time end) const;

private:
    friend class TemporalGraphBuilder;
    friend TemporalGraph restrict_time(const TemporalGraph&, Time, Time);

    std::shared_ptr<const std::vector<std::string>> names_;
    std::vector<TemporalEvent> events_;
    std::vector<NodeId> universe_;
    Time t_min_ = 0;
    Time t_max_ = -1;
};

// Incremental construction with token interning; build() sorts by time
// (stable) and computes bounds and the node universe.
class TemporalGraphBuilder {
public:
    TemporalGraphBuilder();

    NodeId intern(std::string_view token);
    void add_event(std::string_view src, std::string_view dst, Time time, double weight = 1.0);
    std::size_t event_count() const { return events_.size(); }

    TemporalGraph build();

private:
    struct Impl;
    std::shared_ptr<Impl> interner_;
    std::vector<std::string> names_;
    std::vector<TemporalEvent> events_;
};

// Column mapping for delimited edge lists. With the default space delimiter
// any run of blanks separates fields; other delimiters split per occurrence.
struct EdgeListFormat {
    char delimiter = ' ';
    int src_col = 0;
    int dst_col = 1;
    int time_col = 2;
    int weight_col = -1; // -1: no weight column
    bool has_header = false;
};

struct IngestReport {
    std::size_t parsed_events = 0;
    std::size_t malformed_lines = 0;
    std::size_t comment_lines = 0;
    // First few offenders as (1-based line, reason).
    std::vector<std::pair<std::size_t, std::string>> malformed_samples;
};

// Parses a delimited event stream. Lines starting with '#' and blank lines
// are skipped. Structurally broken lines (missing fields, empty tokens, bad
// weight) are counted in the report and skipped; a time field that is not
// an integer is fatal. Throws ParseError when the stream yields no events.
TemporalGraph ingest_events(std::istream& in, const EdgeListFormat& format,
                            IngestReport* report = nullptr);

// Keeps events with start <= time < end and recomputes the node universe.
TemporalGraph restrict_time(const TemporalGraph& g, Time start, Time end);

// Windows [t_min + k*stride, t_min + k*stride + window_length) for
// k = 0, 1, ... while the window start is <= t_max. Windows holding no
// events come back as empty snapshots.
std::vector<Snapshot> extract_snapshots(const TemporalGraph& g, Time window_length, Time stride);

// Builds one snapshot from the events in [start, end).
Snapshot snapshot_from_events(std::span<const TemporalEvent> events, Time start, Time end);

// "90" -> 90, "45s" -> 45, "30m" -> 1800, "12h" -> 43200, "10d" -> 864000.
Time parse_duration(std::string_view text);

} // namespace tempo
