#include "tempo/temporal_graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <stdexcept>
#include <unordered_map>

#include "tempo/errors.hpp"

namespace tempo {

Time TemporalGraph::t_min() const {
    if (events_.empty()) throw EmptyInputError("t_min of an empty temporal graph");
    return t_min_;
}

Time TemporalGraph::t_max() const {
    if (events_.empty()) throw EmptyInputError("t_max of an empty temporal graph");
    return t_max_;
}

std::span<const TemporalEvent> TemporalGraph::events_in(Time start, Time end) const {
    auto lo = std::lower_bound(events_.begin(), events_.end(), start,
                               [](const TemporalEvent& e, Time t) { return e.time < t; });
    auto hi = std::lower_bound(lo, events_.end(), end,
                               [](const TemporalEvent& e, Time t) { return e.time < t; });
    return {events_.data() + (lo - events_.begin()), static_cast<std::size_t>(hi - lo)};
}

struct TemporalGraphBuilder::Impl {
    std::unordered_map<std::string, NodeId> ids;
};

TemporalGraphBuilder::TemporalGraphBuilder() : interner_(std::make_shared<Impl>()) {}

NodeId TemporalGraphBuilder::intern(std::string_view token) {
    auto it = interner_->ids.find(std::string(token));
    if (it != interner_->ids.end()) return it->second;
    NodeId id = static_cast<NodeId>(names_.size());
    names_.emplace_back(token);
    interner_->ids.emplace(names_.back(), id);
    return id;
}

void TemporalGraphBuilder::add_event(std::string_view src, std::string_view dst, Time time,
                                     double weight) {
    TemporalEvent e;
    e.src = intern(src);
    e.dst = intern(dst);
    e.time = time;
    e.weight = weight;
    events_.push_back(e);
}

TemporalGraph TemporalGraphBuilder::build() {
    TemporalGraph g;
    g.names_ = std::make_shared<const std::vector<std::string>>(std::move(names_));
    g.events_ = std::move(events_);
    std::stable_sort(g.events_.begin(), g.events_.end(),
                     [](const TemporalEvent& a, const TemporalEvent& b) { return a.time < b.time; });
    if (!g.events_.empty()) {
        g.t_min_ = g.events_.front().time;
        g.t_max_ = g.events_.back().time;
    }
    std::vector<NodeId> universe;
    universe.reserve(g.events_.size() * 2);
    for (const auto& e : g.events_) {
        universe.push_back(e.src);
        universe.push_back(e.dst);
    }
    std::sort(universe.begin(), universe.end());
    universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
    g.universe_ = std::move(universe);
    names_.clear();
    events_.clear();
    interner_ = std::make_shared<Impl>();
    return g;
}

namespace {

void split_fields(const std::string& line, char delimiter, std::vector<std::string_view>& out) {
    out.clear();
    std::string_view view(line);
    if (delimiter == ' ') {
        // default mode: any run of blanks separates fields
        std::size_t i = 0;
        while (i < view.size()) {
            while (i < view.size() && (view[i] == ' ' || view[i] == '\t')) ++i;
            std::size_t start = i;
            while (i < view.size() && view[i] != ' ' && view[i] != '\t') ++i;
            if (i > start) out.push_back(view.substr(start, i - start));
        }
    } else {
        std::size_t start = 0;
        while (true) {
            std::size_t pos = view.find(delimiter, start);
            if (pos == std::string_view::npos) {
                out.push_back(view.substr(start));
                break;
            }
            out.push_back(view.substr(start, pos - start));
            start = pos + 1;
        }
    }
}

bool parse_int64(std::string_view text, std::int64_t& value) {
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    return ec == std::errc() && ptr == last && !text.empty();
}

bool parse_real(std::string_view text, double& value) {
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    return ec == std::errc() && ptr == last && !text.empty();
}

std::string_view trim_cr(std::string_view v) {
    while (!v.empty() && (v.back() == '\r' || v.back() == '\n')) v.remove_suffix(1);
    return v;
}

} // namespace

TemporalGraph ingest_events(std::istream& in, const EdgeListFormat& format, IngestReport* report) {
    if (!in) throw ParseError("unreadable input stream");

    IngestReport local;
    IngestReport& rep = report ? *report : local;
    rep = IngestReport{};

    const int max_col = std::max({format.src_col, format.dst_col, format.time_col, format.weight_col});
    TemporalGraphBuilder builder;
    std::vector<std::string_view> fields;
    std::string raw;
    std::size_t line_no = 0;
    bool header_pending = format.has_header;

    auto note_malformed = [&](std::size_t line, const std::string& reason) {
        ++rep.malformed_lines;
        if (rep.malformed_samples.size() < 10) rep.malformed_samples.emplace_back(line, reason);
    };

    while (std::getline(in, raw)) {
        ++line_no;
        std::string line(trim_cr(raw));
        if (line.empty()) continue;
        if (line[0] == '#') {
            ++rep.comment_lines;
            continue;
        }
        if (header_pending) {
            header_pending = false;
            continue;
        }
        split_fields(line, format.delimiter, fields);
        if (static_cast<int>(fields.size()) <= max_col) {
            note_malformed(line_no, "expected at least " + std::to_string(max_col + 1) + " fields, got " +
                                        std::to_string(fields.size()));
            continue;
        }
        std::string_view src = fields[format.src_col];
        std::string_view dst = fields[format.dst_col];
        if (src.empty() || dst.empty()) {
            note_malformed(line_no, "empty node token");
            continue;
        }
        std::int64_t time = 0;
        if (!parse_int64(fields[format.time_col], time)) {
            throw ParseError("time column not integer-parseable: '" +
                                 std::string(fields[format.time_col]) + "'",
                             line_no);
        }
        double weight = 1.0;
        if (format.weight_col >= 0) {
            if (!parse_real(fields[format.weight_col], weight) || weight < 0.0) {
                note_malformed(line_no, "bad weight field");
                continue;
            }
        }
        builder.add_event(src, dst, time, weight);
        ++rep.parsed_events;
    }

    if (in.bad()) throw ParseError("unreadable input stream");
    if (rep.parsed_events == 0) throw ParseError("zero parseable events");
    return builder.build();
}

TemporalGraph restrict_time(const TemporalGraph& g, Time start, Time end) {
    if (start >= end)
        throw InvalidIntervalError("restrict_time: start must be < end");

    TemporalGraph out;
    out.names_ = g.names_;
    auto range = g.events_in(start, end);
    out.events_.assign(range.begin(), range.end());
    if (!out.events_.empty()) {
        out.t_min_ = out.events_.front().time;
        out.t_max_ = out.events_.back().time;
    }
    std::vector<NodeId> universe;
    universe.reserve(out.events_.size() * 2);
    for (const auto& e : out.events_) {
        universe.push_back(e.src);
        universe.push_back(e.dst);
    }
    std::sort(universe.begin(), universe.end());
    universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
    out.universe_ = std::move(universe);
    return out;
}

Snapshot snapshot_from_events(std::span<const TemporalEvent> events, Time start, Time end) {
    Snapshot snap;
    snap.window_start = start;
    snap.window_end = end;
    snap.nodes.reserve(events.size() * 2);
    snap.edges.reserve(events.size());
    for (const auto& e : events) {
        snap.nodes.push_back(e.src);
        snap.nodes.push_back(e.dst);
        if (e.src == e.dst) continue; // self-loop
        NodeId u = std::min(e.src, e.dst);
        NodeId v = std::max(e.src, e.dst);
        snap.edges.emplace_back(u, v);
    }
    std::sort(snap.nodes.begin(), snap.nodes.end());
    snap.nodes.erase(std::unique(snap.nodes.begin(), snap.nodes.end()), snap.nodes.end());
    std::sort(snap.edges.begin(), snap.edges.end());
    snap.edges.erase(std::unique(snap.edges.begin(), snap.edges.end()), snap.edges.end());
    return snap;
}

std::vector<Snapshot> extract_snapshots(const TemporalGraph& g, Time window_length, Time stride) {
    if (window_length <= 0) throw InvalidWindowError("window_length must be positive");
    if (stride <= 0) throw InvalidWindowError("stride must be positive");
    if (stride > window_length) throw InvalidWindowError("stride must not exceed window_length");

    std::vector<Snapshot> snapshots;
    if (g.empty()) return snapshots;

    const Time t0 = g.t_min();
    const Time t_last = g.t_max();
    for (Time start = t0;; start += stride) {
        snapshots.push_back(snapshot_from_events(g.events_in(start, start + window_length), start,
                                                 start + window_length));
        if (start > t_last - stride) break; // next start would exceed t_max
    }
    return snapshots;
}

Time parse_duration(std::string_view text) {
    if (text.empty()) throw InvalidWindowError("empty duration");
    Time multiplier = 1;
    char suffix = text.back();
    if (suffix == 's' || suffix == 'm' || suffix == 'h' || suffix == 'd') {
        switch (suffix) {
        case 's': multiplier = 1; break;
        case 'm': multiplier = 60; break;
        case 'h': multiplier = 3600; break;
        case 'd': multiplier = 86400; break;
        }
        text.remove_suffix(1);
    }
    std::int64_t value = 0;
    if (!text.empty()) {
        const char* first = text.data();
        const char* last = text.data() + text.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last) throw InvalidWindowError("bad duration: " + std::string(text));
    } else {
        throw InvalidWindowError("bad duration");
    }
    if (value <= 0) throw InvalidWindowError("duration must be positive");
    return value * multiplier;
}

} // namespace tempo
