#include "tempo/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <unordered_map>

#include "tempo/errors.hpp"

namespace tempo {

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    char buffer[64];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, ptr);
}

double parse_double(std::string_view text) {
    if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ParseError("bad numeric field: '" + std::string(text) + "'");
    return value;
}

namespace {

std::int64_t parse_int(std::string_view text, std::size_t line) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ParseError("bad integer field: '" + std::string(text) + "'", line);
    return value;
}

void split_commas(const std::string& line, std::vector<std::string_view>& out) {
    out.clear();
    std::string_view view(line);
    std::size_t start = 0;
    while (true) {
        std::size_t pos = view.find(',', start);
        if (pos == std::string_view::npos) {
            out.push_back(view.substr(start));
            break;
        }
        out.push_back(view.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string chomp(const std::string& raw) {
    std::string line = raw;
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    return line;
}

void write_manifest_ref(std::ostream& out, std::string_view manifest_ref) {
    if (!manifest_ref.empty()) out << "# manifest: " << manifest_ref << "\n";
}

} // namespace

void write_matrix_csv(std::ostream& out, const SimilarityMatrix& matrix,
                      std::string_view manifest_ref) {
    write_manifest_ref(out, manifest_ref);
    out << "# measure: " << measure_name(matrix.measure) << "\n";
    for (Time start : matrix.window_starts) out << ',' << start;
    out << "\n";
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        out << matrix.window_starts[i];
        for (double v : matrix.values[i]) out << ',' << format_double(v);
        out << "\n";
    }
}

SimilarityMatrix read_matrix_csv(std::istream& in) {
    SimilarityMatrix matrix;
    std::string raw;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::vector<std::string_view> fields;

    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = chomp(raw);
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string measure_prefix = "# measure: ";
            if (line.rfind(measure_prefix, 0) == 0)
                matrix.measure = parse_measure(line.substr(measure_prefix.size()));
            continue;
        }
        split_commas(line, fields);
        if (!header_seen) {
            if (fields.size() < 2 || !fields[0].empty())
                throw ParseError("matrix header must start with an empty cell", line_no);
            for (std::size_t i = 1; i < fields.size(); ++i)
                matrix.window_starts.push_back(parse_int(fields[i], line_no));
            header_seen = true;
            continue;
        }
        if (fields.size() != matrix.window_starts.size() + 1)
            throw ParseError("matrix row has wrong field count", line_no);
        std::vector<double> row;
        row.reserve(matrix.window_starts.size());
        for (std::size_t i = 1; i < fields.size(); ++i) row.push_back(parse_double(fields[i]));
        matrix.values.push_back(std::move(row));
    }
    if (!header_seen) throw ParseError("matrix file has no header row");
    if (matrix.values.size() != matrix.window_starts.size())
        throw ParseError("matrix row count does not match header");
    return matrix;
}

void write_partitions_csv(std::ostream& out, std::span<const Partition> partitions,
                          const NodeNamer& namer, std::string_view manifest_ref) {
    write_manifest_ref(out, manifest_ref);
    out << "window_index,node_id,label\n";
    for (std::size_t w = 0; w < partitions.size(); ++w) {
        for (const auto& [node, label] : partitions[w].entries()) {
            out << w << ',' << (namer ? namer(node) : std::to_string(node)) << ',' << label
                << "\n";
        }
    }
}

LoadedPartitions read_partitions_csv(std::istream& in) {
    LoadedPartitions loaded;
    std::unordered_map<std::string, NodeId> ids;
    std::vector<std::vector<std::pair<NodeId, Label>>> per_window;

    std::string raw;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::vector<std::string_view> fields;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = chomp(raw);
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true; // column header
            continue;
        }
        split_commas(line, fields);
        if (fields.size() != 3) throw ParseError("expected window_index,node_id,label", line_no);
        const std::int64_t window = parse_int(fields[0], line_no);
        if (window < 0) throw ParseError("negative window index", line_no);
        const std::string token(fields[1]);
        auto [it, inserted] = ids.emplace(token, static_cast<NodeId>(loaded.node_names.size()));
        if (inserted) loaded.node_names.push_back(token);
        const Label label = static_cast<Label>(parse_int(fields[2], line_no));
        if (per_window.size() <= static_cast<std::size_t>(window))
            per_window.resize(static_cast<std::size_t>(window) + 1);
        per_window[static_cast<std::size_t>(window)].emplace_back(it->second, label);
    }
    if (per_window.empty()) throw ParseError("partitions file holds no rows");

    loaded.partitions.reserve(per_window.size());
    for (std::size_t w = 0; w < per_window.size(); ++w) {
        if (per_window[w].empty())
            throw ParseError("window " + std::to_string(w) + " has no partition rows");
        loaded.partitions.emplace_back(std::move(per_window[w]), static_cast<Time>(w),
                                       static_cast<Time>(w + 1));
    }
    return loaded;
}

void write_trace_csv(std::ostream& out, const SynthRun& run, std::string_view manifest_ref) {
    write_manifest_ref(out, manifest_ref);
    out << "node,iteration,label\n";
    const std::size_t iterations = run.label_trace.size();
    const std::size_t pool = iterations ? run.label_trace[0].size() : 0;
    for (std::size_t node = 0; node < pool; ++node) {
        for (std::size_t t = 0; t < iterations; ++t) {
            out << node << ',' << t << ',';
            if (run.active_trace[t][node])
                out << run.label_trace[t][node];
            else
                out << "inactive";
            out << "\n";
        }
    }
}

void write_window_counts_csv(std::ostream& out, std::span<const std::size_t> window_indices,
                             std::span<const Snapshot> snapshots, std::string_view manifest_ref) {
    write_manifest_ref(out, manifest_ref);
    out << "window_index,window_start,window_end,node_count,edge_count\n";
    for (std::size_t i = 0; i < snapshots.size(); ++i) {
        const Snapshot& s = snapshots[i];
        const std::size_t index = i < window_indices.size() ? window_indices[i] : i;
        out << index << ',' << s.window_start << ',' << s.window_end << ',' << s.node_count()
            << ',' << s.edge_count() << "\n";
    }
}

} // namespace tempo
