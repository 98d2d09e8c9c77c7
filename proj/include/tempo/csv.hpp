#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tempo/community.hpp"
#include "tempo/similarity.hpp"
#include "tempo/synthetic.hpp"
#include "tempo/types.hpp"

namespace tempo {

// Shortest decimal form that parses back to the same double; NaN prints as
// the literal token "nan".
std::string format_double(double value);
double parse_double(std::string_view text);

// Matrix CSV: optional '#' comment lines, then a header row of window start
// times (first cell blank); each data row leads with its own start time.
// A "# measure: <tag>" comment carries the measure across a round trip.
void write_matrix_csv(std::ostream& out, const SimilarityMatrix& matrix,
                      std::string_view manifest_ref = {});
SimilarityMatrix read_matrix_csv(std::istream& in);

// Rows window_index,node_id,label after a header line. The namer maps node
// ids to output tokens (defaults to the decimal id when empty).
using NodeNamer = std::function<std::string(NodeId)>;
void write_partitions_csv(std::ostream& out, std::span<const Partition> partitions,
                          const NodeNamer& namer = {}, std::string_view manifest_ref = {});

struct LoadedPartitions {
    std::vector<Partition> partitions;
    std::vector<std::string> node_names; // token per NodeId used in the partitions
};
LoadedPartitions read_partitions_csv(std::istream& in);

// Rows node,iteration,label with the token "inactive" for pool members.
void write_trace_csv(std::ostream& out, const SynthRun& run, std::string_view manifest_ref = {});

// Rows window_index,window_start,window_end,node_count,edge_count.
void write_window_counts_csv(std::ostream& out, std::span<const std::size_t> window_indices,
                             std::span<const Snapshot> snapshots,
                             std::string_view manifest_ref = {});

} // namespace tempo
