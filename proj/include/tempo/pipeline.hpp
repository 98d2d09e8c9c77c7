#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tempo/community.hpp"
#include "tempo/csv.hpp"
#include "tempo/similarity.hpp"
#include "tempo/synthetic.hpp"
#include "tempo/temporal_graph.hpp"

namespace tempo {

inline constexpr const char* kToolVersion = "0.1.0";

struct ScanParams {
    double resolution = 1.0;
    int null_samples = 100;
    int swap_factor = 10;
    std::uint64_t seed = 0;
    int workers = 1;
};

struct SliceStat {
    Time window_start = 0;
    Time window_end = 0;
    std::size_t event_count = 0;
    std::size_t node_count = 0;
    std::size_t edge_count = 0;
    double lcc_proportion = 0.0;
    double edge_node_ratio = 0.0;
    std::optional<double> modularity; // empty for edgeless slices
    std::optional<double> null_mean;  // null-model moments; empty below 2 edges
    std::optional<double> null_std;
    std::optional<double> z; // additionally empty when the deviation is 0
    int null_samples = 0;    // M; 0 when the null model did not run
};

struct WindowScanRow {
    Time window_length = 0;
    std::size_t slice_count = 0; // non-empty slices
    std::size_t empty_slice_count = 0;
    bool degenerate = false; // no slice held an event
    bool sparse = false;     // no slice held more than one event
    std::vector<SliceStat> slices;
    double mean_lcc = std::numeric_limits<double>::quiet_NaN();
    double mean_edge_node_ratio = std::numeric_limits<double>::quiet_NaN();
    std::optional<double> mean_modularity;
    std::optional<double> mean_z;
};

// Per-candidate statistics over non-overlapping slices (stride = length):
// LCC proportion, modularity, edge/node ratio, and the modularity z-score
// of every non-empty slice, plus their means.
std::vector<WindowScanRow> window_scan(const TemporalGraph& g, std::span<const Time> candidates,
                                       const ScanParams& params);

struct PipelineParams {
    double resolution = 1.0;
    std::uint64_t seed = 0;
    int workers = 1;
    std::vector<Measure> measures = {Measure::unmi, Measure::inmi};
};

struct PipelineResult {
    Time window_length = 0;
    Time stride = 0;
    std::vector<std::size_t> window_indices; // original index of each kept snapshot
    std::vector<Snapshot> snapshots;         // non-empty snapshots only
    std::vector<Partition> partitions;       // one per kept snapshot
    std::vector<SimilarityMatrix> matrices;  // parallel to params.measures
};

// Overlapping windows with stride = round(stride_fraction * window_length)
// (at least one tick), Louvain on every non-empty snapshot, then the
// requested pairwise similarity matrices.
PipelineResult similarity_pipeline(const TemporalGraph& g, Time window_length,
                                   double stride_fraction, const PipelineParams& params);

// Matrices straight from stored partitions (detector bypass).
std::vector<SimilarityMatrix> matrices_from_partitions(std::span<const Partition> partitions,
                                                       std::span<const Measure> measures,
                                                       int workers = 1);

// Flat key=value reproducibility record; every file a run writes points
// back at it.
struct RunManifest {
    std::vector<std::pair<std::string, std::string>> entries;
    void set(std::string key, std::string value);
};

void write_manifest(std::ostream& out, const RunManifest& manifest);
RunManifest base_manifest(); // tool, version, creation time

// FNV-1a 64-bit digest of a byte stream, as 16 hex digits.
std::string stream_digest_hex(std::istream& in);

inline constexpr const char* kManifestFile = "manifest.txt";

// Run-directory writers. Each creates the directory if needed, writes
// manifest.txt, and stamps every data file with a manifest reference.
void write_pipeline_run(const std::filesystem::path& dir, const PipelineResult& result,
                        const NodeNamer& namer, const RunManifest& manifest);
void write_scan_run(const std::filesystem::path& dir, std::span<const WindowScanRow> rows,
                    const RunManifest& manifest);
void write_synth_cell(const std::filesystem::path& dir, const SynthRun& run,
                      std::span<const SimilarityMatrix> matrices, const RunManifest& manifest);

} // namespace tempo
