#include "tempo/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <fstream>
#include <istream>
#include <ostream>

#include "tempo/errors.hpp"
#include "tempo/null_model.hpp"
#include "tempo/parallel.hpp"
#include "tempo/random.hpp"

namespace tempo {

std::vector<WindowScanRow> window_scan(const TemporalGraph& g, std::span<const Time> candidates,
                                       const ScanParams& params) {
    if (candidates.empty()) throw InvalidConfigError("window_scan needs at least one candidate");
    if (g.empty()) throw EmptyInputError("window_scan on an empty temporal graph");

    std::vector<WindowScanRow> rows;
    rows.reserve(candidates.size());
    for (Time length : candidates) {
        WindowScanRow row;
        row.window_length = length;
        std::vector<Snapshot> snapshots = extract_snapshots(g, length, length);

        std::vector<std::size_t> kept;
        for (std::size_t i = 0; i < snapshots.size(); ++i) {
            if (snapshots[i].empty())
                ++row.empty_slice_count;
            else
                kept.push_back(i);
        }
        row.slice_count = kept.size();
        row.degenerate = kept.empty();
        row.slices.resize(kept.size());

        parallel_for(kept.size(), params.workers, [&](std::size_t s) {
            const Snapshot& snap = snapshots[kept[s]];
            SliceStat stat;
            stat.window_start = snap.window_start;
            stat.window_end = snap.window_end;
            stat.event_count = g.events_in(snap.window_start, snap.window_end).size();
            stat.node_count = snap.node_count();
            stat.edge_count = snap.edge_count();
            stat.lcc_proportion = lcc_proportion(snap);
            stat.edge_node_ratio = edge_node_ratio(snap);

            const std::uint64_t slice_seed =
                derive_seed(params.seed, static_cast<std::uint64_t>(length), kept[s]);
            if (snap.edge_count() > 0) {
                // the z-score's own detection reuses slice_seed, so its
                // q_observed equals this modularity value
                Partition partition = louvain(snap, params.resolution, slice_seed);
                stat.modularity = modularity(snap, partition, params.resolution);
            }
            if (snap.edge_count() >= 2) {
                ZScoreReport report = modularity_zscore(snap, params.null_samples,
                                                        params.resolution, slice_seed, {},
                                                        params.swap_factor, 1);
                stat.null_mean = report.null_mean;
                stat.null_std = report.null_std;
                stat.null_samples = report.sample_count;
                if (report.z_defined) stat.z = report.z;
            }
            row.slices[s] = std::move(stat);
        });

        double lcc_sum = 0.0;
        double enr_sum = 0.0;
        double q_sum = 0.0;
        double z_sum = 0.0;
        std::size_t q_n = 0;
        std::size_t z_n = 0;
        bool sparse = true;
        for (const SliceStat& stat : row.slices) {
            lcc_sum += stat.lcc_proportion;
            enr_sum += stat.edge_node_ratio;
            if (stat.modularity) {
                q_sum += *stat.modularity;
                ++q_n;
            }
            if (stat.z) {
                z_sum += *stat.z;
                ++z_n;
            }
            if (stat.event_count > 1) sparse = false;
        }
        row.sparse = sparse;
        if (!row.slices.empty()) {
            row.mean_lcc = lcc_sum / static_cast<double>(row.slices.size());
            row.mean_edge_node_ratio = enr_sum / static_cast<double>(row.slices.size());
        }
        if (q_n > 0) row.mean_modularity = q_sum / static_cast<double>(q_n);
        if (z_n > 0) row.mean_z = z_sum / static_cast<double>(z_n);
        rows.push_back(std::move(row));
    }
    return rows;
}

PipelineResult similarity_pipeline(const TemporalGraph& g, Time window_length,
                                   double stride_fraction, const PipelineParams& params) {
    if (!(stride_fraction > 0.0 && stride_fraction <= 1.0))
        throw InvalidConfigError("stride_fraction must be in (0, 1]");
    if (window_length <= 0) throw InvalidWindowError("window_length must be positive");

    PipelineResult result;
    result.window_length = window_length;
    result.stride = std::max<Time>(
        1, static_cast<Time>(std::llround(stride_fraction * static_cast<double>(window_length))));

    std::vector<Snapshot> snapshots = extract_snapshots(g, window_length, result.stride);
    for (std::size_t i = 0; i < snapshots.size(); ++i) {
        if (snapshots[i].empty()) continue;
        result.window_indices.push_back(i);
        result.snapshots.push_back(std::move(snapshots[i]));
    }
    if (result.snapshots.empty()) throw EmptyInputError("no non-empty snapshots in range");

    result.partitions.resize(result.snapshots.size());
    parallel_for(result.snapshots.size(), params.workers, [&](std::size_t i) {
        const std::uint64_t window_seed = derive_seed(params.seed, result.window_indices[i]);
        result.partitions[i] = louvain(result.snapshots[i], params.resolution, window_seed);
    });

    result.matrices = matrices_from_partitions(result.partitions, params.measures, params.workers);
    return result;
}

std::vector<SimilarityMatrix> matrices_from_partitions(std::span<const Partition> partitions,
                                                       std::span<const Measure> measures,
                                                       int workers) {
    std::vector<SimilarityMatrix> matrices;
    matrices.reserve(measures.size());
    for (Measure measure : measures)
        matrices.push_back(pairwise_matrix(partitions, measure, workers));
    return matrices;
}

void RunManifest::set(std::string key, std::string value) {
    for (auto& [k, v] : entries) {
        if (k == key) {
            v = std::move(value);
            return;
        }
    }
    entries.emplace_back(std::move(key), std::move(value));
}

void write_manifest(std::ostream& out, const RunManifest& manifest) {
    for (const auto& [key, value] : manifest.entries) out << key << '=' << value << "\n";
}

RunManifest base_manifest() {
    RunManifest manifest;
    manifest.set("tool", "tempo");
    manifest.set("version", kToolVersion);
    std::time_t now = std::time(nullptr);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    manifest.set("created_utc", stamp);
    return manifest;
}

std::string stream_digest_hex(std::istream& in) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    char buffer[1 << 16];
    while (in.read(buffer, sizeof(buffer)) || in.gcount() > 0) {
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            hash ^= static_cast<unsigned char>(buffer[i]);
            hash *= 0x100000001b3ULL;
        }
        if (got < static_cast<std::streamsize>(sizeof(buffer))) break;
    }
    char out[17];
    std::snprintf(out, sizeof(out), "%016llx", static_cast<unsigned long long>(hash));
    return out;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

void write_scan_summary_csv(std::ostream& out, std::span<const WindowScanRow> rows,
                            std::string_view manifest_ref) {
    if (!manifest_ref.empty()) out << "# manifest: " << manifest_ref << "\n";
    out << "window_length,slice_count,empty_slice_count,degenerate,sparse,mean_lcc,"
           "mean_modularity,mean_edge_node_ratio,mean_z\n";
    for (const WindowScanRow& row : rows) {
        out << row.window_length << ',' << row.slice_count << ',' << row.empty_slice_count << ','
            << (row.degenerate ? 1 : 0) << ',' << (row.sparse ? 1 : 0) << ','
            << format_double(row.mean_lcc) << ','
            << format_double(row.mean_modularity.value_or(std::nan(""))) << ','
            << format_double(row.mean_edge_node_ratio) << ','
            << format_double(row.mean_z.value_or(std::nan(""))) << "\n";
    }
}

void write_scan_slices_csv(std::ostream& out, std::span<const WindowScanRow> rows,
                           std::string_view manifest_ref) {
    if (!manifest_ref.empty()) out << "# manifest: " << manifest_ref << "\n";
    out << "window_length,window_start,window_end,events,nodes,edges,lcc,modularity,"
           "edge_node_ratio,z\n";
    for (const WindowScanRow& row : rows) {
        for (const SliceStat& s : row.slices) {
            out << row.window_length << ',' << s.window_start << ',' << s.window_end << ','
                << s.event_count << ',' << s.node_count << ',' << s.edge_count << ','
                << format_double(s.lcc_proportion) << ','
                << format_double(s.modularity.value_or(std::nan(""))) << ','
                << format_double(s.edge_node_ratio) << ','
                << format_double(s.z.value_or(std::nan(""))) << "\n";
        }
    }
}

// one row per slice whose null model ran
void write_scan_zscores_csv(std::ostream& out, std::span<const WindowScanRow> rows,
                            std::string_view manifest_ref) {
    if (!manifest_ref.empty()) out << "# manifest: " << manifest_ref << "\n";
    out << "window_start,window_end,q_obs,mu,sigma,z,M\n";
    for (const WindowScanRow& row : rows) {
        for (const SliceStat& s : row.slices) {
            if (s.null_samples == 0) continue;
            out << s.window_start << ',' << s.window_end << ','
                << format_double(s.modularity.value_or(std::nan(""))) << ','
                << format_double(s.null_mean.value_or(std::nan(""))) << ','
                << format_double(s.null_std.value_or(std::nan(""))) << ','
                << format_double(s.z.value_or(std::nan(""))) << ',' << s.null_samples << "\n";
        }
    }
}

} // namespace

void write_pipeline_run(const std::filesystem::path& dir, const PipelineResult& result,
                        const NodeNamer& namer, const RunManifest& manifest) {
    std::filesystem::create_directories(dir);
    {
        auto out = open_out(dir / kManifestFile);
        write_manifest(out, manifest);
    }
    {
        auto out = open_out(dir / "partitions.csv");
        write_partitions_csv(out, result.partitions, namer, kManifestFile);
    }
    {
        auto out = open_out(dir / "window_counts.csv");
        write_window_counts_csv(out, result.window_indices, result.snapshots, kManifestFile);
    }
    for (const SimilarityMatrix& matrix : result.matrices) {
        auto out = open_out(dir / ("matrix_" + std::string(measure_name(matrix.measure)) + ".csv"));
        write_matrix_csv(out, matrix, kManifestFile);
    }
}

void write_scan_run(const std::filesystem::path& dir, std::span<const WindowScanRow> rows,
                    const RunManifest& manifest) {
    std::filesystem::create_directories(dir);
    {
        auto out = open_out(dir / kManifestFile);
        write_manifest(out, manifest);
    }
    {
        auto out = open_out(dir / "scan_summary.csv");
        write_scan_summary_csv(out, rows, kManifestFile);
    }
    {
        auto out = open_out(dir / "scan_slices.csv");
        write_scan_slices_csv(out, rows, kManifestFile);
    }
    {
        auto out = open_out(dir / "scan_zscores.csv");
        write_scan_zscores_csv(out, rows, kManifestFile);
    }
}

void write_synth_cell(const std::filesystem::path& dir, const SynthRun& run,
                      std::span<const SimilarityMatrix> matrices, const RunManifest& manifest) {
    std::filesystem::create_directories(dir);
    {
        auto out = open_out(dir / kManifestFile);
        write_manifest(out, manifest);
    }
    {
        auto out = open_out(dir / "partitions.csv");
        write_partitions_csv(out, run.partitions, {}, kManifestFile);
    }
    {
        auto out = open_out(dir / "trace.csv");
        write_trace_csv(out, run, kManifestFile);
    }
    for (const SimilarityMatrix& matrix : matrices) {
        auto out = open_out(dir / ("matrix_" + std::string(measure_name(matrix.measure)) + ".csv"));
        write_matrix_csv(out, matrix, kManifestFile);
    }
}

} // namespace tempo
