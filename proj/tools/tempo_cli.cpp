// Command-line front end: ingest-check, window-scan, pipeline, synth, render.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tempo/csv.hpp"
#include "tempo/errors.hpp"
#include "tempo/heatmap.hpp"
#include "tempo/pipeline.hpp"
#include "tempo/random.hpp"
#include "tempo/similarity.hpp"
#include "tempo/synthetic.hpp"
#include "tempo/temporal_graph.hpp"

namespace {

namespace fs = std::filesystem;
using namespace tempo;

struct IngestOptions {
    std::string input;
    std::string delimiter = "space";
    std::string columns = "0,1,2";
    bool header = false;
    std::int64_t start = 0;
    std::int64_t end = 0;
    bool has_start = false;
    bool has_end = false;
};

void add_ingest_options(CLI::App* cmd, IngestOptions& opt) {
    cmd->add_option("--input", opt.input, "edge-list file (one event per line)")->required();
    cmd->add_option("--delimiter", opt.delimiter,
                    "field delimiter: a single character, or space|tab|comma (default space)");
    cmd->add_option("--columns", opt.columns,
                    "0-based column indices src,dst,time[,weight] (default 0,1,2)");
    cmd->add_flag("--header", opt.header, "skip the first non-comment line");
    cmd->add_option("--start", opt.start, "drop events before this timestamp")
        ->each([&](const std::string&) { opt.has_start = true; });
    cmd->add_option("--end", opt.end, "drop events at or after this timestamp")
        ->each([&](const std::string&) { opt.has_end = true; });
}

char parse_delimiter(const std::string& text) {
    if (text == "space" || text == " ") return ' ';
    if (text == "tab" || text == "\\t") return '\t';
    if (text == "comma" || text == ",") return ',';
    if (text.size() == 1) return text[0];
    throw InvalidConfigError("bad --delimiter: " + text);
}

EdgeListFormat parse_format(const IngestOptions& opt) {
    EdgeListFormat format;
    format.delimiter = parse_delimiter(opt.delimiter);
    format.has_header = opt.header;
    std::vector<int> cols;
    std::stringstream ss(opt.columns);
    std::string field;
    while (std::getline(ss, field, ',')) cols.push_back(std::stoi(field));
    if (cols.size() != 3 && cols.size() != 4)
        throw InvalidConfigError("--columns needs 3 or 4 indices");
    format.src_col = cols[0];
    format.dst_col = cols[1];
    format.time_col = cols[2];
    format.weight_col = cols.size() == 4 ? cols[3] : -1;
    return format;
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    return stream_digest_hex(in);
}

TemporalGraph load_graph(const IngestOptions& opt, IngestReport* report) {
    std::ifstream in(opt.input, std::ios::binary);
    if (!in) throw ParseError("cannot open " + opt.input);
    TemporalGraph g = ingest_events(in, parse_format(opt), report);
    if (opt.has_start || opt.has_end) {
        const Time start = opt.has_start ? opt.start : g.t_min();
        const Time end = opt.has_end ? opt.end : g.t_max() + 1;
        g = restrict_time(g, start, end);
        if (g.empty()) throw EmptyInputError("no events left after --start/--end trimming");
    }
    return g;
}

void manifest_add_ingest(RunManifest& manifest, const IngestOptions& opt) {
    manifest.set("input", opt.input);
    manifest.set("input_digest", file_digest(opt.input));
    manifest.set("delimiter", opt.delimiter);
    manifest.set("columns", opt.columns);
    if (opt.has_start) manifest.set("start", std::to_string(opt.start));
    if (opt.has_end) manifest.set("end", std::to_string(opt.end));
}

std::vector<Measure> parse_measures(const std::string& list) {
    std::vector<Measure> measures;
    std::stringstream ss(list);
    std::string field;
    while (std::getline(ss, field, ',')) measures.push_back(parse_measure(field));
    if (measures.empty()) throw InvalidConfigError("--measures is empty");
    return measures;
}

int run_ingest_check(const IngestOptions& opt) {
    IngestReport report;
    TemporalGraph g = load_graph(opt, &report);
    std::cout << "events:     " << g.event_count() << "\n"
              << "nodes:      " << g.universe_size() << "\n"
              << "t_min:      " << g.t_min() << "\n"
              << "t_max:      " << g.t_max() << "\n"
              << "span:       " << (g.t_max() - g.t_min() + 1) << "\n"
              << "malformed:  " << report.malformed_lines << "\n"
              << "comments:   " << report.comment_lines << "\n";
    for (const auto& [line, reason] : report.malformed_samples)
        std::cout << "  line " << line << ": " << reason << "\n";
    return 0;
}

int run_window_scan(const IngestOptions& opt, const std::string& windows_list,
                    const ScanParams& params, const std::string& out_dir) {
    TemporalGraph g = load_graph(opt, nullptr);

    std::vector<Time> candidates;
    std::stringstream ss(windows_list);
    std::string field;
    while (std::getline(ss, field, ',')) candidates.push_back(parse_duration(field));

    std::vector<WindowScanRow> rows = window_scan(g, candidates, params);

    RunManifest manifest = base_manifest();
    manifest.set("command", "window-scan");
    manifest_add_ingest(manifest, opt);
    manifest.set("windows", windows_list);
    manifest.set("resolution", format_double(params.resolution));
    manifest.set("null_samples", std::to_string(params.null_samples));
    manifest.set("seed", std::to_string(params.seed));
    manifest.set("workers", std::to_string(params.workers));
    write_scan_run(out_dir, rows, manifest);

    std::cout << "window_length slices empty mean_lcc mean_Q mean_enr mean_z flags\n";
    for (const WindowScanRow& row : rows) {
        std::cout << row.window_length << ' ' << row.slice_count << ' ' << row.empty_slice_count
                  << ' ' << format_double(row.mean_lcc) << ' '
                  << format_double(row.mean_modularity.value_or(std::nan(""))) << ' '
                  << format_double(row.mean_edge_node_ratio) << ' '
                  << format_double(row.mean_z.value_or(std::nan("")));
        if (row.degenerate) std::cout << " degenerate";
        if (row.sparse) std::cout << " sparse";
        std::cout << "\n";
    }
    std::cout << "wrote " << out_dir << "\n";
    return 0;
}

int run_pipeline(const IngestOptions& opt, bool has_input, const std::string& partitions_path,
                 const std::string& window_text, double stride_fraction,
                 const PipelineParams& params, const std::string& out_dir) {
    RunManifest manifest = base_manifest();
    manifest.set("command", "pipeline");
    std::string measures_text;
    for (const Measure m : params.measures) {
        if (!measures_text.empty()) measures_text += ',';
        measures_text += measure_name(m);
    }
    manifest.set("measures", measures_text);

    if (!partitions_path.empty()) {
        // detector bypass: stored partitions in, matrices out
        std::ifstream in(partitions_path, std::ios::binary);
        if (!in) throw ParseError("cannot open " + partitions_path);
        LoadedPartitions loaded = read_partitions_csv(in);
        std::vector<SimilarityMatrix> matrices =
            matrices_from_partitions(loaded.partitions, params.measures, params.workers);
        manifest.set("partitions", partitions_path);
        manifest.set("input_digest", file_digest(partitions_path));
        manifest.set("workers", std::to_string(params.workers));

        fs::create_directories(out_dir);
        {
            std::ofstream out(fs::path(out_dir) / kManifestFile, std::ios::binary);
            write_manifest(out, manifest);
        }
        for (const SimilarityMatrix& matrix : matrices) {
            std::ofstream out(fs::path(out_dir) /
                                  ("matrix_" + std::string(measure_name(matrix.measure)) + ".csv"),
                              std::ios::binary);
            write_matrix_csv(out, matrix, kManifestFile);
        }
        std::cout << "windows: " << loaded.partitions.size() << "\nwrote " << out_dir << "\n";
        return 0;
    }

    if (!has_input) throw InvalidConfigError("pipeline needs --input or --partitions");
    TemporalGraph g = load_graph(opt, nullptr);
    const Time window_length = parse_duration(window_text);
    PipelineResult result = similarity_pipeline(g, window_length, stride_fraction, params);

    manifest_add_ingest(manifest, opt);
    manifest.set("window", window_text);
    manifest.set("window_length", std::to_string(window_length));
    manifest.set("stride_fraction", format_double(stride_fraction));
    manifest.set("stride", std::to_string(result.stride));
    manifest.set("resolution", format_double(params.resolution));
    manifest.set("seed", std::to_string(params.seed));
    manifest.set("workers", std::to_string(params.workers));

    auto names = g.name_table();
    NodeNamer namer = [names](NodeId id) { return (*names)[id]; };
    write_pipeline_run(out_dir, result, namer, manifest);
    std::cout << "windows kept: " << result.partitions.size() << " (stride " << result.stride
              << ")\nwrote " << out_dir << "\n";
    return 0;
}

int run_synth(std::int64_t pool, std::int64_t network, int communities, int iterations,
              const std::string& phi_list, const std::string& psi_list, std::uint64_t seed,
              const std::string& measures_text, int workers, const std::string& out_dir) {
    std::vector<std::string> phis;
    std::vector<std::string> psis;
    {
        std::stringstream ss(phi_list);
        std::string field;
        while (std::getline(ss, field, ',')) phis.push_back(field);
        std::stringstream ss2(psi_list);
        while (std::getline(ss2, field, ',')) psis.push_back(field);
    }
    if (phis.empty() || psis.empty()) throw InvalidConfigError("--phi/--psi must be non-empty");
    std::vector<Measure> measures = parse_measures(measures_text);

    for (std::size_t pi = 0; pi < phis.size(); ++pi) {
        for (std::size_t si = 0; si < psis.size(); ++si) {
            SynthConfig cfg;
            cfg.pool_size = pool;
            cfg.network_size = network;
            cfg.community_count = communities;
            cfg.iterations = iterations;
            cfg.churn = parse_double(phis[pi]);
            cfg.flip = parse_double(psis[si]);
            cfg.seed = derive_seed(seed, pi, si);
            SynthRun run = synth_run(cfg);
            std::vector<SimilarityMatrix> matrices =
                matrices_from_partitions(run.partitions, measures, workers);

            RunManifest manifest = base_manifest();
            manifest.set("command", "synth");
            manifest.set("pool_size", std::to_string(pool));
            manifest.set("network_size", std::to_string(network));
            manifest.set("communities", std::to_string(communities));
            manifest.set("iterations", std::to_string(iterations));
            manifest.set("phi", phis[pi]);
            manifest.set("psi", psis[si]);
            manifest.set("seed", std::to_string(seed));
            manifest.set("cell_seed", std::to_string(cfg.seed));
            manifest.set("measures", measures_text);

            const fs::path cell = fs::path(out_dir) / ("phi" + phis[pi] + "_psi" + psis[si]);
            write_synth_cell(cell, run, matrices, manifest);
            std::cout << "wrote " << cell.string() << "\n";
        }
    }
    return 0;
}

int run_render(const std::string& matrix_path, const std::string& out_path, int cell_size) {
    std::ifstream in(matrix_path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + matrix_path);
    SimilarityMatrix matrix = read_matrix_csv(in);
    HeatmapStyle style;
    style.cell_size = cell_size;
    const std::string svg = render_heatmap_svg(matrix, style);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + out_path);
    out << svg;
    std::cout << "wrote " << out_path << " (" << matrix.size() << "x" << matrix.size() << ")\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"temporal community similarity toolkit"};
    app.require_subcommand(1);

    // ingest-check
    IngestOptions check_opt;
    CLI::App* check = app.add_subcommand("ingest-check", "parse an edge list and report totals");
    add_ingest_options(check, check_opt);

    // window-scan
    IngestOptions scan_opt;
    std::string scan_windows;
    ScanParams scan_params;
    std::string scan_out = "scan_out";
    CLI::App* scan = app.add_subcommand(
        "window-scan", "per-slice statistics over candidate window lengths (stride = length)");
    add_ingest_options(scan, scan_opt);
    scan->add_option("--windows", scan_windows, "comma list of window lengths, e.g. 10d,20d,40d")
        ->required();
    scan->add_option("--resolution", scan_params.resolution, "modularity resolution (default 1.0)");
    scan->add_option("--null-samples", scan_params.null_samples,
                     "configuration-model samples per slice (default 100)");
    scan->add_option("--swap-factor", scan_params.swap_factor,
                     "attempted swaps per edge when rewiring (default 10)");
    scan->add_option("--seed", scan_params.seed, "random seed (default 0)");
    scan->add_option("--workers", scan_params.workers, "worker threads (default 1)");
    scan->add_option("--out", scan_out, "output directory");

    // pipeline
    IngestOptions pipe_opt;
    std::string pipe_window;
    std::string pipe_partitions;
    std::string pipe_measures = "unmi,inmi";
    std::string pipe_out = "pipeline_out";
    double pipe_stride_fraction = 0.1;
    PipelineParams pipe_params;
    CLI::App* pipe = app.add_subcommand(
        "pipeline", "sliding-window detection and pairwise similarity matrices");
    pipe->add_option("--input", pipe_opt.input, "edge-list file (one event per line)");
    pipe->add_option("--delimiter", pipe_opt.delimiter,
                     "field delimiter: a single character, or space|tab|comma (default space)");
    pipe->add_option("--columns", pipe_opt.columns,
                     "0-based column indices src,dst,time[,weight] (default 0,1,2)");
    pipe->add_flag("--header", pipe_opt.header, "skip the first non-comment line");
    pipe->add_option("--start", pipe_opt.start, "drop events before this timestamp")
        ->each([&](const std::string&) { pipe_opt.has_start = true; });
    pipe->add_option("--end", pipe_opt.end, "drop events at or after this timestamp")
        ->each([&](const std::string&) { pipe_opt.has_end = true; });
    pipe->add_option("--partitions", pipe_partitions,
                     "stored partitions CSV; bypasses detection");
    pipe->add_option("--window", pipe_window, "window length, e.g. 10d");
    pipe->add_option("--stride-fraction", pipe_stride_fraction,
                     "stride as a fraction of the window (default 0.1)");
    pipe->add_option("--resolution", pipe_params.resolution, "modularity resolution (default 1.0)");
    pipe->add_option("--measures", pipe_measures, "comma list from nmi,unmi,inmi (default unmi,inmi)");
    pipe->add_option("--seed", pipe_params.seed, "random seed (default 0)");
    pipe->add_option("--workers", pipe_params.workers, "worker threads (default 1)");
    pipe->add_option("--out", pipe_out, "output directory");

    // synth
    std::int64_t synth_pool = 500;
    std::int64_t synth_network = 400;
    int synth_communities = 4;
    int synth_iterations = 50;
    std::string synth_phi = "0";
    std::string synth_psi = "0.001";
    std::uint64_t synth_seed = 0;
    std::string synth_measures = "unmi,inmi";
    int synth_workers = 1;
    std::string synth_out = "synth_out";
    CLI::App* synth = app.add_subcommand(
        "synth", "pool model with churn and label flips; one directory per (phi, psi) cell");
    synth->add_option("--pool-size", synth_pool, "pool size N (default 500)");
    synth->add_option("--network-size", synth_network, "active network size n (default 400)");
    synth->add_option("--communities", synth_communities, "community count (default 4)");
    synth->add_option("--iterations", synth_iterations, "iterations per run (default 50)");
    synth->add_option("--phi", synth_phi, "comma list of churn probabilities");
    synth->add_option("--psi", synth_psi, "comma list of flip probabilities");
    synth->add_option("--seed", synth_seed, "random seed (default 0)");
    synth->add_option("--measures", synth_measures, "comma list from nmi,unmi,inmi");
    synth->add_option("--workers", synth_workers, "worker threads (default 1)");
    synth->add_option("--out", synth_out, "output directory");

    // render
    std::string render_matrix;
    std::string render_out = "heatmap.svg";
    int render_cell = 0;
    CLI::App* render = app.add_subcommand("render", "SVG heatmap from a similarity-matrix CSV");
    render->add_option("--matrix", render_matrix, "matrix CSV produced by pipeline/synth")
        ->required();
    render->add_option("--out", render_out, "output SVG path");
    render->add_option("--cell-size", render_cell, "cell edge in px (default: auto)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return run_ingest_check(check_opt);
        if (scan->parsed()) return run_window_scan(scan_opt, scan_windows, scan_params, scan_out);
        if (pipe->parsed()) {
            pipe_params.measures = parse_measures(pipe_measures);
            if (!pipe_partitions.empty() && !pipe_opt.input.empty())
                throw InvalidConfigError("--partitions and --input are mutually exclusive");
            if (pipe_partitions.empty() && pipe_window.empty())
                throw InvalidConfigError("pipeline needs --window with --input");
            return run_pipeline(pipe_opt, !pipe_opt.input.empty(), pipe_partitions, pipe_window,
                                pipe_stride_fraction, pipe_params, pipe_out);
        }
        if (synth->parsed())
            return run_synth(synth_pool, synth_network, synth_communities, synth_iterations,
                             synth_phi, synth_psi, synth_seed, synth_measures, synth_workers,
                             synth_out);
        if (render->parsed()) return run_render(render_matrix, render_out, render_cell);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
