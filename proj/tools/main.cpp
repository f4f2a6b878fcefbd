// Command-line front end: stats, centrality, sir, and evaluate subcommands
// over edge-list graphs with optional community partitions.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spreadrank/centrality.hpp"
#include "spreadrank/evaluation.hpp"
#include "spreadrank/graph.hpp"
#include "spreadrank/io.hpp"
#include "spreadrank/partition.hpp"
#include "spreadrank/sir.hpp"

namespace fs = std::filesystem;
using namespace spreadrank;

namespace {

// Exit codes promised by the interface: 2 unreadable/unparseable input file,
// 3 partition required but absent, 4 evaluate invoked without its inputs.
constexpr int kExitBadInput = 2;
constexpr int kExitNoPartition = 3;
constexpr int kExitMissingEvalInputs = 4;

struct CommonOpts {
    std::string graph_path;
    std::string partition_path;
    bool fallback_detect = false;
    bool lcc = false;
    std::string out_dir = ".";
    int threads = 0;
    std::uint64_t seed = 1;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool graph_required) {
    auto* g = cmd->add_option("--graph", o.graph_path, "edge list file (u v per line)");
    if (graph_required) g->required();
    cmd->add_option("--partition", o.partition_path,
                    "community file (node community per line)");
    cmd->add_flag("--fallback-detect", o.fallback_detect,
                  "derive a partition by label propagation when none is given");
    cmd->add_flag("--lcc", o.lcc, "restrict to the largest connected component");
    cmd->add_option("--out", o.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--threads", o.threads, "worker thread cap (0 = library default)");
    cmd->add_option("--seed", o.seed, "master seed for simulations and fallback detection")
        ->capture_default_str();
}

std::string network_stem(const std::string& path) {
    return fs::path(path).stem().string();
}

Graph load_graph_or_exit(const CommonOpts& o, LoadReport* report) {
    try {
        Graph g = load_edge_list_file(o.graph_path, {}, report);
        if (o.lcc) g = largest_connected_component(g);
        return g;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::exit(kExitBadInput);
    }
}

// Partition resolution shared by every subcommand that needs one. Exits with
// the documented codes instead of throwing.
Partition load_partition_or_exit(const CommonOpts& o, const Graph& g) {
    if (!o.partition_path.empty()) {
        try {
            return load_partition_file(o.partition_path, g);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            std::exit(kExitBadInput);
        }
    }
    if (o.fallback_detect) {
        Partition p = detect_fallback(g, o.seed);
        std::cerr << "note: no partition file given; using label-propagation fallback ("
                  << p.community_count() << " communities)\n";
        return p;
    }
    std::cerr << "error: this command needs a community partition; pass --partition FILE or "
                 "opt into --fallback-detect\n";
    std::exit(kExitNoPartition);
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    atomic_write(path.string(), content);
    std::cout << "wrote " << path.string() << "\n";
}

fs::path cache_dir(const CommonOpts& o) {
    if (const char* env = std::getenv("SPREADRANK_CACHE_DIR"); env && *env) return env;
    return fs::path(o.out_dir) / "cache";
}

// Cache-through computation of spreading power for one transmission rate.
SpreadScores spread_with_cache(const Graph& g, const CommonOpts& o, const SirConfig& cfg,
                               bool force) {
    const fs::path dir = cache_dir(o);
    const fs::path file = dir / spread_cache_name(g.content_hash(), cfg);
    if (!force) {
        auto cached = read_spread_cache(file.string(), g.content_hash(), cfg, g.node_count());
        if (cached) {
            std::cerr << "note: reusing cached spreading power " << file.string() << "\n";
            return *cached;
        }
    }
    SpreadScores s = spreading_power_all(g, cfg, o.threads);
    fs::create_directories(dir);
    write_spread_cache(file.string(), g.content_hash(), s);
    return s;
}

double resolve_lambda(const GraphStats& stats, const std::optional<double>& absolute,
                      double multiplier) {
    if (absolute) return *absolute;
    if (!stats.threshold_defined) {
        std::cerr << "error: epidemic threshold undefined for this graph (mean squared degree "
                     "does not exceed mean degree); pass --lambda explicitly\n";
        std::exit(kExitBadInput);
    }
    return std::min(1.0, multiplier * stats.epidemic_threshold);
}

std::int64_t resolve_runs(const std::optional<std::int64_t>& runs_flag, std::int64_t n) {
    return runs_flag ? *runs_flag : default_run_count(n);
}

std::vector<Measure> resolve_measures(const std::vector<std::string>& ids) {
    if (ids.empty()) return all_measures();
    std::vector<Measure> ms;
    for (const auto& id : ids) {
        const auto m = measure_from_id(id);
        if (!m) {
            std::string known;
            for (Measure k : all_measures()) known += std::string(" ") + measure_id(k);
            std::cerr << "error: unknown measure '" << id << "'; known:" << known << "\n";
            std::exit(kExitBadInput);
        }
        ms.push_back(*m);
    }
    return ms;
}

std::vector<double> parse_p_grid(const std::string& csv) {
    std::vector<double> grid;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        const std::size_t comma = csv.find(',', pos);
        const std::string tok = csv.substr(pos, comma == std::string::npos ? comma : comma - pos);
        if (!tok.empty()) {
            const double p = std::stod(tok);
            if (!(p > 0.0 && p <= 1.0)) {
                std::cerr << "error: --p-grid entries must lie in (0,1], got " << tok << "\n";
                std::exit(kExitBadInput);
            }
            grid.push_back(p);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (grid.empty()) {
        std::cerr << "error: --p-grid parsed to nothing\n";
        std::exit(kExitBadInput);
    }
    return grid;
}

int cmd_stats(const CommonOpts& o) {
    LoadReport report;
    const Graph g = load_graph_or_exit(o, &report);
    StatsReport r;
    r.stats = compute_stats(g, o.threads);
    r.load = report;
    r.lcc_applied = o.lcc;
    Partition p;
    if (!o.partition_path.empty() || o.fallback_detect) {
        p = load_partition_or_exit(o, g);
        const LinkSplit split = link_split(g, p);
        r.has_partition = true;
        r.mixing = mixing_parameter(split, g);
        r.modularity_value = modularity(g, p);
        r.community_count = p.community_count();
        r.partition_provenance =
            p.provenance == Partition::Provenance::File ? "file" : "fallback";
    }
    const std::string stem = network_stem(o.graph_path);
    write_file(fs::path(o.out_dir) / (stem + ".stats.json"), stats_json(r));
    write_file(fs::path(o.out_dir) / (stem + ".stats.csv"), stats_csv(r.stats));
    std::cout << "n=" << r.stats.n << " m=" << r.stats.m
              << " avg_degree=" << format_double(r.stats.avg_degree)
              << " transitivity=" << format_double(r.stats.transitivity)
              << " lambda_th=" << format_double(r.stats.epidemic_threshold);
    if (r.has_partition)
        std::cout << " communities=" << r.community_count << " mixing=" << format_double(r.mixing)
                  << " modularity=" << format_double(r.modularity_value);
    std::cout << "\n";
    return 0;
}

int cmd_centrality(const CommonOpts& o, const std::vector<std::string>& measure_ids,
                   double delta, double comm_r) {
    const Graph g = load_graph_or_exit(o, nullptr);
    const Partition p = load_partition_or_exit(o, g);
    const LinkSplit split = link_split(g, p);
    MeasureParams params;
    params.delta = delta;
    params.comm_r = comm_r;
    params.threads = o.threads;
    const std::string stem = network_stem(o.graph_path);
    for (Measure m : resolve_measures(measure_ids)) {
        const CentralityVector v = compute_measure(g, p, split, m, params);
        const Ranking r = rank_nodes(v, g);
        write_file(fs::path(o.out_dir) / (stem + "." + measure_id(m) + ".csv"),
                   centrality_csv(g, v, r));
    }
    return 0;
}

int cmd_sir(const CommonOpts& o, const std::optional<double>& lambda_abs, double lambda_mult,
            const std::optional<std::int64_t>& runs_flag, bool force) {
    const Graph g = load_graph_or_exit(o, nullptr);
    const GraphStats stats = compute_stats(g, o.threads);
    SirConfig cfg;
    cfg.lambda = resolve_lambda(stats, lambda_abs, lambda_mult);
    cfg.runs = resolve_runs(runs_flag, stats.n);
    cfg.master_seed = o.seed;
    try {
        cfg.validate();
        const SpreadScores s = spread_with_cache(g, o, cfg, force);
        const std::string stem = network_stem(o.graph_path);
        write_file(fs::path(o.out_dir) / (stem + ".spread.csv"), spread_csv(g, s));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cout << "lambda=" << format_double(cfg.lambda) << " runs=" << cfg.runs << "\n";
    return 0;
}

int cmd_evaluate(const CommonOpts& o, const std::vector<std::string>& measure_ids, double delta,
                 double comm_r, const std::optional<double>& lambda_abs, double lambda_mult,
                 const std::optional<std::int64_t>& runs_flag, bool sweep,
                 const std::string& p_grid_csv, bool force,
                 const std::vector<std::string>& aggregate_inputs, bool aggregate_mode) {
    if (aggregate_mode) {
        if (aggregate_inputs.empty()) {
            std::cerr << "error: --aggregate needs the per-network imprecision CSVs produced "
                         "by `evaluate --graph ...`; run those first\n";
            return kExitMissingEvalInputs;
        }
        // Regroup long rows into per-(network, measure) curves.
        std::vector<ImprecisionCurve> curves;
        for (const auto& path : aggregate_inputs) {
            std::vector<LongRow> rows;
            try {
                rows = read_long_csv(path);
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "; run `evaluate --graph ...` to produce "
                          << path << "\n";
                return kExitMissingEvalInputs;
            }
            for (const auto& row : rows) {
                auto it = std::find_if(curves.begin(), curves.end(), [&](const auto& c) {
                    return c.network == row.network && c.measure == row.measure;
                });
                if (it == curves.end()) {
                    curves.push_back({row.network, row.measure, row.lambda, {}, {}});
                    it = curves.end() - 1;
                } else if (it->lambda != row.lambda) {
                    std::cerr << "error: " << path << " mixes transmission rates for "
                              << row.measure << " on " << row.network
                              << "; aggregate one rate at a time\n";
                    return 1;
                }
                it->p_grid.push_back(row.p);
                it->epsilon.push_back(row.epsilon);
            }
        }
        std::vector<AggregateCurve> aggs;
        for (Measure m : resolve_measures(measure_ids)) {
            std::vector<ImprecisionCurve> of_measure;
            for (const auto& c : curves)
                if (c.measure == measure_id(m)) of_measure.push_back(c);
            if (of_measure.empty()) continue;
            try {
                aggs.push_back(cross_network_average(of_measure));
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 1;
            }
        }
        write_file(fs::path(o.out_dir) / "aggregate.csv", aggregate_csv(aggs));
        return 0;
    }

    if (o.graph_path.empty()) {
        std::cerr << "error: evaluate needs --graph (with --partition or --fallback-detect), "
                     "or --aggregate with per-network CSVs; run `stats`/`centrality`/`sir` "
                     "first if unsure\n";
        return kExitMissingEvalInputs;
    }
    const std::string stem = network_stem(o.graph_path);
    const Graph g = load_graph_or_exit(o, nullptr);
    const Partition p = load_partition_or_exit(o, g);
    const GraphStats stats = compute_stats(g, o.threads);
    MeasureParams params;
    params.delta = delta;
    params.comm_r = comm_r;
    params.threads = o.threads;

    std::vector<double> lambdas;
    if (sweep) {
        if (lambda_abs) {
            lambdas = threshold_sweep(*lambda_abs);
        } else {
            if (!stats.threshold_defined) {
                std::cerr << "error: epidemic threshold undefined; pass --lambda for sweeps\n";
                return kExitBadInput;
            }
            lambdas = threshold_sweep(lambda_mult * stats.epidemic_threshold);
        }
    } else {
        lambdas = {resolve_lambda(stats, lambda_abs, lambda_mult)};
    }
    std::vector<double> grid;
    if (!p_grid_csv.empty()) grid = parse_p_grid(p_grid_csv);
    else grid = sweep ? sweep_p_values() : default_p_grid();

    SirConfig base;
    base.runs = resolve_runs(runs_flag, stats.n);
    base.master_seed = o.seed;

    try {
        const auto rows = rate_sweep_evaluation(
            g, p, resolve_measures(measure_ids), params, lambdas, grid,
            [&](double lambda) {
                SirConfig cfg = base;
                cfg.lambda = lambda;
                cfg.validate();
                return spread_with_cache(g, o, cfg, force);
            });
        std::vector<LongRow> out_rows;
        out_rows.reserve(rows.size());
        for (const auto& r : rows)
            out_rows.push_back({stem, r.measure, r.lambda, r.p, r.epsilon});
        write_file(fs::path(o.out_dir) / (stem + ".imprecision.csv"), long_csv(out_rows));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"community-aware centrality and spreading-power evaluation"};
    app.require_subcommand(1);

    CommonOpts stats_o, cent_o, sir_o, eval_o;
    std::vector<std::string> cent_measures, eval_measures, aggregate_inputs;
    double cent_delta = 0.5, eval_delta = 0.5;
    double cent_r = 1.0, eval_r = 1.0;
    std::optional<double> sir_lambda, eval_lambda;
    double sir_mult = 1.0, eval_mult = 1.0;
    std::optional<std::int64_t> sir_runs, eval_runs;
    bool sir_force = false, eval_force = false, eval_sweep = false, eval_aggregate = false;
    std::string eval_p_grid;

    auto* stats_cmd = app.add_subcommand("stats", "graph statistics and thresholds");
    add_common(stats_cmd, stats_o, true);

    auto* cent_cmd = app.add_subcommand("centrality", "community-aware centrality CSVs");
    add_common(cent_cmd, cent_o, true);
    cent_cmd->add_option("--measures", cent_measures,
                         "measure ids (default: all of chb pc cbm comm mv cbc ksc)")
        ->delimiter(',');
    cent_cmd->add_option("--delta", cent_delta, "k-shell blend weight")->capture_default_str();
    cent_cmd->add_option("--comm-r", cent_r, "comm centrality scale")->capture_default_str();

    auto* sir_cmd = app.add_subcommand("sir", "per-node spreading power by simulation");
    add_common(sir_cmd, sir_o, true);
    sir_cmd->add_option("--lambda", sir_lambda, "absolute transmission probability");
    sir_cmd->add_option("--lambda-mult", sir_mult,
                        "transmission rate as a multiple of the epidemic threshold")
        ->capture_default_str();
    sir_cmd->add_option("--runs", sir_runs, "simulations per node (default by network size)");
    sir_cmd->add_flag("--force", sir_force, "recompute even when a cache entry exists");

    auto* eval_cmd = app.add_subcommand("evaluate", "imprecision of measures vs simulation");
    add_common(eval_cmd, eval_o, false);
    eval_cmd->add_option("--measures", eval_measures, "measure ids (default: all)")
        ->delimiter(',');
    eval_cmd->add_option("--delta", eval_delta, "k-shell blend weight")->capture_default_str();
    eval_cmd->add_option("--comm-r", eval_r, "comm centrality scale")->capture_default_str();
    eval_cmd->add_option("--lambda", eval_lambda, "absolute transmission probability");
    eval_cmd->add_option("--lambda-mult", eval_mult,
                         "transmission rate as a multiple of the epidemic threshold")
        ->capture_default_str();
    eval_cmd->add_option("--runs", eval_runs, "simulations per node (default by network size)");
    eval_cmd->add_flag("--sweep", eval_sweep, "evaluate five rates around the threshold");
    eval_cmd->add_option("--p-grid", eval_p_grid,
                         "comma-separated top fractions (default 0.02..0.20, or "
                         "0.02,0.1,0.2 with --sweep)");
    eval_cmd->add_flag("--force", eval_force, "recompute cached spreading power");
    eval_cmd->add_flag("--aggregate", eval_aggregate,
                       "aggregate per-network imprecision CSVs instead of computing");
    eval_cmd->add_option("inputs", aggregate_inputs, "imprecision CSVs for --aggregate");

    CLI11_PARSE(app, argc, argv);

    if (stats_cmd->parsed()) return cmd_stats(stats_o);
    if (cent_cmd->parsed()) return cmd_centrality(cent_o, cent_measures, cent_delta, cent_r);
    if (sir_cmd->parsed()) return cmd_sir(sir_o, sir_lambda, sir_mult, sir_runs, sir_force);
    if (eval_cmd->parsed())
        return cmd_evaluate(eval_o, eval_measures, eval_delta, eval_r, eval_lambda, eval_mult,
                            eval_runs, eval_sweep, eval_p_grid, eval_force, aggregate_inputs,
                            eval_aggregate);
    return 0;
}
