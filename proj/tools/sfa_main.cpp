#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sfa/band.hpp"
#include "sfa/errors.hpp"
#include "sfa/io.hpp"
#include "sfa/parallel.hpp"
#include "sfa/signal.hpp"
#include "sfa/solver.hpp"
#include "sfa/synth.hpp"
#include "sfa/tv_denoise.hpp"

namespace {

// Exit codes: 0 success, 1 solver failure (non-convergence, non-finite
// iterates), 2 I/O, 3 configuration, 4 usage.
constexpr int kExitSolver = 1;
constexpr int kExitIo = 2;
constexpr int kExitConfig = 3;
constexpr int kExitUsage = 4;

struct TraceCollector : sfa::SolveMonitor {
    std::vector<sfa::IterationStats> rows;
    void on_iteration(const sfa::IterationStats& s) override { rows.push_back(s); }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    const auto dt = std::chrono::steady_clock::now() - start;
    return std::chrono::duration<double>(dt).count();
}

std::string join_args(int argc, char** argv) {
    std::string cmd;
    for (int i = 0; i < argc; ++i) {
        if (i > 0) {
            cmd += ' ';
        }
        cmd += argv[i];
    }
    return cmd;
}

unsigned resolve_threads(int cli_value) {
    if (cli_value >= 0) {
        return static_cast<unsigned>(cli_value);
    }
    const char* env = std::getenv("SFA_THREADS");
    if (env == nullptr || *env == '\0') {
        return 0;  // auto
    }
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 0) {
        throw std::invalid_argument(std::string("SFA_THREADS: not a thread count: ") + env);
    }
    return static_cast<unsigned>(v);
}

struct SynthArgs {
    std::string preset;
    std::uint64_t seed = sfa::kExample3Seed;
    std::string out;
    std::string truth;
};

int run_synth(const SynthArgs& args, const std::string& command) {
    const auto start = std::chrono::steady_clock::now();
    sfa::RunManifest manifest;
    manifest.command = command;
    if (args.preset == "example1") {
        sfa::write_signal_csv(args.out, sfa::example1_signal());
        manifest.outputs.push_back(args.out);
        if (!args.truth.empty()) {
            const auto truths = sfa::example1_truths();
            sfa::Matrix m(sfa::kExample1Samples, truths.size());
            for (std::size_t j = 0; j < truths.size(); ++j) {
                for (std::size_t n = 0; n < sfa::kExample1Samples; ++n) {
                    m(n, j) = truths[j][n];
                }
            }
            sfa::write_matrix_csv(args.truth, m, "columns: one ground-truth component each");
            manifest.outputs.push_back(args.truth);
        }
    } else {
        const auto data = sfa::example3_signal(args.seed);
        sfa::write_signal_csv(args.out, data.y);
        manifest.outputs.push_back(args.out);
        if (!args.truth.empty()) {
            sfa::write_signal_csv(args.truth, data.truth);
            manifest.outputs.push_back(args.truth);
        }
    }
    manifest.wall_seconds = seconds_since(start);
    sfa::write_manifest(args.out + ".manifest.json", manifest);
    return 0;
}

struct AnalyzeArgs {
    std::string input;
    std::string config;
    std::string mode;
    std::string prefix;
};

int run_analyze(const AnalyzeArgs& args, const std::string& command) {
    const auto start = std::chrono::steady_clock::now();
    const sfa::Signal x = sfa::read_signal_csv(args.input);
    const sfa::AnalyzeConfig cfg = sfa::read_config_json(args.config);
    const sfa::FrequencyGrid grid = cfg.grid();

    TraceCollector trace;
    const sfa::Decomposition d = args.mode == "exact"
                                     ? sfa::solve_exact(x, grid, cfg.solver, &trace)
                                     : sfa::solve_denoise(x, grid, cfg.solver, &trace);

    sfa::write_decomposition(args.prefix, d);
    sfa::write_spectrum_csv(args.prefix + ".spectrum.csv", grid, sfa::spectrum(d));
    sfa::write_trace_csv(args.prefix + ".trace.csv", trace.rows);

    sfa::RunManifest manifest;
    manifest.command = command;
    manifest.inputs = {args.input, args.config};
    manifest.outputs = {args.prefix + ".json", args.prefix + ".a.csv", args.prefix + ".b.csv",
                        args.prefix + ".spectrum.csv", args.prefix + ".trace.csv"};
    manifest.config_json = sfa::config_echo_json(cfg);
    manifest.wall_seconds = seconds_since(start);
    manifest.has_solver_stats = true;
    manifest.iterations = d.info.admm_iterations;
    manifest.converged = d.info.converged;
    manifest.primal_residual = d.info.primal_residual;
    manifest.feasibility_gap = d.info.feasibility_gap;
    sfa::write_manifest(args.prefix + ".manifest.json", manifest);

    if (!d.info.converged) {
        std::cerr << "analyze: not converged after " << d.info.admm_iterations
                  << " iterations (primal residual " << d.info.primal_residual
                  << ", feasibility gap " << d.info.feasibility_gap << ")\n";
        return kExitSolver;
    }
    return 0;
}

struct BandArgs {
    std::string prefix;
    std::vector<std::size_t> indices;
    long long lo = -1;
    long long hi = -1;
    std::string weights;
    std::string out;
};

int run_band(const BandArgs& args, const std::string& command) {
    const auto start = std::chrono::steady_clock::now();
    const int modes = (!args.indices.empty() ? 1 : 0) + (args.lo >= 0 || args.hi >= 0 ? 1 : 0) +
                      (!args.weights.empty() ? 1 : 0);
    if (modes != 1) {
        throw std::invalid_argument(
            "band: pick exactly one of --indices, --band-lo/--band-hi, --weights");
    }
    const sfa::Decomposition d = sfa::read_decomposition(args.prefix);

    sfa::BandComponent bc;
    std::vector<std::string> inputs = {args.prefix + ".json"};
    if (!args.weights.empty()) {
        const auto w = sfa::read_vector_csv(args.weights);
        inputs.push_back(args.weights);
        const sfa::Signal g = sfa::weighted_reconstruct(d, w);
        bc.samples = g.samples();
        bc.sample_rate = g.sample_rate();
        bc.center_omega = std::nan("");
        bc.has_merge = false;
    } else if (!args.indices.empty()) {
        bool contiguous = true;
        for (std::size_t i = 1; i < args.indices.size(); ++i) {
            if (args.indices[i] != args.indices[i - 1] + 1) {
                contiguous = false;
                break;
            }
        }
        // A contiguous run merges to its center frequency (instantaneous
        // phase available); a scattered set is reconstructed raw.
        bc = contiguous ? sfa::merge_indices(d, args.indices)
                        : sfa::extract_band(d, args.indices);
    } else {
        if (args.lo < 0 || args.hi < 0) {
            throw std::invalid_argument("band: need both --band-lo and --band-hi");
        }
        bc = sfa::merge_band(d, static_cast<std::size_t>(args.lo),
                             static_cast<std::size_t>(args.hi));
    }
    sfa::write_band_csv(args.out, bc);

    sfa::RunManifest manifest;
    manifest.command = command;
    manifest.inputs = inputs;
    manifest.outputs = {args.out};
    manifest.wall_seconds = seconds_since(start);
    sfa::write_manifest(args.out + ".manifest.json", manifest);
    return 0;
}

struct PhasediffArgs {
    std::string band1;
    std::string band2;
    std::size_t window = 1;
    std::string out;
};

int run_phasediff(const PhasediffArgs& args, const std::string& command) {
    const auto start = std::chrono::steady_clock::now();
    const sfa::BandComponent b1 = sfa::read_band_csv(args.band1);
    const sfa::BandComponent b2 = sfa::read_band_csv(args.band2);
    const auto delta = sfa::phase_difference(sfa::inst_phase(b1), sfa::inst_phase(b2));
    const auto locking = sfa::plv(delta, args.window);
    sfa::write_phasediff_csv(args.out, delta, locking, b1.sample_rate);

    sfa::RunManifest manifest;
    manifest.command = command;
    manifest.inputs = {args.band1, args.band2};
    manifest.outputs = {args.out};
    manifest.wall_seconds = seconds_since(start);
    sfa::write_manifest(args.out + ".manifest.json", manifest);
    return 0;
}

struct TvdArgs {
    std::string input;
    double lam = 1.0;
    std::string out;
};

int run_tvd(const TvdArgs& args, const std::string& command) {
    const auto start = std::chrono::steady_clock::now();
    const sfa::Signal y = sfa::read_signal_csv(args.input);
    sfa::Signal x(sfa::tv_denoise(y.samples(), args.lam), y.sample_rate());
    sfa::write_signal_csv(args.out, x);

    sfa::RunManifest manifest;
    manifest.command = command;
    manifest.inputs = {args.input};
    manifest.outputs = {args.out};
    manifest.wall_seconds = seconds_since(start);
    sfa::write_manifest(args.out + ".manifest.json", manifest);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparse frequency analysis: decompose a signal into sinusoids with "
                 "piecewise-constant amplitudes"};
    app.require_subcommand(1);
    int threads = -1;
    app.add_option("--threads", threads,
                   "worker threads; 0 = all hardware threads (env fallback: SFA_THREADS)");

    SynthArgs synth_args;
    auto* synth = app.add_subcommand("synth", "generate a bundled demonstration signal");
    synth->add_option("--preset", synth_args.preset, "signal preset")
        ->required()
        ->check(CLI::IsMember({"example1", "example3"}));
    synth->add_option("--seed", synth_args.seed, "noise seed (example3)");
    synth->add_option("--out", synth_args.out, "output signal CSV")->required();
    synth->add_option("--truth", synth_args.truth, "also write the ground-truth component(s)");

    AnalyzeArgs analyze_args;
    auto* analyze = app.add_subcommand("analyze", "decompose a signal over a frequency grid");
    analyze->add_option("--input", analyze_args.input, "input signal CSV")->required();
    analyze->add_option("--config", analyze_args.config, "solver config JSON")->required();
    analyze->add_option("--mode", analyze_args.mode,
                        "exact = perfect reconstruction, denoise = quadratic misfit")
        ->required()
        ->check(CLI::IsMember({"exact", "denoise"}));
    analyze->add_option("--out-prefix", analyze_args.prefix, "output path prefix")->required();

    BandArgs band_args;
    auto* band = app.add_subcommand("band", "extract a narrow-band component");
    band->add_option("--decomp", band_args.prefix, "decomposition path prefix")->required();
    band->add_option("--indices", band_args.indices, "grid indices (comma-separated)")
        ->delimiter(',');
    band->add_option("--band-lo", band_args.lo, "first grid index of the band");
    band->add_option("--band-hi", band_args.hi, "last grid index of the band");
    band->add_option("--weights", band_args.weights, "per-frequency weights CSV");
    band->add_option("--out", band_args.out, "output band CSV")->required();

    PhasediffArgs pd_args;
    auto* pd = app.add_subcommand("phasediff", "phase difference and locking of two bands");
    pd->add_option("--band1", pd_args.band1, "first band CSV")->required();
    pd->add_option("--band2", pd_args.band2, "second band CSV")->required();
    pd->add_option("--plv-window", pd_args.window, "sliding window length")->required();
    pd->add_option("--out", pd_args.out, "output CSV")->required();

    TvdArgs tvd_args;
    auto* tvd = app.add_subcommand("tvd", "total-variation denoising of a signal");
    tvd->add_option("--input", tvd_args.input, "input signal CSV")->required();
    tvd->add_option("--lam", tvd_args.lam, "regularization weight")->required();
    tvd->add_option("--out", tvd_args.out, "output signal CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    const std::string command = join_args(argc, argv);
    try {
        sfa::set_thread_count(resolve_threads(threads));
        if (synth->parsed()) {
            return run_synth(synth_args, command);
        }
        if (analyze->parsed()) {
            return run_analyze(analyze_args, command);
        }
        if (band->parsed()) {
            return run_band(band_args, command);
        }
        if (pd->parsed()) {
            return run_phasediff(pd_args, command);
        }
        return run_tvd(tvd_args, command);
    } catch (const sfa::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const sfa::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const sfa::NonFiniteError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitSolver;
    }
}
