#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sfa/band.hpp"
#include "sfa/decomposition.hpp"
#include "sfa/matrix.hpp"
#include "sfa/signal.hpp"
#include "sfa/solver.hpp"

namespace sfa {

// All CSV numbers are written with 17 significant digits, enough for doubles
// to survive a write/read round trip bit for bit. Readers are strict: every
// data line must parse completely, and structural problems surface as IoError
// with the path and line attached. Lines starting with '#' are headers or
// comments.

// One sample per line; optional "# sample_rate=<value>" header.
Signal read_signal_csv(const std::string& path);
void write_signal_csv(const std::string& path, const Signal& x);

// Single column of numbers, comments ignored (no length or finiteness rules).
std::vector<double> read_vector_csv(const std::string& path);

// Comma-separated matrix, one row per line, rectangular.
Matrix read_matrix_csv(const std::string& path);
void write_matrix_csv(const std::string& path, const Matrix& m, const std::string& comment = "");

// Decomposition bundle: <prefix>.json metadata plus <prefix>.a.csv and
// <prefix>.b.csv coefficient matrices.
void write_decomposition(const std::string& prefix, const Decomposition& d);
Decomposition read_decomposition(const std::string& prefix);

// Columns k, f, z.
void write_spectrum_csv(const std::string& path, const FrequencyGrid& grid,
                        const std::vector<double>& z);

// Columns iter, objective, primal_residual, feasibility_gap.
void write_trace_csv(const std::string& path, const std::vector<IterationStats>& rows);

// Columns n, t, g, aM, bM, theta_deg plus center_omega / sample_rate headers.
// Components without a merged amplitude pair write nan in the last three
// columns; read_band_csv marks the result mergeless when it sees them.
void write_band_csv(const std::string& path, const BandComponent& bc);
BandComponent read_band_csv(const std::string& path);

// Columns n, t, dtheta_deg, plv.
void write_phasediff_csv(const std::string& path, const std::vector<double>& delta,
                         const std::vector<double>& locking, double sample_rate);

// Solver configuration file: a JSON object naming the analysis grid and the
// solver parameters. Unknown keys and out-of-range values raise ConfigError
// naming the field. All solver fields are optional and default to
// SolverConfig's defaults; grid_count is required.
struct AnalyzeConfig {
    SolverConfig solver;
    std::size_t grid_count = 0;
    std::size_t grid_denominator = 0;  // 0 selects grid_count

    FrequencyGrid grid() const {
        return {grid_count, grid_denominator == 0 ? grid_count : grid_denominator};
    }
};
AnalyzeConfig read_config_json(const std::string& path);

// JSON echo of the effective configuration, embedded into manifests.
std::string config_echo_json(const AnalyzeConfig& cfg);

// Every CLI run drops one of these next to its outputs.
struct RunManifest {
    std::string command;  // reconstructed invocation
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::string config_json;  // effective config echo; empty when not applicable
    double wall_seconds = 0.0;
    bool has_solver_stats = false;
    std::size_t iterations = 0;
    bool converged = false;
    double primal_residual = 0.0;
    double feasibility_gap = 0.0;
};
void write_manifest(const std::string& path, const RunManifest& m);

}  // namespace sfa
