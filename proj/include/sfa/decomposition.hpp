#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sfa/matrix.hpp"
#include "sfa/signal.hpp"

namespace sfa {

// Diagnostics attached to a finished solve. converged reflects the primal
// residual test only; a change-stalled run reports converged = false with the
// residual measured at the stopping iteration.
struct SolveInfo {
    std::string kind;              // "exact" or "denoise"
    std::string init;              // "spectral" or "projection"
    double lam = 0.0;              // sparsity weight on sum_k ||column diffs||
    double lam1 = 0.0;             // data misfit weight (denoise variant only)
    double mu = 0.0;               // splitting penalty
    std::size_t mm_iters = 0;      // inner surrogate steps per outer iteration
    std::size_t max_admm_iters = 0;
    double tol_primal = 0.0;
    double tol_change = 0.0;
    std::size_t admm_iterations = 0;
    bool converged = false;
    double primal_residual = 0.0;      // max of the two split gaps at stop time
    double feasibility_gap = 0.0;      // exact-variant constraint residual, inf-norm
    double mm_feasibility_max = 0.0;   // worst inner-step constraint residual seen
    double objective = 0.0;
};

// Result of a frequency decomposition: per-sample cosine/sine coefficient
// matrices over a fixed grid. Columns are frequencies.
struct Decomposition {
    Matrix a;  // cosine coefficients, N x K
    Matrix b;  // sine coefficients, N x K
    FrequencyGrid grid{1};
    double sample_rate = 1.0;
    SolveInfo info;

    std::size_t n_samples() const noexcept { return a.rows(); }
    std::size_t n_freqs() const noexcept { return a.cols(); }
};

// sum_k a(n,k) cos(2*pi*f_k*n) + b(n,k) sin(2*pi*f_k*n), evaluated per sample.
std::vector<double> reconstruct(const Decomposition& d);

// Per-frequency energy profile z_k = sqrt(||a_k||^2 + ||b_k||^2). Satisfies
// sum_k z_k^2 = ||a||_F^2 + ||b||_F^2.
std::vector<double> spectrum(const Decomposition& d);

}  // namespace sfa
