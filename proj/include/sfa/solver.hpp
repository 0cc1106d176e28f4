#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sfa/decomposition.hpp"
#include "sfa/matrix.hpp"
#include "sfa/signal.hpp"

namespace sfa {

struct SolverConfig {
    double lam = 1.0;                 // weight on the group-sparsity term
    double lam1 = 1.0;                // weight on the data misfit (denoise variant)
    double mu = 0.0;                  // splitting penalty; 0 selects lam
    std::size_t mm_iters = 3;         // surrogate minimizations per outer iteration
    std::size_t max_admm_iters = 2000;
    double tol_primal = 1e-6;         // scaled by sqrt(N*K) inside the stopping test
    double tol_change = 1e-8;         // relative (a,b) stall threshold
    bool spectral_init = true;

    double effective_mu() const noexcept { return mu > 0.0 ? mu : lam; }
};

struct IterationStats {
    std::size_t iter = 0;
    double objective = 0.0;        // problem objective at the current (a, b)
    double primal_residual = 0.0;  // max(||u-a||_F, ||v-b||_F)
    double feasibility_gap = 0.0;  // max_n |reconstruction(a,b)(n) - x(n)|
};

// Observer for per-iteration traces and inner-step objective bookkeeping.
// All hooks run serially. want_mm_objective gates an extra O(N*K) objective
// evaluation around every surrogate step.
class SolveMonitor {
public:
    virtual ~SolveMonitor() = default;
    virtual void on_iteration(const IterationStats&) {}
    virtual bool want_mm_objective() const { return false; }
    virtual void on_mm_step(std::size_t admm_iter, std::size_t mm_index,
                            double objective_before, double objective_after) {
        (void)admm_iter;
        (void)mm_index;
        (void)objective_before;
        (void)objective_after;
    }
};

// Splitting state: (a, b) carry the piecewise-constant coefficient estimate,
// (u, v) the spectral block, (p, q) the scaled duals. c, s are trig tables and
// the remaining matrices are per-iteration workspaces.
struct SolverState {
    Matrix a, b, u, v, p, q;
    Matrix c, s;
    Matrix at, bt, rho, scratch;
    std::vector<double> x;        // data vector the solve binds to
    std::vector<double> alpha;    // per-sample multiplier workspace
    std::vector<double> rsum;     // per-sample reconstruction workspace
    std::vector<double> weights;  // per-frequency surrogate weights workspace
    double lam_floor = 0.0;       // column-norm floor inside the surrogate weights
    std::string init_label;       // "spectral" or "projection"
};

// Closed-form start from sampled spectra when the grid denominator is K or 2K;
// otherwise (and when spectral is false) a per-sample projection onto each
// grid tone. Returned label matches SolverState::init_label.
std::pair<Matrix, Matrix> initial_coefficients(const std::vector<double>& x,
                                               const FrequencyGrid& grid,
                                               bool spectral,
                                               std::string* label = nullptr);

SolverState make_solver_state(const std::vector<double>& x, const FrequencyGrid& grid,
                              bool spectral_init);

// w_k = L_k / (2*mu*L_k + lam) where L_k = max(column norm of (u_k, v_k), floor).
// Each weight lies in (0, 1/(2*mu)).
std::vector<double> surrogate_weights(const Matrix& u, const Matrix& v, double lam,
                                      double mu, double floor);

// (a_k, b_k) <- column-wise total-variation denoising of (u_k - p_k, v_k - q_k)
// with weight 1/mu.
void coefficient_step(SolverState& st, double mu);

// Caches at = a + p, bt = b + q and rho = c .* at + s .* bt for the surrogate
// steps of one outer iteration.
void prepare_surrogate_targets(SolverState& st);

// One majorize-minimize step on the (u, v) block. The exact variant solves for
// the multiplier enforcing the per-sample reconstruction constraint and
// returns the measured constraint violation; the denoise variant absorbs the
// quadratic misfit into the multiplier instead.
double surrogate_step_exact(SolverState& st, double lam, double mu);
void surrogate_step_denoise(SolverState& st, double lam, double lam1, double mu);

// p <- p - (u - a), q <- q - (v - b).
void dual_step(SolverState& st);

// Problem objectives evaluated at (a, b).
double objective_exact(const Matrix& a, const Matrix& b, double lam);
double objective_denoise(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& s,
                         const std::vector<double>& y, double lam, double lam1);

// max_n |sum_k a(n,k)c(n,k) + b(n,k)s(n,k) - x(n)|.
double reconstruction_gap(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& s,
                          const std::vector<double>& x);

// Decompose x over the grid subject to exact per-sample reconstruction.
Decomposition solve_exact(const Signal& x, const FrequencyGrid& grid,
                          const SolverConfig& cfg, SolveMonitor* monitor = nullptr);

// Decompose noisy y over the grid with a quadratic misfit term weighted by lam1.
Decomposition solve_denoise(const Signal& y, const FrequencyGrid& grid,
                            const SolverConfig& cfg, SolveMonitor* monitor = nullptr);

}  // namespace sfa
