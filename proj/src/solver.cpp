#include "sfa/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "sfa/dft.hpp"
#include "sfa/errors.hpp"
#include "sfa/parallel.hpp"
#include "sfa/tv_denoise.hpp"

namespace sfa {
namespace {

double l2_norm(const std::vector<double>& x) {
    double acc = 0.0;
    for (double v : x) {
        acc += v * v;
    }
    return std::sqrt(acc);
}

void validate(const SolverConfig& cfg, bool denoise) {
    if (!(cfg.lam > 0.0)) {
        throw std::invalid_argument("solver: lam must be positive");
    }
    if (cfg.mu < 0.0) {
        throw std::invalid_argument("solver: mu must be nonnegative");
    }
    if (denoise && !(cfg.lam1 > 0.0)) {
        throw std::invalid_argument("solver: lam1 must be positive");
    }
    if (cfg.mm_iters == 0) {
        throw std::invalid_argument("solver: mm_iters must be positive");
    }
    if (cfg.max_admm_iters == 0) {
        throw std::invalid_argument("solver: max_admm_iters must be positive");
    }
    if (!(cfg.tol_primal > 0.0)) {
        throw std::invalid_argument("solver: tol_primal must be positive");
    }
    if (cfg.tol_change < 0.0) {
        throw std::invalid_argument("solver: tol_change must be nonnegative");
    }
}

// Surrogate objective the inner steps minimize: group norms plus the splitting
// quadratic, plus the data misfit in the denoise variant. The exact variant's
// constraint holds at every post-step iterate, so it contributes nothing here.
double mm_objective(const SolverState& st, double lam, double mu, double lam1, bool denoise) {
    const std::size_t n_samples = st.u.rows();
    const std::size_t n_freqs = st.u.cols();
    double groups = 0.0;
    for (std::size_t k = 0; k < n_freqs; ++k) {
        const double* uk = st.u.col(k);
        const double* vk = st.v.col(k);
        double e = 0.0;
        for (std::size_t n = 0; n < n_samples; ++n) {
            e += uk[n] * uk[n] + vk[n] * vk[n];
        }
        groups += std::sqrt(e);
    }
    double split = 0.0;
    for (std::size_t i = 0; i < st.u.size(); ++i) {
        const double du = st.u.data()[i] - st.at.data()[i];
        const double dv = st.v.data()[i] - st.bt.data()[i];
        split += du * du + dv * dv;
    }
    double obj = lam * groups + mu * split;
    if (denoise) {
        double misfit = 0.0;
        for (std::size_t n = 0; n < n_samples; ++n) {
            double r = 0.0;
            for (std::size_t k = 0; k < n_freqs; ++k) {
                r += st.u(n, k) * st.c(n, k) + st.v(n, k) * st.s(n, k);
            }
            const double d = st.x[n] - r;
            misfit += d * d;
        }
        obj += lam1 * misfit;
    }
    return obj;
}

Decomposition run_solve(const Signal& sig, const FrequencyGrid& grid, const SolverConfig& cfg,
                        SolveMonitor* monitor, bool denoise) {
    validate(cfg, denoise);
    const double lam = cfg.lam;
    const double mu = cfg.effective_mu();
    const double lam1 = cfg.lam1;
    const std::size_t n_samples = sig.size();
    const std::size_t n_freqs = grid.count();

    SolverState st = make_solver_state(sig.samples(), grid, cfg.spectral_init);
    Matrix a_prev(n_samples, n_freqs);
    Matrix b_prev(n_samples, n_freqs);

    const double scale = std::sqrt(static_cast<double>(n_samples * n_freqs));
    const bool trace_mm = monitor != nullptr && monitor->want_mm_objective();

    double mm_feas_max = 0.0;
    double primal = 0.0;
    bool converged = false;
    std::size_t done = 0;
    for (std::size_t it = 1; it <= cfg.max_admm_iters; ++it) {
        done = it;
        a_prev = st.a;
        b_prev = st.b;

        coefficient_step(st, mu);
        prepare_surrogate_targets(st);
        for (std::size_t m = 0; m < cfg.mm_iters; ++m) {
            double before = 0.0;
            if (trace_mm) {
                before = mm_objective(st, lam, mu, lam1, denoise);
            }
            if (denoise) {
                surrogate_step_denoise(st, lam, lam1, mu);
            } else {
                mm_feas_max = std::max(mm_feas_max, surrogate_step_exact(st, lam, mu));
            }
            if (trace_mm) {
                monitor->on_mm_step(it, m, before, mm_objective(st, lam, mu, lam1, denoise));
            }
        }
        dual_step(st);

        primal = std::max(frobenius_distance(st.u, st.a), frobenius_distance(st.v, st.b));
        if (!std::isfinite(primal)) {
            throw NonFiniteError("solver: iterates left the finite range");
        }
        const double mass = frobenius_norm(st.a) + frobenius_norm(st.b);
        const double change = (frobenius_distance(st.a, a_prev) + frobenius_distance(st.b, b_prev)) /
                              std::max(1e-300, mass);

        if (monitor != nullptr) {
            IterationStats stats;
            stats.iter = it;
            stats.objective = denoise
                                  ? objective_denoise(st.a, st.b, st.c, st.s, st.x, lam, lam1)
                                  : objective_exact(st.a, st.b, lam);
            stats.primal_residual = primal;
            stats.feasibility_gap = reconstruction_gap(st.a, st.b, st.c, st.s, st.x);
            monitor->on_iteration(stats);
        }

        if (primal <= cfg.tol_primal * scale) {
            converged = true;
            break;
        }
        if (change <= cfg.tol_change) {
            break;
        }
    }
    // Report coefficients consistent with the final spectral block and duals.
    coefficient_step(st, mu);

    Decomposition d;
    d.a = std::move(st.a);
    d.b = std::move(st.b);
    d.grid = grid;
    d.sample_rate = sig.sample_rate();
    d.info.kind = denoise ? "denoise" : "exact";
    d.info.init = st.init_label;
    d.info.lam = lam;
    d.info.lam1 = denoise ? lam1 : 0.0;
    d.info.mu = mu;
    d.info.mm_iters = cfg.mm_iters;
    d.info.max_admm_iters = cfg.max_admm_iters;
    d.info.tol_primal = cfg.tol_primal;
    d.info.tol_change = cfg.tol_change;
    d.info.admm_iterations = done;
    d.info.converged = converged;
    d.info.primal_residual = primal;
    d.info.mm_feasibility_max = mm_feas_max;
    if (denoise) {
        std::vector<double> r(n_samples, 0.0);
        for (std::size_t k = 0; k < n_freqs; ++k) {
            const double* ak = d.a.col(k);
            const double* bk = d.b.col(k);
            const double* ck = st.c.col(k);
            const double* sk = st.s.col(k);
            for (std::size_t n = 0; n < n_samples; ++n) {
                r[n] += ak[n] * ck[n] + bk[n] * sk[n];
            }
        }
        double misfit = 0.0;
        for (std::size_t n = 0; n < n_samples; ++n) {
            const double e = st.x[n] - r[n];
            misfit += e * e;
        }
        d.info.feasibility_gap = std::sqrt(misfit);
        d.info.objective = objective_denoise(d.a, d.b, st.c, st.s, st.x, lam, lam1);
    } else {
        d.info.feasibility_gap = reconstruction_gap(d.a, d.b, st.c, st.s, st.x);
        d.info.objective = objective_exact(d.a, d.b, lam);
    }
    return d;
}

}  // namespace

std::pair<Matrix, Matrix> initial_coefficients(const std::vector<double>& x,
                                               const FrequencyGrid& grid,
                                               bool spectral,
                                               std::string* label) {
    const std::size_t n_samples = x.size();
    const std::size_t n_freqs = grid.count();
    const std::size_t denom = grid.denominator();
    Matrix u(n_samples, n_freqs);
    Matrix v(n_samples, n_freqs);
    if (spectral && (denom == n_freqs || denom == 2 * n_freqs)) {
        // Sampled-spectrum start: constant columns carrying the (one-sided
        // doubled, when the grid covers only half the band) transform values.
        const auto spec = dtft_samples(x, denom, n_freqs);
        for (std::size_t k = 0; k < n_freqs; ++k) {
            double w = 1.0;
            if (denom == 2 * n_freqs && k != 0) {
                w = 2.0;
            }
            const double uk = w * spec[k].real() / static_cast<double>(denom);
            const double vk = -w * spec[k].imag() / static_cast<double>(denom);
            std::fill(u.col(k), u.col(k) + n_samples, uk);
            std::fill(v.col(k), v.col(k) + n_samples, vk);
        }
        if (label != nullptr) {
            *label = "spectral";
        }
        return {std::move(u), std::move(v)};
    }
    const double gain = 2.0 / static_cast<double>(n_freqs);
    for (std::size_t k = 0; k < n_freqs; ++k) {
        double* uk = u.col(k);
        double* vk = v.col(k);
        for (std::size_t n = 0; n < n_samples; ++n) {
            uk[n] = x[n] * grid.cosine(n, k) * gain;
            vk[n] = x[n] * grid.sine(n, k) * gain;
        }
    }
    if (label != nullptr) {
        *label = "projection";
    }
    return {std::move(u), std::move(v)};
}

SolverState make_solver_state(const std::vector<double>& x, const FrequencyGrid& grid,
                              bool spectral_init) {
    const std::size_t n_samples = x.size();
    const std::size_t n_freqs = grid.count();
    SolverState st;
    auto [c, s] = grid.trig_tables(n_samples);
    st.c = std::move(c);
    st.s = std::move(s);
    auto [u, v] = initial_coefficients(x, grid, spectral_init, &st.init_label);
    st.u = std::move(u);
    st.v = std::move(v);
    st.a = Matrix(n_samples, n_freqs);
    st.b = Matrix(n_samples, n_freqs);
    st.p = Matrix(n_samples, n_freqs);
    st.q = Matrix(n_samples, n_freqs);
    st.at = Matrix(n_samples, n_freqs);
    st.bt = Matrix(n_samples, n_freqs);
    st.rho = Matrix(n_samples, n_freqs);
    st.scratch = Matrix(n_samples, n_freqs);
    st.x = x;
    st.alpha.assign(n_samples, 0.0);
    st.rsum.assign(n_samples, 0.0);
    st.weights.assign(n_freqs, 0.0);
    st.lam_floor = 1e-12 * (1.0 + l2_norm(x));
    return st;
}

std::vector<double> surrogate_weights(const Matrix& u, const Matrix& v, double lam,
                                      double mu, double floor) {
    const std::size_t n_samples = u.rows();
    const std::size_t n_freqs = u.cols();
    std::vector<double> w(n_freqs);
    parallel_for(n_freqs, [&](std::size_t k) {
        const double* uk = u.col(k);
        const double* vk = v.col(k);
        double e = 0.0;
        for (std::size_t n = 0; n < n_samples; ++n) {
            e += uk[n] * uk[n] + vk[n] * vk[n];
        }
        const double norm = std::max(std::sqrt(e), floor);
        w[k] = norm / (2.0 * mu * norm + lam);
    });
    return w;
}

void coefficient_step(SolverState& st, double mu) {
    const std::size_t n_samples = st.a.rows();
    const std::size_t n_freqs = st.a.cols();
    const double weight = 1.0 / mu;
    parallel_for(n_freqs, [&](std::size_t k) {
        double* tmp = st.scratch.col(k);
        const double* uk = st.u.col(k);
        const double* pk = st.p.col(k);
        for (std::size_t n = 0; n < n_samples; ++n) {
            tmp[n] = uk[n] - pk[n];
        }
        tv_denoise_into(tmp, n_samples, weight, st.a.col(k));
    });
    parallel_for(n_freqs, [&](std::size_t k) {
        double* tmp = st.scratch.col(k);
        const double* vk = st.v.col(k);
        const double* qk = st.q.col(k);
        for (std::size_t n = 0; n < n_samples; ++n) {
            tmp[n] = vk[n] - qk[n];
        }
        tv_denoise_into(tmp, n_samples, weight, st.b.col(k));
    });
}

void prepare_surrogate_targets(SolverState& st) {
    const std::size_t n_samples = st.a.rows();
    const std::size_t n_freqs = st.a.cols();
    parallel_for(n_freqs, [&](std::size_t k) {
        double* atk = st.at.col(k);
        double* btk = st.bt.col(k);
        double* rk = st.rho.col(k);
        const double* ak = st.a.col(k);
        const double* bk = st.b.col(k);
        const double* pk = st.p.col(k);
        const double* qk = st.q.col(k);
        const double* ck = st.c.col(k);
        const double* sk = st.s.col(k);
        for (std::size_t n = 0; n < n_samples; ++n) {
            atk[n] = ak[n] + pk[n];
            btk[n] = bk[n] + qk[n];
            rk[n] = ck[n] * atk[n] + sk[n] * btk[n];
        }
    });
}

namespace {

// Shared core of the surrogate step. alpha_denom_extra is 0 for the exact
// variant (hard constraint) and 1/(2*lam1) for the denoise variant.
void surrogate_core(SolverState& st, double lam, double mu, double alpha_denom_extra) {
    const std::size_t n_samples = st.u.rows();
    const std::size_t n_freqs = st.u.cols();
    st.weights = surrogate_weights(st.u, st.v, lam, mu, st.lam_floor);
    double weight_sum = 0.0;
    for (std::size_t k = 0; k < n_freqs; ++k) {
        weight_sum += st.weights[k];
    }
    const double denom = alpha_denom_extra + weight_sum;
    parallel_for(n_samples, [&](std::size_t n) {
        double g = 0.0;
        for (std::size_t k = 0; k < n_freqs; ++k) {
            g += st.weights[k] * st.rho(n, k);
        }
        st.alpha[n] = (st.x[n] - 2.0 * mu * g) / denom;
    });
    parallel_for(n_freqs, [&](std::size_t k) {
        const double w = st.weights[k];
        double* uk = st.u.col(k);
        double* vk = st.v.col(k);
        const double* atk = st.at.col(k);
        const double* btk = st.bt.col(k);
        const double* ck = st.c.col(k);
        const double* sk = st.s.col(k);
        for (std::size_t n = 0; n < n_samples; ++n) {
            uk[n] = w * (st.alpha[n] * ck[n] + 2.0 * mu * atk[n]);
            vk[n] = w * (st.alpha[n] * sk[n] + 2.0 * mu * btk[n]);
        }
    });
}

}  // namespace

double surrogate_step_exact(SolverState& st, double lam, double mu) {
    surrogate_core(st, lam, mu, 0.0);
    // Postcondition: the multiplier makes the reconstruction exact; measure
    // the roundoff actually incurred.
    const std::size_t n_samples = st.u.rows();
    const std::size_t n_freqs = st.u.cols();
    std::fill(st.rsum.begin(), st.rsum.end(), 0.0);
    for (std::size_t k = 0; k < n_freqs; ++k) {
        const double* uk = st.u.col(k);
        const double* vk = st.v.col(k);
        const double* ck = st.c.col(k);
        const double* sk = st.s.col(k);
        for (std::size_t n = 0; n < n_samples; ++n) {
            st.rsum[n] += uk[n] * ck[n] + vk[n] * sk[n];
        }
    }
    double viol = 0.0;
    for (std::size_t n = 0; n < n_samples; ++n) {
        viol = std::max(viol, std::abs(st.rsum[n] - st.x[n]));
    }
    return viol;
}

void surrogate_step_denoise(SolverState& st, double lam, double lam1, double mu) {
    surrogate_core(st, lam, mu, 1.0 / (2.0 * lam1));
}

void dual_step(SolverState& st) {
    double* p = st.p.data();
    double* q = st.q.data();
    const double* u = st.u.data();
    const double* v = st.v.data();
    const double* a = st.a.data();
    const double* b = st.b.data();
    for (std::size_t i = 0; i < st.p.size(); ++i) {
        p[i] -= u[i] - a[i];
        q[i] -= v[i] - b[i];
    }
}

double objective_exact(const Matrix& a, const Matrix& b, double lam) {
    const std::size_t n_samples = a.rows();
    const std::size_t n_freqs = a.cols();
    double obj = 0.0;
    double groups = 0.0;
    for (std::size_t k = 0; k < n_freqs; ++k) {
        const double* ak = a.col(k);
        const double* bk = b.col(k);
        obj += total_variation(ak, n_samples) + total_variation(bk, n_samples);
        double e = 0.0;
        for (std::size_t n = 0; n < n_samples; ++n) {
            e += ak[n] * ak[n] + bk[n] * bk[n];
        }
        groups += std::sqrt(e);
    }
    return obj + lam * groups;
}

double objective_denoise(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& s,
                         const std::vector<double>& y, double lam, double lam1) {
    const std::size_t n_samples = a.rows();
    const std::size_t n_freqs = a.cols();
    double misfit = 0.0;
    for (std::size_t n = 0; n < n_samples; ++n) {
        double r = 0.0;
        for (std::size_t k = 0; k < n_freqs; ++k) {
            r += a(n, k) * c(n, k) + b(n, k) * s(n, k);
        }
        const double d = y[n] - r;
        misfit += d * d;
    }
    return objective_exact(a, b, lam) + lam1 * misfit;
}

double reconstruction_gap(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& s,
                          const std::vector<double>& x) {
    const std::size_t n_samples = a.rows();
    const std::size_t n_freqs = a.cols();
    double gap = 0.0;
    for (std::size_t n = 0; n < n_samples; ++n) {
        double r = 0.0;
        for (std::size_t k = 0; k < n_freqs; ++k) {
            r += a(n, k) * c(n, k) + b(n, k) * s(n, k);
        }
        gap = std::max(gap, std::abs(r - x[n]));
    }
    return gap;
}

Decomposition solve_exact(const Signal& x, const FrequencyGrid& grid,
                          const SolverConfig& cfg, SolveMonitor* monitor) {
    return run_solve(x, grid, cfg, monitor, false);
}

Decomposition solve_denoise(const Signal& y, const FrequencyGrid& grid,
                            const SolverConfig& cfg, SolveMonitor* monitor) {
    return run_solve(y, grid, cfg, monitor, true);
}

}  // namespace sfa
