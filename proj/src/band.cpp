#include "sfa/band.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace sfa {
namespace {

void check_index(const Decomposition& d, std::size_t k) {
    if (k >= d.n_freqs()) {
        throw IndexOutOfRange("band: index " + std::to_string(k) + " exceeds grid size " +
                              std::to_string(d.n_freqs()));
    }
}

std::vector<double> band_samples(const std::vector<double>& a_merged,
                                 const std::vector<double>& b_merged, double omega) {
    std::vector<double> g(a_merged.size());
    for (std::size_t n = 0; n < g.size(); ++n) {
        const double ang = omega * static_cast<double>(n);
        g[n] = a_merged[n] * std::cos(ang) + b_merged[n] * std::sin(ang);
    }
    return g;
}

// Rewrites the component pair at (omega_lo, omega_hi) against the midpoint
// frequency and accumulates the resulting amplitude pair. With
// d = (omega_hi - omega_lo)/2:
//   aM += (a_lo + a_hi) cos(d n) - (b_lo - b_hi) sin(d n)
//   bM += (b_lo + b_hi) cos(d n) + (a_lo - a_hi) sin(d n)
// The second sign is fixed by the requirement that the rewritten band
// reproduces the raw two-component sum sample for sample.
void accumulate_pair(const double* a_lo, const double* b_lo, const double* a_hi,
                     const double* b_hi, double omega_lo, double omega_hi, std::size_t n_samples,
                     std::vector<double>& a_merged, std::vector<double>& b_merged) {
    const double half_gap = 0.5 * (omega_hi - omega_lo);
    for (std::size_t n = 0; n < n_samples; ++n) {
        const double cd = std::cos(half_gap * static_cast<double>(n));
        const double sd = std::sin(half_gap * static_cast<double>(n));
        a_merged[n] += (a_lo[n] + a_hi[n]) * cd - (b_lo[n] - b_hi[n]) * sd;
        b_merged[n] += (b_lo[n] + b_hi[n]) * cd + (a_lo[n] - a_hi[n]) * sd;
    }
}

}  // namespace

BandComponent extract_band(const Decomposition& d, const std::vector<std::size_t>& indices) {
    if (indices.empty()) {
        throw EmptyIndexSet();
    }
    const std::size_t n_samples = d.n_samples();
    BandComponent bc;
    bc.grid_indices = indices;
    bc.samples.assign(n_samples, 0.0);
    bc.sample_rate = d.sample_rate;
    double omega_sum = 0.0;
    for (std::size_t k : indices) {
        check_index(d, k);
        omega_sum += d.grid.omega(k);
        const double* ak = d.a.col(k);
        const double* bk = d.b.col(k);
        for (std::size_t n = 0; n < n_samples; ++n) {
            bc.samples[n] += ak[n] * d.grid.cosine(n, k) + bk[n] * d.grid.sine(n, k);
        }
    }
    bc.center_omega = omega_sum / static_cast<double>(indices.size());
    bc.has_merge = false;
    return bc;
}

Signal weighted_reconstruct(const Decomposition& d, const std::vector<double>& weights) {
    if (weights.size() != d.n_freqs()) {
        throw LengthMismatch();
    }
    const std::size_t n_samples = d.n_samples();
    std::vector<double> g(n_samples, 0.0);
    for (std::size_t k = 0; k < d.n_freqs(); ++k) {
        const double w = std::abs(weights[k]);
        if (w == 0.0) {
            continue;
        }
        const double* ak = d.a.col(k);
        const double* bk = d.b.col(k);
        for (std::size_t n = 0; n < n_samples; ++n) {
            g[n] += w * (ak[n] * d.grid.cosine(n, k) + bk[n] * d.grid.sine(n, k));
        }
    }
    return Signal(std::move(g), d.sample_rate);
}

BandComponent merge_pair(const Decomposition& d, std::size_t m) {
    check_index(d, m);
    check_index(d, m + 1);
    return merge_band(d, m, m + 1);
}

BandComponent merge_band(const Decomposition& d, std::size_t lo, std::size_t hi) {
    if (lo > hi) {
        throw NonContiguous();
    }
    check_index(d, lo);
    check_index(d, hi);
    const std::size_t n_samples = d.n_samples();
    BandComponent bc;
    bc.grid_indices.reserve(hi - lo + 1);
    for (std::size_t k = lo; k <= hi; ++k) {
        bc.grid_indices.push_back(k);
    }
    bc.sample_rate = d.sample_rate;
    bc.center_omega = 0.5 * (d.grid.omega(lo) + d.grid.omega(hi));
    bc.a_merged.assign(n_samples, 0.0);
    bc.b_merged.assign(n_samples, 0.0);
    std::size_t i = lo;
    std::size_t j = hi;
    while (i < j) {
        accumulate_pair(d.a.col(i), d.b.col(i), d.a.col(j), d.b.col(j), d.grid.omega(i),
                        d.grid.omega(j), n_samples, bc.a_merged, bc.b_merged);
        ++i;
        --j;
    }
    if (i == j) {
        const double* ak = d.a.col(i);
        const double* bk = d.b.col(i);
        for (std::size_t n = 0; n < n_samples; ++n) {
            bc.a_merged[n] += ak[n];
            bc.b_merged[n] += bk[n];
        }
    }
    bc.samples = band_samples(bc.a_merged, bc.b_merged, bc.center_omega);
    bc.has_merge = true;
    return bc;
}

BandComponent merge_indices(const Decomposition& d, const std::vector<std::size_t>& indices) {
    if (indices.empty()) {
        throw EmptyIndexSet();
    }
    for (std::size_t i = 1; i < indices.size(); ++i) {
        if (indices[i] != indices[i - 1] + 1) {
            throw NonContiguous();
        }
    }
    return merge_band(d, indices.front(), indices.back());
}

std::vector<std::complex<double>> analytic(const BandComponent& bc) {
    if (!bc.has_merge) {
        throw MissingMerge();
    }
    std::vector<std::complex<double>> g(bc.a_merged.size());
    for (std::size_t n = 0; n < g.size(); ++n) {
        g[n] = {bc.a_merged[n], -bc.b_merged[n]};
    }
    return g;
}

PhaseSeries inst_phase(const BandComponent& bc) {
    if (!bc.has_merge) {
        throw MissingMerge();
    }
    const std::size_t n_samples = bc.a_merged.size();
    PhaseSeries ps;
    ps.center_omega = bc.center_omega;
    ps.theta.resize(n_samples);
    ps.mask.assign(n_samples, false);
    for (std::size_t n = 0; n < n_samples; ++n) {
        const double am = bc.a_merged[n];
        const double bm = bc.b_merged[n];
        if (am == 0.0 && bm == 0.0) {
            ps.mask[n] = true;
            ps.theta[n] = std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        double th = std::atan2(-bm, am);
        if (th <= -std::numbers::pi) {
            th += 2.0 * std::numbers::pi;
        }
        ps.theta[n] = th;
    }
    return ps;
}

std::vector<double> phase_difference(const PhaseSeries& p1, const PhaseSeries& p2) {
    if (p1.theta.size() != p2.theta.size()) {
        throw LengthMismatch();
    }
    if (std::abs(p1.center_omega - p2.center_omega) > 1e-12) {
        throw CenterMismatch();
    }
    std::vector<double> delta(p1.theta.size());
    for (std::size_t n = 0; n < delta.size(); ++n) {
        delta[n] = wrap_angle(p1.theta[n] - p2.theta[n]);
    }
    return delta;
}

std::vector<double> plv(const std::vector<double>& delta, std::size_t window) {
    if (window == 0) {
        throw std::invalid_argument("plv: window must be positive");
    }
    if (window > delta.size()) {
        throw WindowTooLarge();
    }
    const std::size_t n_samples = delta.size();
    const std::size_t back = (window - 1) / 2;
    const std::size_t fwd = window / 2;
    std::vector<double> out(n_samples);
    for (std::size_t n = 0; n < n_samples; ++n) {
        const std::size_t lo = n > back ? n - back : 0;
        const std::size_t hi = std::min(n_samples - 1, n + fwd);
        double re = 0.0;
        double im = 0.0;
        for (std::size_t m = lo; m <= hi; ++m) {
            re += std::cos(delta[m]);
            im += std::sin(delta[m]);
        }
        const double count = static_cast<double>(hi - lo + 1);
        out[n] = std::min(1.0, std::hypot(re, im) / count);
    }
    return out;
}

double wrap_angle(double x) {
    double w = std::fmod(x + std::numbers::pi, 2.0 * std::numbers::pi);
    if (w <= 0.0) {
        w += 2.0 * std::numbers::pi;
    }
    return w - std::numbers::pi;
}

namespace {

// Circular mean direction over [lo, hi), NaN entries skipped. Returns false
// when no usable sample exists.
bool circular_mean(const std::vector<double>& theta, std::size_t lo, std::size_t hi,
                   double& mean) {
    double re = 0.0;
    double im = 0.0;
    std::size_t used = 0;
    for (std::size_t i = lo; i < hi; ++i) {
        if (std::isnan(theta[i])) {
            continue;
        }
        re += std::cos(theta[i]);
        im += std::sin(theta[i]);
        ++used;
    }
    if (used == 0 || (re == 0.0 && im == 0.0)) {
        return false;
    }
    mean = std::atan2(im, re);
    return true;
}

}  // namespace

std::optional<PhaseStep> measure_phase_step(const std::vector<double>& theta, std::size_t hint,
                                            std::size_t half, std::size_t guard) {
    if (half == 0) {
        throw std::invalid_argument("measure_phase_step: half must be positive");
    }
    if (hint < half + guard || hint + half + guard > theta.size()) {
        throw std::invalid_argument("measure_phase_step: windows fall outside the series");
    }
    double th1 = 0.0;
    double th2 = 0.0;
    if (!circular_mean(theta, hint - half - guard, hint - guard, th1) ||
        !circular_mean(theta, hint + guard, hint + half + guard, th2)) {
        return std::nullopt;
    }
    const double step = wrap_angle(th2 - th1);
    if (step == 0.0) {
        return std::nullopt;
    }
    const std::size_t lo = hint - half;
    const std::size_t hi = hint + half;
    std::size_t n90 = hi;
    for (std::size_t i = lo; i < hi; ++i) {
        const double rho = wrap_angle(theta[i] - th1) / step;
        if (rho >= 0.9) {
            n90 = i;
            break;
        }
    }
    if (n90 == hi) {
        return std::nullopt;
    }
    bool found10 = false;
    std::size_t n10 = lo;
    for (std::size_t i = lo; i < n90; ++i) {
        const double rho = wrap_angle(theta[i] - th1) / step;
        if (rho <= 0.1) {
            n10 = i;
            found10 = true;
        }
    }
    if (!found10) {
        return std::nullopt;
    }
    PhaseStep ps;
    ps.step_radians = step;
    ps.n10 = n10;
    ps.n90 = n90;
    ps.width = n90 - n10;
    ps.midpoint = 0.5 * static_cast<double>(n10 + n90);
    return ps;
}

}  // namespace sfa
