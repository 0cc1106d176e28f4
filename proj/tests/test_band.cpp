#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "sfa/band.hpp"
#include "sfa/decomposition.hpp"
#include "sfa/synth.hpp"

using namespace sfa;

namespace {

constexpr double kPi = std::numbers::pi;

Decomposition random_decomposition(unsigned seed, std::size_t n, std::size_t k,
                                   std::size_t denom) {
    Decomposition d;
    d.grid = FrequencyGrid(k, denom);
    d.a = Matrix(n, k);
    d.b = Matrix(n, k);
    const auto noise = gaussian_noise(seed, 2 * n * k);
    for (std::size_t i = 0; i < n * k; ++i) {
        d.a.data()[i] = noise[i];
        d.b.data()[i] = noise[n * k + i];
    }
    return d;
}

// Single tone A cos(omega_k n + phi(n)) planted in column k: the cosine and
// sine coefficients are A cos(phi) and -A sin(phi).
Decomposition planted_phase(std::size_t n_samples, std::size_t k, std::size_t count,
                            std::size_t denom, double amp,
                            const std::vector<double>& phi) {
    Decomposition d;
    d.grid = FrequencyGrid(count, denom);
    d.a = Matrix(n_samples, count);
    d.b = Matrix(n_samples, count);
    for (std::size_t n = 0; n < n_samples; ++n) {
        d.a(n, k) = amp * std::cos(phi[n]);
        d.b(n, k) = -amp * std::sin(phi[n]);
    }
    return d;
}

double max_abs_diff(const std::vector<double>& x, const std::vector<double>& y) {
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
    return m;
}

}  // namespace

TEST_CASE("merge_band reproduces the raw band sum") {
    for (unsigned seed = 1; seed <= 10; ++seed) {
        const auto d = random_decomposition(seed, 40, 10, 20);
        // Odd run, even run, full grid, singleton.
        const std::vector<std::pair<std::size_t, std::size_t>> runs{
            {2, 6}, {1, 4}, {0, 9}, {7, 7}};
        for (const auto& [lo, hi] : runs) {
            std::vector<std::size_t> idx;
            for (std::size_t k = lo; k <= hi; ++k) idx.push_back(k);
            const auto merged = merge_band(d, lo, hi);
            const auto raw = extract_band(d, idx);
            CHECK(merged.has_merge);
            CHECK(merged.grid_indices == idx);
            CHECK(max_abs_diff(merged.samples, raw.samples) <= 1e-10);
            CHECK(merged.center_omega ==
                  doctest::Approx(0.5 * (d.grid.omega(lo) + d.grid.omega(hi))).epsilon(1e-15));
        }
    }
}

TEST_CASE("merge_pair is the two-element merge") {
    const auto d = random_decomposition(21, 24, 8, 16);
    const auto pair = merge_pair(d, 3);
    const auto band = merge_band(d, 3, 4);
    CHECK(pair.a_merged == band.a_merged);
    CHECK(pair.b_merged == band.b_merged);
    CHECK(pair.samples == band.samples);
    CHECK(pair.center_omega == band.center_omega);
}

TEST_CASE("merge_indices requires a contiguous ascending run") {
    const auto d = random_decomposition(22, 16, 6, 12);
    const auto runs = merge_indices(d, {2, 3, 4});
    const auto direct = merge_band(d, 2, 4);
    CHECK(runs.samples == direct.samples);
    CHECK_THROWS_AS(merge_indices(d, {}), EmptyIndexSet);
    CHECK_THROWS_AS(merge_indices(d, {1, 3}), NonContiguous);
    CHECK_THROWS_AS(merge_indices(d, {3, 2}), NonContiguous);
    CHECK_THROWS_AS(merge_indices(d, {4, 5, 6}), IndexOutOfRange);
    CHECK_THROWS_AS(merge_band(d, 4, 2), NonContiguous);
    CHECK_THROWS_AS(merge_pair(d, 5), IndexOutOfRange);
}

TEST_CASE("extract_band accepts scattered indices and averages the centre") {
    const auto d = random_decomposition(23, 20, 8, 16);
    const auto bc = extract_band(d, {1, 4, 6});
    CHECK_FALSE(bc.has_merge);
    CHECK(bc.center_omega ==
          doctest::Approx((d.grid.omega(1) + d.grid.omega(4) + d.grid.omega(6)) / 3.0)
              .epsilon(1e-15));
    std::vector<double> want(20, 0.0);
    for (std::size_t k : {std::size_t{1}, std::size_t{4}, std::size_t{6}})
        for (std::size_t n = 0; n < 20; ++n)
            want[n] += d.a(n, k) * d.grid.cosine(n, k) + d.b(n, k) * d.grid.sine(n, k);
    CHECK(max_abs_diff(bc.samples, want) <= 1e-14);
    CHECK_THROWS_AS(extract_band(d, {}), EmptyIndexSet);
    CHECK_THROWS_AS(extract_band(d, {8}), IndexOutOfRange);
}

TEST_CASE("weighted_reconstruct uses weight magnitudes") {
    const auto d = random_decomposition(24, 18, 5, 10);
    std::vector<double> w{0.0, 1.0, -1.0, 0.5, 0.0};
    const auto s = weighted_reconstruct(d, w);
    CHECK(s.sample_rate() == d.sample_rate);
    std::vector<double> want(18, 0.0);
    for (std::size_t k = 0; k < 5; ++k) {
        const double g = std::abs(w[k]);
        for (std::size_t n = 0; n < 18; ++n)
            want[n] += g * (d.a(n, k) * d.grid.cosine(n, k) + d.b(n, k) * d.grid.sine(n, k));
    }
    CHECK(max_abs_diff(s.samples(), want) <= 1e-14);
    CHECK_THROWS_AS(weighted_reconstruct(d, {1.0, 2.0}), LengthMismatch);
}

TEST_CASE("analytic envelope rebuilds the band samples") {
    const auto d = random_decomposition(25, 30, 7, 14);
    const auto bc = merge_band(d, 1, 5);
    const auto g = analytic(bc);
    REQUIRE(g.size() == bc.samples.size());
    for (std::size_t n = 0; n < g.size(); ++n) {
        CHECK(g[n].real() == bc.a_merged[n]);
        CHECK(g[n].imag() == -bc.b_merged[n]);
        const std::complex<double> ro =
            g[n] * std::exp(std::complex<double>(0.0, bc.center_omega * static_cast<double>(n)));
        CHECK(std::abs(ro.real() - bc.samples[n]) <= 1e-12);
    }
    const auto raw = extract_band(d, {1, 2});
    CHECK_THROWS_AS(analytic(raw), MissingMerge);
    CHECK_THROWS_AS(inst_phase(raw), MissingMerge);
}

TEST_CASE("a constant cosine column carries zero phase") {
    Decomposition d;
    d.grid = FrequencyGrid(8, 16);
    d.a = Matrix(12, 8);
    d.b = Matrix(12, 8);
    for (std::size_t n = 0; n < 12; ++n) d.a(n, 3) = 1.0;
    const auto bc = merge_band(d, 3, 3);
    for (std::size_t n = 0; n < 12; ++n)
        CHECK(bc.samples[n] == doctest::Approx(std::cos(d.grid.omega(3) * n)).epsilon(1e-14));
    const auto ps = inst_phase(bc);
    for (std::size_t n = 0; n < 12; ++n) {
        CHECK_FALSE(ps.mask[n]);
        CHECK(ps.theta[n] == 0.0);
    }
}

TEST_CASE("inst_phase recovers a planted phase profile") {
    std::vector<double> phi(50);
    for (std::size_t n = 0; n < 50; ++n) phi[n] = wrap_angle(0.05 * static_cast<double>(n) - 1.0);
    const auto d = planted_phase(50, 4, 10, 20, 1.7, phi);
    const auto ps = inst_phase(merge_band(d, 4, 4));
    for (std::size_t n = 0; n < 50; ++n) {
        CHECK_FALSE(ps.mask[n]);
        CHECK(ps.theta[n] == doctest::Approx(phi[n]).epsilon(1e-12));
        CHECK(ps.theta[n] > -kPi);
        CHECK(ps.theta[n] <= kPi);
    }
}

TEST_CASE("inst_phase is scale invariant and masks dead samples") {
    BandComponent bc;
    bc.has_merge = true;
    bc.center_omega = 0.3;
    bc.a_merged = {1.0, 0.0, -2.0, 0.5};
    bc.b_merged = {0.5, 0.0, 0.25, -1.0};
    bc.samples.assign(4, 0.0);
    const auto ps = inst_phase(bc);
    CHECK(ps.mask[1]);
    CHECK(std::isnan(ps.theta[1]));
    BandComponent scaled = bc;
    for (double& v : scaled.a_merged) v *= 3.75;
    for (double& v : scaled.b_merged) v *= 3.75;
    const auto ps2 = inst_phase(scaled);
    for (std::size_t n = 0; n < 4; ++n) {
        if (n == 1) continue;
        CHECK(ps2.theta[n] == doctest::Approx(ps.theta[n]).epsilon(1e-12));
    }
}

TEST_CASE("inst_phase lands on +pi at the branch cut") {
    BandComponent bc;
    bc.has_merge = true;
    bc.a_merged = {-1.0, -1.0};
    bc.b_merged = {0.0, -0.0};
    bc.samples.assign(2, 0.0);
    const auto ps = inst_phase(bc);
    CHECK(ps.theta[0] == kPi);
    CHECK(ps.theta[1] == kPi);
}

TEST_CASE("wrap_angle folds into (-pi, pi]") {
    CHECK(wrap_angle(0.0) == 0.0);
    CHECK(wrap_angle(kPi) == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(wrap_angle(-kPi) == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(wrap_angle(3.0 * kPi) == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(wrap_angle((kPi - 0.1) - (-kPi + 0.1)) == doctest::Approx(-0.2).epsilon(1e-12));
    CHECK(wrap_angle(2.0 * kPi + 0.4) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(wrap_angle(-7.5 * kPi) == doctest::Approx(0.5 * kPi).epsilon(1e-12));
}

TEST_CASE("phase_difference wraps and validates") {
    PhaseSeries p1, p2;
    p1.center_omega = p2.center_omega = 0.4;
    p1.theta = {kPi - 0.1, 0.3, -1.0};
    p2.theta = {-kPi + 0.1, 0.1, -1.0};
    const auto delta = phase_difference(p1, p2);
    CHECK(delta[0] == doctest::Approx(-0.2).epsilon(1e-12));
    CHECK(delta[1] == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(delta[2] == 0.0);

    PhaseSeries bad = p2;
    bad.theta.pop_back();
    CHECK_THROWS_AS(phase_difference(p1, bad), LengthMismatch);
    PhaseSeries off = p2;
    off.center_omega += 1e-9;
    CHECK_THROWS_AS(phase_difference(p1, off), CenterMismatch);
}

TEST_CASE("plv is one under lock and collapses under cancellation") {
    const std::vector<double> locked(20, 0.7);
    for (double v : plv(locked, 5)) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

    std::vector<double> flip(10);
    for (std::size_t n = 0; n < 10; ++n) flip[n] = (n % 2 == 0) ? 0.0 : kPi;
    const auto out = plv(flip, 2);
    for (std::size_t n = 0; n + 1 < 10; ++n) CHECK(out[n] <= 1e-12);
    CHECK(out[9] == doctest::Approx(1.0).epsilon(1e-12));  // truncated to one sample

    const auto noise = gaussian_noise(31, 40);
    std::vector<double> angles(40);
    for (std::size_t n = 0; n < 40; ++n) angles[n] = wrap_angle(noise[n]);
    for (double v : plv(angles, 7)) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }

    CHECK_THROWS_AS(plv(locked, 0), std::invalid_argument);
    CHECK_THROWS_AS(plv(locked, 21), WindowTooLarge);
    CHECK(plv(locked, 20).size() == 20);
}

TEST_CASE("measure_phase_step finds a clean plateau step") {
    std::vector<double> theta(80, 0.3);
    for (std::size_t n = 40; n < 80; ++n) theta[n] = 0.3 + 1.5;
    const auto ps = measure_phase_step(theta, 40);
    REQUIRE(ps.has_value());
    CHECK(ps->step_radians == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(ps->n10 == 39);
    CHECK(ps->n90 == 40);
    CHECK(ps->width == 1);
    CHECK(ps->midpoint == doctest::Approx(39.5).epsilon(1e-15));
}

TEST_CASE("measure_phase_step crosses the wrap boundary") {
    std::vector<double> theta(60, kPi - 0.2);
    for (std::size_t n = 30; n < 60; ++n) theta[n] = wrap_angle(kPi - 0.2 + 0.6);
    const auto ps = measure_phase_step(theta, 30);
    REQUIRE(ps.has_value());
    CHECK(ps->step_radians == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(ps->width == 1);
}

TEST_CASE("measure_phase_step tolerates gaps and reports a ramp width") {
    std::vector<double> theta(64, -0.4);
    // Linear ramp over samples 32..35, plateaus elsewhere.
    for (std::size_t n = 32; n < 36; ++n)
        theta[n] = -0.4 + 1.2 * static_cast<double>(n - 31) / 4.0;
    for (std::size_t n = 36; n < 64; ++n) theta[n] = 0.8;
    theta[30] = std::numeric_limits<double>::quiet_NaN();
    theta[37] = std::numeric_limits<double>::quiet_NaN();
    const auto ps = measure_phase_step(theta, 33);
    REQUIRE(ps.has_value());
    CHECK(ps->step_radians == doctest::Approx(1.2).epsilon(1e-12));
    // 90% of the step is reached at n=35, the last <=10% sample is n=31.
    CHECK(ps->n90 == 35);
    CHECK(ps->n10 == 31);
    CHECK(ps->width == 4);
}

TEST_CASE("measure_phase_step declines degenerate inputs") {
    const std::vector<double> flat(40, 0.9);
    CHECK_FALSE(measure_phase_step(flat, 20).has_value());

    std::vector<double> dead(40, std::numeric_limits<double>::quiet_NaN());
    CHECK_FALSE(measure_phase_step(dead, 20).has_value());

    CHECK_THROWS_AS(measure_phase_step(flat, 5), std::invalid_argument);
    CHECK_THROWS_AS(measure_phase_step(flat, 35), std::invalid_argument);
    CHECK_THROWS_AS(measure_phase_step(flat, 20, 0), std::invalid_argument);
}

TEST_CASE("planted phase flip is measured end to end") {
    const std::size_t nn = 80;
    std::vector<double> phi(nn);
    for (std::size_t n = 0; n < nn; ++n) phi[n] = n < 40 ? 0.4 : wrap_angle(0.4 + kPi * 0.9);
    const auto d = planted_phase(nn, 5, 16, 32, 1.0, phi);
    const auto ps = inst_phase(merge_band(d, 5, 5));
    const auto step = measure_phase_step(ps.theta, 40);
    REQUIRE(step.has_value());
    CHECK(step->step_radians == doctest::Approx(kPi * 0.9).epsilon(1e-10));
    CHECK(step->width == 1);
    CHECK(step->midpoint == doctest::Approx(39.5).epsilon(1e-15));
}
