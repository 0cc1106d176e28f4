#include "sfa/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "sfa/dft.hpp"

namespace sfa {

std::vector<double> jump_component(const JumpSinusoid& spec, std::size_t n_samples) {
    if (!(spec.freq >= 0.0 && spec.freq < 0.5)) {
        throw std::invalid_argument("jump_component: freq must lie in [0, 0.5)");
    }
    if (spec.jump_index >= n_samples) {
        throw std::invalid_argument("jump_component: jump_index must be < n_samples");
    }
    std::vector<double> s(n_samples);
    for (std::size_t n = 0; n < n_samples; ++n) {
        const bool after = n >= spec.jump_index;
        const double amp = after ? spec.amp_after : spec.amp_before;
        const double phase = after ? spec.phase_after : spec.phase_before;
        s[n] = amp * std::cos(2.0 * std::numbers::pi * spec.freq * static_cast<double>(n) + phase);
    }
    return s;
}

Signal jump_sum(const std::vector<JumpSinusoid>& specs, std::size_t n_samples,
                double sample_rate) {
    std::vector<double> x(n_samples, 0.0);
    for (const auto& spec : specs) {
        const auto s = jump_component(spec, n_samples);
        for (std::size_t n = 0; n < n_samples; ++n) {
            x[n] += s[n];
        }
    }
    return Signal(std::move(x), sample_rate);
}

std::vector<double> gaussian_noise(std::uint64_t seed, std::size_t count) {
    // std::mt19937_64's output sequence is pinned by the standard, and the
    // Box-Muller mapping below is exact arithmetic on those draws; the
    // distribution adapters in <random> carry no such guarantee.
    std::mt19937_64 engine(seed);
    const double scale = 0x1p-53;
    auto uniform = [&]() {
        double u = static_cast<double>(engine() >> 11) * scale;
        if (u == 0.0) {
            u = scale;
        }
        return u;
    };
    std::vector<double> z(count);
    for (std::size_t i = 0; i < count; i += 2) {
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double ang = 2.0 * std::numbers::pi * u2;
        z[i] = r * std::cos(ang);
        if (i + 1 < count) {
            z[i + 1] = r * std::sin(ang);
        }
    }
    return z;
}

std::vector<JumpSinusoid> example1_components() {
    return {
        {0.0500, 1.2, 0.6, 0.0, 2.3562, 50},
        {0.1025, 0.9, 0.9, 0.5236, -2.0, 38},
        {0.1625, 1.0, 1.0, -1.0472, 1.1, 65},
    };
}

std::vector<std::vector<double>> example1_truths() {
    std::vector<std::vector<double>> truths;
    for (const auto& spec : example1_components()) {
        truths.push_back(jump_component(spec, kExample1Samples));
    }
    return truths;
}

Signal example1_signal() {
    return jump_sum(example1_components(), kExample1Samples, 1.0);
}

FrequencyGrid example1_grid() {
    return FrequencyGrid::half_band(100);
}

SolverConfig example1_config() {
    SolverConfig cfg;
    cfg.lam = 0.5;
    cfg.mu = 4.0;
    cfg.mm_iters = 3;
    cfg.max_admm_iters = 8000;
    cfg.tol_primal = 1e-6;
    cfg.tol_change = 1e-8;
    cfg.spectral_init = true;
    return cfg;
}

NoisyPreset example3_signal(std::uint64_t seed) {
    const double two_fifths_pi = 2.0 * std::numbers::pi / 5.0;
    const JumpSinusoid tone{0.095, 1.0, 1.0, two_fifths_pi,
                            two_fifths_pi + std::numbers::pi, 40};
    const std::vector<JumpSinusoid> interferers = {
        {0.03, 1.3, 1.3, 0.7, 0.7, 0},
        {0.17, 1.1, 1.1, -1.2, -1.2, 0},
    };
    const auto r = jump_component(tone, kExample3Samples);
    auto y = r;
    for (const auto& spec : interferers) {
        const auto s = jump_component(spec, kExample3Samples);
        for (std::size_t n = 0; n < kExample3Samples; ++n) {
            y[n] += s[n];
        }
    }
    const auto noise = gaussian_noise(seed, kExample3Samples);
    for (std::size_t n = 0; n < kExample3Samples; ++n) {
        y[n] += 0.35 * noise[n];
    }
    NoisyPreset out{Signal(std::move(y), kExample3SampleRate),
                    Signal(std::vector<double>(r), kExample3SampleRate)};
    return out;
}

FrequencyGrid example3_grid() {
    return FrequencyGrid::half_band(50);
}

SolverConfig example3_config() {
    SolverConfig cfg;
    cfg.lam = 0.7;
    cfg.lam1 = 1.0;
    cfg.mu = 0.7;
    cfg.mm_iters = 3;
    cfg.max_admm_iters = 4000;
    cfg.tol_primal = 1e-6;
    cfg.tol_change = 1e-8;
    cfg.spectral_init = true;
    return cfg;
}

Signal fft_bandpass(const Signal& x, double lo, double hi) {
    if (!(lo >= 0.0 && lo < hi && hi <= 0.5)) {
        throw BadBand();
    }
    const std::size_t n_samples = x.size();
    constexpr double width = 0.01;
    auto mask = [&](double f) {
        if (f >= lo && f <= hi) {
            return 1.0;
        }
        if (f >= lo - width && f < lo) {
            return 0.5 * (1.0 + std::cos(std::numbers::pi * (lo - f) / width));
        }
        if (f > hi && f <= hi + width) {
            return 0.5 * (1.0 + std::cos(std::numbers::pi * (f - hi) / width));
        }
        return 0.0;
    };
    auto spec = dft(x.samples());
    for (std::size_t k = 0; k < n_samples; ++k) {
        const std::size_t folded = std::min(k, n_samples - k);
        spec[k] *= mask(static_cast<double>(folded) / static_cast<double>(n_samples));
    }
    const auto back = idft(spec);
    std::vector<double> out(n_samples);
    for (std::size_t n = 0; n < n_samples; ++n) {
        out[n] = back[n].real();
    }
    return Signal(std::move(out), x.sample_rate());
}

std::vector<std::complex<double>> hilbert_analytic(const Signal& x) {
    const std::size_t n_samples = x.size();
    auto spec = dft(x.samples());
    for (std::size_t k = 0; k < n_samples; ++k) {
        double h = 0.0;
        if (k == 0 || 2 * k == n_samples) {
            h = 1.0;
        } else if (2 * k < n_samples) {
            h = 2.0;
        }
        spec[k] *= h;
    }
    return idft(spec);
}

}  // namespace sfa
