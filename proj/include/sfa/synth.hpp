#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sfa/signal.hpp"
#include "sfa/solver.hpp"

namespace sfa {

class BadBand : public std::invalid_argument {
public:
    BadBand() : std::invalid_argument("bandpass: need 0 <= lo < hi <= 0.5") {}
};

// Sinusoid A(n)cos(2*pi*freq*n + phi(n)) whose amplitude and phase switch
// once, at jump_index.
struct JumpSinusoid {
    double freq = 0.0;  // cycles per sample, [0, 0.5)
    double amp_before = 1.0;
    double amp_after = 1.0;
    double phase_before = 0.0;  // radians
    double phase_after = 0.0;
    std::size_t jump_index = 0;
};

std::vector<double> jump_component(const JumpSinusoid& spec, std::size_t n_samples);

// Sum of jump sinusoids. Validates every spec against n_samples.
Signal jump_sum(const std::vector<JumpSinusoid>& specs, std::size_t n_samples,
                double sample_rate = 1.0);

// Standard-normal stream: 64-bit Mersenne Twister raw draws mapped to (0,1)
// uniforms, paired through the Box-Muller transform. Fully specified here so
// the stream is reproducible bit for bit on any platform.
std::vector<double> gaussian_noise(std::uint64_t seed, std::size_t count);

// Bundled preset "example1": three jump sinusoids, two of them between grid
// frequencies, N=100, noise-free.
inline constexpr std::size_t kExample1Samples = 100;
std::vector<JumpSinusoid> example1_components();
std::vector<std::vector<double>> example1_truths();
Signal example1_signal();
FrequencyGrid example1_grid();    // 100 frequencies over [0, 0.5)
SolverConfig example1_config();   // exact-variant parameters

// Bundled preset "example3": a 9.5 Hz tone (sample rate 100) whose phase flips
// by 180 degrees at n=40, buried under two interferers and white noise at
// about -5 dB component SNR.
inline constexpr std::size_t kExample3Samples = 100;
inline constexpr double kExample3SampleRate = 100.0;
inline constexpr std::uint64_t kExample3Seed = 6;
struct NoisyPreset {
    Signal y;      // observed mixture
    Signal truth;  // the buried tone alone
};
NoisyPreset example3_signal(std::uint64_t seed = kExample3Seed);
FrequencyGrid example3_grid();    // 50 frequencies, 0..49 Hz
SolverConfig example3_config();   // denoise-variant parameters

// Zero-phase band-pass: DFT-domain mask over folded bin frequencies with
// raised-cosine transitions of width 0.01 (normalized). Real output.
Signal fft_bandpass(const Signal& x, double lo, double hi);

// DFT-based analytic signal: zero negative frequencies, doubled positives.
// Real part reproduces x.
std::vector<std::complex<double>> hilbert_analytic(const Signal& x);

}  // namespace sfa
