#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "sfa/matrix.hpp"

namespace sfa {

// Uniformly sampled real signal. Invariants: at least 2 samples, all finite,
// positive sample rate.
class Signal {
public:
    Signal() = default;
    explicit Signal(std::vector<double> samples, double sample_rate = 1.0);

    std::size_t size() const noexcept { return samples_.size(); }
    double operator[](std::size_t n) const noexcept { return samples_[n]; }
    const std::vector<double>& samples() const noexcept { return samples_; }
    double sample_rate() const noexcept { return sample_rate_; }

private:
    std::vector<double> samples_;
    double sample_rate_ = 1.0;
};

// Uniform analysis grid of K frequencies f_k = k / denominator, k = 0..K-1.
// denominator == K covers [0, 1); denominator == 2K covers [0, 0.5), which is
// the natural layout for real signals (no conjugate-aliased columns).
class FrequencyGrid {
public:
    explicit FrequencyGrid(std::size_t count);
    FrequencyGrid(std::size_t count, std::size_t denominator);

    static FrequencyGrid half_band(std::size_t count) { return {count, 2 * count}; }

    std::size_t count() const noexcept { return count_; }
    std::size_t denominator() const noexcept { return denom_; }
    double freq(std::size_t k) const noexcept { return static_cast<double>(k) / static_cast<double>(denom_); }
    double omega(std::size_t k) const noexcept;  // 2*pi*freq(k), radians per sample

    // cos/sin of 2*pi*f_k*n with the angle reduced through exact integer
    // arithmetic ((k*n) mod denominator), so on-grid tones are sampled without
    // argument drift.
    double cosine(std::size_t n, std::size_t k) const noexcept;
    double sine(std::size_t n, std::size_t k) const noexcept;

    // N x K tables of the above; the solver hot loops index these.
    std::pair<Matrix, Matrix> trig_tables(std::size_t n_samples) const;

    bool operator==(const FrequencyGrid&) const = default;

private:
    std::size_t count_ = 1;
    std::size_t denom_ = 1;
};

}  // namespace sfa
