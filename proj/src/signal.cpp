#include "sfa/signal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sfa/errors.hpp"

namespace sfa {

Signal::Signal(std::vector<double> samples, double sample_rate)
    : samples_(std::move(samples)), sample_rate_(sample_rate) {
    if (samples_.size() < 2) {
        throw std::invalid_argument("Signal: need at least 2 samples");
    }
    for (double v : samples_) {
        if (!std::isfinite(v)) {
            throw NonFiniteError("Signal: non-finite sample");
        }
    }
    if (!(sample_rate_ > 0.0) || !std::isfinite(sample_rate_)) {
        throw std::invalid_argument("Signal: sample_rate must be positive and finite");
    }
}

FrequencyGrid::FrequencyGrid(std::size_t count) : FrequencyGrid(count, count) {}

FrequencyGrid::FrequencyGrid(std::size_t count, std::size_t denominator)
    : count_(count), denom_(denominator) {
    if (count_ == 0) {
        throw std::invalid_argument("FrequencyGrid: count must be positive");
    }
    if (denom_ == 0) {
        throw std::invalid_argument("FrequencyGrid: denominator must be positive");
    }
}

double FrequencyGrid::omega(std::size_t k) const noexcept {
    return 2.0 * std::numbers::pi * freq(k);
}

double FrequencyGrid::cosine(std::size_t n, std::size_t k) const noexcept {
    const std::size_t r = (n * k) % denom_;
    return std::cos(2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(denom_));
}

double FrequencyGrid::sine(std::size_t n, std::size_t k) const noexcept {
    const std::size_t r = (n * k) % denom_;
    return std::sin(2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(denom_));
}

std::pair<Matrix, Matrix> FrequencyGrid::trig_tables(std::size_t n_samples) const {
    Matrix c(n_samples, count_);
    Matrix s(n_samples, count_);
    for (std::size_t k = 0; k < count_; ++k) {
        double* ck = c.col(k);
        double* sk = s.col(k);
        for (std::size_t n = 0; n < n_samples; ++n) {
            ck[n] = cosine(n, k);
            sk[n] = sine(n, k);
        }
    }
    return {std::move(c), std::move(s)};
}

}  // namespace sfa
