#include "sfa/dft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sfa {
namespace {

std::complex<double> unit_phasor(std::size_t num, std::size_t den) {
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
    return {std::cos(ang), std::sin(ang)};
}

}  // namespace

std::vector<std::complex<double>> dft(const std::vector<double>& x) {
    const std::size_t n_samples = x.size();
    std::vector<std::complex<double>> out(n_samples);
    for (std::size_t k = 0; k < n_samples; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t n = 0; n < n_samples; ++n) {
            acc += x[n] * std::conj(unit_phasor((k * n) % n_samples, n_samples));
        }
        out[k] = acc;
    }
    return out;
}

std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& x) {
    const std::size_t n_samples = x.size();
    std::vector<std::complex<double>> out(n_samples);
    for (std::size_t k = 0; k < n_samples; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t n = 0; n < n_samples; ++n) {
            acc += x[n] * std::conj(unit_phasor((k * n) % n_samples, n_samples));
        }
        out[k] = acc;
    }
    return out;
}

std::vector<std::complex<double>> idft(const std::vector<std::complex<double>>& X) {
    const std::size_t n_samples = X.size();
    std::vector<std::complex<double>> out(n_samples);
    for (std::size_t n = 0; n < n_samples; ++n) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t k = 0; k < n_samples; ++k) {
            acc += X[k] * unit_phasor((k * n) % n_samples, n_samples);
        }
        out[n] = acc / static_cast<double>(n_samples);
    }
    return out;
}

std::vector<std::complex<double>> dtft_samples(const std::vector<double>& x,
                                               std::size_t denominator,
                                               std::size_t count) {
    if (denominator == 0) {
        throw std::invalid_argument("dtft_samples: denominator must be positive");
    }
    std::vector<std::complex<double>> out(count);
    for (std::size_t k = 0; k < count; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t n = 0; n < x.size(); ++n) {
            acc += x[n] * std::conj(unit_phasor((k * n) % denominator, denominator));
        }
        out[k] = acc;
    }
    return out;
}

}  // namespace sfa
