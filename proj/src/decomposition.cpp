#include "sfa/decomposition.hpp"

#include <cmath>

namespace sfa {

std::vector<double> reconstruct(const Decomposition& d) {
    const std::size_t n_samples = d.n_samples();
    const std::size_t n_freqs = d.n_freqs();
    std::vector<double> x(n_samples, 0.0);
    for (std::size_t k = 0; k < n_freqs; ++k) {
        const double* ak = d.a.col(k);
        const double* bk = d.b.col(k);
        for (std::size_t n = 0; n < n_samples; ++n) {
            x[n] += ak[n] * d.grid.cosine(n, k) + bk[n] * d.grid.sine(n, k);
        }
    }
    return x;
}

std::vector<double> spectrum(const Decomposition& d) {
    const std::size_t n_samples = d.n_samples();
    const std::size_t n_freqs = d.n_freqs();
    std::vector<double> z(n_freqs);
    for (std::size_t k = 0; k < n_freqs; ++k) {
        const double* ak = d.a.col(k);
        const double* bk = d.b.col(k);
        double e = 0.0;
        for (std::size_t n = 0; n < n_samples; ++n) {
            e += ak[n] * ak[n] + bk[n] * bk[n];
        }
        z[k] = std::sqrt(e);
    }
    return z;
}

}  // namespace sfa
