#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace sfa {

// Direct O(N^2) transforms. Angles are reduced with exact integer arithmetic,
// so on-grid bins are free of accumulated phase error. N here is small (signal
// lengths in the hundreds), so the quadratic cost is irrelevant.

// X(k) = sum_n x(n) exp(-2*pi*i*k*n/N), k = 0..N-1.
std::vector<std::complex<double>> dft(const std::vector<double>& x);
std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& x);

// x(n) = (1/N) sum_k X(k) exp(+2*pi*i*k*n/N).
std::vector<std::complex<double>> idft(const std::vector<std::complex<double>>& X);

// DTFT of x sampled at count points f_k = k/denominator: equivalently the
// zero-padded DFT when denominator >= x.size().
std::vector<std::complex<double>> dtft_samples(const std::vector<double>& x,
                                               std::size_t denominator,
                                               std::size_t count);

}  // namespace sfa
