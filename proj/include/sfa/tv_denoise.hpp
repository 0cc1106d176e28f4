#pragma once

#include <cstddef>
#include <vector>

namespace sfa {

// Total variation of a sequence: sum_n |x(n+1) - x(n)|.
double total_variation(const double* x, std::size_t n);
double total_variation(const std::vector<double>& x);

// Exact minimizer of ||y - x||^2 + lam * sum|x(n+1)-x(n)| over x, computed by
// a direct taut-string sweep in O(N) time and O(1) extra space. lam >= 0.
// tv_denoise_into writes into a caller-owned buffer (x may not alias y);
// the solver calls it once per column per iteration.
void tv_denoise_into(const double* y, std::size_t n, double lam, double* x);
std::vector<double> tv_denoise(const std::vector<double>& y, double lam);

}  // namespace sfa
