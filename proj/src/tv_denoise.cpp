#include "sfa/tv_denoise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sfa {

double total_variation(const double* x, std::size_t n) {
    double tv = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        tv += std::abs(x[i + 1] - x[i]);
    }
    return tv;
}

double total_variation(const std::vector<double>& x) {
    return total_variation(x.data(), x.size());
}

namespace {

void fill(double* x, std::size_t lo, std::size_t hi, double v) {
    // [lo, hi] inclusive
    for (std::size_t i = lo; i <= hi; ++i) {
        x[i] = v;
    }
}

}  // namespace

void tv_denoise_into(const double* y, std::size_t n, double lam, double* x) {
    if (!(lam >= 0.0)) {
        throw std::invalid_argument("tv_denoise: lam must be >= 0");
    }
    if (n == 0) {
        return;
    }
    if (n == 1 || lam == 0.0) {
        std::copy(y, y + n, x);
        return;
    }
    // The quadratic here carries no 1/2 factor, so the classic threshold is
    // t = lam/2. Single forward sweep maintaining the taut-string bounds
    // (vmin, vmax) with slack accumulators (umin, umax); k0 starts the current
    // undecided segment, km/kp mark where the lower/upper string last bent.
    const double t = 0.5 * lam;
    std::size_t k = 0, k0 = 0, km = 0, kp = 0;
    double vmin = y[0] - t;
    double vmax = y[0] + t;
    double umin = t;
    double umax = -t;
    for (;;) {
        if (k == n - 1) {
            fill(x, k0, k, vmin + umin / static_cast<double>(k - k0 + 1));
            return;
        }
        if (y[k + 1] + umin < vmin - t) {
            // lower string breaks: a negative jump ends the segment at km
            fill(x, k0, km, vmin);
            k = k0 = km = kp = km + 1;
            vmin = y[k];
            vmax = y[k] + 2.0 * t;
            umin = t;
            umax = -t;
        } else if (y[k + 1] + umax > vmax + t) {
            // upper string breaks: a positive jump ends the segment at kp
            fill(x, k0, kp, vmax);
            k = k0 = km = kp = kp + 1;
            vmin = y[k] - 2.0 * t;
            vmax = y[k];
            umin = t;
            umax = -t;
        } else {
            ++k;
            umin += y[k] - vmin;
            umax += y[k] - vmax;
            if (umin >= t) {
                vmin += (umin - t) / static_cast<double>(k - k0 + 1);
                umin = t;
                km = k;
            }
            if (umax <= -t) {
                vmax += (umax + t) / static_cast<double>(k - k0 + 1);
                umax = -t;
                kp = k;
            }
        }
        if (k == n - 1) {
            if (umin < 0.0) {
                fill(x, k0, km, vmin);
                k = k0 = km = km + 1;
                vmin = y[k];
                umin = t;
                umax = y[k] + t - vmax;
            } else if (umax > 0.0) {
                fill(x, k0, kp, vmax);
                k = k0 = kp = kp + 1;
                vmax = y[k];
                umax = -t;
                umin = y[k] - t - vmin;
            } else {
                fill(x, k0, n - 1, vmin + umin / static_cast<double>(k - k0 + 1));
                return;
            }
        }
    }
}

std::vector<double> tv_denoise(const std::vector<double>& y, double lam) {
    std::vector<double> x(y.size());
    tv_denoise_into(y.data(), y.size(), lam, x.data());
    return x;
}

}  // namespace sfa
