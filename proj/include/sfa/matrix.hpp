#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace sfa {

// Dense column-major matrix of doubles. Column-major so that per-frequency
// columns are contiguous for the column-wise denoising steps.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }

    double& operator()(std::size_t n, std::size_t k) noexcept { return data_[k * rows_ + n]; }
    double operator()(std::size_t n, std::size_t k) const noexcept { return data_[k * rows_ + n]; }

    double* col(std::size_t k) noexcept { return data_.data() + k * rows_; }
    const double* col(std::size_t k) const noexcept { return data_.data() + k * rows_; }

    double* data() noexcept { return data_.data(); }
    const double* data() const noexcept { return data_.data(); }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Serial fixed-order accumulation; results do not depend on thread count.
inline double frobenius_norm(const Matrix& m) {
    double acc = 0.0;
    const double* p = m.data();
    for (std::size_t i = 0; i < m.size(); ++i) {
        acc += p[i] * p[i];
    }
    return std::sqrt(acc);
}

inline double frobenius_distance(const Matrix& x, const Matrix& y) {
    double acc = 0.0;
    const double* px = x.data();
    const double* py = y.data();
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = px[i] - py[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

}  // namespace sfa
