#include "mbfem/banded.hpp"

#include "mbfem/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace mbfem {

BandedMatrix::BandedMatrix(int size, int half_bandwidth)
    : n_(size), kb_(half_bandwidth),
      data_(static_cast<std::size_t>(std::max(size, 0)) * (2 * half_bandwidth + 1), 0.0) {
    if (size < 0 || half_bandwidth < 0) {
        throw std::invalid_argument("banded matrix dimensions must be non-negative");
    }
}

double BandedMatrix::operator()(int i, int j) const {
    if (!in_band(i, j)) {
        return 0.0;
    }
    return data_[static_cast<std::size_t>(i) * (2 * kb_ + 1) + (j - i + kb_)];
}

double& BandedMatrix::at(int i, int j) {
    if (i < 0 || j < 0 || i >= n_ || j >= n_ || !in_band(i, j)) {
        throw std::out_of_range("banded matrix index outside the band");
    }
    return data_[static_cast<std::size_t>(i) * (2 * kb_ + 1) + (j - i + kb_)];
}

void BandedMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    if (static_cast<int>(x.size()) != n_ || static_cast<int>(y.size()) != n_) {
        throw DimensionError("banded multiply: vector length mismatch");
    }
    for (int i = 0; i < n_; ++i) {
        double sum = 0.0;
        const int lo = std::max(0, i - kb_);
        const int hi = std::min(n_ - 1, i + kb_);
        for (int j = lo; j <= hi; ++j) {
            sum += data_[static_cast<std::size_t>(i) * (2 * kb_ + 1) + (j - i + kb_)] * x[j];
        }
        y[i] = sum;
    }
}

BandedMatrix& BandedMatrix::add_scaled(const BandedMatrix& other, double scale) {
    if (other.n_ != n_ || other.kb_ != kb_) {
        throw DimensionError("banded add: shape mismatch");
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] += scale * other.data_[i];
    }
    return *this;
}

BandedMatrix& BandedMatrix::scale(double factor) {
    for (double& v : data_) {
        v *= factor;
    }
    return *this;
}

BandedMatrix BandedMatrix::interior() const {
    const int m = std::max(n_ - 2, 0);
    BandedMatrix out(m, kb_);
    for (int i = 0; i < m; ++i) {
        const int lo = std::max(0, i - kb_);
        const int hi = std::min(m - 1, i + kb_);
        for (int j = lo; j <= hi; ++j) {
            out.at(i, j) = (*this)(i + 1, j + 1);
        }
    }
    return out;
}

std::vector<double> BandedMatrix::to_dense() const {
    std::vector<double> dense(static_cast<std::size_t>(n_) * n_, 0.0);
    for (int i = 0; i < n_; ++i) {
        for (int j = std::max(0, i - kb_); j <= std::min(n_ - 1, i + kb_); ++j) {
            dense[static_cast<std::size_t>(i) * n_ + j] = (*this)(i, j);
        }
    }
    return dense;
}

BandedLU::BandedLU(const BandedMatrix& matrix)
    : n_(matrix.size()), kb_(matrix.half_bandwidth()), width_(3 * kb_ + 1),
      data_(static_cast<std::size_t>(n_) * width_, 0.0), pivots_(n_) {
    for (int i = 0; i < n_; ++i) {
        for (int j = std::max(0, i - kb_); j <= std::min(n_ - 1, i + kb_); ++j) {
            get(i, j) = matrix(i, j);
        }
    }
    double max_pivot = 0.0;
    double min_pivot = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n_; ++k) {
        const int last_row = std::min(n_ - 1, k + kb_);
        int p = k;
        for (int i = k + 1; i <= last_row; ++i) {
            if (std::abs(get(i, k)) > std::abs(get(p, k))) {
                p = i;
            }
        }
        pivots_[k] = p;
        const int last_col = std::min(n_ - 1, k + 2 * kb_);
        if (p != k) {
            for (int j = k; j <= last_col; ++j) {
                std::swap(get(k, j), get(p, j));
            }
        }
        const double pivot = get(k, k);
        max_pivot = std::max(max_pivot, std::abs(pivot));
        min_pivot = std::min(min_pivot, std::abs(pivot));
        if (pivot == 0.0 || !std::isfinite(pivot)) {
            condition_estimate_ = std::numeric_limits<double>::infinity();
            std::ostringstream msg;
            msg << "zero pivot in banded LU at row " << k;
            throw SingularMatrixError(msg.str(), condition_estimate_);
        }
        for (int i = k + 1; i <= last_row; ++i) {
            const double factor = get(i, k) / pivot;
            get(i, k) = factor;
            if (factor == 0.0) {
                continue;
            }
            for (int j = k + 1; j <= last_col; ++j) {
                get(i, j) -= factor * get(k, j);
            }
        }
    }
    if (n_ > 0) {
        condition_estimate_ = max_pivot / min_pivot;
        if (condition_estimate_ > 1.0 / (std::numeric_limits<double>::epsilon() * n_)) {
            std::ostringstream msg;
            msg << "banded matrix is numerically singular (pivot ratio " << condition_estimate_
                << ")";
            throw SingularMatrixError(msg.str(), condition_estimate_);
        }
    }
}

std::vector<double> BandedLU::solve(std::span<const double> rhs) const {
    if (static_cast<int>(rhs.size()) != n_) {
        throw DimensionError("banded solve: right-hand side length mismatch");
    }
    std::vector<double> x(rhs.begin(), rhs.end());
    for (int k = 0; k < n_; ++k) {
        if (pivots_[k] != k) {
            std::swap(x[k], x[pivots_[k]]);
        }
        const int last_row = std::min(n_ - 1, k + kb_);
        for (int i = k + 1; i <= last_row; ++i) {
            x[i] -= get(i, k) * x[k];
        }
    }
    for (int i = n_ - 1; i >= 0; --i) {
        double sum = x[i];
        const int last_col = std::min(n_ - 1, i + 2 * kb_);
        for (int j = i + 1; j <= last_col; ++j) {
            sum -= get(i, j) * x[j];
        }
        x[i] = sum / get(i, i);
    }
    return x;
}

}  // namespace mbfem
