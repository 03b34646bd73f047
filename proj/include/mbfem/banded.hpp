#pragma once

#include <span>
#include <vector>

namespace mbfem {

/// Square matrix with entries only where |i - j| <= half_bandwidth.
class BandedMatrix {
  public:
    BandedMatrix() = default;
    BandedMatrix(int size, int half_bandwidth);

    int size() const noexcept { return n_; }
    int half_bandwidth() const noexcept { return kb_; }

    bool in_band(int i, int j) const noexcept { return j - i <= kb_ && i - j <= kb_; }
    /// Zero outside the band.
    double operator()(int i, int j) const;
    double& at(int i, int j);
    void add(int i, int j, double value) { at(i, j) += value; }

    void multiply(std::span<const double> x, std::span<double> y) const;

    /// this += scale * other; both must share size and bandwidth.
    BandedMatrix& add_scaled(const BandedMatrix& other, double scale);
    BandedMatrix& scale(double factor);

    /// Rows and columns 1 .. n-2 (drops the two Dirichlet end dofs).
    BandedMatrix interior() const;

    std::vector<double> to_dense() const;

  private:
    int n_ = 0;
    int kb_ = 0;
    std::vector<double> data_;  // row-major, width 2*kb + 1
};

/// LU factorization with partial pivoting, kept in band storage with the
/// upper bandwidth widened to 2*kb to hold pivoting fill-in.
class BandedLU {
  public:
    /// Throws SingularMatrixError when a pivot vanishes relative to the
    /// largest one.
    explicit BandedLU(const BandedMatrix& matrix);

    std::vector<double> solve(std::span<const double> rhs) const;

    /// Ratio of the largest to smallest pivot magnitude of U; a cheap lower
    /// bound on the 1-norm condition number's order of magnitude.
    double condition_estimate() const noexcept { return condition_estimate_; }

  private:
    int n_;
    int kb_;
    int width_;
    std::vector<double> data_;
    std::vector<int> pivots_;
    double condition_estimate_ = 1.0;

    double& get(int i, int j) { return data_[static_cast<std::size_t>(i) * width_ + (j - i + kb_)]; }
    double get(int i, int j) const {
        return data_[static_cast<std::size_t>(i) * width_ + (j - i + kb_)];
    }
};

}  // namespace mbfem
