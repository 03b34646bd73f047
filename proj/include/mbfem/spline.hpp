#pragma once

#include <span>
#include <utility>
#include <vector>

namespace mbfem {

/// C2 piecewise cubic through the knots with zero second derivative at both
/// end knots. Points outside the knot range are evaluated on the end cubics.
class NaturalCubicSpline {
  public:
    using Knot = std::pair<double, double>;

    explicit NaturalCubicSpline(std::span<const Knot> knots);

    double operator()(double x) const;
    double derivative(double x) const;
    double second_derivative(double x) const;

    const std::vector<double>& positions() const noexcept { return x_; }
    const std::vector<double>& values() const noexcept { return y_; }

  private:
    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> curvature_;  // second derivative at each knot

    std::size_t segment(double x) const;
};

NaturalCubicSpline natural_cubic_spline(std::span<const NaturalCubicSpline::Knot> knots);

}  // namespace mbfem
