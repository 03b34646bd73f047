#include "mbfem/spline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mbfem {

NaturalCubicSpline::NaturalCubicSpline(std::span<const Knot> knots) {
    if (knots.size() < 3) {
        throw std::invalid_argument("natural cubic spline needs at least 3 knots");
    }
    const std::size_t n = knots.size();
    x_.resize(n);
    y_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        x_[i] = knots[i].first;
        y_[i] = knots[i].second;
        if (!std::isfinite(x_[i]) || !std::isfinite(y_[i])) {
            throw std::invalid_argument("spline knots must be finite");
        }
        if (i > 0 && !(x_[i] > x_[i - 1])) {
            std::ostringstream msg;
            msg << (x_[i] == x_[i - 1] ? "duplicate" : "decreasing") << " knot position "
                << x_[i] << " at index " << i;
            throw std::invalid_argument(msg.str());
        }
    }

    // Tridiagonal system for interior curvatures; natural ends fix M_0 = M_{n-1} = 0.
    curvature_.assign(n, 0.0);
    const std::size_t m = n - 2;
    std::vector<double> diag(m), upper(m), rhs(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double h0 = x_[i + 1] - x_[i];
        const double h1 = x_[i + 2] - x_[i + 1];
        diag[i] = 2.0 * (h0 + h1);
        upper[i] = h1;
        rhs[i] = 6.0 * ((y_[i + 2] - y_[i + 1]) / h1 - (y_[i + 1] - y_[i]) / h0);
    }
    // Thomas algorithm; the system is symmetric and strictly diagonally dominant.
    for (std::size_t i = 1; i < m; ++i) {
        const double lower = x_[i + 1] - x_[i];
        const double factor = lower / diag[i - 1];
        diag[i] -= factor * upper[i - 1];
        rhs[i] -= factor * rhs[i - 1];
    }
    for (std::size_t i = m; i-- > 0;) {
        double value = rhs[i];
        if (i + 1 < m) {
            value -= upper[i] * curvature_[i + 2];
        }
        curvature_[i + 1] = value / diag[i];
    }
}

std::size_t NaturalCubicSpline::segment(double x) const {
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const auto idx = static_cast<std::ptrdiff_t>(it - x_.begin()) - 1;
    return static_cast<std::size_t>(
        std::clamp<std::ptrdiff_t>(idx, 0, static_cast<std::ptrdiff_t>(x_.size()) - 2));
}

double NaturalCubicSpline::operator()(double x) const {
    const std::size_t i = segment(x);
    const double h = x_[i + 1] - x_[i];
    const double a = (x_[i + 1] - x) / h;
    const double b = (x - x_[i]) / h;
    return a * y_[i] + b * y_[i + 1] +
           ((a * a * a - a) * curvature_[i] + (b * b * b - b) * curvature_[i + 1]) * h * h / 6.0;
}

double NaturalCubicSpline::derivative(double x) const {
    const std::size_t i = segment(x);
    const double h = x_[i + 1] - x_[i];
    const double a = (x_[i + 1] - x) / h;
    const double b = (x - x_[i]) / h;
    return (y_[i + 1] - y_[i]) / h -
           (3.0 * a * a - 1.0) * h * curvature_[i] / 6.0 +
           (3.0 * b * b - 1.0) * h * curvature_[i + 1] / 6.0;
}

double NaturalCubicSpline::second_derivative(double x) const {
    const std::size_t i = segment(x);
    const double h = x_[i + 1] - x_[i];
    const double a = (x_[i + 1] - x) / h;
    const double b = (x - x_[i]) / h;
    return a * curvature_[i] + b * curvature_[i + 1];
}

NaturalCubicSpline natural_cubic_spline(std::span<const NaturalCubicSpline::Knot> knots) {
    return NaturalCubicSpline(knots);
}

}  // namespace mbfem
