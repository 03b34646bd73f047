#pragma once

#include <vector>

namespace mbfem {

/// Gauss-Legendre rule on the reference interval [-1, 1]. A rule with q points
/// integrates polynomials of degree 2q - 1 exactly.
struct QuadratureRule {
    std::vector<double> points;
    std::vector<double> weights;

    std::size_t size() const noexcept { return points.size(); }
};

QuadratureRule gauss_legendre(int num_points);

}  // namespace mbfem
