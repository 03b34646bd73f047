#include "mbfem/fe_space.hpp"

#include "mbfem/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mbfem {

FESpace::FESpace(std::vector<double> breakpoints, int degree, int quad_points)
    : breakpoints_(std::move(breakpoints)), degree_(degree) {
    if (breakpoints_.size() < 2) {
        throw std::invalid_argument("a partition needs at least two breakpoints");
    }
    if (degree_ < 1) {
        throw std::invalid_argument("polynomial degree must be at least 1");
    }
    if (quad_points < degree_ + 1) {
        throw std::invalid_argument("quadrature needs at least k + 1 points");
    }
    if (breakpoints_.front() != 0.0 || breakpoints_.back() != 1.0) {
        throw std::invalid_argument("breakpoints must start at 0 and end at 1");
    }
    for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
        const double gap = breakpoints_[i] - breakpoints_[i - 1];
        if (!(gap > 0.0)) {
            throw std::invalid_argument("breakpoints must be strictly increasing");
        }
        h_ = std::max(h_, gap);
    }

    local_nodes_.resize(degree_ + 1);
    for (int m = 0; m <= degree_; ++m) {
        local_nodes_[m] = -1.0 + 2.0 * m / degree_;
    }

    dof_positions_.resize(num_dofs());
    for (int e = 0; e < num_elements(); ++e) {
        for (int m = 0; m <= degree_; ++m) {
            dof_positions_[global_dof(e, m)] = map_to_physical(e, local_nodes_[m]);
        }
    }
    // Element ends come out of the affine map with rounding; pin them.
    for (int e = 0; e <= num_elements(); ++e) {
        dof_positions_[e * degree_] = breakpoints_[e];
    }

    quadrature_ = gauss_legendre(quad_points);
    const int nloc = degree_ + 1;
    tab_values_.resize(quadrature_.size() * nloc);
    tab_derivs_.resize(quadrature_.size() * nloc);
    for (std::size_t qp = 0; qp < quadrature_.size(); ++qp) {
        lagrange(quadrature_.points[qp], &tab_values_[qp * nloc], &tab_derivs_[qp * nloc]);
    }
}

double FESpace::map_to_physical(int element, double local_point) const {
    return element_left(element) + 0.5 * (local_point + 1.0) * element_width(element);
}

void FESpace::lagrange(double xi, double* values, double* derivs) const {
    const int nloc = degree_ + 1;
    for (int m = 0; m < nloc; ++m) {
        double value = 1.0;
        double deriv = 0.0;
        for (int l = 0; l < nloc; ++l) {
            if (l == m) {
                continue;
            }
            const double denom = local_nodes_[m] - local_nodes_[l];
            // Product rule: d/dxi [value * (xi - x_l) / denom].
            deriv = (deriv * (xi - local_nodes_[l]) + value) / denom;
            value *= (xi - local_nodes_[l]) / denom;
        }
        values[m] = value;
        derivs[m] = deriv;
    }
}

BasisValues FESpace::eval_basis(int element, double local_point) const {
    if (element < 0 || element >= num_elements()) {
        std::ostringstream msg;
        msg << "element " << element << " out of range [0, " << num_elements() << ")";
        throw std::out_of_range(msg.str());
    }
    if (!(local_point >= -1.0 - 1e-14 && local_point <= 1.0 + 1e-14)) {
        throw DomainError("local point outside the reference element [-1, 1]");
    }
    BasisValues out;
    out.values.resize(degree_ + 1);
    out.derivatives.resize(degree_ + 1);
    lagrange(local_point, out.values.data(), out.derivatives.data());
    const double jac = 2.0 / element_width(element);
    for (double& d : out.derivatives) {
        d *= jac;
    }
    return out;
}

double FESpace::evaluate(std::span<const double> coeffs, double y) const {
    if (static_cast<int>(coeffs.size()) != num_dofs()) {
        throw DimensionError("coefficient vector length does not match the space");
    }
    if (!(y >= 0.0 && y <= 1.0)) {
        throw DomainError("evaluation point outside [0, 1]");
    }
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), y);
    int e = static_cast<int>(it - breakpoints_.begin()) - 1;
    e = std::clamp(e, 0, num_elements() - 1);
    const double xi =
        std::clamp(2.0 * (y - element_left(e)) / element_width(e) - 1.0, -1.0, 1.0);
    std::vector<double> values(degree_ + 1);
    std::vector<double> derivs(degree_ + 1);
    lagrange(xi, values.data(), derivs.data());
    double sum = 0.0;
    for (int m = 0; m <= degree_; ++m) {
        sum += coeffs[global_dof(e, m)] * values[m];
    }
    return sum;
}

FESpace build_space(int nt, int k, int q) {
    if (nt < 1) {
        throw std::invalid_argument("element count nt must be at least 1");
    }
    if (k < 1) {
        throw std::invalid_argument("degree k must be at least 1");
    }
    if (q < k + 1) {
        throw std::invalid_argument("quadrature points q must be at least k + 1");
    }
    std::vector<double> breakpoints(nt + 1);
    for (int i = 0; i <= nt; ++i) {
        breakpoints[i] = static_cast<double>(i) / nt;
    }
    return FESpace(std::move(breakpoints), k, q);
}

FESpace build_space(int nt, int k) { return build_space(nt, k, k + 2); }

Vector interpolate(const FESpace& space, const std::function<double(double)>& u) {
    const auto& nodes = space.dof_positions();
    Vector coeffs(nodes.size(), 0.0);
    for (std::size_t j = 1; j + 1 < nodes.size(); ++j) {
        const double value = u(nodes[j]);
        if (!std::isfinite(value)) {
            std::ostringstream msg;
            msg << "non-finite sample " << value << " at y = " << nodes[j];
            throw NonFiniteError(msg.str());
        }
        coeffs[j] = value;
    }
    return coeffs;
}

double l2_norm(const FESpace& space, std::span<const double> coeffs) {
    if (static_cast<int>(coeffs.size()) != space.num_dofs()) {
        throw DimensionError("coefficient vector length does not match the space");
    }
    const auto& rule = space.quadrature();
    const int nloc = space.degree() + 1;
    const auto& tab = space.tabulated_values();
    double sum = 0.0;
    for (int e = 0; e < space.num_elements(); ++e) {
        const double half = 0.5 * space.element_width(e);
        for (std::size_t qp = 0; qp < rule.size(); ++qp) {
            double value = 0.0;
            for (int m = 0; m < nloc; ++m) {
                value += coeffs[space.global_dof(e, m)] * tab[qp * nloc + m];
            }
            sum += rule.weights[qp] * half * value * value;
        }
    }
    return std::sqrt(sum);
}

}  // namespace mbfem
