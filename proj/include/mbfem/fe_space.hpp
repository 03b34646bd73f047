#pragma once

#include "mbfem/quadrature.hpp"

#include <functional>
#include <span>
#include <vector>

namespace mbfem {

using Vector = std::vector<double>;

/// Basis values and y-derivatives of the k+1 local shape functions at one point.
struct BasisValues {
    Vector values;
    Vector derivatives;
};

/// Continuous piecewise Lagrange space of degree k on a partition of [0, 1].
///
/// Global dof numbering is contiguous left to right; element e owns the
/// global dofs e*k .. e*k + k, sharing its end dofs with its neighbours.
/// Local nodes are equispaced on the reference element [-1, 1].
class FESpace {
  public:
    FESpace(std::vector<double> breakpoints, int degree, int quad_points);

    int degree() const noexcept { return degree_; }
    int num_elements() const noexcept { return static_cast<int>(breakpoints_.size()) - 1; }
    int num_dofs() const noexcept { return num_elements() * degree_ + 1; }
    int num_interior_dofs() const noexcept { return num_dofs() - 2; }
    double h() const noexcept { return h_; }

    const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
    const std::vector<double>& dof_positions() const noexcept { return dof_positions_; }
    const QuadratureRule& quadrature() const noexcept { return quadrature_; }

    int global_dof(int element, int local) const noexcept { return element * degree_ + local; }
    double element_left(int element) const { return breakpoints_.at(element); }
    double element_width(int element) const {
        return breakpoints_.at(element + 1) - breakpoints_.at(element);
    }
    /// Maps a reference coordinate in [-1, 1] of `element` to y in [0, 1].
    double map_to_physical(int element, double local_point) const;

    /// Shape values and y-derivatives at `local_point` in [-1, 1].
    BasisValues eval_basis(int element, double local_point) const;

    /// Shape values / reference derivatives tabulated at this space's
    /// quadrature points: entry [qp * (k+1) + m].
    const Vector& tabulated_values() const noexcept { return tab_values_; }
    const Vector& tabulated_ref_derivatives() const noexcept { return tab_derivs_; }

    /// Value of the finite element expansion at y in [0, 1].
    double evaluate(std::span<const double> coeffs, double y) const;

  private:
    std::vector<double> breakpoints_;
    int degree_;
    double h_ = 0.0;
    std::vector<double> dof_positions_;
    std::vector<double> local_nodes_;
    QuadratureRule quadrature_;
    Vector tab_values_;
    Vector tab_derivs_;

    void lagrange(double xi, double* values, double* derivs) const;
};

/// Uniform partition with nt elements of degree k and a q-point Gauss rule.
FESpace build_space(int nt, int k, int q);
/// Same with the default rule q = k + 2.
FESpace build_space(int nt, int k);

/// Nodal interpolant: coefficient j = u(P_j), endpoint coefficients set to 0.
Vector interpolate(const FESpace& space, const std::function<double(double)>& u);

/// L2(0,1) norm of the expansion, computed by element quadrature.
double l2_norm(const FESpace& space, std::span<const double> coeffs);

}  // namespace mbfem
