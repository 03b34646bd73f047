#pragma once

#include "mbfem/banded.hpp"
#include "mbfem/fe_space.hpp"
#include "mbfem/geometry.hpp"
#include "mbfem/problem.hpp"

#include <span>

namespace mbfem {

/// Time-independent Galerkin arrays on the fixed interval [0, 1], over all
/// np dofs (boundary rows included).
struct OperatorSet {
    BandedMatrix mass;         // int phi_j phi_i
    BandedMatrix stiffness;    // int phi_j' phi_i'
    BandedMatrix conv_const;   // int phi_j' phi_i
    BandedMatrix conv_linear;  // int y phi_j' phi_i
    Vector nonlocal_weights;   // int phi_j
};

OperatorSet assemble_static(const FESpace& space);

/// int b_1(y, t) phi_j' phi_i dy. Exact given the static pieces because b_1
/// is affine in y.
BandedMatrix convection_matrix(const OperatorSet& ops, const BoundaryMotion& motion, double t);

/// l(V) = gamma(t) * int_0^1 V dy.
double nonlocal_value(std::span<const double> weights, std::span<const double> coeffs,
                      const BoundaryMotion& motion, double t);

/// Entry j = int_0^1 f_i(alpha(t) + gamma(t) y, t) phi_j(y) dy.
Vector assemble_load(const FESpace& space, const ProblemSpec& problem, int i, double t);

/// a_i at the given nonlocal values, checked against the law's bounds.
double diffusion_scalar(const ProblemSpec& problem, int i, std::span<const double> nonlocal_values);

}  // namespace mbfem
