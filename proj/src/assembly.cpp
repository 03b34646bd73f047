#include "mbfem/assembly.hpp"

#include "mbfem/errors.hpp"

#include <cmath>
#include <sstream>

namespace mbfem {

OperatorSet assemble_static(const FESpace& space) {
    const int np = space.num_dofs();
    const int k = space.degree();
    const int nloc = k + 1;
    OperatorSet ops{BandedMatrix(np, k), BandedMatrix(np, k), BandedMatrix(np, k),
                    BandedMatrix(np, k), Vector(np, 0.0)};
    const auto& rule = space.quadrature();
    const auto& values = space.tabulated_values();
    const auto& ref_derivs = space.tabulated_ref_derivatives();

    // Fixed element order keeps the accumulation bit-reproducible.
    for (int e = 0; e < space.num_elements(); ++e) {
        const double width = space.element_width(e);
        const double jac = 2.0 / width;
        for (std::size_t qp = 0; qp < rule.size(); ++qp) {
            const double w = rule.weights[qp] * 0.5 * width;
            const double y = space.map_to_physical(e, rule.points[qp]);
            const double* phi = &values[qp * nloc];
            const double* dphi = &ref_derivs[qp * nloc];
            for (int a = 0; a < nloc; ++a) {
                const int i = space.global_dof(e, a);
                ops.nonlocal_weights[i] += w * phi[a];
                for (int b = 0; b < nloc; ++b) {
                    const int j = space.global_dof(e, b);
                    const double dphi_b = dphi[b] * jac;
                    ops.mass.add(i, j, w * phi[b] * phi[a]);
                    ops.stiffness.add(i, j, w * dphi_b * dphi[a] * jac);
                    ops.conv_const.add(i, j, w * dphi_b * phi[a]);
                    ops.conv_linear.add(i, j, w * y * dphi_b * phi[a]);
                }
            }
        }
    }
    return ops;
}

BandedMatrix convection_matrix(const OperatorSet& ops, const BoundaryMotion& motion, double t) {
    const double g = gamma(motion, t);
    BandedMatrix c = ops.conv_const;
    c.scale(motion.alpha_prime(t) / g);
    c.add_scaled(ops.conv_linear, gamma_prime(motion, t) / g);
    return c;
}

double nonlocal_value(std::span<const double> weights, std::span<const double> coeffs,
                      const BoundaryMotion& motion, double t) {
    if (weights.size() != coeffs.size()) {
        throw DimensionError("nonlocal value: weight and coefficient lengths differ");
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < weights.size(); ++j) {
        sum += weights[j] * coeffs[j];
    }
    return gamma(motion, t) * sum;
}

Vector assemble_load(const FESpace& space, const ProblemSpec& problem, int i, double t) {
    const int nloc = space.degree() + 1;
    const auto& rule = space.quadrature();
    const auto& values = space.tabulated_values();
    const auto& f = problem.forcing.at(i);
    const double a = problem.motion.alpha(t);
    const double g = gamma(problem.motion, t);
    Vector load(space.num_dofs(), 0.0);
    for (int e = 0; e < space.num_elements(); ++e) {
        const double half = 0.5 * space.element_width(e);
        for (std::size_t qp = 0; qp < rule.size(); ++qp) {
            const double y = space.map_to_physical(e, rule.points[qp]);
            const double x = a + g * y;
            const double fx = f(x, t);
            if (!std::isfinite(fx)) {
                std::ostringstream msg;
                msg << "forcing f_" << i + 1 << " is " << fx << " at x = " << x << ", t = " << t;
                throw NonFiniteError(msg.str());
            }
            const double w = rule.weights[qp] * half * fx;
            for (int m = 0; m < nloc; ++m) {
                load[space.global_dof(e, m)] += w * values[qp * nloc + m];
            }
        }
    }
    return load;
}

double diffusion_scalar(const ProblemSpec& problem, int i, std::span<const double> nonlocal_values) {
    if (static_cast<int>(nonlocal_values.size()) != problem.ne) {
        throw DimensionError("diffusion scalar: expected one nonlocal value per equation");
    }
    const auto& law = problem.diffusion.at(i);
    const double a = law.fn(nonlocal_values);
    if (!std::isfinite(a) || a < law.lower || a > law.upper) {
        std::ostringstream msg;
        msg << "diffusion a_" << i + 1 << " = " << a << " violates bounds [" << law.lower << ", "
            << law.upper << "] at nonlocal values (";
        for (std::size_t d = 0; d < nonlocal_values.size(); ++d) {
            msg << (d ? ", " : "") << nonlocal_values[d];
        }
        msg << ")";
        throw BoundViolationError(msg.str());
    }
    return a;
}

}  // namespace mbfem
