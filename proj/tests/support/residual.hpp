#pragma once

// Residual of the first example's exact pair under its forcing, computed from
// the exact solution alone: finite differences for u_t and u_xx, adaptive
// Simpson for the nonlocal integrals.

#include "mbfem/problem.hpp"
#include "oracles.hpp"

#include <array>
#include <random>

namespace mbfem::oracle {

// u is quartic in x, so the five-point second difference has no truncation
// error at any step; a wide one keeps roundoff near 1e-10.
inline constexpr double kSpaceStep = 1e-2;
inline constexpr double kTimeStep = 1e-4;

inline double example1_residual(const ProblemSpec& p, Example1Motion variant, int i, double x,
                                double t) {
    const auto& u = p.exact[i];
    const double ut = d1([&](double s) { return u(x, s); }, t, kTimeStep);
    const double uxx = d2([&](double y) { return u(y, t); }, x, kSpaceStep);
    std::array<double, 2> integrals{};
    for (int j = 0; j < 2; ++j) {
        integrals[j] = adaptive_simpson([&](double y) { return p.exact[j](y, t); },
                                        p.motion.alpha(t), p.motion.beta(t), 1e-14);
    }
    const double a = p.diffusion[i].fn(integrals);
    return ut - a * uxx - example1_forcing(variant, i, x, t);
}

/// Largest |residual| over `count` random interior points of the space-time domain.
inline double example1_max_residual(Example1Motion variant, int count, unsigned seed) {
    const auto p = example1(variant);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double lo_t = 2.0 * kTimeStep;
    const double hi_t = p.final_time() - 2.0 * kTimeStep;
    double worst = 0.0;
    for (int s = 0; s < count; ++s) {
        const double t = lo_t + (hi_t - lo_t) * unit(rng);
        const double a = p.motion.alpha(t);
        const double b = p.motion.beta(t);
        const double x = a + (b - a) * (0.001 + 0.998 * unit(rng));
        for (int i = 0; i < 2; ++i) {
            worst = std::max(worst, std::abs(example1_residual(p, variant, i, x, t)));
        }
    }
    return worst;
}

}  // namespace mbfem::oracle
