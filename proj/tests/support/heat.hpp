#pragma once

#include "mbfem/problem.hpp"

#include <cmath>
#include <numbers>

namespace mbfem::testing {

/// u_t = u_xx on the fixed interval (0, 1) with u(x, 0) = sin(pi x).
inline ProblemSpec heat_problem(double final_time) {
    constexpr double pi = std::numbers::pi;
    ProblemSpec p;
    p.name = "heat";
    p.ne = 1;
    p.diffusion = {DiffusionLaw{[](std::span<const double>) { return 1.0; }, 0.5, 2.0}};
    p.forcing = {[](double, double) { return 0.0; }};
    p.initial = {[](double x) { return std::sin(pi * x); }};
    p.motion = fixed_motion(0.0, 1.0, final_time);
    p.exact = {[](double x, double t) { return std::exp(-pi * pi * t) * std::sin(pi * x); }};
    return p;
}

}  // namespace mbfem::testing
