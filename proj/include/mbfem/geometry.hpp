#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace mbfem {

using ScalarFn = std::function<double(double)>;

/// Curves x = alpha(t) and x = beta(t) bounding the physical interval, with
/// analytic derivatives supplied by the caller.
struct BoundaryMotion {
    ScalarFn alpha;
    ScalarFn beta;
    ScalarFn alpha_prime;
    ScalarFn beta_prime;
    double final_time = 1.0;
};

/// alpha = lo, beta = hi for all t.
BoundaryMotion fixed_motion(double lo, double hi, double final_time);

/// Throws DomainError unless t lies in [0, T] up to 1e-12 * max(1, T).
void check_time(const BoundaryMotion& motion, double t);

double gamma(const BoundaryMotion& motion, double t);
double gamma_prime(const BoundaryMotion& motion, double t);

/// Advection coefficient of the transformed equation,
/// (alpha'(t) + gamma'(t) y) / gamma(t).
double coeff_b1(const BoundaryMotion& motion, double y, double t);

/// Diffusion scaling of the transformed equation, 1 / gamma(t)^2.
double coeff_b2(const BoundaryMotion& motion, double t);

double to_fixed(const BoundaryMotion& motion, double x, double t);
double to_moving(const BoundaryMotion& motion, double y, double t);

enum class CheckStatus { pass, warn, fail };

std::string to_string(CheckStatus status);

struct HypothesisCheck {
    std::string name;
    CheckStatus status = CheckStatus::pass;
    std::string detail;
};

/// Samples the width bound and the expansion signs (alpha' < 0 < beta') at
/// the given times. A sign violation is reported as `warn` when
/// `allow_shrinking` is set and as `fail` otherwise.
std::vector<HypothesisCheck> check_motion(const BoundaryMotion& motion, std::span<const double> times,
                                      bool allow_shrinking = false);

/// Step-grid sample set used by the hypothesis checks: t_n = n * delta and
/// the midpoints t_{n-1/2}, clipped to [0, T].
std::vector<double> grid_and_midpoints(double final_time, double delta);

}  // namespace mbfem
