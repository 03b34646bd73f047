#include "mbfem/geometry.hpp"

#include "mbfem/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace mbfem {

namespace {

double time_tolerance(const BoundaryMotion& motion) {
    return 1e-12 * std::max(1.0, motion.final_time);
}

}  // namespace

BoundaryMotion fixed_motion(double lo, double hi, double final_time) {
    return BoundaryMotion{
        [lo](double) { return lo; },
        [hi](double) { return hi; },
        [](double) { return 0.0; },
        [](double) { return 0.0; },
        final_time,
    };
}

void check_time(const BoundaryMotion& motion, double t) {
    const double tol = time_tolerance(motion);
    if (!(t >= -tol && t <= motion.final_time + tol)) {
        std::ostringstream msg;
        msg << "time " << t << " outside [0, " << motion.final_time << "]";
        throw DomainError(msg.str());
    }
}

double gamma(const BoundaryMotion& motion, double t) {
    check_time(motion, t);
    const double width = motion.beta(t) - motion.alpha(t);
    if (!(width > 0.0)) {
        std::ostringstream msg;
        msg << "domain width beta - alpha = " << width << " is not positive at t = " << t;
        throw ValidationError(msg.str());
    }
    return width;
}

double gamma_prime(const BoundaryMotion& motion, double t) {
    check_time(motion, t);
    return motion.beta_prime(t) - motion.alpha_prime(t);
}

double coeff_b1(const BoundaryMotion& motion, double y, double t) {
    const double g = gamma(motion, t);
    return (motion.alpha_prime(t) + gamma_prime(motion, t) * y) / g;
}

double coeff_b2(const BoundaryMotion& motion, double t) {
    const double g = gamma(motion, t);
    return 1.0 / (g * g);
}

double to_fixed(const BoundaryMotion& motion, double x, double t) {
    const double g = gamma(motion, t);
    const double a = motion.alpha(t);
    const double b = motion.beta(t);
    const double tol = 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
    if (x < a - tol || x > b + tol) {
        std::ostringstream msg;
        msg << "position " << x << " outside [" << a << ", " << b << "] at t = " << t;
        throw DomainError(msg.str());
    }
    return std::clamp((x - a) / g, 0.0, 1.0);
}

double to_moving(const BoundaryMotion& motion, double y, double t) {
    return motion.alpha(t) + gamma(motion, t) * y;
}

std::string to_string(CheckStatus status) {
    switch (status) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::warn: return "warn";
        case CheckStatus::fail: return "fail";
    }
    return "unknown";
}

std::vector<HypothesisCheck> check_motion(const BoundaryMotion& motion, std::span<const double> times,
                                      bool allow_shrinking) {
    HypothesisCheck width{"width bounds", CheckStatus::pass, {}};
    HypothesisCheck signs{"expanding boundaries", CheckStatus::pass, {}};
    double min_width = std::numeric_limits<double>::infinity();
    double max_width = 0.0;
    for (const double t : times) {
        const double w = motion.beta(t) - motion.alpha(t);
        if (!std::isfinite(w) || w <= 0.0) {
            if (width.status == CheckStatus::pass) {
                std::ostringstream msg;
                msg << "width " << w << " at t = " << t;
                width.detail = msg.str();
            }
            width.status = CheckStatus::fail;
            continue;
        }
        min_width = std::min(min_width, w);
        max_width = std::max(max_width, w);
        const double ap = motion.alpha_prime(t);
        const double bp = motion.beta_prime(t);
        if (!(ap < 0.0 && bp > 0.0) && signs.status == CheckStatus::pass) {
            signs.status = allow_shrinking ? CheckStatus::warn : CheckStatus::fail;
            std::ostringstream msg;
            msg << "alpha' = " << ap << ", beta' = " << bp << " at t = " << t;
            signs.detail = msg.str();
        }
    }
    if (width.status == CheckStatus::pass) {
        std::ostringstream msg;
        msg << "gamma in [" << min_width << ", " << max_width << "]";
        width.detail = msg.str();
    }
    if (signs.status == CheckStatus::pass) {
        signs.detail = "alpha' < 0 < beta' at all samples";
    }
    return {width, signs};
}

std::vector<double> grid_and_midpoints(double final_time, double delta) {
    std::vector<double> times;
    const auto steps = static_cast<long>(std::ceil(final_time / delta - 1e-9));
    for (long n = 0; n <= steps; ++n) {
        times.push_back(std::min(final_time, static_cast<double>(n) * delta));
        if (n < steps) {
            times.push_back(std::min(final_time, (static_cast<double>(n) + 0.5) * delta));
        }
    }
    return times;
}

}  // namespace mbfem
