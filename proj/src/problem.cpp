#include "mbfem/problem.hpp"

#include "mbfem/errors.hpp"
#include "mbfem/spline.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>

namespace mbfem {

void ProblemSpec::check_shape() const {
    const auto n = static_cast<std::size_t>(ne);
    if (ne < 1) {
        throw std::invalid_argument("problem needs at least one equation");
    }
    if (diffusion.size() != n || forcing.size() != n || initial.size() != n) {
        throw std::invalid_argument("problem '" + name +
                                    "': diffusion, forcing and initial data must have ne entries");
    }
    if (!exact.empty() && exact.size() != n) {
        throw std::invalid_argument("problem '" + name + "': exact solutions must have ne entries");
    }
    if (!(motion.final_time > 0.0)) {
        throw std::invalid_argument("problem '" + name + "': final time must be positive");
    }
}

ProblemSpec with_final_time(ProblemSpec problem, double final_time) {
    if (!(final_time > 0.0)) {
        throw std::invalid_argument("final time must be positive");
    }
    problem.motion.final_time = final_time;
    return problem;
}

// ---------------------------------------------------------------------------
// Example 1

namespace {

// Quartic profiles, ascending powers of z; both vanish at z = 0 and z = 1.
constexpr std::array<double, 5> kProfile1{0.0, 611.0 / 70.0, -10513.0 / 210.0, 646.0 / 7.0,
                                          -1070.0 / 21.0};
constexpr std::array<double, 5> kProfile2{0.0, 2047.0 / 140.0, -27701.0 / 420.0, 691.0 / 7.0,
                                          -995.0 / 21.0};
// Integrals of the profiles over [0, 1].
constexpr double kProfileMean1 = 703.0 / 1260.0;
constexpr double kProfileMean2 = 1331.0 / 2520.0;

const std::array<double, 5>& profile_coeffs(int i) {
    if (i == 0) return kProfile1;
    if (i == 1) return kProfile2;
    throw std::out_of_range("Example 1 has two equations");
}

double poly(const std::array<double, 5>& c, double z) {
    return (((c[4] * z + c[3]) * z + c[2]) * z + c[1]) * z + c[0];
}
double poly_d1(const std::array<double, 5>& c, double z) {
    return ((4.0 * c[4] * z + 3.0 * c[3]) * z + 2.0 * c[2]) * z + c[1];
}
double poly_d2(const std::array<double, 5>& c, double z) {
    return (12.0 * c[4] * z + 6.0 * c[3]) * z + 2.0 * c[2];
}

double time_factor_prime(int i, double t) {
    if (i == 0) return -1.0 / ((1.0 + t) * (1.0 + t));
    return -std::exp(-t);
}

double example1_a1(std::span<const double> s) {
    const double r = s[0];
    const double q = s[1];
    return 2.0 - 1.0 / (1.0 + r * r) + 1.0 / (1.0 + q * q);
}

double example1_a2(std::span<const double> s) {
    const double r = s[0];
    const double q = s[1];
    return 3.0 + 2.0 / (1.0 + r * r) - 1.0 / (1.0 + q * q);
}

}  // namespace

double example1_time_factor(int i, double t) {
    if (i == 0) return 1.0 / (1.0 + t);
    if (i == 1) return std::exp(-t);
    throw std::out_of_range("Example 1 has two equations");
}

double example1_profile(int i, double z) { return poly(profile_coeffs(i), z); }

double example1_similarity_z(double x, double t) {
    return (2.0 * t + 1.0) * (x + t * x + t) / (5.0 * t * t + 5.0 * t + 1.0);
}

BoundaryMotion example1_motion(Example1Motion variant) {
    BoundaryMotion motion;
    motion.alpha = [](double t) { return -t / (1.0 + t); };
    motion.alpha_prime = [](double t) { return -1.0 / ((1.0 + t) * (1.0 + t)); };
    if (variant == Example1Motion::matched) {
        motion.beta = [](double t) { return 1.0 + t / (1.0 + 2.0 * t); };
        motion.beta_prime = [](double t) { return 1.0 / ((1.0 + 2.0 * t) * (1.0 + 2.0 * t)); };
    } else {
        motion.beta = [](double t) { return 1.0 + 2.0 * t / (1.0 + t); };
        motion.beta_prime = [](double t) { return 2.0 / ((1.0 + t) * (1.0 + t)); };
    }
    motion.final_time = 3.0;
    return motion;
}

double example1_forcing(Example1Motion variant, int i, double x, double t) {
    const auto motion = example1_motion(variant);
    const auto& c = profile_coeffs(i);
    const double g = gamma(motion, t);
    const double gp = gamma_prime(motion, t);
    const double z = (x - motion.alpha(t)) / g;
    if (z < -1e-12 || z > 1.0 + 1e-12) {
        std::ostringstream msg;
        msg << "forcing evaluated outside the domain at x = " << x << ", t = " << t;
        throw DomainError(msg.str());
    }
    const double tau = example1_time_factor(i, t);
    const double dz_dt = -(motion.alpha_prime(t) + gp * z) / g;
    const double u_t = time_factor_prime(i, t) * poly(c, z) + tau * poly_d1(c, z) * dz_dt;
    const double u_xx = tau * poly_d2(c, z) / (g * g);
    const std::array<double, 2> nonlocal{g * example1_time_factor(0, t) * kProfileMean1,
                                         g * example1_time_factor(1, t) * kProfileMean2};
    const double a = i == 0 ? example1_a1(nonlocal) : example1_a2(nonlocal);
    return u_t - a * u_xx;
}

ProblemSpec example1(Example1Motion variant) {
    ProblemSpec p;
    p.name = variant == Example1Motion::matched ? "example1" : "example1-wide";
    p.ne = 2;
    p.motion = example1_motion(variant);
    p.diffusion = {DiffusionLaw{example1_a1, 1.0, 3.0}, DiffusionLaw{example1_a2, 2.0, 5.0}};
    const auto motion = p.motion;
    for (int i = 0; i < 2; ++i) {
        p.forcing.emplace_back(
            [variant, i](double x, double t) { return example1_forcing(variant, i, x, t); });
        p.exact.emplace_back([motion, i](double x, double t) {
            const double z = (x - motion.alpha(t)) / (motion.beta(t) - motion.alpha(t));
            return example1_time_factor(i, t) * example1_profile(i, z);
        });
        p.initial.emplace_back([i](double x) { return example1_profile(i, x); });
    }
    return p;
}

// ---------------------------------------------------------------------------
// Example 2

BoundaryMotion example2_motion() {
    const double root = std::sqrt(2.0 / 3.0);
    const double shift = std::pow(2.0 / 3.0, 1.5);
    BoundaryMotion motion;
    motion.alpha = [root, shift](double t) { return root - std::cbrt(t + shift); };
    motion.beta = [root, shift](double t) { return 1.0 - root + std::cbrt(t + shift); };
    motion.alpha_prime = [shift](double t) { return -1.0 / (3.0 * std::pow(t + shift, 2.0 / 3.0)); };
    motion.beta_prime = [shift](double t) { return 1.0 / (3.0 * std::pow(t + shift, 2.0 / 3.0)); };
    motion.final_time = 1.0;
    return motion;
}

ProblemSpec example2() {
    ProblemSpec p;
    p.name = "example2";
    p.ne = 2;
    p.motion = example2_motion();
    p.diffusion = {
        DiffusionLaw{[](std::span<const double> s) { return 2.0 - 1.0 / (1.0 + s[1] * s[1]); },
                     1.0, 2.0},
        // e^{-r^2} has no positive lower bound on all of R; the declared bound
        // covers the probe range [-4, 4].
        DiffusionLaw{[](std::span<const double> s) { return std::exp(-s[0] * s[0]); }, 1e-8, 1.0},
    };
    p.forcing = {
        [](double x, double t) { return 0.1 * x / std::pow(1.0 + t, 4); },
        [](double x, double t) { return std::exp(-x * x) / std::pow(1.0 + t, 6); },
    };
    const std::array<NaturalCubicSpline::Knot, 4> knots1{{{0.0, 0.0}, {0.2, 1.0}, {0.5, 0.5}, {1.0, 0.0}}};
    const std::array<NaturalCubicSpline::Knot, 4> knots2{{{0.0, 0.0}, {0.6, 0.65}, {0.8, 1.0}, {1.0, 0.0}}};
    auto s1 = std::make_shared<const NaturalCubicSpline>(knots1);
    auto s2 = std::make_shared<const NaturalCubicSpline>(knots2);
    p.initial = {[s1](double x) { return (*s1)(x); }, [s2](double x) { return (*s2)(x); }};
    return p;
}

// ---------------------------------------------------------------------------
// Hypothesis sampling

CheckStatus ValidationReport::overall() const {
    CheckStatus worst = CheckStatus::pass;
    for (const auto& c : checks) {
        if (c.status == CheckStatus::fail) return CheckStatus::fail;
        if (c.status == CheckStatus::warn) worst = CheckStatus::warn;
    }
    return worst;
}

namespace {

void check_diffusion(const ProblemSpec& problem, const ValidationOptions& options,
                     std::vector<HypothesisCheck>& checks) {
    const int ne = problem.ne;
    int per_axis = std::max(2, options.probe_points);
    while (per_axis > 2 && std::pow(static_cast<double>(per_axis), ne) > 4096.0) {
        --per_axis;
    }
    const double lo = problem.nonlocal_probe[0];
    const double hi = problem.nonlocal_probe[1];

    std::vector<std::vector<double>> probes;
    std::vector<int> index(ne, 0);
    while (true) {
        std::vector<double> s(ne);
        for (int d = 0; d < ne; ++d) {
            s[d] = lo + (hi - lo) * index[d] / (per_axis - 1);
        }
        probes.push_back(std::move(s));
        int d = 0;
        while (d < ne && ++index[d] == per_axis) {
            index[d++] = 0;
        }
        if (d == ne) break;
    }
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    for (int r = 0; r < options.random_probes; ++r) {
        std::vector<double> s(ne);
        for (double& v : s) v = dist(rng);
        probes.push_back(std::move(s));
    }

    for (int i = 0; i < ne; ++i) {
        const auto& law = problem.diffusion[i];
        HypothesisCheck check{"diffusion bounds a_" + std::to_string(i + 1), CheckStatus::pass, {}};
        double min_value = std::numeric_limits<double>::infinity();
        double max_value = -std::numeric_limits<double>::infinity();
        for (const auto& s : probes) {
            const double a = law.fn(s);
            if (!std::isfinite(a) || a < law.lower || a > law.upper) {
                if (check.status == CheckStatus::pass) {
                    std::ostringstream msg;
                    msg << "a_" << i + 1 << " = " << a << " outside declared [" << law.lower
                        << ", " << law.upper << "] at (";
                    for (std::size_t d = 0; d < s.size(); ++d) msg << (d ? ", " : "") << s[d];
                    msg << ")";
                    check.detail = msg.str();
                }
                check.status = CheckStatus::fail;
            }
            if (std::isfinite(a)) {
                min_value = std::min(min_value, a);
                max_value = std::max(max_value, a);
            }
        }
        if (check.status == CheckStatus::pass) {
            std::ostringstream msg;
            msg << "sampled range [" << min_value << ", " << max_value << "] within ["
                << law.lower << ", " << law.upper << "]";
            check.detail = msg.str();
        }
        checks.push_back(std::move(check));
    }
}

}  // namespace

ValidationReport validate(const ProblemSpec& problem, const ValidationOptions& options) {
    problem.check_shape();
    ValidationReport report;
    const double T = problem.final_time();
    const double delta = options.delta.value_or(T / 1000.0);
    const auto times = grid_and_midpoints(T, delta);
    for (auto& c : check_motion(problem.motion, times, options.allow_shrinking)) {
        report.checks.push_back(std::move(c));
    }
    check_diffusion(problem, options, report.checks);

    const double a0 = problem.motion.alpha(0.0);
    const double b0 = problem.motion.beta(0.0);
    for (int i = 0; i < problem.ne; ++i) {
        const double left = problem.initial[i](a0);
        const double right = problem.initial[i](b0);
        HypothesisCheck check{"boundary compatibility u_" + std::to_string(i + 1) + "0",
                              CheckStatus::pass, {}};
        std::ostringstream msg;
        msg << "u(alpha(0)) = " << left << ", u(beta(0)) = " << right;
        check.detail = msg.str();
        if (!(std::abs(left) <= 1e-10 && std::abs(right) <= 1e-10)) {
            check.status = CheckStatus::fail;
        }
        report.checks.push_back(std::move(check));
    }

    if (problem.has_exact()) {
        for (int i = 0; i < problem.ne; ++i) {
            double worst = 0.0;
            for (int s = 0; s < 100; ++s) {
                const double x = a0 + (b0 - a0) * s / 99.0;
                worst = std::max(worst, std::abs(problem.exact[i](x, 0.0) - problem.initial[i](x)));
            }
            HypothesisCheck check{"exact/initial agreement u_" + std::to_string(i + 1),
                                  worst <= 1e-10 ? CheckStatus::pass : CheckStatus::fail, {}};
            std::ostringstream msg;
            msg << "max |u(x,0) - u0(x)| = " << worst;
            check.detail = msg.str();
            report.checks.push_back(std::move(check));
        }
    }
    return report;
}

}  // namespace mbfem
