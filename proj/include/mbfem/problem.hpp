#pragma once

#include "mbfem/geometry.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mbfem {

/// a_i(l(u_1), ..., l(u_ne)) together with the bounds it must respect.
struct DiffusionLaw {
    std::function<double(std::span<const double>)> fn;
    double lower = 1e-12;
    double upper = 1e12;
};

using SpaceTimeFn = std::function<double(double x, double t)>;

/// A coupled system u_i,t - a_i(l(u)) u_i,xx = f_i on alpha(t) < x < beta(t)
/// with homogeneous Dirichlet data. Forcing, initial and exact data are in
/// physical coordinates.
struct ProblemSpec {
    std::string name;
    int ne = 1;
    std::vector<DiffusionLaw> diffusion;
    std::vector<SpaceTimeFn> forcing;
    std::vector<ScalarFn> initial;
    BoundaryMotion motion;
    /// Empty when no exact solution is known.
    std::vector<SpaceTimeFn> exact;
    /// Range of nonlocal values over which diffusion bounds are sampled by validate().
    std::array<double, 2> nonlocal_probe{-4.0, 4.0};

    double final_time() const noexcept { return motion.final_time; }
    bool has_exact() const noexcept { return !exact.empty(); }
    /// Throws std::invalid_argument when per-equation arrays disagree with ne.
    void check_shape() const;
};

/// Copy of `problem` with the final time replaced.
ProblemSpec with_final_time(ProblemSpec problem, double final_time);

/// Which right boundary Example 1 moves with.
///
/// `matched`: beta(t) = 1 + t/(1 + 2t). With this curve the similarity
/// variable z = (2t+1)(x+tx+t)/(5t^2+5t+1) is exactly (x - alpha)/gamma,
/// so u_1, u_2 vanish on both boundaries.
///
/// `wide`: beta(t) = 1 + 2t/(1+t). The exact solutions are kept as the
/// same quartics of (x - alpha)/gamma, so they still satisfy the boundary
/// conditions; only the domain motion (and hence the forcing) differs.
enum class Example1Motion { matched, wide };

/// Two-equation manufactured problem with known exact solution, T = 3.
ProblemSpec example1(Example1Motion variant = Example1Motion::matched);

/// Closed-form forcing of Example 1 for equation i (0-based).
double example1_forcing(Example1Motion variant, int i, double x, double t);

/// Time profiles and quartic profiles of the Example 1 exact solutions,
/// u_i(x, t) = time_factor_i(t) * profile_i((x - alpha)/gamma).
double example1_time_factor(int i, double t);
double example1_profile(int i, double z);
/// Similarity variable z(x, t) in closed form.
double example1_similarity_z(double x, double t);
BoundaryMotion example1_motion(Example1Motion variant);

/// Two-equation problem with spline initial data and no exact solution, T = 1.
ProblemSpec example2();
BoundaryMotion example2_motion();

struct ValidationOptions {
    /// Time step whose grid points and midpoints are sampled; T/1000 when unset.
    std::optional<double> delta;
    /// Grid points per nonlocal argument axis (capped so the grid has at most 4096 points).
    int probe_points = 17;
    /// Additional random probe points.
    int random_probes = 100;
    std::uint64_t seed = 0;
    /// Downgrade shrinking-boundary violations to warnings.
    bool allow_shrinking = false;
};

struct ValidationReport {
    std::vector<HypothesisCheck> checks;

    CheckStatus overall() const;
};

/// Samples the width bounds, expansion signs, diffusion bounds, Dirichlet
/// compatibility of the initial data, and (when present) agreement of the
/// exact solution with the initial data at t = 0.
ValidationReport validate(const ProblemSpec& problem, const ValidationOptions& options = {});

}  // namespace mbfem
