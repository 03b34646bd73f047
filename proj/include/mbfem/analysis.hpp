#pragma once

#include "mbfem/fe_space.hpp"
#include "mbfem/problem.hpp"
#include "mbfem/stepper.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mbfem {

/// Errors of every equation at one time, against the exact solution.
struct ErrorEntry {
    double time = 0.0;
    std::vector<double> l2_moving;  // ||V_i - u_i||_{L2(alpha(t), beta(t))}
    std::vector<double> l2_fixed;   // same difference on [0, 1]
    std::vector<double> max_nodal;  // max_j |u_i(x_j, t) - V_i(P_j)|
};

struct ErrorReport {
    std::vector<ErrorEntry> entries;
    double runtime_seconds = 0.0;
};

/// Measures coefficient vectors at time t. The L2 difference is integrated
/// with q + 2 Gauss points per element directly against the exact solution.
ErrorEntry measure(std::span<const Vector> coeffs, double t, const ProblemSpec& problem,
                   const FESpace& space);
ErrorEntry measure(const SchemeState& state, const ProblemSpec& problem, const FESpace& space);

/// L2(0,1) distance between an expansion and a function of y.
double l2_distance(const FESpace& space, std::span<const double> coeffs,
                   const std::function<double(double)>& fn, int extra_points = 2);

struct RateFit {
    std::vector<double> abscissae;
    std::vector<double> errors;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;

    /// r^2 >= 0.99.
    bool reliable() const noexcept { return r_squared >= 0.99; }
};

/// Least squares line through (log abscissa, log error). Needs at least 3
/// strictly positive points.
RateFit fit_slope(std::span<const std::pair<double, double>> points);

enum class StudyAxis { space, time };

std::string to_string(StudyAxis axis);
StudyAxis parse_axis(const std::string& text);

/// Refinement plan. The space axis varies nt over `element_counts` with
/// delta = deltas.front(); the time axis varies delta over `deltas` with
/// nt = element_counts.front().
struct StudyPlan {
    StudyAxis axis = StudyAxis::space;
    std::vector<int> degrees;
    std::vector<int> element_counts;
    std::vector<double> deltas;
};

struct StudyRow {
    StudyAxis axis;
    int k;
    double h;
    double delta;
    int equation;  // 1-based
    double l2_error;
    double max_nodal_error;
};

struct StudyFit {
    StudyAxis axis;
    int k;
    int equation;  // 1-based
    RateFit fit;
};

struct StudyResult {
    std::vector<StudyRow> rows;
    std::vector<StudyFit> fits;
    /// Failed runs, unreliable fits and error plateaus.
    std::vector<std::string> warnings;
};

/// Runs every refinement level to T and fits one slope per (k, equation) on
/// the L2 error at T. A failing run is recorded as a warning and left out of
/// the fit. Runs may execute on `jobs` threads; results are ordered by
/// parameter tuple.
StudyResult convergence_study(const ProblemSpec& problem, const StudyPlan& plan, int jobs = 1);

/// %.17g formatting used by every CSV writer.
std::string format_number(double value);

void write_study_csv(std::ostream& out, const StudyResult& result);
void write_rates_csv(std::ostream& out, const StudyResult& result);
void write_errors_csv(std::ostream& out, const ErrorReport& report);

}  // namespace mbfem
