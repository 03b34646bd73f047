#include "mbfem/analysis.hpp"

#include "mbfem/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace mbfem {

double l2_distance(const FESpace& space, std::span<const double> coeffs,
                   const std::function<double(double)>& fn, int extra_points) {
    if (static_cast<int>(coeffs.size()) != space.num_dofs()) {
        throw DimensionError("coefficient vector length does not match the space");
    }
    const int nloc = space.degree() + 1;
    const auto rule = gauss_legendre(static_cast<int>(space.quadrature().size()) + extra_points);
    double sum = 0.0;
    for (int e = 0; e < space.num_elements(); ++e) {
        const double half = 0.5 * space.element_width(e);
        for (std::size_t qp = 0; qp < rule.size(); ++qp) {
            const auto basis = space.eval_basis(e, rule.points[qp]);
            double value = 0.0;
            for (int m = 0; m < nloc; ++m) {
                value += coeffs[space.global_dof(e, m)] * basis.values[m];
            }
            const double diff = value - fn(space.map_to_physical(e, rule.points[qp]));
            sum += rule.weights[qp] * half * diff * diff;
        }
    }
    return std::sqrt(sum);
}

ErrorEntry measure(std::span<const Vector> coeffs, double t, const ProblemSpec& problem,
                   const FESpace& space) {
    if (!problem.has_exact()) {
        throw MissingExactSolutionError("problem '" + problem.name + "' has no exact solution");
    }
    if (static_cast<int>(coeffs.size()) != problem.ne) {
        throw DimensionError("measure: expected one coefficient vector per equation");
    }
    const auto& motion = problem.motion;
    const double a = motion.alpha(t);
    const double g = gamma(motion, t);
    ErrorEntry entry;
    entry.time = t;
    for (int i = 0; i < problem.ne; ++i) {
        const auto& u = problem.exact[i];
        const double fixed =
            l2_distance(space, coeffs[i], [&](double y) { return u(a + g * y, t); });
        entry.l2_fixed.push_back(fixed);
        entry.l2_moving.push_back(std::sqrt(g) * fixed);
        double worst = 0.0;
        const auto& nodes = space.dof_positions();
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            worst = std::max(worst, std::abs(u(a + g * nodes[j], t) - coeffs[i][j]));
        }
        entry.max_nodal.push_back(worst);
    }
    return entry;
}

ErrorEntry measure(const SchemeState& state, const ProblemSpec& problem, const FESpace& space) {
    return measure(state.current, state.time, problem, space);
}

RateFit fit_slope(std::span<const std::pair<double, double>> points) {
    if (points.size() < 3) {
        throw std::invalid_argument("slope fit needs at least 3 points");
    }
    RateFit fit;
    double sx = 0.0, sy = 0.0;
    std::vector<double> lx, ly;
    for (const auto& [h, err] : points) {
        if (!(h > 0.0) || !(err > 0.0) || !std::isfinite(h) || !std::isfinite(err)) {
            std::ostringstream msg;
            msg << "slope fit needs positive finite values, got (" << h << ", " << err << ")";
            throw std::invalid_argument(msg.str());
        }
        fit.abscissae.push_back(h);
        fit.errors.push_back(err);
        lx.push_back(std::log(h));
        ly.push_back(std::log(err));
        sx += lx.back();
        sy += ly.back();
    }
    const double n = static_cast<double>(points.size());
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (sxx == 0.0) {
        throw std::invalid_argument("slope fit needs at least two distinct abscissae");
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy == 0.0 ? 1.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
    return fit;
}

std::string to_string(StudyAxis axis) { return axis == StudyAxis::space ? "space" : "time"; }

StudyAxis parse_axis(const std::string& text) {
    if (text == "space" || text == "h") return StudyAxis::space;
    if (text == "time" || text == "delta") return StudyAxis::time;
    throw std::invalid_argument("unknown study axis '" + text + "' (expected space or time)");
}

namespace {

struct RunSpec {
    int k;
    int nt;
    double delta;
};

struct RunOutcome {
    bool ok = false;
    std::string error;
    ErrorEntry entry;
};

}  // namespace

StudyResult convergence_study(const ProblemSpec& problem, const StudyPlan& plan, int jobs) {
    if (!problem.has_exact()) {
        throw MissingExactSolutionError("convergence study needs an exact solution");
    }
    if (plan.degrees.empty() || plan.element_counts.empty() || plan.deltas.empty()) {
        throw std::invalid_argument("study plan needs degrees, element counts and deltas");
    }
    const std::size_t levels =
        plan.axis == StudyAxis::space ? plan.element_counts.size() : plan.deltas.size();
    if (levels < 3) {
        throw std::invalid_argument("slope fit needs at least 3 points (refinement levels)");
    }

    std::vector<RunSpec> runs;
    for (const int k : plan.degrees) {
        for (std::size_t level = 0; level < levels; ++level) {
            if (plan.axis == StudyAxis::space) {
                runs.push_back({k, plan.element_counts[level], plan.deltas.front()});
            } else {
                runs.push_back({k, plan.element_counts.front(), plan.deltas[level]});
            }
        }
    }

    std::vector<RunOutcome> outcomes(runs.size());
    auto execute = [&](std::size_t r) {
        const auto& spec = runs[r];
        try {
            const FESpace space = build_space(spec.nt, spec.k);
            const auto result = run(problem, space, spec.delta);
            outcomes[r].entry = measure(result.final_state, problem, space);
            outcomes[r].ok = true;
        } catch (const std::exception& e) {
            outcomes[r].error = e.what();
        }
    };
    const int workers = std::clamp(jobs, 1, static_cast<int>(runs.size()));
    if (workers == 1) {
        for (std::size_t r = 0; r < runs.size(); ++r) execute(r);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t r = next++; r < runs.size(); r = next++) execute(r);
            });
        }
    }

    StudyResult result;
    for (std::size_t r = 0; r < runs.size(); ++r) {
        const auto& spec = runs[r];
        if (!outcomes[r].ok) {
            std::ostringstream msg;
            msg << "run k=" << spec.k << " nt=" << spec.nt << " delta=" << spec.delta
                << " failed: " << outcomes[r].error;
            result.warnings.push_back(msg.str());
            continue;
        }
        for (int i = 0; i < problem.ne; ++i) {
            result.rows.push_back(StudyRow{plan.axis, spec.k, 1.0 / spec.nt, spec.delta, i + 1,
                                           outcomes[r].entry.l2_moving[i],
                                           outcomes[r].entry.max_nodal[i]});
        }
    }

    for (const int k : plan.degrees) {
        for (int i = 1; i <= problem.ne; ++i) {
            std::vector<std::pair<double, double>> points;
            for (const auto& row : result.rows) {
                if (row.k == k && row.equation == i) {
                    points.emplace_back(plan.axis == StudyAxis::space ? row.h : row.delta,
                                        row.l2_error);
                }
            }
            std::ostringstream tag;
            tag << to_string(plan.axis) << " k=" << k << " equation " << i;
            try {
                StudyFit sf{plan.axis, k, i, fit_slope(points)};
                if (!sf.fit.reliable()) {
                    result.warnings.push_back(tag.str() + ": unreliable fit (r^2 = " +
                                              format_number(sf.fit.r_squared) + ")");
                }
                // Refinement from the next-to-finest level gaining less than 2x
                // means a floor from the other discretization parameter.
                const auto& errs = sf.fit.errors;
                const double gain = errs[errs.size() - 2] / errs.back();
                if (gain < 2.0) {
                    result.warnings.push_back(tag.str() + ": error plateau at finest level (gain " +
                                              format_number(gain) + ")");
                }
                result.fits.push_back(std::move(sf));
            } catch (const std::invalid_argument& e) {
                result.warnings.push_back(tag.str() + ": " + e.what());
            }
        }
    }
    return result;
}

std::string format_number(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

void write_study_csv(std::ostream& out, const StudyResult& result) {
    out << "axis,k,h,delta,equation,l2_error,max_nodal_error\n";
    for (const auto& row : result.rows) {
        out << to_string(row.axis) << ',' << row.k << ',' << format_number(row.h) << ','
            << format_number(row.delta) << ',' << row.equation << ','
            << format_number(row.l2_error) << ',' << format_number(row.max_nodal_error) << '\n';
    }
}

void write_rates_csv(std::ostream& out, const StudyResult& result) {
    out << "axis,k,equation,slope,intercept,r_squared,reliable\n";
    for (const auto& f : result.fits) {
        out << to_string(f.axis) << ',' << f.k << ',' << f.equation << ','
            << format_number(f.fit.slope) << ',' << format_number(f.fit.intercept) << ','
            << format_number(f.fit.r_squared) << ',' << (f.fit.reliable() ? "yes" : "no") << '\n';
    }
}

void write_errors_csv(std::ostream& out, const ErrorReport& report) {
    out << "time,equation,l2_error,max_nodal_error\n";
    for (const auto& e : report.entries) {
        for (std::size_t i = 0; i < e.l2_moving.size(); ++i) {
            out << format_number(e.time) << ',' << i + 1 << ',' << format_number(e.l2_moving[i])
                << ',' << format_number(e.max_nodal[i]) << '\n';
        }
    }
}

}  // namespace mbfem
