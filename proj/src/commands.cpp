#include "mbfem/commands.hpp"

#include "mbfem/analysis.hpp"
#include "mbfem/errors.hpp"
#include "mbfem/stepper.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace mbfem {

namespace {

struct Snapshot {
    double time;
    std::vector<Vector> coeffs;
};

bool write_file(const std::filesystem::path& path, const std::string& content, std::ostream& log) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    out.close();
    if (!out) {
        log << "error: failed to write " << path.string() << '\n';
        return false;
    }
    log << "wrote " << path.string() << '\n';
    return true;
}

bool prepare_dir(const std::filesystem::path& dir, std::ostream& log) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        log << "error: cannot create output directory " << dir.string() << ": " << ec.message()
            << '\n';
        return false;
    }
    return true;
}

}  // namespace

int cmd_solve(const RunConfig& config, std::ostream& log) {
    const ProblemSpec problem = resolve_problem(config);
    const FESpace space = build_space(config.nt, config.k, config.q);
    const double T = problem.final_time();
    const double tol = 1e-9 * std::max(1.0, T);

    std::vector<double> requested = config.snapshots;
    std::sort(requested.begin(), requested.end());
    requested.erase(std::unique(requested.begin(), requested.end()), requested.end());

    std::vector<Snapshot> snapshots;
    std::size_t next = 0;
    Observer capture = [&](const StepView& view) {
        bool taken = false;
        while (next < requested.size() && view.time >= requested[next] - tol) {
            if (!taken) {
                snapshots.push_back({view.time, {view.coeffs.begin(), view.coeffs.end()}});
                taken = true;
            }
            ++next;
        }
    };
    const std::vector<Observer> observers{capture};

    RunResult result;
    try {
        result = run(problem, space, config.delta, observers);
    } catch (const std::exception& e) {
        log << "error: solver failed: " << e.what() << '\n';
        return exit_solver_failure;
    }
    const auto& final_state = result.final_state;
    if (snapshots.empty() || snapshots.back().time != final_state.time) {
        snapshots.push_back({final_state.time, final_state.current});
    }
    log << problem.name << ": " << result.steps << " steps to t = " << format_number(final_state.time)
        << " (nt=" << config.nt << ", k=" << config.k << ", delta=" << format_number(config.delta)
        << ")\n";

    std::ostringstream csv;
    csv << (config.emit_moving ? "time,equation,y,x,value\n" : "time,equation,y,value\n");
    const auto& nodes = space.dof_positions();
    for (const auto& snap : snapshots) {
        for (int i = 0; i < problem.ne; ++i) {
            for (std::size_t j = 0; j < nodes.size(); ++j) {
                csv << format_number(snap.time) << ',' << i + 1 << ',' << format_number(nodes[j])
                    << ',';
                if (config.emit_moving) {
                    csv << format_number(to_moving(problem.motion, nodes[j], snap.time)) << ',';
                }
                csv << format_number(snap.coeffs[i][j]) << '\n';
            }
        }
    }

    const std::filesystem::path dir = config.out;
    if (!prepare_dir(dir, log) || !write_file(dir / "snapshots.csv", csv.str(), log)) {
        return exit_io_failure;
    }

    if (problem.has_exact()) {
        ErrorReport report;
        report.runtime_seconds = result.runtime_seconds;
        for (const auto& snap : snapshots) {
            report.entries.push_back(measure(snap.coeffs, snap.time, problem, space));
        }
        for (int i = 0; i < problem.ne; ++i) {
            const auto& last = report.entries.back();
            log << "  u_" << i + 1 << " at t = " << format_number(last.time)
                << ": l2 = " << format_number(last.l2_moving[i])
                << ", max nodal = " << format_number(last.max_nodal[i]) << '\n';
        }
        std::ostringstream errors;
        write_errors_csv(errors, report);
        if (!write_file(dir / "errors.csv", errors.str(), log)) {
            return exit_io_failure;
        }
    }
    return exit_ok;
}

int cmd_study(const RunConfig& config, int jobs, std::ostream& log) {
    if (!config.study_axis) {
        log << "error: study needs study.axis=space|time\n";
        return exit_usage;
    }
    const ProblemSpec problem = resolve_problem(config);
    const StudyPlan plan{*config.study_axis, config.study_degrees, config.study_element_counts,
                         config.study_deltas};
    StudyResult result;
    try {
        result = convergence_study(problem, plan, jobs);
    } catch (const std::exception& e) {
        log << "error: " << e.what() << '\n';
        return exit_usage;
    }
    for (const auto& f : result.fits) {
        log << to_string(f.axis) << " k=" << f.k << " u_" << f.equation
            << ": slope = " << format_number(f.fit.slope)
            << ", r^2 = " << format_number(f.fit.r_squared) << '\n';
    }
    for (const auto& w : result.warnings) {
        log << "warning: " << w << '\n';
    }

    std::ostringstream study, rates;
    write_study_csv(study, result);
    write_rates_csv(rates, result);
    const std::filesystem::path dir = config.out;
    if (!prepare_dir(dir, log) || !write_file(dir / "study.csv", study.str(), log) ||
        !write_file(dir / "rates.csv", rates.str(), log)) {
        return exit_io_failure;
    }
    const std::size_t expected_rows =
        plan.degrees.size() * static_cast<std::size_t>(problem.ne) *
        (plan.axis == StudyAxis::space ? plan.element_counts.size() : plan.deltas.size());
    return result.rows.size() == expected_rows ? exit_ok : exit_solver_failure;
}

int cmd_validate(const RunConfig& config, std::uint64_t seed, std::ostream& log) {
    const ProblemSpec problem = resolve_problem(config);
    ValidationOptions options;
    options.delta = config.delta;
    options.seed = seed;
    const auto report = validate(problem, options);
    log << "problem " << problem.name << " (ne=" << problem.ne
        << ", T=" << format_number(problem.final_time()) << ")\n";
    for (const auto& check : report.checks) {
        log << "  [" << to_string(check.status) << "] " << check.name << ": " << check.detail
            << '\n';
    }
    log << "overall: " << to_string(report.overall()) << '\n';
    return report.overall() == CheckStatus::fail ? exit_validation_failure : exit_ok;
}

}  // namespace mbfem
