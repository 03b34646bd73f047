#include "mbfem/analysis.hpp"
#include "mbfem/assembly.hpp"
#include "mbfem/config.hpp"
#include "mbfem/errors.hpp"
#include "mbfem/stepper.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>

namespace py = pybind11;
using namespace mbfem;

namespace {

Example1Motion parse_motion(const std::string& name) {
    if (name == "matched") return Example1Motion::matched;
    if (name == "wide") return Example1Motion::wide;
    throw std::invalid_argument("motion must be 'matched' or 'wide'");
}

py::dict error_entry(const ErrorEntry& e) {
    py::dict d;
    d["time"] = e.time;
    d["l2_moving"] = e.l2_moving;
    d["l2_fixed"] = e.l2_fixed;
    d["max_nodal"] = e.max_nodal;
    return d;
}

py::dict solve(const ProblemSpec& problem, const FESpace& space, double delta,
               std::vector<double> snapshot_times) {
    std::sort(snapshot_times.begin(), snapshot_times.end());
    const double tol = 1e-9 * std::max(1.0, problem.final_time());
    py::list snapshots;
    std::size_t next = 0;
    std::vector<Observer> observers{[&](const StepView& v) {
        bool taken = false;
        while (next < snapshot_times.size() && v.time >= snapshot_times[next] - tol) {
            if (!taken) {
                snapshots.append(py::make_tuple(
                    v.time, std::vector<Vector>(v.coeffs.begin(), v.coeffs.end())));
                taken = true;
            }
            ++next;
        }
    }};
    // Runs with the GIL held: the observer appends to a Python list.
    const RunResult result = run(problem, space, delta, observers);
    py::dict out;
    out["steps"] = result.steps;
    out["time"] = result.final_state.time;
    out["coeffs"] = result.final_state.current;
    out["snapshots"] = snapshots;
    out["runtime_seconds"] = result.runtime_seconds;
    return out;
}

py::dict study(const ProblemSpec& problem, const std::string& axis, std::vector<int> degrees,
               std::vector<int> element_counts, std::vector<double> deltas, int jobs) {
    const StudyPlan plan{parse_axis(axis), std::move(degrees), std::move(element_counts),
                         std::move(deltas)};
    StudyResult result;
    {
        py::gil_scoped_release release;
        result = convergence_study(problem, plan, jobs);
    }
    py::list rows;
    for (const auto& r : result.rows) {
        py::dict d;
        d["axis"] = to_string(r.axis);
        d["k"] = r.k;
        d["h"] = r.h;
        d["delta"] = r.delta;
        d["equation"] = r.equation;
        d["l2_error"] = r.l2_error;
        d["max_nodal_error"] = r.max_nodal_error;
        rows.append(d);
    }
    py::list fits;
    for (const auto& f : result.fits) {
        py::dict d;
        d["axis"] = to_string(f.axis);
        d["k"] = f.k;
        d["equation"] = f.equation;
        d["slope"] = f.fit.slope;
        d["intercept"] = f.fit.intercept;
        d["r_squared"] = f.fit.r_squared;
        d["reliable"] = f.fit.reliable();
        fits.append(d);
    }
    py::dict out;
    out["rows"] = rows;
    out["fits"] = fits;
    out["warnings"] = result.warnings;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Galerkin solver for nonlocal parabolic systems on moving intervals";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<NonFiniteError>(m, "NonFiniteError", PyExc_ArithmeticError);
    py::register_exception<SingularMatrixError>(m, "SingularMatrixError", PyExc_ArithmeticError);
    py::register_exception<BoundViolationError>(m, "BoundViolationError", PyExc_ArithmeticError);
    py::register_exception<MissingExactSolutionError>(m, "MissingExactSolutionError",
                                                      PyExc_LookupError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    py::class_<FESpace>(m, "FESpace")
        .def_property_readonly("degree", &FESpace::degree)
        .def_property_readonly("num_elements", &FESpace::num_elements)
        .def_property_readonly("num_dofs", &FESpace::num_dofs)
        .def_property_readonly("h", &FESpace::h)
        .def_property_readonly("dof_positions", &FESpace::dof_positions)
        .def_property_readonly("quadrature_points",
                               [](const FESpace& s) { return s.quadrature().size(); })
        .def("evaluate", [](const FESpace& s, const Vector& c, double y) { return s.evaluate(c, y); },
             py::arg("coeffs"), py::arg("y"));

    m.def(
        "build_space",
        [](int nt, int k, std::optional<int> q) { return q ? build_space(nt, k, *q) : build_space(nt, k); },
        py::arg("nt"), py::arg("k"), py::arg("q") = py::none());
    m.def("interpolate", &interpolate, py::arg("space"), py::arg("fn"));
    m.def("l2_norm", [](const FESpace& s, const Vector& c) { return l2_norm(s, c); },
          py::arg("space"), py::arg("coeffs"));

    py::class_<ProblemSpec>(m, "Problem")
        .def_readonly("name", &ProblemSpec::name)
        .def_readonly("ne", &ProblemSpec::ne)
        .def_property_readonly("final_time", &ProblemSpec::final_time)
        .def_property_readonly("has_exact", &ProblemSpec::has_exact)
        .def("alpha", [](const ProblemSpec& p, double t) { return p.motion.alpha(t); })
        .def("beta", [](const ProblemSpec& p, double t) { return p.motion.beta(t); })
        .def("exact",
             [](const ProblemSpec& p, int i, double x, double t) {
                 if (!p.has_exact()) throw MissingExactSolutionError("problem has no exact solution");
                 return p.exact.at(i)(x, t);
             },
             py::arg("equation"), py::arg("x"), py::arg("t"))
        .def("with_final_time", [](const ProblemSpec& p, double T) { return with_final_time(p, T); });

    m.def("example1", [](const std::string& motion) { return example1(parse_motion(motion)); },
          py::arg("motion") = "matched");
    m.def("example2", &example2);
    m.def("example1_forcing",
          [](int i, double x, double t, const std::string& motion) {
              return example1_forcing(parse_motion(motion), i, x, t);
          },
          py::arg("equation"), py::arg("x"), py::arg("t"), py::arg("motion") = "matched");

    m.def("solve", &solve, py::arg("problem"), py::arg("space"), py::arg("delta"),
          py::arg("snapshot_times") = std::vector<double>{},
          "Runs to the problem's final time; returns final coefficients and snapshots.");
    m.def("measure",
          [](const ProblemSpec& p, const FESpace& s, const std::vector<Vector>& coeffs, double t) {
              return error_entry(measure(coeffs, t, p, s));
          },
          py::arg("problem"), py::arg("space"), py::arg("coeffs"), py::arg("t"));

    py::class_<RateFit>(m, "RateFit")
        .def_readonly("slope", &RateFit::slope)
        .def_readonly("intercept", &RateFit::intercept)
        .def_readonly("r_squared", &RateFit::r_squared)
        .def_property_readonly("reliable", &RateFit::reliable);
    m.def("fit_slope",
          [](const std::vector<std::pair<double, double>>& pts) { return fit_slope(pts); },
          py::arg("points"));
    m.def("convergence_study", &study, py::arg("problem"), py::arg("axis"), py::arg("degrees"),
          py::arg("element_counts"), py::arg("deltas"), py::arg("jobs") = 1);

    py::class_<RunConfig>(m, "RunConfig")
        .def_readonly("problem", &RunConfig::problem)
        .def_readonly("nt", &RunConfig::nt)
        .def_readonly("k", &RunConfig::k)
        .def_readonly("q", &RunConfig::q)
        .def_readonly("delta", &RunConfig::delta)
        .def_readonly("final_time", &RunConfig::final_time)
        .def_readonly("snapshots", &RunConfig::snapshots)
        .def_readonly("out", &RunConfig::out);
    m.def("parse_config", [](const std::string& text) { return parse_config(text); },
          py::arg("text"));
    m.def("parse_problem", [](const std::string& text) { return parse_problem(text); },
          py::arg("text"));
    m.def("resolve_problem", &resolve_problem, py::arg("config"));

    m.def(
        "validate",
        [](const ProblemSpec& p, std::uint64_t seed) {
            ValidationOptions opts;
            opts.seed = seed;
            const auto report = validate(p, opts);
            py::list checks;
            for (const auto& c : report.checks) {
                checks.append(py::make_tuple(c.name, to_string(c.status), c.detail));
            }
            return py::make_tuple(to_string(report.overall()), checks);
        },
        py::arg("problem"), py::arg("seed") = 0);
}
