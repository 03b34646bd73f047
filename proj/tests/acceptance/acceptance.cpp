// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Pass criterion numbers as arguments to run a subset.

#include "mbfem/analysis.hpp"
#include "mbfem/assembly.hpp"
#include "mbfem/commands.hpp"
#include "mbfem/config.hpp"
#include "mbfem/stepper.hpp"

#include <heat.hpp>
#include <oracles.hpp>
#include <residual.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace mbfem;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

struct Criterion {
    int id;
    std::string title;
    std::function<Outcome()> check;
};

std::string fmt(double v, const char* spec = "%.4g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome slope_criterion(const StudyPlan& plan, double lo, double hi) {
    const auto result = convergence_study(example1(), plan);
    bool pass = result.fits.size() == 2;
    std::string detail;
    for (const auto& f : result.fits) {
        const bool ok = f.fit.slope >= lo && f.fit.slope <= hi;
        pass = pass && ok;
        detail += "u" + std::to_string(f.equation) + " slope " + fmt(f.fit.slope, "%.4f") + " (r^2 " +
                  fmt(f.fit.r_squared, "%.5f") + "); ";
    }
    for (const auto& w : result.warnings) detail += "[" + w + "] ";
    return {pass, detail + "bounds [" + fmt(lo) + ", " + fmt(hi) + "]"};
}

Outcome spatial(int k, double lo, double hi) {
    return slope_criterion(StudyPlan{StudyAxis::space, {k}, {4, 8, 16, 32}, {1.0 / 5000.0}}, lo, hi);
}

Outcome temporal() {
    return slope_criterion(
        StudyPlan{StudyAxis::time, {3}, {32}, {1.0 / 20, 1.0 / 40, 1.0 / 80, 1.0 / 160}}, 1.75,
        2.25);
}

Outcome table_magnitudes() {
    const auto p = with_final_time(example1(), 1.0);
    const auto space = build_space(4, 5);
    struct Row {
        double t;
        double reference[2];
        double measured[2];
        bool seen;
    };
    std::vector<Row> rows{{0.5, {1.0564e-09, 1.0907e-09}, {}, false},
                          {1.0, {5.0614e-10, 5.5859e-10}, {}, false}};
    const std::vector<Observer> obs{[&](const StepView& v) {
        for (auto& r : rows) {
            if (!r.seen && std::abs(v.time - r.t) <= 1e-9) {
                const auto e = measure(v.coeffs, v.time, p, space);
                r.measured[0] = e.max_nodal[0];
                r.measured[1] = e.max_nodal[1];
                r.seen = true;
            }
        }
    }};
    run(p, space, 1e-4, obs);
    bool pass = true;
    std::string detail;
    for (const auto& r : rows) {
        pass = pass && r.seen;
        for (int i = 0; i < 2; ++i) {
            const double ratio = r.measured[i] / r.reference[i];
            pass = pass && ratio >= 0.1 && ratio <= 10.0;
            detail += "t=" + fmt(r.t) + " u" + std::to_string(i + 1) + " " +
                      fmt(r.measured[i], "%.4e") + " vs " + fmt(r.reference[i], "%.4e") + "; ";
        }
    }
    return {pass, detail + "tolerance factor 10"};
}

Outcome forcing_residual() {
    const double worst = oracle::example1_max_residual(Example1Motion::matched, 200, 2024);
    return {worst <= 1e-8, "max |residual| " + fmt(worst, "%.3e") + " over 200 points, bound 1e-8"};
}

Outcome interpolation_order() {
    const auto u = [](double y) { return std::sin(std::numbers::pi * y); };
    bool pass = true;
    std::string detail;
    for (int k = 1; k <= 3; ++k) {
        std::vector<double> hs, errs;
        for (int nt : {4, 8, 16, 32}) {
            const auto space = build_space(nt, k);
            const auto c = interpolate(space, u);
            double sq = 0.0;
            for (int e = 0; e < nt; ++e) {
                const double lo = space.element_left(e);
                sq += oracle::simpson(
                    [&](double y) {
                        const double d = space.evaluate(c, std::clamp(y, 0.0, 1.0)) - u(y);
                        return d * d;
                    },
                    lo, lo + space.element_width(e), 400);
            }
            hs.push_back(space.h());
            errs.push_back(std::sqrt(sq));
        }
        const double slope = oracle::loglog_slope(hs, errs);
        pass = pass && std::abs(slope - (k + 1)) <= 0.2;
        detail += "k=" + std::to_string(k) + " slope " + fmt(slope, "%.4f") + "; ";
    }
    return {pass, detail + "tolerance 0.2"};
}

Outcome assembly_oracle() {
    double worst = 0.0;
    for (int nt = 1; nt <= 4; ++nt) {
        for (int k = 1; k <= 3; ++k) {
            const auto space = build_space(nt, k);
            const auto ops = assemble_static(space);
            const int np = space.num_dofs();
            std::vector<double> mass(np * np, 0.0), stiff(np * np, 0.0), c0(np * np, 0.0),
                c1(np * np, 0.0), weights(np, 0.0);
            for (int e = 0; e < nt; ++e) {
                const double lo = space.element_left(e);
                const double hi = lo + space.element_width(e);
                auto phi = [&](int m, double y) { return oracle::cardinal(k, m, lo, hi, y); };
                auto dphi = [&](int m, double y) { return oracle::cardinal_prime(k, m, lo, hi, y); };
                for (int a = 0; a <= k; ++a) {
                    const int i = space.global_dof(e, a);
                    weights[i] += oracle::simpson([&](double y) { return phi(a, y); }, lo, hi, 10000);
                    for (int b = 0; b <= k; ++b) {
                        const int j = space.global_dof(e, b);
                        const auto at = static_cast<std::size_t>(i * np + j);
                        mass[at] += oracle::simpson([&](double y) { return phi(b, y) * phi(a, y); },
                                                    lo, hi, 10000);
                        stiff[at] += oracle::simpson(
                            [&](double y) { return dphi(b, y) * dphi(a, y); }, lo, hi, 10000);
                        c0[at] += oracle::simpson([&](double y) { return dphi(b, y) * phi(a, y); },
                                                  lo, hi, 10000);
                        c1[at] += oracle::simpson(
                            [&](double y) { return y * dphi(b, y) * phi(a, y); }, lo, hi, 10000);
                    }
                }
            }
            for (int i = 0; i < np; ++i) {
                worst = std::max(worst, std::abs(ops.nonlocal_weights[i] - weights[i]));
                for (int j = 0; j < np; ++j) {
                    const auto at = static_cast<std::size_t>(i * np + j);
                    worst = std::max({worst, std::abs(ops.mass(i, j) - mass[at]),
                                      std::abs(ops.stiffness(i, j) - stiff[at]),
                                      std::abs(ops.conv_const(i, j) - c0[at]),
                                      std::abs(ops.conv_linear(i, j) - c1[at])});
                }
            }
        }
    }
    return {worst <= 1e-9, "max |entry - Simpson| " + fmt(worst, "%.3e") + ", bound 1e-9"};
}

double heat_error(int nt, double delta) {
    const auto p = testing::heat_problem(0.1);
    const auto space = build_space(nt, 1);
    const auto result = run(p, space, delta);
    return measure(result.final_state, p, space).l2_moving[0];
}

Outcome cylinder_heat() {
    // h-dominant: delta small, halve h. delta-dominant: h small, halve delta.
    const double h_coarse = heat_error(16, 1e-4);
    const double h_fine = heat_error(32, 1e-4);
    const double d_coarse = heat_error(1024, 0.02);
    const double d_fine = heat_error(1024, 0.01);
    const double h_gain = h_coarse / h_fine;
    const double d_gain = d_coarse / d_fine;
    const bool pass = h_gain >= 4.0 && d_gain >= 4.0;
    return {pass, "h-dominant (nt 16->32, delta=1e-4): " + fmt(h_coarse, "%.4e") + " -> " +
                      fmt(h_fine, "%.4e") + ", gain " + fmt(h_gain, "%.4f") +
                      "; delta-dominant (nt=1024, delta 0.02->0.01): " + fmt(d_coarse, "%.4e") +
                      " -> " + fmt(d_fine, "%.4e") + ", gain " + fmt(d_gain, "%.4f") +
                      "; required gain >= 4"};
}

Outcome example2_regression() {
    const fs::path fixture_dir = MBFEM_FIXTURE_DIR;
    const auto p = example2();
    const auto space = build_space(4, 4);
    std::vector<double> last_max(2, 0.0);
    bool decaying = true;
    double reached = 0.0;
    const std::vector<Observer> obs{[&](const StepView& v) {
        reached = v.time;
        for (int i = 0; i < 2; ++i) {
            double m = 0.0;
            for (double c : v.coeffs[i]) m = std::max(m, std::abs(c));
            if (v.time > 0.2 + 1e-12 && m > last_max[i]) decaying = false;
            last_max[i] = m;
        }
    }};
    run(p, space, 1e-3, obs);

    const fs::path work = fs::temp_directory_path() / "mbfem_acceptance_example2";
    fs::remove_all(work);
    std::ostringstream log;
    std::vector<std::string> outputs;
    for (const char* sub : {"first", "second"}) {
        auto config = load_config(fixture_dir / "example2.cfg");
        config.out = (work / sub).string();
        if (cmd_solve(config, log) != exit_ok) return {false, "solve failed: " + log.str()};
        outputs.push_back(slurp(work / sub / "snapshots.csv"));
    }
    const std::string frozen = slurp(fixture_dir / "example2_snapshots.csv");
    const bool deterministic = outputs[0] == outputs[1];
    const bool matches = !frozen.empty() && outputs[0] == frozen;
    const bool finished = reached == 1.0;
    return {finished && decaying && deterministic && matches,
            std::string("reached T=1: ") + (finished ? "yes" : "no") +
                "; max-norm non-increasing after t=0.2: " + (decaying ? "yes" : "no") +
                " (final " + fmt(last_max[0], "%.4e") + ", " + fmt(last_max[1], "%.4e") +
                "); rerun identical: " + (deterministic ? "yes" : "no") +
                "; fixture identical: " + (matches ? "yes" : "no")};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {1, "spatial convergence, k=2", [] { return spatial(2, 2.75, 3.25); }},
        {2, "spatial convergence, k=3", [] { return spatial(3, 3.75, 4.25); }},
        {3, "temporal convergence, k=3, nt=32", temporal},
        {4, "max nodal error magnitudes, k=5, nt=4, delta=1e-4", table_magnitudes},
        {5, "manufactured forcing residual", forcing_residual},
        {6, "interpolation order", interpolation_order},
        {7, "assembly against composite Simpson", assembly_oracle},
        {8, "heat equation on a fixed interval, k=1", cylinder_heat},
        {9, "second example regression", example2_regression},
    };
    std::set<int> selected;
    for (int a = 1; a < argc; ++a) selected.insert(std::atoi(argv[a]));

    int failures = 0;
    for (const auto& c : criteria) {
        if (!selected.empty() && !selected.count(c.id)) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.check();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s  %d. %s: %s [%.1fs]\n", outcome.pass ? "PASS" : "FAIL", c.id,
                    c.title.c_str(), outcome.detail.c_str(), secs);
        std::fflush(stdout);
        failures += outcome.pass ? 0 : 1;
    }
    std::printf("%d failed\n", failures);
    return failures == 0 ? 0 : 1;
}
