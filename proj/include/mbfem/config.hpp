#pragma once

#include "mbfem/analysis.hpp"
#include "mbfem/problem.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mbfem {

/// Validated run configuration.
///
/// Text format: UTF-8, one or more `key=value` tokens per line separated by
/// whitespace, `#` starts a comment. List keys may be repeated or take a
/// comma-separated value.
///
///   problem     example1 | example2 | path to a problem file   (required)
///   nt          element count >= 1                              (required)
///   k           polynomial degree >= 1                          (required)
///   delta       time step > 0                                   (required)
///   q           Gauss points per element, >= k + 1 (default k + 2)
///   T           final time override
///   snapshot    output time in [0, T] (list)
///   out         output directory (default ".")
///   moving      1 | 0: include the physical x column in snapshots.csv (default 1)
///   motion      matched | wide: Example 1 right boundary (default matched)
///   study.axis  space | time
///   study.k     degrees (list, default k)
///   study.nt    element counts (list, default nt)
///   study.delta time steps (list, default delta)
struct RunConfig {
    std::string problem;
    int nt = 0;
    int k = 0;
    int q = 0;
    double delta = 0.0;
    std::optional<double> final_time;
    std::vector<double> snapshots;
    std::string out = ".";
    bool emit_moving = true;
    Example1Motion example1_motion = Example1Motion::matched;
    std::optional<StudyAxis> study_axis;
    std::vector<int> study_degrees;
    std::vector<int> study_element_counts;
    std::vector<double> study_deltas;
    /// Directory that relative problem paths are resolved against.
    std::filesystem::path base_dir = ".";
};

/// Parses and validates; throws ParseError (with line number) for malformed
/// text and std::invalid_argument naming the field for bad values.
RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = ".");
RunConfig load_config(const std::filesystem::path& path);

/// Resolves the configured problem, applying the T override.
ProblemSpec resolve_problem(const RunConfig& config);

/// User problem file: one `key=value` per line, the value running to the end
/// of the line (`#` comments allowed). Equations are numbered from 1.
///
///   name=<text>  ne=<n>  T=<final time>
///   alpha=<curve>  beta=<curve>
///       curve: `poly c0 c1 ...` (ascending powers of t)
///            | `rational n0 n1 ... / d0 d1 ...`
///   diffusion.<i>=<law>
///       law: `constant c`
///          | `rational c0 c1 .. c_ne`     a = c0 + sum_j c_j / (1 + s_j^2)
///          | `exponential c0 c1 .. c_ne`  a = c0 + sum_j c_j exp(-s_j^2)
///   bounds.<i>=<lower> <upper>
///   forcing.<i>=<c> <xfactor> <tfactor>   (repeatable; terms are summed)
///       xfactor: `one` | `pow p` (x^p) | `gauss a` (exp(-a x^2)) | `sin w` (sin(w x))
///       tfactor: `one` | `shiftpow p` ((1+t)^p) | `exp r` (exp(r t))
///   initial.<i>=<profile>
///       profile: `spline x0 v0 x1 v1 ...` (natural cubic, >= 3 knots)
///              | `sine A`  (A sin(pi (x - alpha(0)) / gamma(0)))
///              | `poly c0 c1 ...` (ascending powers of x)
///   exact.<i>=heat A   (A exp(-c pi^2 t / L^2) sin(pi (x - alpha) / L); needs
///                       fixed boundaries and `diffusion.<i>=constant c`)
///   probe=<lo> <hi>    range of nonlocal values sampled by validate
ProblemSpec parse_problem(std::string_view text);
ProblemSpec load_problem(const std::filesystem::path& path);

}  // namespace mbfem
