#pragma once

#include "mbfem/config.hpp"

#include <cstdint>
#include <iosfwd>

namespace mbfem {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_solver_failure = 2,
    exit_io_failure = 3,
    exit_validation_failure = 4,
};

/// Runs one solve and writes snapshots.csv (requested times plus the final
/// state) and, when the problem has exact solutions, errors.csv.
int cmd_solve(const RunConfig& config, std::ostream& log);

/// Runs the configured convergence study and writes study.csv and rates.csv.
int cmd_study(const RunConfig& config, int jobs, std::ostream& log);

/// Prints the hypothesis report; nonzero when any check fails.
int cmd_validate(const RunConfig& config, std::uint64_t seed, std::ostream& log);

}  // namespace mbfem
