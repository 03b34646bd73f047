#pragma once

#include "mbfem/assembly.hpp"
#include "mbfem/fe_space.hpp"
#include "mbfem/problem.hpp"

#include <functional>
#include <span>
#include <vector>

namespace mbfem {

/// Coefficient vectors of every equation at the latest two time levels.
struct SchemeState {
    long step = 0;
    double time = 0.0;
    double delta = 0.0;
    std::vector<Vector> current;   // V_i^{(n)}
    std::vector<Vector> previous;  // V_i^{(n-1)}; empty at n = 0
};

/// Read-only view handed to observers after every accepted step (and once at n = 0).
struct StepView {
    long step;
    double time;
    std::span<const Vector> coeffs;
};

using Observer = std::function<void(const StepView&)>;

/// Linearized Crank-Nicolson-Galerkin time stepping for the transformed
/// system on [0, 1].
///
/// Every step solves, per equation, the banded system
///   (M/dt + (a_i b2 K - C)/2) V^{(n)} = (M/dt - (a_i b2 K - C)/2) V^{(n-1)} + G_i
/// on the interior dofs, with b2, C = C(b1) and G_i at the step midpoint.
/// The scalar a_i comes from the nonlocal values of an explicit estimate of
/// the midpoint solution, so each step is linear.
class Stepper {
  public:
    Stepper(const FESpace& space, const OperatorSet& ops, const ProblemSpec& problem, double delta);

    /// V_i^{(0)} = I_h v_i0 with v_i0(y) = u_i0(alpha(0) + gamma(0) y).
    SchemeState initialize() const;

    /// Predictor-corrector first step. `dt` defaults to the nominal delta.
    SchemeState bootstrap_first_step(const SchemeState& state, double dt = 0.0) const;

    /// One step with the extrapolated diffusion argument
    /// 3/2 V^{(n-1)} - 1/2 V^{(n-2)}. A `dt` differing from the nominal delta
    /// (shortened final step) lands on time + dt and freezes the argument at
    /// V^{(n-1)}.
    SchemeState advance(const SchemeState& state, double dt = 0.0) const;

    /// Solves one Crank-Nicolson system for equation i from `from` over a
    /// step of length dt ending at t_end, with the given diffusion scalar.
    Vector solve_equation(int i, std::span<const double> from, double diffusion, double t_end,
                          double dt) const;

    double delta() const noexcept { return delta_; }

  private:
    const FESpace& space_;
    const OperatorSet& ops_;
    const ProblemSpec& problem_;
    double delta_;

    std::vector<double> nonlocal_values(const std::vector<Vector>& coeffs, double t) const;
    std::vector<double> diffusion_scalars(const std::vector<Vector>& coeffs, double t) const;
};

struct RunResult {
    SchemeState final_state;
    long steps = 0;
    double runtime_seconds = 0.0;
};

/// Number of steps to reach T with step delta; the last step is shortened
/// when T / delta is not an integer (relative tolerance 1e-9).
long step_count(double final_time, double delta);

/// initialize -> bootstrap -> advance until t = T, notifying observers of
/// every state in order. Aborts (by exception) on the first failure.
RunResult run(const ProblemSpec& problem, const FESpace& space, double delta,
              std::span<const Observer> observers = {});

}  // namespace mbfem
