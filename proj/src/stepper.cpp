#include "mbfem/stepper.hpp"

#include "mbfem/errors.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace mbfem {

Stepper::Stepper(const FESpace& space, const OperatorSet& ops, const ProblemSpec& problem,
                 double delta)
    : space_(space), ops_(ops), problem_(problem), delta_(delta) {
    problem_.check_shape();
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw std::invalid_argument("time step must be positive and finite");
    }
}

SchemeState Stepper::initialize() const {
    const auto& motion = problem_.motion;
    const double a0 = motion.alpha(0.0);
    const double g0 = gamma(motion, 0.0);
    SchemeState state;
    state.delta = delta_;
    for (int i = 0; i < problem_.ne; ++i) {
        const auto& u0 = problem_.initial[i];
        state.current.push_back(interpolate(space_, [&](double y) { return u0(a0 + g0 * y); }));
    }
    return state;
}

std::vector<double> Stepper::nonlocal_values(const std::vector<Vector>& coeffs, double t) const {
    std::vector<double> values(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        values[i] = nonlocal_value(ops_.nonlocal_weights, coeffs[i], problem_.motion, t);
    }
    return values;
}

std::vector<double> Stepper::diffusion_scalars(const std::vector<Vector>& coeffs, double t) const {
    const auto l = nonlocal_values(coeffs, t);
    std::vector<double> a(problem_.ne);
    for (int i = 0; i < problem_.ne; ++i) {
        a[i] = diffusion_scalar(problem_, i, l);
    }
    return a;
}

Vector Stepper::solve_equation(int i, std::span<const double> from, double diffusion,
                               double t_end, double dt) const {
    const double t_mid = t_end - 0.5 * dt;
    const BandedMatrix conv = convection_matrix(ops_, problem_.motion, t_mid);

    // L = a b2 K - C; A = M/dt + L/2; R = M/dt - L/2.
    BandedMatrix half_operator = ops_.stiffness;
    half_operator.scale(0.5 * diffusion * coeff_b2(problem_.motion, t_mid));
    half_operator.add_scaled(conv, -0.5);

    BandedMatrix lhs = ops_.mass;
    lhs.scale(1.0 / dt);
    BandedMatrix rhs_op = lhs;
    lhs.add_scaled(half_operator, 1.0);
    rhs_op.add_scaled(half_operator, -1.0);

    const int np = space_.num_dofs();
    Vector rhs(np);
    rhs_op.multiply(from, rhs);
    const Vector load = assemble_load(space_, problem_, i, t_mid);
    for (int j = 0; j < np; ++j) {
        rhs[j] += load[j];
    }

    Vector solution(np, 0.0);
    if (np <= 2) {
        return solution;
    }
    const BandedLU lu(lhs.interior());
    const Vector interior = lu.solve(std::span<const double>(rhs).subspan(1, np - 2));
    std::copy(interior.begin(), interior.end(), solution.begin() + 1);
    return solution;
}

namespace {

void check_finite(const std::vector<Vector>& coeffs, long step) {
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        for (const double v : coeffs[i]) {
            if (!std::isfinite(v)) {
                std::ostringstream msg;
                msg << "non-finite solution for equation " << i + 1 << " at step " << step;
                throw NonFiniteError(msg.str());
            }
        }
    }
}

template <class Fn>
auto with_step_context(long step, Fn&& fn) {
    try {
        return fn();
    } catch (const BoundViolationError& e) {
        throw BoundViolationError("step " + std::to_string(step) + ": " + e.what());
    } catch (const SingularMatrixError& e) {
        throw SingularMatrixError("step " + std::to_string(step) + ": " + e.what(),
                                  e.condition_estimate());
    }
}

}  // namespace

SchemeState Stepper::bootstrap_first_step(const SchemeState& state, double dt) const {
    if (state.step != 0) {
        throw std::logic_error("bootstrap_first_step expects the initial state");
    }
    if (dt <= 0.0) dt = delta_;
    const double t1 = dt;
    return with_step_context(1, [&] {
        // Predictor: diffusion frozen at the initial level. Like every nonlocal
        // value inside a step, l() takes gamma at the step midpoint.
        const auto a_pred = diffusion_scalars(state.current, 0.5 * dt);
        std::vector<Vector> predicted(problem_.ne);
        for (int i = 0; i < problem_.ne; ++i) {
            predicted[i] = solve_equation(i, state.current[i], a_pred[i], t1, dt);
        }
        // Corrector: diffusion at the average of predictor and initial level.
        std::vector<Vector> average(problem_.ne);
        for (int i = 0; i < problem_.ne; ++i) {
            average[i].resize(predicted[i].size());
            for (std::size_t j = 0; j < predicted[i].size(); ++j) {
                average[i][j] = 0.5 * (predicted[i][j] + state.current[i][j]);
            }
        }
        const auto a_corr = diffusion_scalars(average, 0.5 * dt);

        SchemeState next;
        next.step = 1;
        next.time = t1;
        next.delta = state.delta;
        next.previous = state.current;
        next.current.resize(problem_.ne);
        for (int i = 0; i < problem_.ne; ++i) {
            next.current[i] = solve_equation(i, state.current[i], a_corr[i], t1, dt);
        }
        check_finite(next.current, 1);
        return next;
    });
}

SchemeState Stepper::advance(const SchemeState& state, double dt) const {
    if (state.step < 1 || state.previous.size() != state.current.size()) {
        throw std::logic_error("advance needs two stored time levels; bootstrap first");
    }
    const bool shortened = dt > 0.0 && dt != delta_;
    if (dt <= 0.0) dt = delta_;
    const long n = state.step + 1;
    const double t_end = shortened ? state.time + dt : static_cast<double>(n) * delta_;
    return with_step_context(n, [&] {
        std::vector<Vector> extrapolated;
        if (shortened) {
            extrapolated = state.current;
        } else {
            extrapolated.resize(problem_.ne);
            for (int i = 0; i < problem_.ne; ++i) {
                const auto& v1 = state.current[i];
                const auto& v2 = state.previous[i];
                extrapolated[i].resize(v1.size());
                for (std::size_t j = 0; j < v1.size(); ++j) {
                    extrapolated[i][j] = 1.5 * v1[j] - 0.5 * v2[j];
                }
            }
        }
        const auto a = diffusion_scalars(extrapolated, t_end - 0.5 * dt);

        SchemeState next;
        next.step = n;
        next.time = t_end;
        next.delta = state.delta;
        next.previous = state.current;
        next.current.resize(problem_.ne);
        for (int i = 0; i < problem_.ne; ++i) {
            next.current[i] = solve_equation(i, state.current[i], a[i], t_end, dt);
        }
        check_finite(next.current, n);
        return next;
    });
}

long step_count(double final_time, double delta) {
    const double ratio = final_time / delta;
    if (!(ratio > 0.0) || ratio > 1e15) {
        throw std::invalid_argument("T / delta must be positive and within integer range");
    }
    const double nearest = std::round(ratio);
    if (nearest >= 1.0 && std::abs(ratio - nearest) <= 1e-9 * nearest) {
        return static_cast<long>(nearest);
    }
    return static_cast<long>(std::floor(ratio)) + 1;
}

RunResult run(const ProblemSpec& problem, const FESpace& space, double delta,
              std::span<const Observer> observers) {
    const auto start = std::chrono::steady_clock::now();
    const OperatorSet ops = assemble_static(space);
    const Stepper stepper(space, ops, problem, delta);
    const double T = problem.final_time();
    const long steps = step_count(T, delta);
    const double last_dt = T - static_cast<double>(steps - 1) * delta;
    const bool exact_grid = std::abs(last_dt - delta) <= 1e-9 * delta;

    auto notify = [&](const SchemeState& s) {
        const StepView view{s.step, s.time, s.current};
        for (const auto& obs : observers) {
            if (obs) obs(view);
        }
    };

    SchemeState state = stepper.initialize();
    notify(state);
    for (long n = 1; n <= steps; ++n) {
        const bool last = n == steps;
        const double dt = (last && !exact_grid) ? last_dt : delta;
        if (n == 1) {
            state = stepper.bootstrap_first_step(state, dt);
        } else {
            state = stepper.advance(state, dt);
        }
        if (last) {
            state.time = T;
        }
        notify(state);
    }
    RunResult result;
    result.final_state = std::move(state);
    result.steps = steps;
    result.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace mbfem
