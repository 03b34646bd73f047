#include "mbfem/errors.hpp"
#include "mbfem/geometry.hpp"
#include "mbfem/problem.hpp"

#include <doctest.h>
#include <oracles.hpp>

#include <cmath>
#include <random>

using namespace mbfem;

TEST_CASE("gamma on the wide Example 1 motion") {
    const auto motion = example1_motion(Example1Motion::wide);
    CHECK(gamma(motion, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(gamma(motion, 1.0) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(coeff_b2(motion, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(coeff_b2(motion, 1.0) == doctest::Approx(4.0 / 25.0).epsilon(1e-15));
    CHECK(coeff_b1(motion, 0.5, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(coeff_b1(motion, 0.0, 0.0) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(to_fixed(motion, 0.5, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(to_moving(motion, 0.5, 1.0) == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("gamma on the matched Example 1 motion") {
    const auto motion = example1_motion(Example1Motion::matched);
    // beta(1) = 1 + 1/3, alpha(1) = -1/2
    CHECK(gamma(motion, 1.0) == doctest::Approx(11.0 / 6.0).epsilon(1e-15));
    // alpha'(0) = -1, beta'(0) = 1
    CHECK(coeff_b1(motion, 0.5, 0.0) == doctest::Approx(0.0));
    CHECK(coeff_b1(motion, 0.0, 0.0) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("fixed boundaries degenerate to a cylinder") {
    const auto motion = fixed_motion(0.0, 1.0, 2.0);
    for (double t : {0.0, 0.3, 2.0}) {
        CHECK(gamma(motion, t) == 1.0);
        CHECK(coeff_b2(motion, t) == 1.0);
        CHECK(coeff_b1(motion, 0.3, t) == 0.0);
    }
}

TEST_CASE("endpoints map to 0 and 1") {
    const auto motion = example2_motion();
    for (double t : {0.0, 0.25, 1.0}) {
        CHECK(to_fixed(motion, motion.alpha(t), t) == 0.0);
        CHECK(to_fixed(motion, motion.beta(t), t) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(to_moving(motion, 0.0, t) == motion.alpha(t));
        CHECK(to_moving(motion, 1.0, t) == doctest::Approx(motion.beta(t)).epsilon(1e-15));
    }
}

TEST_CASE("time and position domain errors") {
    const auto motion = example1_motion(Example1Motion::matched);
    CHECK_THROWS_AS(gamma(motion, -0.1), DomainError);
    CHECK_THROWS_AS(gamma(motion, 3.1), DomainError);
    CHECK_NOTHROW(gamma(motion, 3.0 + 1e-13));
    CHECK_THROWS_AS(to_fixed(motion, 1.5, 0.0), DomainError);

    const auto collapsed = fixed_motion(1.0, 1.0, 1.0);
    CHECK_THROWS_AS(gamma(collapsed, 0.5), ValidationError);
    CHECK_THROWS_AS(coeff_b1(collapsed, 0.5, 0.5), ValidationError);
}

TEST_CASE("round trip x -> y -> x") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const auto& motion : {example1_motion(Example1Motion::matched),
                               example1_motion(Example1Motion::wide), example2_motion()}) {
        for (int s = 0; s < 500; ++s) {
            const double t = unit(rng) * motion.final_time;
            const double x = motion.alpha(t) + unit(rng) * (motion.beta(t) - motion.alpha(t));
            const double back = to_moving(motion, to_fixed(motion, x, t), t);
            CHECK(std::abs(back - x) <= 1e-12 * std::max(1.0, std::abs(x)));
        }
    }
}

TEST_CASE("width is monotone on the example motions") {
    for (const auto& motion : {example1_motion(Example1Motion::matched),
                               example1_motion(Example1Motion::wide), example2_motion()}) {
        double last = 0.0;
        for (int i = 0; i <= 200; ++i) {
            const double g = gamma(motion, motion.final_time * i / 200.0);
            CHECK(g >= last);
            last = g;
        }
    }
}

TEST_CASE("analytic boundary velocities agree with finite differences") {
    for (const auto& motion : {example1_motion(Example1Motion::matched),
                               example1_motion(Example1Motion::wide), example2_motion()}) {
        for (int i = 1; i < 20; ++i) {
            const double t = motion.final_time * i / 20.0;
            const double h = 1e-6;
            const double fd_a = (motion.alpha(t + h) - motion.alpha(t - h)) / (2 * h);
            const double fd_b = (motion.beta(t + h) - motion.beta(t - h)) / (2 * h);
            CHECK(fd_a == doctest::Approx(motion.alpha_prime(t)).epsilon(1e-6));
            CHECK(fd_b == doctest::Approx(motion.beta_prime(t)).epsilon(1e-6));
        }
    }
}

TEST_CASE("b1 at the ends reproduces the boundary velocities") {
    const auto motion = example2_motion();
    for (double t : {0.0, 0.4, 1.0}) {
        const double g = gamma(motion, t);
        CHECK(coeff_b1(motion, 0.0, t) * g == doctest::Approx(motion.alpha_prime(t)).epsilon(1e-14));
        CHECK(coeff_b1(motion, 1.0, t) * g == doctest::Approx(motion.beta_prime(t)).epsilon(1e-14));
    }
}

TEST_CASE("check_motion flags shrinking domains") {
    BoundaryMotion shrinking{[](double t) { return 0.1 * t; }, [](double) { return 1.0; },
                             [](double) { return 0.1; }, [](double) { return 0.0; }, 1.0};
    const auto times = grid_and_midpoints(1.0, 0.1);
    CHECK(times.size() == 21);
    const auto strict = check_motion(shrinking, times);
    CHECK(strict[0].status == CheckStatus::pass);
    CHECK(strict[1].status == CheckStatus::fail);
    const auto lenient = check_motion(shrinking, times, true);
    CHECK(lenient[1].status == CheckStatus::warn);
}
