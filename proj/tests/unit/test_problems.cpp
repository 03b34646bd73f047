#include "mbfem/errors.hpp"
#include "mbfem/problem.hpp"

#include <doctest.h>
#include <oracles.hpp>
#include <residual.hpp>

#include <cmath>

using namespace mbfem;

TEST_CASE("first example forcing leaves a negligible residual") {
    CHECK(oracle::example1_max_residual(Example1Motion::matched, 200, 7) <= 1e-8);
    CHECK(oracle::example1_max_residual(Example1Motion::wide, 200, 8) <= 1e-8);
}

TEST_CASE("first example exact pair satisfies the boundary conditions") {
    for (auto variant : {Example1Motion::matched, Example1Motion::wide}) {
        const auto p = example1(variant);
        for (int s = 0; s < 50; ++s) {
            const double t = 3.0 * s / 49.0;
            for (int i = 0; i < 2; ++i) {
                CHECK(std::abs(p.exact[i](p.motion.alpha(t), t)) <= 1e-9);
                CHECK(std::abs(p.exact[i](p.motion.beta(t), t)) <= 1e-9);
            }
        }
    }
}

TEST_CASE("first example similarity variable") {
    const auto motion = example1_motion(Example1Motion::matched);
    for (double t : {0.0, 0.1, 0.5, 1.0, 2.7, 3.0}) {
        for (double f : {0.0, 0.25, 0.6, 1.0}) {
            const double x = motion.alpha(t) + f * gamma(motion, t);
            CHECK(example1_similarity_z(x, t) == doctest::Approx(to_fixed(motion, x, t)));
        }
    }
    for (double x : {0.0, 0.3, 1.0}) {
        CHECK(example1_similarity_z(x, 0.0) == doctest::Approx(x));
    }
    // u_2 at t = 0 is the bare quartic.
    const auto p = example1();
    CHECK(p.exact[1](0.4, 0.0) == doctest::Approx(example1_profile(1, 0.4)));
    CHECK(p.initial[0](0.4) == doctest::Approx(p.exact[0](0.4, 0.0)));
}

TEST_CASE("first example nonlocal integrals at t = 0 are the quartic means") {
    const auto p = example1();
    const double i1 = oracle::adaptive_simpson([&](double x) { return p.exact[0](x, 0.0); }, 0, 1);
    const double i2 = oracle::adaptive_simpson([&](double x) { return p.exact[1](x, 0.0); }, 0, 1);
    CHECK(i1 == doctest::Approx(703.0 / 1260.0).epsilon(1e-12));
    CHECK(i2 == doctest::Approx(1331.0 / 2520.0).epsilon(1e-12));
    for (double t : {0.0, 1.0, 3.0}) {
        for (int i = 0; i < 2; ++i) {
            CHECK(std::isfinite(example1_forcing(Example1Motion::matched, i, p.motion.alpha(t), t)));
            CHECK(std::isfinite(example1_forcing(Example1Motion::matched, i, p.motion.beta(t), t)));
        }
    }
}

TEST_CASE("second example geometry and data") {
    const auto p = example2();
    CHECK(std::abs(p.motion.alpha(0.0)) <= 1e-15);
    CHECK(p.motion.beta(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p.final_time() == 1.0);
    double prev = 0.0;
    for (int s = 0; s <= 100; ++s) {
        const double t = s / 100.0;
        CHECK(p.motion.alpha(t) + p.motion.beta(t) == doctest::Approx(1.0).epsilon(1e-15));
        const double g = gamma(p.motion, t);
        if (s > 0) CHECK(g > prev);
        prev = g;
        CHECK(p.motion.alpha_prime(t) ==
              doctest::Approx(oracle::d1(p.motion.alpha, t, 1e-3)).epsilon(1e-8));
    }
    CHECK(p.initial[0](0.2) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p.initial[1](0.8) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_FALSE(p.has_exact());
}

TEST_CASE("validate") {
    SUBCASE("both examples pass") {
        for (const auto& p : {example1(), example2()}) {
            const auto report = validate(p);
            CAPTURE(p.name);
            CHECK(report.overall() == CheckStatus::pass);
            for (const auto& c : report.checks) {
                CAPTURE(c.name);
                CAPTURE(c.detail);
                CHECK(c.status == CheckStatus::pass);
            }
        }
    }
    SUBCASE("an unbounded diffusion law with a small declared upper bound fails") {
        auto p = example1();
        p.diffusion[0] = DiffusionLaw{[](std::span<const double> v) { return v[0]; }, 1e-12, 1.0};
        const auto report = validate(p);
        CHECK(report.overall() == CheckStatus::fail);
    }
    SUBCASE("incompatible initial data fails") {
        auto p = example2();
        p.initial[0] = [](double) { return 1.0; };
        CHECK(validate(p).overall() == CheckStatus::fail);
    }
    SUBCASE("shrinking boundaries warn only when allowed") {
        auto p = example2();
        p.motion.alpha = [](double t) { return 0.1 * t; };
        p.motion.alpha_prime = [](double) { return 0.1; };
        CHECK(validate(p).overall() == CheckStatus::fail);
        ValidationOptions opts;
        opts.allow_shrinking = true;
        CHECK(validate(p, opts).overall() == CheckStatus::warn);
    }
}

TEST_CASE("shape checks") {
    auto p = example2();
    p.forcing.pop_back();
    CHECK_THROWS_AS(p.check_shape(), std::invalid_argument);
    CHECK(with_final_time(example1(), 0.5).final_time() == 0.5);
}
