#include <doctest.h>

#include <cmath>
#include <random>

#include "elmfb/error.hpp"
#include "elmfb/problem.hpp"
#include "oracles.hpp"

using namespace elmfb;

TEST_SUITE("problem") {

TEST_CASE("oscillator problem coefficients and boundary data") {
    const auto p = oscillator_problem({1.0, 80.0, 2.0});
    CHECK(p.coeff2 == 1.0);
    CHECK(p.coeff1 == 4.0);
    CHECK(p.coeff0 == 6400.0);
    CHECK(p.domain_lo == 0.0);
    CHECK(p.domain_hi == 1.0);
    REQUIRE(p.boundary_conditions.size() == 2);
    CHECK(p.boundary_conditions[0].order == BoundaryOrder::Value);
    CHECK(p.boundary_conditions[0].rhs == 1.0);
    CHECK(p.boundary_conditions[1].order == BoundaryOrder::FirstDerivative);
    CHECK(p.boundary_conditions[1].rhs == 0.0);
    CHECK(p.forcing(0.3) == 0.0);
    REQUIRE(p.exact.has_value());
    CHECK_NOTHROW(p.validate());
}

TEST_CASE("critical or over-damped oscillator is rejected") {
    auto category = [](const OscillatorParams& params) {
        try {
            oscillator_problem(params);
        } catch (const Error& e) {
            return e.category();
        }
        return ErrorCategory::UnknownTarget;
    };
    CHECK(category({1.0, 1.0, 1.0}) == ErrorCategory::InvalidParams);
    CHECK(category({1.0, 1.0, 2.0}) == ErrorCategory::InvalidParams);
    CHECK(category({0.0, 80.0, 2.0}) == ErrorCategory::InvalidParams);
    CHECK(category({1.0, 80.0, -1.0}) == ErrorCategory::InvalidParams);
}

TEST_CASE("closed-form constants match a 30-digit evaluation") {
    // mpmath, 30 digits: omega = sqrt(6396), phi = atan(-2/omega), A = 1/(2 cos phi).
    const auto k = oscillator_constants({1.0, 80.0, 2.0});
    CHECK(k.omega == doctest::Approx(79.9749960925288198).epsilon(1e-15));
    CHECK(k.phi == doctest::Approx(-0.0250026048993611360).epsilon(1e-14));
    CHECK(k.amplitude == doctest::Approx(0.500156323280355346).epsilon(1e-15));
}

TEST_CASE("exact solution satisfies the initial conditions") {
    const OscillatorParams params{1.0, 80.0, 2.0};
    const auto u = oscillator_exact(params);
    CHECK(std::abs(u(0.0) - 1.0) <= 1e-12);
    const auto fd = oracle::central_difference(u, 0.0, 1e-6);
    CHECK(std::abs(fd.d1) <= 1e-6);

    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> omega(0.1, 200.0), frac(0.0, 0.999), mass(0.1, 10.0);
    for (int i = 0; i < 200; ++i) {
        const double w0 = omega(gen);
        const OscillatorParams p{mass(gen), w0, frac(gen) * w0};
        CHECK(std::abs(oscillator_exact(p)(0.0) - 1.0) <= 1e-12);
    }
}

TEST_CASE("analytic jet agrees with finite differences of the value") {
    const OscillatorParams params{1.0, 80.0, 2.0};
    const auto u = oscillator_exact(params);
    for (const double t : {0.1, 0.37, 0.81}) {
        const auto jet = oscillator_exact_jet(params, t);
        CHECK(jet.value == doctest::Approx(u(t)).epsilon(1e-14));
        const auto fd = oracle::central_difference(u, t, 1e-5);
        CHECK(oracle::relative_error(jet.d1, fd.d1, 80.0) <= 1e-7);
        CHECK(oracle::relative_error(jet.d2, fd.d2, 6400.0) <= 1e-4);
    }
}

TEST_CASE("exact solution ODE residual vanishes") {
    const OscillatorParams params{1.0, 80.0, 2.0};
    const auto p = oscillator_problem(params);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double t = static_cast<double>(i) / 999.0;
        const auto jet = oscillator_exact_jet(params, t);
        worst = std::max(worst, std::abs(apply_operator(p, jet.value, jet.d1, jet.d2)));
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("apply_operator examples") {
    LinearODEProblem p;
    p.coeff2 = 1.0;
    p.coeff1 = 4.0;
    p.coeff0 = 6400.0;
    CHECK(apply_operator(p, 1.0, 0.0, 0.0) == 6400.0);
    CHECK(apply_operator(p, 0.0, 1.0, 0.0) == 4.0);
    CHECK(apply_operator(p, 0.0, 0.0, 1.0) == 1.0);

    LinearODEProblem identity;
    identity.coeff0 = 1.0;
    CHECK(apply_operator(identity, 0.25, -3.0, 17.0) == 0.25);
}

TEST_CASE("apply_operator is linear in the jet") {
    LinearODEProblem p;
    p.coeff2 = 1.3;
    p.coeff1 = -4.0;
    p.coeff0 = 6400.0;
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int i = 0; i < 500; ++i) {
        const double a = u(gen), b = u(gen);
        const double x0 = u(gen), x1 = u(gen), x2 = u(gen);
        const double y0 = u(gen), y1 = u(gen), y2 = u(gen);
        const double lhs = apply_operator(p, a * x0 + b * y0, a * x1 + b * y1, a * x2 + b * y2);
        const double rhs = a * apply_operator(p, x0, x1, x2) + b * apply_operator(p, y0, y1, y2);
        const double scale = 6400.0 * 200.0;
        CHECK(std::abs(lhs - rhs) <= 1e-12 * scale);
    }
}

TEST_CASE("problem validation") {
    auto p = oscillator_problem({1.0, 80.0, 2.0});
    auto bad = p;
    bad.boundary_conditions.clear();
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = p;
    bad.boundary_conditions[0].location = 1.5;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = p;
    bad.domain_hi = bad.domain_lo;
    CHECK_THROWS_AS(bad.validate(), Error);
}

} // TEST_SUITE
