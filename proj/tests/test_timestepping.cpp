#include <cmath>
#include <vector>

#include "doctest.h"
#include "ebfd/timestepping.hpp"

using namespace ebfd;

TEST_CASE("bessel function values") {
    CHECK(bessel_j(0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(bessel_j(1, 0.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    CHECK(bessel_j(1, 1.0) == doctest::Approx(0.4400505857449335).epsilon(1e-10));
    CHECK(bessel_j(0, 2.0) == doctest::Approx(0.2238907791412357).epsilon(1e-10));
    CHECK(bessel_j(2, 5.0) == doctest::Approx(0.04656511627775222).epsilon(1e-9));
    // large-argument value exercises the backward recurrence branch
    CHECK(bessel_j(5, 40.0) == doctest::Approx(0.12257346597711781).epsilon(1e-8));
}

TEST_CASE("bessel zeros") {
    CHECK(bessel_zero(0, 1) == doctest::Approx(2.404825557695773).epsilon(1e-9));
    CHECK(bessel_zero(0, 2) == doctest::Approx(5.520078110286311).epsilon(1e-9));
    CHECK(bessel_zero(1, 1) == doctest::Approx(3.831705970207512).epsilon(1e-9));
    // each zero really is a root
    double z = bessel_zero(2, 3);
    CHECK(bessel_j(2, z) == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
}

TEST_CASE("standing mode of the unit disk") {
    double kappa = bessel_zero(0, 1);
    CHECK(standing_mode(0.0, 0.0, 0.0, 0, kappa) == doctest::Approx(1.0));
    CHECK(standing_mode(1.0, 0.3, 0.0, 0, kappa) ==
          doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    // time factor cos(kappa t)
    CHECK(standing_mode(0.0, 0.0, 1.0, 0, kappa) ==
          doctest::Approx(std::cos(kappa)).epsilon(1e-12));
}

TEST_CASE("shifted operator builds shift*I + alpha*A") {
    SparseSym a = SparseSym::from_triplets(2, 2,
                                           {{0, 0, 2.0}, {0, 1, -1.0}, {1, 0, -1.0}, {1, 1, 2.0}});
    SparseSym m = shifted_operator(3.0, 0.5, a);
    CHECK(m.coeff(0, 0) == doctest::Approx(4.0));
    CHECK(m.coeff(0, 1) == doctest::Approx(-0.5));
    CHECK(m.coeff(1, 1) == doctest::Approx(4.0));
}

TEST_CASE("crank-nicolson matches the scalar update formula") {
    // 1x1 system: u' = -k u with K = A / h^2, A = [h^2 k]. One step gives
    // u1 = (1 - dt k / 2) / (1 + dt k / 2) * u0.
    const double h = 0.1, k = 3.0, dt = 0.05;
    SparseSym a = SparseSym::from_triplets(1, 1, {{0, 0, h * h * k}});
    auto forcing = [](double) { return std::vector<double>{0.0}; };
    CrankNicolson cn(a, h, dt, forcing, {1.0}, 0.0, 1e-14);
    double expected = (1.0 - 0.5 * dt * k) / (1.0 + 0.5 * dt * k);
    const auto& u1 = cn.step();
    CHECK(u1[0] == doctest::Approx(expected).epsilon(1e-12));
    const auto& u2 = cn.step();
    CHECK(u2[0] == doctest::Approx(expected * expected).epsilon(1e-12));
    CHECK(cn.time() == doctest::Approx(2.0 * dt));
    CHECK(cn.steps_taken() == 2);
}

TEST_CASE("crank-nicolson converges at second order on the scalar ode") {
    const double h = 0.1, k = 2.0, T = 1.0;
    SparseSym a = SparseSym::from_triplets(1, 1, {{0, 0, h * h * k}});
    auto forcing = [](double) { return std::vector<double>{0.0}; };
    auto err_at = [&](double dt) {
        CrankNicolson cn(a, h, dt, forcing, {1.0}, 0.0, 1e-14);
        int steps = static_cast<int>(std::round(T / dt));
        for (int s = 0; s < steps; ++s) cn.step();
        return std::abs(cn.current()[0] - std::exp(-k * T));
    };
    double e1 = err_at(0.1), e2 = err_at(0.05);
    CHECK(std::log2(e1 / e2) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("theta scheme reproduces the leapfrog recurrence at theta = 0") {
    // u_tt = -k u, 1x1: u^{n+1} = 2u^n - u^{n-1} - dt^2 k u^n.
    const double h = 0.2, k = 5.0, dt = 0.05;
    SparseSym a = SparseSym::from_triplets(1, 1, {{0, 0, h * h * k}});
    double u0 = 1.0, u1 = 0.9;
    ThetaScheme ts(a, h, dt, 0.0, {u0}, {u1});
    double expected = 2.0 * u1 - u0 - dt * dt * k * u1;
    CHECK(ts.step()[0] == doctest::Approx(expected).epsilon(1e-13));
    CHECK(ts.mean_iterations() == doctest::Approx(0.0));  // explicit: no solves
}

TEST_CASE("theta scheme solves the implicit update at theta = 1/2") {
    const double h = 0.2, k = 5.0, dt = 0.05;
    SparseSym a = SparseSym::from_triplets(1, 1, {{0, 0, h * h * k}});
    double u0 = 1.0, u1 = 0.9, theta = 0.5;
    ThetaScheme ts(a, h, dt, theta, {u0}, {u1}, 1e-14);
    double d2k = dt * dt * k;
    double rhs = 2.0 * u1 - u0 - (1.0 - 2.0 * theta) * d2k * u1 - theta * d2k * u0;
    double expected = rhs / (1.0 + theta * d2k);
    CHECK(ts.step()[0] == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("theta = 1/2 stays bounded far beyond the explicit stability limit") {
    // dt^2 k = 25: leapfrog would blow up, the implicit scheme must not.
    const double h = 0.1, k = 10000.0, dt = 0.05;
    SparseSym a = SparseSym::from_triplets(1, 1, {{0, 0, h * h * k}});
    ThetaScheme ts(a, h, dt, 0.5, {1.0}, {1.0}, 1e-14);
    for (int s = 0; s < 500; ++s) {
        double u = ts.step()[0];
        REQUIRE(std::abs(u) <= 1.5);
    }
}

TEST_CASE("leapfrog past the stability limit reports blowup") {
    const double h = 0.1, k = 10000.0, dt = 0.05;  // dt^2 k = 25 >> 4
    SparseSym a = SparseSym::from_triplets(1, 1, {{0, 0, h * h * k}});
    ThetaScheme ts(a, h, dt, 0.0, {1.0}, {1.0});
    CHECK_THROWS_AS(
        [&] {
            for (int s = 0; s < 100; ++s) ts.step();
        }(),
        TimeSteppingError);
}
