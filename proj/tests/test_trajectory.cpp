#include "dce/errors.hpp"
#include "dce/trajectory.hpp"

#include <doctest.h>

#include <cmath>

using namespace dce;

namespace {
double fd(double (*f)(const WallTrajectory&, double), const WallTrajectory& w, double t, double h = 1e-5) {
    return (f(w, t + h) - f(w, t - h)) / (2 * h);
}
double Ld(const WallTrajectory& w, double t) { return wall_state(w, t).Ld; }
double Ldd(const WallTrajectory& w, double t) { return wall_state(w, t).Ldd; }
double lam(const WallTrajectory& w, double t) { return lambda(w, t); }
double lamd(const WallTrajectory& w, double t) { return lambda_state(w, t).lambda_dot; }
} // namespace

TEST_CASE("derivatives match finite differences") {
    auto w = WallTrajectory::make(1.3, 0.02, 2.7, 40.0);
    for (double t : {0.3, 1.7, 12.0, 39.2}) {
        auto s = wall_state(w, t);
        CHECK(fd(length, w, t) == doctest::Approx(s.Ld).epsilon(1e-7));
        CHECK(fd(Ld, w, t) == doctest::Approx(s.Ldd).epsilon(1e-6));
        CHECK(fd(Ldd, w, t) == doctest::Approx(s.Lddd).epsilon(1e-6));
        auto l = lambda_state(w, t);
        CHECK(fd(lam, w, t) == doctest::Approx(l.lambda_dot).epsilon(1e-6));
        CHECK(fd(lamd, w, t) == doctest::Approx(l.lambda_ddot).epsilon(1e-5));
    }
}

TEST_CASE("motion starts and stops smoothly") {
    auto w = WallTrajectory::make(1.0, 0.01, 3.0, 25.0);
    for (double t : {0.0, 25.0}) {
        auto a = wall_state(w, t - 1e-9), b = wall_state(w, t + 1e-9);
        CHECK(std::abs(a.L - b.L) < 1e-12);
        CHECK(std::abs(a.Ld - b.Ld) < 1e-9);
        CHECK(std::abs(a.Ldd - b.Ldd) < 1e-8);
    }
    CHECK(length(w, -1.0) == 1.0);
    CHECK(wall_state(w, 30.0).Ld == 0.0);
    // Far from both ends the wall follows L0 (1 + eps sin Omega t).
    CHECK(length(w, 12.0) == doctest::Approx(1 + 0.01 * std::sin(36.0)).epsilon(1e-9));
}

TEST_CASE("trajectory validation") {
    CHECK_THROWS_AS(WallTrajectory::make(1.0, 0.2, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(WallTrajectory::make(-1.0, 0.01, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(WallTrajectory::make(1.0, 0.01, 1.0, 1.0, INFINITY), DomainError);
    CHECK(WallTrajectory::make(1.0, 0.01, 2.5, 1.0).gamma == 2.5);
}

TEST_CASE("gauge profiles satisfy the boundary conditions") {
    for (Gauge g : {Gauge::primary, Gauge::secondary}) {
        CHECK(xi(0.0, g) == 0.0);
        CHECK(xi(1.0, g) == doctest::Approx(0.0));
        CHECK(xi_derivatives(0.0, g).d1 == 0.0);
        CHECK(xi_derivatives(1.0, g).d1 == doctest::Approx(-1.0));
    }
    CHECK(xi(0.5, Gauge::secondary) == 0.0);
}
