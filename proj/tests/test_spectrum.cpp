#include "dce/errors.hpp"
#include "dce/spectrum.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace dce;
using std::numbers::pi;

TEST_CASE("bessel zeros agree with boost") {
    for (int n = 0; n <= 4; ++n)
        for (int m = 1; m <= 5; ++m)
            CHECK(bessel_root(BesselRootKind::function_zero, n, m) ==
                  doctest::Approx(boost::math::cyl_bessel_j_zero(double(n), m)).epsilon(1e-12));
}

TEST_CASE("derivative zeros annihilate J_n'") {
    for (int n = 0; n <= 4; ++n)
        for (int m = 1; m <= 4; ++m) {
            double y = bessel_root(BesselRootKind::derivative_zero, n, m);
            double d = n == 0 ? -std::cyl_bessel_j(1, y) : 0.5 * (std::cyl_bessel_j(n - 1, y) - std::cyl_bessel_j(n + 1, y));
            CHECK(std::abs(d) < 1e-12);
            if (m > 1) CHECK(y > bessel_root(BesselRootKind::derivative_zero, n, m - 1));
        }
    CHECK(bessel_root(BesselRootKind::derivative_zero, 1, 1) == doctest::Approx(1.841).epsilon(5e-4));
    CHECK(bessel_root(BesselRootKind::function_zero, 0, 1) == doctest::Approx(2.405).epsilon(5e-4));
    CHECK(bessel_root(BesselRootKind::function_zero, 0, 2) == doctest::Approx(5.52008).epsilon(1e-6));
}

TEST_CASE("rectangular eigenfrequencies") {
    CavityGeometry g{Rectangular{1.0, 2.0}, 3.0};
    ModeIndex m{Polarization::TE, 1, 2, 3};
    double expect = std::sqrt(pi * pi * (1 + 1 + 1));
    CHECK(eigenfrequency(g, m, 3.0) == doctest::Approx(expect));
    CHECK(eigenfrequency(g, {Polarization::TM, 1, 1, 0}, 3.0) == doctest::Approx(pi * std::sqrt(1.25)));
    CHECK_THROWS_AS(validate_mode(g, {Polarization::TE, 0, 0, 1}), DomainError);
    CHECK_THROWS_AS(validate_mode(g, {Polarization::TE, 1, 0, 0}), DomainError);
    CHECK_THROWS_AS(validate_mode(g, {Polarization::TM, 1, 0, 1}), DomainError);
}

TEST_CASE("TEM needs a coaxial section") {
    CavityGeometry g{Circular{1.0}, 1.0};
    CHECK_THROWS_WITH_AS(validate_mode(g, {Polarization::TEM, 0, 0, 1}),
                         "TEM modes do not exist in hollow cylinders", DomainError);
    CavityGeometry c{Coaxial{0.5, 1.0}, 1.0};
    CHECK(eigenfrequency(c, {Polarization::TEM, 0, 0, 3}, 1.0) == doctest::Approx(3 * pi));
}

TEST_CASE("cubic TE fundamental is doubly degenerate") {
    CavityGeometry cube{Rectangular{1.0, 1.0}, 1.0};
    auto modes = enumerate_modes(cube, Polarization::TE, std::sqrt(2.0) * pi * 1.001);
    REQUIRE(modes.size() == 2);
    CHECK(modes[0].mode == ModeIndex{Polarization::TE, 0, 1, 1});
    CHECK(modes[1].mode == ModeIndex{Polarization::TE, 1, 0, 1});
    CHECK(enumerate_modes(cube, Polarization::TE, 4.0).empty());
}

TEST_CASE("circular TM fundamental") {
    CavityGeometry cyl{Circular{1.0}, 1.0};
    auto modes = enumerate_modes(cyl, Polarization::TM, 2.5);
    REQUIRE(modes.size() == 1);
    CHECK(modes[0].mode == ModeIndex{Polarization::TM, 0, 1, 0});
    CHECK(modes[0].omega == doctest::Approx(2.405).epsilon(5e-4));
    CHECK(azimuthal_multiplicity(cyl, {Polarization::TE, 1, 1, 1}) == 2);
    CHECK(azimuthal_multiplicity(cyl, {Polarization::TM, 0, 1, 0}) == 1);
}

TEST_CASE("frequencies fall as the cavity lengthens") {
    CavityGeometry cyl{Circular{1.0}, 1.0};
    for (const auto& m : enumerate_modes(cyl, Polarization::TE, 12.0))
        CHECK(eigenfrequency(cyl, m.mode, 1.2) < m.omega);
}
