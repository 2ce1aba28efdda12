#include "dce/coupling.hpp"
#include "dce/errors.hpp"
#include "dce/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace dce;
using std::numbers::pi;

TEST_CASE("g is antisymmetric and equals the Galerkin projection") {
    for (int p = 1; p <= 6; ++p)
        for (int j = 1; j <= 6; ++j) {
            CHECK(g_coeff(p, j) == -g_coeff(j, p));
            if (p == j) continue;
            // -int z b_p' b_j, b_n = sqrt(2) sin(n pi z)
            double proj = -integrate([&](double z) { return 2 * p * pi * z * std::cos(p * pi * z) * std::sin(j * pi * z); }, 0, 1);
            CHECK(g_coeff(p, j) == doctest::Approx(proj).epsilon(1e-10));
        }
    CHECK(g_coeff(1, 2) == doctest::Approx(-4.0 / 3));
    CHECK_THROWS_AS(g_coeff(0, 1), DomainError);
}

TEST_CASE("h matches the cosine-basis projection off the diagonal") {
    // -int z b_j' b_p, b_n = sqrt(2) cos(n pi z) including n = 0
    for (int j = 0; j <= 6; ++j)
        for (int p = 0; p <= 6; ++p) {
            if (j == p) {
                CHECK(h_coeff(j, p) == -1.0);
                continue;
            }
            double proj = integrate([&](double z) { return 2 * j * pi * z * std::sin(j * pi * z) * std::cos(p * pi * z); }, 0, 1);
            CHECK(h_coeff(j, p) == doctest::Approx(proj).epsilon(1e-10).scale(1));
            CHECK(h_coeff(j, p) * (p * p - j * j) == doctest::Approx(((p + j) % 2 ? -2.0 : 2.0) * j * j));
        }
}

TEST_CASE("s in closed form") {
    // int z^2 (1 - z) 2 sin^2(pi z) dz = 1/12 + 1/(4 pi^2)
    CHECK(s_coeff(1, 1) == doctest::Approx(1.0 / 12 + 1 / (4 * pi * pi)).epsilon(1e-12));
    CHECK(s_coeff(1, 1) == doctest::Approx(0.108664).epsilon(1e-5));
    CHECK(s_coeff(2, 3) == doctest::Approx(s_coeff(3, 2)));
    CHECK(s_coeff(1, 1, Gauge::zero) == 0.0);
}

TEST_CASE("eta obeys the integration-by-parts identity") {
    // eta_jp + eta_pj = -pi^2 (j^2 + p^2) s_jp + [2 xi' b_j b_p]_0^1
    for (Gauge g : {Gauge::primary, Gauge::secondary})
        for (int j = 1; j <= 4; ++j)
            for (int p = 1; p <= 4; ++p) {
                double lhs = eta_coeff(j, p, g) + eta_coeff(p, j, g);
                CHECK(lhs == doctest::Approx(-pi * pi * (j * j + p * p) * s_coeff(j, p, g)).epsilon(1e-9).scale(1));
                auto N = LongitudinalBasis::neumann;
                double lhsN = eta_coeff(j, p, g, N) + eta_coeff(p, j, g, N);
                double bnd = -4.0 * ((j + p) % 2 ? -1.0 : 1.0);
                CHECK(lhsN == doctest::Approx(-pi * pi * (j * j + p * p) * s_coeff(j, p, g, N) + bnd).epsilon(1e-9).scale(1));
            }
    CHECK(eta_coeff(1, 1) == doctest::Approx(-1.07247).epsilon(1e-5));
}

TEST_CASE("family tables") {
    auto te = build_table(Polarization::TE, 4);
    CHECK(te.nz == std::vector<int>{1, 2, 3, 4});
    CHECK(te.h.size() == 0);
    auto tm = build_table(Polarization::TM, 4);
    CHECK(tm.nz == std::vector<int>{0, 1, 2, 3});
    CHECK(tm.s(1, 2) == doctest::Approx(s_coeff(1, 2, Gauge::primary, LongitudinalBasis::neumann)));
    auto on = build_table(Polarization::TM, 4, Gauge::primary, ZeroMode::orthonormal);
    CHECK(on.s(0, 0) == doctest::Approx(tm.s(0, 0) / 2));
    CHECK(on.eta(0, 2) == doctest::Approx(tm.eta(0, 2) / std::sqrt(2.0)));
    CHECK(on.h(3, 3) == -1.0);
}
