#include "dce/errors.hpp"
#include "dce/tem.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace dce;
using std::numbers::pi;

namespace {
// Static 1D Dirichlet Casimir energy from the mode sum with an exponential
// cutoff: E(a) = (1/2) sum n pi/L e^{-a n pi / L} = L/(2 pi a^2) - pi/(24 L) + O(a^2).
double mode_sum_energy(double L, double a) {
    double x = a * pi / L;
    // (pi / 2L) sum n e^{-n x} = (pi / 2L) e^{x} / (e^{x} - 1)^2
    double sum = std::exp(x) / std::pow(std::expm1(x), 2);
    return pi / (2 * L) * sum - L / (2 * pi * a * a);
}
} // namespace

TEST_CASE("mode-sum oracle converges to the Casimir energy") {
    double e1 = mode_sum_energy(1.0, 1e-2), e2 = mode_sum_energy(1.0, 5e-3);
    double extrapolated = (4 * e2 - e1) / 3;
    CHECK(extrapolated == doctest::Approx(-pi / 24).epsilon(1e-6));
}

TEST_CASE("static density equals the mode-sum value") {
    MooreFunction m(WallTrajectory::make(2.0, 0.0, pi, 10.0));
    double oracle = (4 * mode_sum_energy(2.0, 1e-3) - mode_sum_energy(2.0, 2e-3)) / 3 / 2.0;
    for (double z : {0.0, 0.7, 2.0}) CHECK(energy_density(m, z, 6.0) == doctest::Approx(oracle).epsilon(1e-6));
    CHECK(std::abs(total_energy(m, 6.0)) < 1e-10);
    CHECK_THROWS_AS(energy_density(m, 2.5, 6.0), DomainError);
}

TEST_CASE("Moore function solves the functional equation") {
    auto w = WallTrajectory::make(1.0, 0.01, 4 * pi, 30.0);
    MooreFunction m(w);
    for (double t = 0.0; t < 30.0; t += 0.37) CHECK(std::abs(m.residual(t)) < 1e-10);
    for (const auto& s : m.tabulate(0.0, 25.0, 200)) CHECK(s.R1 > 0);
    CHECK(m.deepest() > 5);
}

TEST_CASE("derivatives of R agree with finite differences") {
    MooreFunction m(WallTrajectory::make(1.0, 0.02, 2 * pi, 30.0));
    const double u = 7.3, h = 1e-4;
    auto v = m.eval(u);
    CHECK((m.eval(u + h).R - m.eval(u - h).R) / (2 * h) == doctest::Approx(v.R1).epsilon(1e-7));
    auto d1 = [&](double x) { return m.eval(x).R1; };
    double r2 = (d1(u + h) - d1(u - h)) / (2 * h);
    double r3 = (d1(u + h) - 2 * d1(u) + d1(u - h)) / (h * h);
    double S = r3 / v.R1 - 1.5 * (r2 / v.R1) * (r2 / v.R1);
    CHECK(S == doctest::Approx(v.S).epsilon(1e-4).scale(1e-3));
}

TEST_CASE("four peaks for q = 4") {
    MooreFunction m(WallTrajectory::make(1.0, 0.01, 4 * pi, 30.0));
    auto p = energy_profile(m, 20.4, 4001);
    CHECK(find_peaks(p.T00, 10 * pi / 24).size() == 4);
}

TEST_CASE("peak finder") {
    std::vector<double> y{0, 1, 0, 5, 0, 0.2, 0.1, 3, 0};
    CHECK(find_peaks(y, 0.5).size() == 3);
    CHECK(find_peaks(y, 2.0).size() == 2);
}

TEST_CASE("prefactor") {
    CHECK(tem_prefactor({Coaxial{1.0, std::exp(1.0)}, 1.0}) == doctest::Approx(2 * pi));
    CHECK(tem_prefactor({Coaxial{1.0, 2.0}, 1.0}) == doctest::Approx(4.355).epsilon(1e-3));
    CHECK_THROWS_AS(tem_prefactor({Circular{1.0}, 1.0}), DomainError);
}

TEST_CASE("mode sum matches the Moore energy") {
    auto w = WallTrajectory::make(1.0, 0.01, 2 * pi, 10.0);
    IntegratorConfig c;
    c.scheme = "rkf78";
    TemModeReport r = tem_mode_photons(w, 2, 8, c);
    MooreFunction m(w);
    CHECK(r.mode_energy == doctest::Approx(total_energy(m, 10.0)).epsilon(0.02));
    CHECK(r.unitarity_defect < 1e-6);
    auto still = tem_mode_photons(WallTrajectory::make(1.0, 0.0, 2 * pi, 10.0), 2, 4, c);
    CHECK(still.N.maxCoeff() < 1e-12);
}
