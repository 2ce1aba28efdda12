#include "dce/analysis.hpp"
#include "dce/dynamics.hpp"
#include "dce/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace dce;
using std::numbers::pi;

namespace {
const CavityGeometry cube{Rectangular{1.0, 1.0}, 1.0};

ModeSystem te_system(double eps, double T, int N_z = 4) {
    ModeIndex m{Polarization::TE, 1, 0, 1};
    auto traj = WallTrajectory::make(1.0, eps, 2 * eigenfrequency(cube, m, 1.0), T);
    return ModeSystem(build_table(Polarization::TE, N_z), transverse_eigenvalue(cube, m), traj);
}
} // namespace

TEST_CASE("static cavity: free oscillation") {
    auto sys = te_system(0.0, 20.0);
    auto s0 = initial_state(sys, 1);
    double w = sys.omega(1.0)(1);
    auto out = integrate(s0, sys, {3.0, 7.5});
    for (const auto& s : out) {
        std::complex<double> expect = std::exp(std::complex<double>(0, -w * s.t)) / std::sqrt(2 * w);
        CHECK(std::abs(s.Q(1) - expect) < 1e-8);
        CHECK(std::abs(s.Q(0)) < 1e-14);
    }
}

TEST_CASE("rhs agrees with accel") {
    auto sys = te_system(0.01, 20.0);
    AmplitudeState s = initial_state(sys, 0);
    s.t = 4.2;
    s.Q(2) = {0.3, -0.1};
    s.Qdot(1) = {0.05, 0.2};
    Derivative d = rhs_te(s, sys);
    Eigen::MatrixXd Q(sys.size(), 2), Qd(sys.size(), 2), Qdd(sys.size(), 2);
    Q << s.Q.real(), s.Q.imag();
    Qd << s.Qdot.real(), s.Qdot.imag();
    sys.accel(s.t, Q, Qd, Qdd);
    CHECK((d.dQ - s.Qdot).norm() == 0.0);
    CHECK((d.dQdot.real() - Qdd.col(0)).norm() < 1e-14);
    CHECK((d.dQdot.imag() - Qdd.col(1)).norm() < 1e-14);
    CHECK_THROWS_AS(rhs_tm(s, sys), DomainError);
}

TEST_CASE("schemes agree and runs are deterministic") {
    auto sys = te_system(1e-3, 300.0);
    IntegratorConfig a, b;
    b.scheme = "rkf78";
    auto s0 = initial_state(sys, 0);
    auto x = integrate(s0, sys, {150.0, 300.0}, a);
    auto y = integrate(s0, sys, {150.0, 300.0}, b);
    auto z = integrate(s0, sys, {150.0, 300.0}, a);
    CHECK((x[1].Q - y[1].Q).norm() < 1e-6 * x[1].Q.norm());
    CHECK((x[1].Q - z[1].Q).norm() == 0.0);
}

TEST_CASE("propagator reproduces integrate") {
    auto sys = te_system(0.01, 40.0, 3);
    Eigen::MatrixXd P = propagator(sys, 5.0, 2.0);
    AmplitudeState s0 = initial_state(sys, 1);
    s0.t = 5.0;
    auto out = integrate(s0, sys, {7.0});
    Eigen::VectorXd x0(6);
    x0 << s0.Q.real(), s0.Qdot.real();
    Eigen::VectorXd x1 = P * x0;
    CHECK((x1.head(3) - out[0].Q.real()).norm() < 1e-7);
}

TEST_CASE("integrator validation") {
    IntegratorConfig c;
    c.scheme = "euler";
    CHECK_THROWS_AS(c.validate(), DomainError);
    c.scheme = "dopri5";
    c.rel_tol = -1;
    CHECK_THROWS_AS(c.validate(), DomainError);
}

TEST_CASE("uncoupled TE growth follows the MSA envelope") {
    // Short run with the slow-flow rate as oracle: N(t) ~ sinh^2(lambda eps t).
    FamilySetup s;
    s.geom = cube;
    s.representative = {Polarization::TE, 1, 0, 1};
    s.N_z = 4;
    double w = eigenfrequency(cube, s.representative, 1.0);
    s.traj = WallTrajectory::make(1.0, 1e-3, 2 * w, 1500.0);
    s.integrator.scheme = "rkf78";
    s.samples = 150;
    FamilyRun run = run_family(s);
    double lam = msa_growth_rate(Polarization::TE, w, pi);
    double predicted = msa_photon_prediction(lam, 1e-3, 1500.0);
    CHECK(run.N(0) == doctest::Approx(predicted).epsilon(0.1));
    CHECK(run.unitarity_defect < 1e-5);
}
