#include "dce/checks.hpp"
#include "dce/analysis.hpp"
#include "dce/coupling.hpp"
#include "dce/dynamics.hpp"
#include "dce/quadrature.hpp"
#include "dce/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace dce {

using std::numbers::pi;

namespace {

std::string fmt(const char* what, double v) {
    std::ostringstream os;
    os << what << " " << v;
    return os.str();
}

CheckResult g_antisymmetry() {
    double worst = 0;
    for (int p = 1; p <= 20; ++p)
        for (int j = 1; j <= 20; ++j) worst = std::max(worst, std::abs(g_coeff(p, j) + g_coeff(j, p)));
    return {"g antisymmetry", worst == 0.0, fmt("max |g_pj + g_jp| =", worst)};
}

CheckResult h_diagonal() {
    double worst = 0;
    for (int j = 0; j <= 20; ++j) worst = std::max(worst, std::abs(h_coeff(j, j) + 1.0));
    return {"h diagonal", worst == 0.0, fmt("max |h_jj + 1| =", worst)};
}

CheckResult spectrum_monotonicity() {
    bool ok = true;
    std::ostringstream os;
    const CavityGeometry geoms[] = {{Rectangular{1.0, 1.3}, 1.0}, {Circular{1.0}, 2.0}};
    for (const auto& g : geoms)
        for (Polarization pol : {Polarization::TE, Polarization::TM}) {
            auto modes = enumerate_modes(g, pol, 15.0);
            for (std::size_t i = 1; i < modes.size(); ++i) ok &= modes[i].omega >= modes[i - 1].omega;
            for (const auto& m : modes) {
                if (m.mode.nz == 0) continue;
                ok &= eigenfrequency(g, m.mode, 1.1 * g.L0) < m.omega;
            }
            os << modes.size() << " ";
        }
    return {"spectrum monotonicity", ok, "modes checked: " + os.str()};
}

CheckResult orthonormality() {
    double worst = 0;
    for (int j = 0; j <= 6; ++j)
        for (int p = 0; p <= 6; ++p) {
            double cj = j == 0 ? 1.0 : std::sqrt(2.0), cp = p == 0 ? 1.0 : std::sqrt(2.0);
            double c = integrate([&](double z) { return cj * cp * std::cos(j * pi * z) * std::cos(p * pi * z); }, 0, 1);
            worst = std::max(worst, std::abs(c - (j == p)));
            if (j == 0 || p == 0) continue;
            double s = integrate([&](double z) { return 2 * std::sin(j * pi * z) * std::sin(p * pi * z); }, 0, 1);
            worst = std::max(worst, std::abs(s - (j == p)));
        }
    // Transverse eigenfunctions, nested adaptive quadrature.
    const CavityGeometry rect{Rectangular{1.0, 1.5}, 1.0}, circ{Circular{1.0}, 1.0};
    const ModeIndex rmodes[] = {{Polarization::TE, 1, 0, 1}, {Polarization::TE, 1, 1, 1}, {Polarization::TM, 2, 1, 1}};
    for (const auto& m : rmodes) {
        double v = integrate(
            [&](double x) {
                return integrate([&](double y) { return std::norm(transverse_mode_value(rect, m, {x, y})); }, 0, 1.5,
                                 1e-11);
            },
            0, 1.0, 1e-10);
        worst = std::max(worst, std::abs(v - 1));
    }
    const ModeIndex cmodes[] = {{Polarization::TM, 0, 1, 0}, {Polarization::TE, 1, 1, 1}, {Polarization::TM, 2, 1, 1}};
    for (const auto& m : cmodes) {
        double v = integrate(
            [&](double r) {
                return r * integrate(
                               [&](double phi) {
                                   return std::norm(transverse_mode_value(circ, m, {r * std::cos(phi), r * std::sin(phi)}));
                               },
                               0, 2 * pi, 1e-11);
            },
            0, 1.0, 1e-10);
        worst = std::max(worst, std::abs(v - 1));
    }
    return {"orthonormality quadratures", worst < 1e-8, fmt("max deviation", worst)};
}

CheckResult wronskian() {
    CavityGeometry cube{Rectangular{1.0, 1.0}, 1.0};
    double worst = 0;
    IntegratorConfig tight;
    tight.rel_tol = 1e-12;
    tight.abs_tol = 1e-14;
    for (Polarization pol : {Polarization::TE, Polarization::TM}) {
        ModeIndex m{pol, 1, pol == Polarization::TE ? 0 : 1, 1};
        auto traj = WallTrajectory::make(1.0, 0.0, 2 * eigenfrequency(cube, m, 1.0), 50.0);
        ModeSystem sys(build_table(pol, 6), transverse_eigenvalue(cube, m), traj);
        for (int k = 0; k < sys.size(); ++k) {
            AmplitudeState s0 = initial_state(sys, k);
            auto w = [](const AmplitudeState& s) { return (s.Q.conjugate().array() * s.Qdot.array()).imag().sum(); };
            double w0 = w(s0);
            for (const auto& s : integrate(s0, sys, {10.0, 25.0, 50.0}, tight))
                worst = std::max(worst, std::abs(w(s) - w0) / std::abs(w0));
        }
    }
    return {"free-field Wronskian", worst < 1e-9, fmt("max relative drift", worst)};
}

CheckResult eps_linearity() {
    CavityGeometry cube{Rectangular{1.0, 1.0}, 1.0};
    ModeIndex m{Polarization::TE, 1, 0, 1};
    double w = eigenfrequency(cube, m, 1.0);
    double k[2];
    for (int i = 0; i < 2; ++i) {
        double eps = 1e-3 * (i + 1);
        auto traj = WallTrajectory::make(1.0, eps, 2 * w, 60.0);
        ModeSystem sys(build_table(Polarization::TE, 8), transverse_eigenvalue(cube, m), traj);
        k[i] = floquet(sys, 30.0).exponent / eps;
    }
    double r = k[1] / k[0];
    return {"eps-linearity of exponents", std::abs(r - 1) < 0.01, fmt("exponent/eps ratio (2eps vs eps)", r)};
}

} // namespace

std::vector<CheckResult> run_seed_checks() {
    std::vector<CheckResult> out;
    for (auto f : {g_antisymmetry, h_diagonal, spectrum_monotonicity, orthonormality, wronskian, eps_linearity}) {
        try {
            out.push_back(f());
        } catch (const std::exception& e) {
            out.push_back({"(check threw)", false, e.what()});
        }
    }
    return out;
}

} // namespace dce
