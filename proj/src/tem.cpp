#include "dce/tem.hpp"
#include "dce/errors.hpp"
#include "dce/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dce {

using std::numbers::pi;

MooreFunction::MooreFunction(WallTrajectory traj, int max_depth) : traj_(traj), max_depth_(max_depth) {
    traj_.validate();
    require(max_depth_ > 0, "max_depth must be positive");
}

namespace {

// Solves t + L(t) = u for t.
double characteristic_root(const WallTrajectory& w, double u) {
    double t = u - length(w, u - w.L0);
    for (int it = 0; it < 50; ++it) {
        WallState s = wall_state(w, t);
        double g = t + s.L - u;
        double dg = 1 + s.Ld;
        if (dg <= 0) throw NumericalError("characteristic map is not monotone (|dL/dt| >= 1)");
        double step = g / dg;
        t -= step;
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(t))) return t;
    }
    throw NumericalError("characteristic root did not converge at u = " + std::to_string(u));
}

} // namespace

MooreFunction::Value MooreFunction::eval(double u) const {
    struct Hop {
        double v1, schwarz;
    };
    std::vector<Hop> hops;
    while (u > traj_.L0) {
        if (static_cast<int>(hops.size()) >= max_depth_) throw NumericalError("Moore recursion depth cap exceeded");
        double t = characteristic_root(traj_, u);
        WallState s = wall_state(traj_, t);
        if (s.Ld >= 1) throw NumericalError("characteristic map is not monotone (|dL/dt| >= 1)");
        double a = 1 + s.Ld;
        double v1 = (1 - s.Ld) / a;
        double v2 = -2 * s.Ldd / (a * a * a);
        double v3 = (-2 * s.Lddd * a + 6 * s.Ldd * s.Ldd) / std::pow(a, 5);
        hops.push_back({v1, v3 / v1 - 1.5 * (v2 / v1) * (v2 / v1)});
        u = t - s.L;
    }
    Value out;
    out.R = u / traj_.L0;
    out.R1 = 1 / traj_.L0;
    out.S = 0;
    out.depth = static_cast<int>(hops.size());
    // Unwind from the static region outwards: R(u) = R(v) + 2, R' = R'(v) v', S = S(v) v'^2 + {v; u}.
    for (auto it = hops.rbegin(); it != hops.rend(); ++it) {
        out.R += 2;
        out.R1 *= it->v1;
        out.S = out.S * it->v1 * it->v1 + it->schwarz;
    }
    int d = deepest_.load();
    while (out.depth > d && !deepest_.compare_exchange_weak(d, out.depth)) {
    }
    return out;
}

double MooreFunction::residual(double t) const {
    double L = length(traj_, t);
    return eval(t + L).R - eval(t - L).R - 2;
}

std::vector<MooreFunction::Sample> MooreFunction::tabulate(double u0, double u1, int n) const {
    require(n >= 2 && u1 > u0, "tabulate needs n >= 2 and u1 > u0");
    std::vector<Sample> out;
    for (int i = 0; i < n; ++i) {
        double u = u0 + (u1 - u0) * i / (n - 1);
        Value v = eval(u);
        out.push_back({u, v.R, v.R1});
    }
    return out;
}

namespace {

// Right-moving flux; T00(z, t) = -flux(t + z) - flux(t - z).
double flux(const MooreFunction& m, double u) {
    auto v = m.eval(u);
    return v.S / (24 * pi) + pi / 48 * v.R1 * v.R1;
}

} // namespace

double energy_density(const MooreFunction& m, double z, double t) {
    double L = length(m.trajectory(), t);
    require(z >= -1e-12 * L && z <= L * (1 + 1e-12), "z outside the cavity");
    return -flux(m, t + z) - flux(m, t - z);
}

EnergyProfile energy_profile(const MooreFunction& m, double t, int points) {
    require(points >= 2, "profile needs at least 2 points");
    EnergyProfile p;
    p.t = t;
    double L = length(m.trajectory(), t);
    for (int i = 0; i < points; ++i) {
        double z = L * i / (points - 1);
        p.z.push_back(z);
        p.T00.push_back(energy_density(m, z, t));
    }
    return p;
}

double total_energy(const MooreFunction& m, double t) {
    require(t >= 0, "t must be non-negative");
    double L = length(m.trajectory(), t);
    // int_0^L T00 dz = -int_{t-L}^{t+L} flux(u) du. R rises by exactly 2 across
    // the window, so panels of equal R increment put breakpoints inside every
    // narrow peak of R'; a uniform u grid covers the flat stretches.
    double a = t - L, b = t + L;
    const int panels = 256, r_panels = 512;
    std::vector<double> cuts;
    for (int i = 0; i <= panels; ++i) cuts.push_back(a + (b - a) * i / panels);
    double Ra = m.eval(a).R;
    for (int k = 1; k < r_panels; ++k) {
        double target = Ra + 2.0 * k / r_panels, lo = a, hi = b;
        for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(hi)); ++it) {
            double mid = 0.5 * (lo + hi);
            (m.eval(mid).R < target ? lo : hi) = mid;
        }
        cuts.push_back(0.5 * (lo + hi));
    }
    std::sort(cuts.begin(), cuts.end());
    double scale = 0;
    for (double u : cuts) scale = std::max(scale, std::abs(flux(m, u)));
    double tol = 1e-12 * scale * (b - a) / panels;
    double sum = 0;
    auto f = [&](double u) { return flux(m, u); };
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        if (cuts[i + 1] > cuts[i]) sum += integrate(f, cuts[i], cuts[i + 1], tol, 40);
    return -sum + pi / (24 * L);
}

std::vector<std::size_t> find_peaks(const std::vector<double>& y, double min_prominence) {
    std::vector<std::size_t> peaks;
    const std::size_t n = y.size();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(y[i] > y[i - 1] && y[i] >= y[i + 1])) continue;
        // Prominence: height above the higher of the two lowest points reached
        // before meeting a taller sample on either side.
        double left_min = y[i];
        std::size_t j = i;
        while (j > 0 && y[j - 1] <= y[i]) left_min = std::min(left_min, y[--j]);
        double right_min = y[i];
        j = i;
        while (j + 1 < n && y[j + 1] <= y[i]) right_min = std::min(right_min, y[++j]);
        if (y[i] - std::max(left_min, right_min) > min_prominence) peaks.push_back(i);
    }
    return peaks;
}

double peak_height(const MooreFunction& m, double t, int points) {
    EnergyProfile p = energy_profile(m, t, points);
    std::size_t i = std::max_element(p.T00.begin(), p.T00.end()) - p.T00.begin();
    double lo = p.z[i == 0 ? 0 : i - 1], hi = p.z[std::min(i + 1, p.z.size() - 1)];
    // Golden-section refinement of the maximum between the neighbouring samples.
    const double g = (std::sqrt(5.0) - 1) / 2;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = energy_density(m, x1, t), f2 = energy_density(m, x2, t);
    for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = energy_density(m, x2, t);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = energy_density(m, x1, t);
        }
    }
    return std::max({f1, f2, p.T00[i]});
}

double tem_prefactor(const CavityGeometry& geom) {
    geom.validate();
    const auto* c = std::get_if<Coaxial>(&geom.section);
    if (!c) throw DomainError("TEM modes do not exist in hollow cylinders");
    return 2 * pi * std::log(c->b / c->a);
}

TemModeReport tem_mode_photons(const WallTrajectory& traj, int q, int N_modes, const IntegratorConfig& cfg) {
    require(q >= 1, "q must be a positive integer");
    require(std::abs(traj.Omega - q * pi / traj.L0) <= 1e-9 * traj.Omega, "TEM drive needs Omega = q pi / L0");
    FamilySetup s;
    s.geom = CavityGeometry{Coaxial{0.5, 1.0}, traj.L0};
    s.representative = {Polarization::TEM, 0, 0, 1};
    s.N_z = N_modes;
    s.traj = traj;
    s.integrator = cfg;
    s.samples = 2;
    FamilyRun run = run_family(s);
    TemModeReport r;
    r.N = run.N;
    double L = length(traj, traj.T);
    for (std::size_t i = 0; i < run.modes.size(); ++i) {
        r.n.push_back(run.modes[i].nz);
        r.mode_energy += run.modes[i].nz * pi / L * run.N(i);
    }
    r.unitarity_defect = run.unitarity_defect;
    return r;
}

} // namespace dce
