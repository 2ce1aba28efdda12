#include "dce/trajectory.hpp"
#include "dce/errors.hpp"

#include <cmath>

namespace dce {

WallTrajectory WallTrajectory::make(double L0, double eps, double Omega, double T, double gamma) {
    WallTrajectory w{L0, eps, Omega, gamma < 0 ? Omega : gamma, T};
    w.validate();
    return w;
}

void WallTrajectory::validate() const {
    require(L0 > 0, "L0 must be positive");
    require(std::abs(eps) < 0.1, "|eps| must be below 0.1");
    require(Omega > 0, "Omega must be positive");
    require(T > 0, "T must be positive");
    require(gamma >= 0 && std::isfinite(gamma), "gamma must be finite and non-negative");
}

namespace {

// s (1 + gamma s) e^{-gamma s} and s^2 e^{-gamma s} with their first three derivatives in s.
struct Ramp {
    double v, d1, d2, d3;
};

Ramp ramp1(double s, double g) {
    double e = std::exp(-g * s), g2 = g * g, g3 = g2 * g;
    return {s * (1 + g * s) * e, (1 + g * s - g2 * s * s) * e, (-3 * g2 * s + g3 * s * s) * e,
            (-3 * g2 + 5 * g3 * s - g3 * g * s * s) * e};
}

Ramp ramp2(double s, double g) {
    double e = std::exp(-g * s), g2 = g * g, g3 = g2 * g;
    return {s * s * e, (2 * s - g * s * s) * e, (2 - 4 * g * s + g2 * s * s) * e, (-6 * g + 6 * g2 * s - g3 * s * s) * e};
}

// Sinusoid plus start ramp f(t) = -Omega t (1 + gamma t) e^{-gamma t}, in units of L0 eps.
WallState open_motion(const WallTrajectory& w, double t) {
    double s = std::sin(w.Omega * t), c = std::cos(w.Omega * t);
    Ramp f = ramp1(t, w.gamma);
    double O = w.Omega;
    return {s - O * f.v, O * c - O * f.d1, -O * O * s - O * f.d2, -O * O * O * c - O * f.d3};
}

} // namespace

WallState wall_state(const WallTrajectory& w, double t) {
    if (t <= 0) return {w.L0, 0, 0, 0};
    double tc = std::min(t, w.T);
    WallState m = open_motion(w, tc);
    // End ramp (C1 s + C2 s^2) e^{-gamma s}, s = T - t, with C1, C2 chosen so
    // that the velocity and acceleration vanish at t = T.
    WallState end = open_motion(w, w.T);
    double C1 = end.Ld;
    double C2 = w.gamma * C1 - 0.5 * end.Ldd;
    double s = w.T - tc;
    double g = w.gamma;
    double e = std::exp(-g * s);
    Ramp r1{s * e, e * (1 - g * s), e * (g * g * s - 2 * g), e * (3 * g * g - g * g * g * s)};
    Ramp r2 = ramp2(s, g);
    m.L += C1 * r1.v + C2 * r2.v;
    m.Ld -= C1 * r1.d1 + C2 * r2.d1;
    m.Ldd += C1 * r1.d2 + C2 * r2.d2;
    m.Lddd -= C1 * r1.d3 + C2 * r2.d3;
    const double a = w.L0 * w.eps;
    if (t >= w.T) return {w.L0 + a * m.L, 0, 0, 0};
    return {w.L0 + a * m.L, a * m.Ld, a * m.Ldd, a * m.Lddd};
}

double length(const WallTrajectory& w, double t) { return wall_state(w, t).L; }

double lambda(const WallTrajectory& w, double t) {
    WallState s = wall_state(w, t);
    return s.Ld / s.L;
}

LambdaState lambda_state(const WallTrajectory& w, double t) {
    WallState s = wall_state(w, t);
    double l = s.Ld / s.L;
    double ld = s.Ldd / s.L - l * l;
    double ldd = s.Lddd / s.L - 3 * s.Ld * s.Ldd / (s.L * s.L) + 2 * l * l * l;
    return {l, ld, ldd};
}

XiDerivatives xi_derivatives(double z, Gauge g) {
    switch (g) {
    case Gauge::primary:
        return {z * z * (1 - z), 2 * z - 3 * z * z, 2 - 6 * z};
    case Gauge::secondary:
        return {-2 * z * z * z * z + 3 * z * z * z - z * z, -8 * z * z * z + 9 * z * z - 2 * z, -24 * z * z + 18 * z - 2};
    case Gauge::zero:
        return {0, 0, 0};
    }
    return {0, 0, 0};
}

double xi(double z, Gauge g) { return xi_derivatives(z, g).xi; }

} // namespace dce
