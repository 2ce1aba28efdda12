#pragma once

namespace dce {

// L(t) = L0 [1 + eps sin(Omega t) + eps f(t) + eps e(t)] on [0, T], with the
// start-up ramp f(t) = -Omega t (1 + gamma t) exp(-gamma t) and an end ramp
// e(t) = (C1 (T - t) + C2 (T - t)^2) exp(-gamma (T - t)). L, dL/dt and d2L/dt2
// are continuous at 0 and T; the wall is frozen at L(T) afterwards.
struct WallTrajectory {
    double L0 = 1.0;
    double eps = 0.0;
    double Omega = 1.0;
    double gamma = 1.0;
    double T = 1.0;

    static WallTrajectory make(double L0, double eps, double Omega, double T, double gamma = -1.0);
    void validate() const;
};

struct WallState {
    double L = 0.0;
    double Ld = 0.0;
    double Ldd = 0.0;
    double Lddd = 0.0;
};

struct LambdaState {
    double lambda = 0.0;
    double lambda_dot = 0.0;
    double lambda_ddot = 0.0;
};

WallState wall_state(const WallTrajectory& traj, double t);
double length(const WallTrajectory& traj, double t);
double lambda(const WallTrajectory& traj, double t);
LambdaState lambda_state(const WallTrajectory& traj, double t);

// Admissible gauge profiles: xi(0) = xi(1) = 0, xi'(0) = 0, xi'(1) = -1.
// primary:   z^2 (1 - z)
// secondary: z^2 (1 - z)(2z - 1), which also vanishes at z = 1/2
enum class Gauge { primary, secondary, zero };

struct XiDerivatives {
    double xi = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

double xi(double z, Gauge g = Gauge::primary);
XiDerivatives xi_derivatives(double z, Gauge g = Gauge::primary);

} // namespace dce
