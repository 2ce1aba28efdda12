#pragma once

#include "dce/analysis.hpp"
#include "dce/spectrum.hpp"
#include "dce/trajectory.hpp"

#include <atomic>
#include <vector>

namespace dce {

// Exact solution of R(t + L(t)) - R(t - L(t)) = 2 with R(u) = u / L0 for
// u <= L0, evaluated by walking characteristics back into the static region.
class MooreFunction {
public:
    struct Value {
        double R = 0.0;
        double R1 = 0.0; // dR/du
        double S = 0.0;  // Schwarzian derivative {R; u}
        int depth = 0;   // reflections walked
    };

    explicit MooreFunction(WallTrajectory traj, int max_depth = 1 << 20);
    MooreFunction(const MooreFunction& other) : traj_(other.traj_), max_depth_(other.max_depth_) {}

    Value eval(double u) const;
    double residual(double t) const; // R(t + L) - R(t - L) - 2

    const WallTrajectory& trajectory() const { return traj_; }
    int deepest() const { return deepest_.load(); }

    struct Sample {
        double u, R, R1;
    };
    std::vector<Sample> tabulate(double u0, double u1, int n) const;

private:
    WallTrajectory traj_;
    int max_depth_;
    mutable std::atomic<int> deepest_{0};
};

// Renormalized 1+1 energy density; -pi / (24 L0^2) in the static cavity.
double energy_density(const MooreFunction& moore, double z, double t);

struct EnergyProfile {
    double t = 0.0;
    std::vector<double> z;
    std::vector<double> T00;
};

EnergyProfile energy_profile(const MooreFunction& moore, double t, int points);

// Integral of the density over the cavity plus pi / (24 L(t)).
double total_energy(const MooreFunction& moore, double t);

// Local maxima of the profile whose prominence exceeds `min_prominence`.
std::vector<std::size_t> find_peaks(const std::vector<double>& y, double min_prominence);

// Highest peak of the profile at time t, refined off-grid.
double peak_height(const MooreFunction& moore, double t, int points = 4001);

// int |A_perp|^2 d^2x over the annulus, 2 pi ln(b / a).
double tem_prefactor(const CavityGeometry& geom);

struct TemModeReport {
    std::vector<int> n;
    Eigen::VectorXd N;
    double mode_energy = 0.0; // sum_n (n pi / L) N_n
    double unitarity_defect = 0.0;
};

// Dirichlet 1+1 field driven at Omega = q pi / L0; photon numbers per mode n.
TemModeReport tem_mode_photons(const WallTrajectory& traj, int q, int N_modes,
                               const IntegratorConfig& cfg = {});

} // namespace dce
