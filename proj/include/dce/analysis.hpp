#pragma once

#include "dce/coupling.hpp"
#include "dce/dynamics.hpp"
#include "dce/spectrum.hpp"
#include "dce/trajectory.hpp"

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

namespace dce {

struct BogoliubovRow {
    Eigen::VectorXcd A;
    Eigen::VectorXcd B;
};

// Row (k, .) of the Bogoliubov matrices from a state sampled at t >= T_motion.
BogoliubovRow extract_bogoliubov(const AmplitudeState& s, const Eigen::VectorXd& omega_out, double T_motion);

// Same projection with the instantaneous frequencies, usable during the motion.
BogoliubovRow instantaneous_bogoliubov(const AmplitudeState& s, const Eigen::VectorXd& omega);

// A(k, p), B(k, p): IN mode k, OUT mode p.
struct BogoliubovPair {
    Eigen::MatrixXcd A;
    Eigen::MatrixXcd B;
};

// max_k | sum_p (|A_kp|^2 - |B_kp|^2) - 1 |
double unitarity_defect(const BogoliubovPair& bog);

// <N_k> = ksq_k sum_p |B(p, k)|^2 / ksq_p; a zero pair of weights counts as ratio 1.
Eigen::VectorXd photon_numbers(const BogoliubovPair& bog, const Eigen::VectorXd& ksq);

struct PhotonReport {
    std::vector<ModeIndex> modes;
    Eigen::VectorXd N;
    double exponent = 0.0;
    double unitarity_defect = 0.0;
};

double msa_growth_rate(Polarization pol, double omega, double kz);
double msa_photon_prediction(double lambda, double eps, double t);

struct GrowthFit {
    double exponent = 0.0; // d ln N / dt in the exponential regime
    double intercept = 0.0;
    int points = 0;
};

// Least squares on asinh(sqrt(N)) over samples with N in [lo, hi]; for
// N = sinh^2(a t) this is linear in t with slope a, and the exponent is 2a.
GrowthFit fit_growth_exponent(const std::vector<double>& t, const std::vector<double>& N, double lo = 1.0,
                              double hi = 100.0);

// Slope between the averages of ln N over [t1, t1 + P] and [t2 - P, t2].
// Exact for N = e^{kappa t} times a P-periodic factor.
double averaged_chord_exponent(const std::vector<double>& t, const std::vector<double>& N, double t1, double t2,
                               double P);

struct FloquetResult {
    double exponent = 0.0;    // photon-number exponent 2 ln|rho|_max / T_drive
    double beat_period = 0.0; // 0 when the dominant multiplier is real or unique
    Eigen::VectorXcd multipliers;
};

// Monodromy of the steadily driven system over one drive period starting at t0.
FloquetResult floquet(const ModeSystem& sys, double t0, const IntegratorConfig& cfg = {});

// Amplitude growth rate per unit eps from first-order averaging over all
// resonant combinations s Omega +/- omega_p = +/- omega_j inside the family.
// For an uncoupled mode it reproduces msa_growth_rate.
double slow_flow_rate(const CouplingTable& table, double ksq_perp, double L0, double Omega);

struct ResonanceReport {
    std::vector<ModeFrequency> parametric;
    std::vector<std::pair<ModeFrequency, ModeFrequency>> couplings;
};

ResonanceReport detect_resonances(const CavityGeometry& geom, Polarization pol, double Omega, double omega_max,
                                  double tol);

struct Table1Row {
    std::string cavity;
    ModeIndex mode;
    double two_lambda_over_omega = 0.0;
    double printed = 0.0;
};

// 2 lambda / omega for the six reference cases (cubic, and circular with L/R = 10).
std::vector<Table1Row> table1(int N_z = 12, ZeroMode zero_mode = ZeroMode::printed);

struct Estimate {
    double value = 0.0; // +inf when it overflows
    double log_value = 0.0;
};

Estimate max_photons(double two_lambda_over_omega, double eps, double Q_factor);
Estimate max_photons_semiconductor(double a, double eps_tilde, double Q_factor);

// Everything needed to simulate one transverse family.
struct FamilySetup {
    CavityGeometry geom;
    ModeIndex representative; // pol, t1, t2 select the family
    int N_z = 12;
    WallTrajectory traj;
    IntegratorConfig integrator;
    Gauge gauge = Gauge::primary;
    ZeroMode zero_mode = ZeroMode::printed;
    int samples = 400;         // sample count for N(t) over [0, T]
    bool gauge_terms = true;
};

struct FamilyRun {
    std::vector<ModeIndex> modes;
    Eigen::VectorXd omega_out;
    BogoliubovPair bog;       // extracted at T
    BogoliubovPair bog_later; // extracted a quarter fundamental period later
    Eigen::VectorXd N;        // OUT photon numbers
    std::vector<double> times;
    Eigen::MatrixXd N_series; // times x modes, instantaneous projection
    double unitarity_defect = 0.0;
    double translation_defect = 0.0; // max |N(T) - N(T + dt)| / max(1, N)
};

ModeSystem make_system(const FamilySetup& setup);

// Runs every IN mode of the family (concurrently) and assembles the report.
FamilyRun run_family(const FamilySetup& setup);

} // namespace dce
