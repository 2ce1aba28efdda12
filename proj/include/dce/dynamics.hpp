#pragma once

#include "dce/coupling.hpp"
#include "dce/spectrum.hpp"
#include "dce/trajectory.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace dce {

// Amplitudes of one IN mode expanded over a truncated longitudinal family.
struct AmplitudeState {
    double t = 0.0;
    Eigen::VectorXcd Q;
    Eigen::VectorXcd Qdot;
    int excited = 0; // position of the IN mode inside the family
};

struct IntegratorConfig {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double max_step = 0.0; // 0: unlimited
    std::string scheme = "dopri5"; // "dopri5" (dense output) or "rkf78" (controlled, steps onto sample times)

    void validate() const;
};

// Second-order system for one transverse family, TE (and TEM) or TM.
class ModeSystem {
public:
    ModeSystem(CouplingTable table, double ksq_perp, WallTrajectory traj, bool gauge_terms = true);

    int size() const { return table_.size(); }
    const CouplingTable& table() const { return table_; }
    const WallTrajectory& trajectory() const { return traj_; }
    double ksq_perp() const { return ksq_; }

    Eigen::VectorXd omega(double Lz) const;
    Eigen::VectorXd omega_at(double t) const { return omega(length(traj_, t)); }

    // Qdd for every column of (Q, Qd); columns are independent solutions.
    void accel(double t, const Eigen::Ref<const Eigen::MatrixXd>& Q, const Eigen::Ref<const Eigen::MatrixXd>& Qd,
               Eigen::Ref<Eigen::MatrixXd> Qdd) const;

private:
    CouplingTable table_;
    double ksq_;
    WallTrajectory traj_;
    bool gauge_terms_;
    Eigen::VectorXd kz2_; // (n pi)^2
    Eigen::MatrixXd gT_, hT_, sT_, etaT_;
};

AmplitudeState initial_state(const ModeSystem& sys, int k_index);

struct Derivative {
    Eigen::VectorXcd dQ;
    Eigen::VectorXcd dQdot;
};

Derivative rhs_te(const AmplitudeState& s, const ModeSystem& sys);
Derivative rhs_tm(const AmplitudeState& s, const ModeSystem& sys);

// States at the requested (ascending) sample times.
std::vector<AmplitudeState> integrate(const AmplitudeState& s0, const ModeSystem& sys,
                                      const std::vector<double>& times, const IntegratorConfig& cfg = {});

// Real 2N x 2N propagator of (Q, Qd) from t0 to t0 + span.
Eigen::MatrixXd propagator(const ModeSystem& sys, double t0, double span, const IntegratorConfig& cfg = {});

} // namespace dce
