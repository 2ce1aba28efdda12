#include "dce/dynamics.hpp"
#include "dce/errors.hpp"

#include <boost/numeric/odeint.hpp>

#include <cmath>
#include <complex>
#include <numbers>

namespace dce {

namespace odeint = boost::numeric::odeint;
using std::numbers::pi;
using State = std::vector<double>;

void IntegratorConfig::validate() const {
    require(rel_tol > 0 && abs_tol > 0, "integrator tolerances must be positive");
    require(max_step >= 0, "max_step must be non-negative");
    require(scheme == "dopri5" || scheme == "rkf78", "unknown integrator scheme '" + scheme + "'");
}

ModeSystem::ModeSystem(CouplingTable table, double ksq_perp, WallTrajectory traj, bool gauge_terms)
    : table_(std::move(table)), ksq_(ksq_perp), traj_(traj), gauge_terms_(gauge_terms) {
    traj_.validate();
    require(ksq_ >= 0, "k_perp^2 must be non-negative");
    const int N = size();
    kz2_.resize(N);
    for (int i = 0; i < N; ++i) kz2_(i) = (table_.nz[i] * pi) * (table_.nz[i] * pi);
    if (table_.pol == Polarization::TM) {
        hT_ = table_.h.transpose();
        sT_ = table_.s.transpose();
        etaT_ = table_.eta.transpose();
    } else {
        gT_ = table_.g;
    }
}

Eigen::VectorXd ModeSystem::omega(double Lz) const {
    return (ksq_ + kz2_.array() / (Lz * Lz)).sqrt().matrix();
}

void ModeSystem::accel(double t, const Eigen::Ref<const Eigen::MatrixXd>& Q, const Eigen::Ref<const Eigen::MatrixXd>& Qd,
                       Eigen::Ref<Eigen::MatrixXd> Qdd) const {
    WallState w = wall_state(traj_, t);
    LambdaState l = lambda_state(traj_, t);
    Eigen::ArrayXd w2 = ksq_ + kz2_.array() / (w.L * w.L);
    Qdd.noalias() = -(Q.array().colwise() * w2).matrix();
    if (l.lambda == 0 && l.lambda_dot == 0 && l.lambda_ddot == 0) return;

    if (table_.pol != Polarization::TM) {
        // Qdd_p + w_p^2 Q_p = 2 lam sum_j g_pj Qd_j + lamdot sum_j g_pj Q_j
        Qdd.noalias() += (2 * l.lambda) * gT_ * Qd;
        Qdd.noalias() += l.lambda_dot * gT_ * Q;
        return;
    }
    // Row p, summed j. Inside the O(eps) terms Qdd_j -> -w_j^2 Q_j and
    // d^3 Q_j -> -w_j^2 Qd_j; eta carries the full w_j^2 L^2 of the summed mode.
    Qdd.noalias() -= hT_ * (2 * l.lambda * Qd + l.lambda_dot * Q);
    if (!gauge_terms_) return;
    const double L2 = w.L * w.L;
    // s_jp [2 lamdot L^2 w_j^2 Q_j - lamddot L^2 Qd_j + lam L^2 w_j^2 Qd_j] + lam eta_jp Qd_j,
    // with eta_jp = eta~_jp - k_perp^2 L^2 s_jp.
    Eigen::MatrixXd inner = (2 * l.lambda_dot * L2) * (Q.array().colwise() * w2).matrix() -
                            (l.lambda_ddot * L2) * Qd +
                            (l.lambda * L2) * (Qd.array().colwise() * (w2 - ksq_)).matrix();
    Qdd.noalias() += sT_ * inner;
    Qdd.noalias() += l.lambda * etaT_ * Qd;
}

AmplitudeState initial_state(const ModeSystem& sys, int k_index) {
    const int N = sys.size();
    if (k_index < 0 || k_index >= N) throw DomainError("IN mode outside the truncated family");
    AmplitudeState s;
    s.t = 0.0;
    s.excited = k_index;
    s.Q = Eigen::VectorXcd::Zero(N);
    s.Qdot = Eigen::VectorXcd::Zero(N);
    double w = sys.omega(sys.trajectory().L0)(k_index);
    s.Q(k_index) = 1.0 / std::sqrt(2 * w);
    s.Qdot(k_index) = std::complex<double>(0.0, -std::sqrt(w / 2));
    return s;
}

namespace {

Derivative rhs_complex(const AmplitudeState& s, const ModeSystem& sys) {
    const int N = sys.size();
    Eigen::MatrixXd Q(N, 2), Qd(N, 2), Qdd(N, 2);
    Q << s.Q.real(), s.Q.imag();
    Qd << s.Qdot.real(), s.Qdot.imag();
    sys.accel(s.t, Q, Qd, Qdd);
    Derivative d;
    d.dQ = s.Qdot;
    d.dQdot = Qdd.col(0).cast<std::complex<double>>() + std::complex<double>(0, 1) * Qdd.col(1).cast<std::complex<double>>();
    return d;
}

// odeint right-hand side over `m` real solution columns: x = [Q (N x m), Qd (N x m)].
struct Rhs {
    const ModeSystem* sys;
    int m;
    void operator()(const State& x, State& dx, double t) const {
        const int N = sys->size();
        const long blk = long(N) * m;
        Eigen::Map<const Eigen::MatrixXd> Q(x.data(), N, m), Qd(x.data() + blk, N, m);
        Eigen::Map<Eigen::MatrixXd> dQ(dx.data(), N, m), dQd(dx.data() + blk, N, m);
        dQ = Qd;
        sys->accel(t, Q, Qd, dQd);
    }
};

void check_finite(const State& x, double t) {
    for (double v : x)
        if (!std::isfinite(v)) throw NumericalError("non-finite amplitude at t = " + std::to_string(t));
}

// Advances x through the sample times, calling obs(x, t) at each.
template <class Obs>
void run(const ModeSystem& sys, int m, State x, double t0, const std::vector<double>& times,
         const IntegratorConfig& cfg, Obs obs) {
    cfg.validate();
    Rhs rhs{&sys, m};
    std::vector<double> ts;
    ts.reserve(times.size() + 1);
    ts.push_back(t0);
    for (double t : times) {
        if (t < ts.back()) throw DomainError("sample times must be ascending and >= the initial time");
        ts.push_back(t);
    }
    double wmax = sys.omega(sys.trajectory().L0 * 0.9).maxCoeff();
    double dt0 = 0.01 / wmax;
    bool first = true;
    auto wrapped = [&](const State& s, double t) {
        check_finite(s, t);
        if (first) {
            first = false;
            return;
        }
        obs(s, t);
    };
    odeint::max_step_checker checker(100000000);
    try {
        if (cfg.scheme == "dopri5") {
            using Stepper = odeint::runge_kutta_dopri5<State>;
            if (cfg.max_step > 0) {
                auto st = odeint::make_dense_output(cfg.abs_tol, cfg.rel_tol, cfg.max_step, Stepper());
                odeint::integrate_times(st, rhs, x, ts.begin(), ts.end(), dt0, wrapped, checker);
            } else {
                auto st = odeint::make_dense_output(cfg.abs_tol, cfg.rel_tol, Stepper());
                odeint::integrate_times(st, rhs, x, ts.begin(), ts.end(), dt0, wrapped, checker);
            }
        } else {
            using Stepper = odeint::runge_kutta_fehlberg78<State>;
            if (cfg.max_step > 0) {
                auto st = odeint::make_controlled(cfg.abs_tol, cfg.rel_tol, cfg.max_step, Stepper());
                odeint::integrate_times(st, rhs, x, ts.begin(), ts.end(), dt0, wrapped, checker);
            } else {
                auto st = odeint::make_controlled(cfg.abs_tol, cfg.rel_tol, Stepper());
                odeint::integrate_times(st, rhs, x, ts.begin(), ts.end(), dt0, wrapped, checker);
            }
        }
    } catch (const odeint::step_adjustment_error& e) {
        throw NumericalError(std::string("step size underflow: ") + e.what());
    } catch (const odeint::no_progress_error& e) {
        throw NumericalError(std::string("integrator made no progress: ") + e.what());
    }
}

} // namespace

Derivative rhs_te(const AmplitudeState& s, const ModeSystem& sys) {
    require(sys.table().pol != Polarization::TM, "rhs_te needs a TE/TEM table");
    return rhs_complex(s, sys);
}

Derivative rhs_tm(const AmplitudeState& s, const ModeSystem& sys) {
    require(sys.table().pol == Polarization::TM, "rhs_tm needs a TM table");
    return rhs_complex(s, sys);
}

std::vector<AmplitudeState> integrate(const AmplitudeState& s0, const ModeSystem& sys,
                                      const std::vector<double>& times, const IntegratorConfig& cfg) {
    const int N = sys.size();
    require(s0.Q.size() == N && s0.Qdot.size() == N, "state size does not match the family");
    State x(4 * N);
    for (int i = 0; i < N; ++i) {
        x[i] = s0.Q(i).real();
        x[N + i] = s0.Q(i).imag();
        x[2 * N + i] = s0.Qdot(i).real();
        x[3 * N + i] = s0.Qdot(i).imag();
    }
    std::vector<AmplitudeState> out;
    out.reserve(times.size());
    std::vector<double> pending;
    // Samples at the initial time are returned unchanged.
    for (double t : times)
        if (t == s0.t) out.push_back(s0);
        else pending.push_back(t);
    run(sys, 2, x, s0.t, pending, cfg, [&](const State& y, double t) {
        AmplitudeState s;
        s.t = t;
        s.excited = s0.excited;
        s.Q.resize(N);
        s.Qdot.resize(N);
        for (int i = 0; i < N; ++i) {
            s.Q(i) = {y[i], y[N + i]};
            s.Qdot(i) = {y[2 * N + i], y[3 * N + i]};
        }
        out.push_back(std::move(s));
    });
    return out;
}

Eigen::MatrixXd propagator(const ModeSystem& sys, double t0, double span, const IntegratorConfig& cfg) {
    const int N = sys.size();
    const int m = 2 * N;
    State x(2 * N * m, 0.0);
    // Column c starts as the c-th unit vector of (Q, Qd).
    for (int c = 0; c < m; ++c) x[c < N ? (c * N + c) : (N * m + c * N + (c - N))] = 1.0;
    Eigen::MatrixXd M(m, m);
    run(sys, m, x, t0, {t0 + span}, cfg, [&](const State& y, double) {
        Eigen::Map<const Eigen::MatrixXd> Q(y.data(), N, m), Qd(y.data() + N * m, N, m);
        M.topRows(N) = Q;
        M.bottomRows(N) = Qd;
    });
    return M;
}

} // namespace dce
