#include "dce/analysis.hpp"
#include "dce/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

namespace dce {

using std::numbers::pi;
using cd = std::complex<double>;

namespace {

BogoliubovRow project(const AmplitudeState& s, const Eigen::VectorXd& w) {
    const int N = static_cast<int>(w.size());
    require(s.Q.size() == N, "frequency vector does not match the state");
    BogoliubovRow r;
    r.A.resize(N);
    r.B.resize(N);
    const cd I(0, 1);
    for (int p = 0; p < N; ++p) {
        double a = std::sqrt(w(p) / 2);
        cd q = s.Q(p), qd = s.Qdot(p) / w(p);
        r.A(p) = std::polar(1.0, w(p) * s.t) * a * (q + I * qd);
        r.B(p) = std::polar(1.0, -w(p) * s.t) * a * (q - I * qd);
    }
    return r;
}

} // namespace

BogoliubovRow extract_bogoliubov(const AmplitudeState& s, const Eigen::VectorXd& omega_out, double T_motion) {
    if (s.t < T_motion * (1 - 1e-12))
        throw DomainError("Bogoliubov coefficients are defined only after the motion stops");
    return project(s, omega_out);
}

BogoliubovRow instantaneous_bogoliubov(const AmplitudeState& s, const Eigen::VectorXd& omega) {
    return project(s, omega);
}

double unitarity_defect(const BogoliubovPair& bog) {
    Eigen::VectorXd sums = (bog.A.cwiseAbs2() - bog.B.cwiseAbs2()).rowwise().sum();
    return (sums.array() - 1.0).abs().maxCoeff();
}

Eigen::VectorXd photon_numbers(const BogoliubovPair& bog, const Eigen::VectorXd& ksq) {
    const long N = bog.B.cols();
    require(ksq.size() == N && bog.B.rows() == N, "photon_numbers: size mismatch");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(N);
    for (long k = 0; k < N; ++k)
        for (long p = 0; p < N; ++p) {
            double ratio = ksq(k) == ksq(p) ? 1.0 : ksq(k) / ksq(p);
            out(k) += ratio * std::norm(bog.B(p, k));
        }
    return out;
}

double msa_growth_rate(Polarization pol, double omega, double kz) {
    require(omega > 0 && kz >= 0 && kz <= omega * (1 + 1e-12), "msa_growth_rate needs 0 <= kz <= omega");
    if (pol == Polarization::TE) {
        require(kz > 0, "TE modes need kz > 0");
        return kz * kz / (2 * omega);
    }
    require(pol == Polarization::TM, "msa_growth_rate covers TE and TM only");
    return (2 * omega * omega - kz * kz) / (2 * omega);
}

double msa_photon_prediction(double lambda, double eps, double t) {
    double s = std::sinh(lambda * eps * t);
    return s * s;
}

GrowthFit fit_growth_exponent(const std::vector<double>& t, const std::vector<double>& N, double lo, double hi) {
    require(t.size() == N.size(), "fit: size mismatch");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!(N[i] >= lo && N[i] <= hi)) continue;
        double y = std::asinh(std::sqrt(N[i]));
        sx += t[i];
        sy += y;
        sxx += t[i] * t[i];
        sxy += t[i] * y;
        ++n;
    }
    if (n < 3) throw NumericalError("fit window [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                    "] holds fewer than 3 samples");
    double den = n * sxx - sx * sx;
    double slope = (n * sxy - sx * sy) / den;
    double icpt = (sy - slope * sx) / n;
    return {2 * slope, icpt, n};
}

double averaged_chord_exponent(const std::vector<double>& t, const std::vector<double>& N, double t1, double t2,
                               double P) {
    require(t.size() == N.size() && t.size() >= 2, "chord: size mismatch");
    require(P > 0 && t2 - t1 > P, "chord: window shorter than one period");
    // Trapezoidal mean of ln N over [a, a + P] using linear interpolation.
    auto mean_log = [&](double a) {
        auto interp = [&](double x) {
            auto it = std::lower_bound(t.begin(), t.end(), x);
            if (it == t.begin()) return std::log(N.front());
            if (it == t.end()) return std::log(N.back());
            std::size_t i = it - t.begin();
            double u = (x - t[i - 1]) / (t[i] - t[i - 1]);
            return (1 - u) * std::log(N[i - 1]) + u * std::log(N[i]);
        };
        const int M = 2000;
        double acc = 0;
        for (int i = 0; i <= M; ++i) {
            double w = (i == 0 || i == M) ? 0.5 : 1.0;
            acc += w * interp(a + P * i / M);
        }
        return acc / M;
    };
    double m1 = mean_log(t1), m2 = mean_log(t2 - P);
    return (m2 - m1) / (t2 - P - t1);
}

FloquetResult floquet(const ModeSystem& sys, double t0, const IntegratorConfig& cfg) {
    const auto& tr = sys.trajectory();
    double Td = 2 * pi / tr.Omega;
    require(t0 + Td <= tr.T, "Floquet window must lie inside the motion");
    Eigen::MatrixXd M = propagator(sys, t0, Td, cfg);
    Eigen::EigenSolver<Eigen::MatrixXd> es(M, false);
    FloquetResult r;
    r.multipliers = es.eigenvalues();
    double rmax = r.multipliers.cwiseAbs().maxCoeff();
    r.exponent = 2 * std::log(rmax) / Td;
    std::vector<double> args;
    for (long i = 0; i < r.multipliers.size(); ++i)
        if (std::abs(r.multipliers(i)) > rmax * (1 - 1e-6)) args.push_back(std::arg(r.multipliers(i)));
    double dmax = 0;
    for (double a : args)
        for (double b : args) {
            double d = std::abs(a - b);
            d = std::min(d, 2 * pi - d);
            dmax = std::max(dmax, d);
        }
    r.beat_period = dmax > 1e-9 ? 2 * pi * Td / dmax : 0.0;
    return r;
}

double slow_flow_rate(const CouplingTable& table, double ksq, double L0, double Omega) {
    const int N = table.size();
    Eigen::VectorXd kz2(N), w(N);
    for (int i = 0; i < N; ++i) {
        double kz = table.nz[i] * pi / L0;
        kz2(i) = kz * kz;
        w(i) = std::sqrt(ksq + kz2(i));
    }
    // Q_j'' + w_j^2 Q_j = eps sum_p [a_jp sin(Omega t) Q_p + b_jp cos(Omega t) Q_p'] for L = L0 (1 + eps sin Omega t).
    Eigen::MatrixXd a, b;
    const double O = Omega;
    if (table.pol == Polarization::TM) {
        Eigen::MatrixXd G = table.h.transpose();
        Eigen::MatrixXd S = table.s.transpose();
        Eigen::VectorXd n2(N);
        for (int i = 0; i < N; ++i) n2(i) = (table.nz[i] * pi) * (table.nz[i] * pi);
        Eigen::MatrixXd EF = table.eta.transpose() + S * n2.asDiagonal();
        Eigen::VectorXd w2 = w.array().square();
        a = O * O * (G - 2 * L0 * L0 * S * w2.asDiagonal());
        a.diagonal() += 2 * kz2;
        b = O * (-2 * G + O * O * L0 * L0 * S + EF);
    } else {
        a = -O * O * table.g;
        a.diagonal() += 2 * kz2;
        b = 2 * O * table.g;
    }
    // Amplitudes Q_p = A_p e^{-i w_p t} + B_p e^{+i w_p t}; keep the secular terms.
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(2 * N, 2 * N);
    const double tol = 1e-9 * O;
    const cd I(0, 1);
    for (int j = 0; j < N; ++j)
        for (int p = 0; p < N; ++p)
            for (int s : {1, -1})
                for (int r : {-1, 1}) {
                    double f = s * O + r * w(p);
                    int col = r == -1 ? p : N + p;
                    cd val = a(j, p) * (double(s) / (2.0 * I)) + b(j, p) * 0.5 * (double(r) * I * w(p));
                    if (std::abs(f + w(j)) < tol) M(j, col) += val / (-2.0 * I * w(j));
                    if (std::abs(f - w(j)) < tol) M(N + j, col) += val / (2.0 * I * w(j));
                }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, false);
    return es.eigenvalues().real().maxCoeff();
}

ResonanceReport detect_resonances(const CavityGeometry& geom, Polarization pol, double Omega, double omega_max,
                                  double tol) {
    require(tol > 0, "tol must be positive");
    require(Omega > 0, "Omega must be positive");
    auto modes = enumerate_modes(geom, pol, omega_max);
    ResonanceReport rep;
    for (const auto& m : modes)
        if (std::abs(Omega - 2 * m.omega) < tol * Omega) rep.parametric.push_back(m);
    for (std::size_t i = 0; i < modes.size(); ++i)
        for (std::size_t j = i + 1; j < modes.size(); ++j) {
            const auto &x = modes[i], &y = modes[j];
            if (x.mode.t1 != y.mode.t1 || x.mode.t2 != y.mode.t2) continue;
            bool sum = std::abs(Omega - (x.omega + y.omega)) < tol * Omega;
            bool diff = std::abs(Omega - std::abs(x.omega - y.omega)) < tol * Omega;
            if (sum || diff) rep.couplings.emplace_back(x, y);
        }
    return rep;
}

std::vector<Table1Row> table1(int N_z, ZeroMode zero_mode) {
    CavityGeometry cube{Rectangular{1.0, 1.0}, 1.0};
    CavityGeometry cyl{Circular{1.0}, 10.0};
    struct Case {
        std::string cavity;
        CavityGeometry geom;
        ModeIndex resonant; // driven at twice its frequency
        ModeIndex reported;
        double printed;
    };
    const std::vector<Case> cases = {
        {"cubic", cube, {Polarization::TE, 1, 0, 1}, {Polarization::TE, 1, 0, 1}, 0.5},
        {"cubic", cube, {Polarization::TE, 0, 1, 1}, {Polarization::TE, 0, 1, 1}, 0.5},
        {"cubic", cube, {Polarization::TM, 1, 1, 0}, {Polarization::TM, 1, 1, 0}, 1.0},
        {"cubic", cube, {Polarization::TM, 1, 1, 0}, {Polarization::TM, 1, 1, 4}, 0.3},
        {"cylindrical", cyl, {Polarization::TM, 0, 1, 0}, {Polarization::TM, 0, 1, 0}, 2.0},
        {"cylindrical", cyl, {Polarization::TE, 1, 1, 1}, {Polarization::TE, 1, 1, 1}, 0.03},
    };
    std::vector<Table1Row> rows;
    for (const auto& c : cases) {
        CouplingTable table = build_table(c.resonant.pol, N_z, Gauge::primary, zero_mode);
        double ksq = transverse_eigenvalue(c.geom, c.resonant);
        double Omega = 2 * eigenfrequency(c.geom, c.resonant, c.geom.L0);
        double mu = slow_flow_rate(table, ksq, c.geom.L0, Omega);
        double w = eigenfrequency(c.geom, c.reported, c.geom.L0);
        rows.push_back({c.cavity, c.reported, 2 * mu / w, c.printed});
    }
    return rows;
}

Estimate max_photons(double two_lambda_over_omega, double eps, double Q_factor) {
    require(two_lambda_over_omega >= 0 && eps >= 0 && Q_factor >= 0, "estimate inputs must be non-negative");
    double l = two_lambda_over_omega * eps * Q_factor;
    return {l > std::log(std::numeric_limits<double>::max()) ? std::numeric_limits<double>::infinity() : std::exp(l), l};
}

Estimate max_photons_semiconductor(double a, double eps_tilde, double Q_factor) {
    return max_photons(a, eps_tilde, Q_factor);
}

// ---------------------------------------------------------------- family runs

ModeSystem make_system(const FamilySetup& s) {
    validate_mode(s.geom, s.representative);
    require(s.N_z >= 1, "N_z must be >= 1");
    require(s.samples >= 2, "samples must be >= 2");
    double ksq = transverse_eigenvalue(s.geom, s.representative);
    return ModeSystem(build_table(s.representative.pol, s.N_z, s.gauge, s.zero_mode), ksq, s.traj, s.gauge_terms);
}

namespace {

template <class F>
void parallel_for(int n, F f) {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    unsigned workers = std::min<unsigned>(hw, static_cast<unsigned>(n));
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex m;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i; (i = next++) < n;) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard lock(m);
                    if (!err) err = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

} // namespace

FamilyRun run_family(const FamilySetup& setup) {
    ModeSystem sys = make_system(setup);
    const int N = sys.size();
    const double T = setup.traj.T;
    FamilyRun run;
    for (int nz : sys.table().nz) {
        ModeIndex m = setup.representative;
        m.nz = nz;
        run.modes.push_back(m);
    }
    run.omega_out = sys.omega(length(setup.traj, T));
    double dt_later = 0.5 * pi / run.omega_out.minCoeff();
    run.times.resize(setup.samples);
    for (int i = 0; i < setup.samples; ++i) run.times[i] = T * (i + 1) / setup.samples;
    std::vector<double> ts = run.times;
    ts.push_back(T + dt_later);

    std::vector<Eigen::VectorXd> omega_t(setup.samples);
    for (int i = 0; i < setup.samples; ++i) omega_t[i] = sys.omega_at(run.times[i]);

    run.bog.A.resize(N, N);
    run.bog.B.resize(N, N);
    run.bog_later = run.bog;
    std::vector<Eigen::MatrixXd> partial(N);
    parallel_for(N, [&](int k) {
        auto states = integrate(initial_state(sys, k), sys, ts, setup.integrator);
        Eigen::MatrixXd series(setup.samples, N);
        for (int i = 0; i < setup.samples; ++i)
            series.row(i) = instantaneous_bogoliubov(states[i], omega_t[i]).B.cwiseAbs2().transpose();
        partial[k] = std::move(series);
        BogoliubovRow r0 = extract_bogoliubov(states[setup.samples - 1], run.omega_out, T);
        BogoliubovRow r1 = extract_bogoliubov(states.back(), run.omega_out, T);
        run.bog.A.row(k) = r0.A.transpose();
        run.bog.B.row(k) = r0.B.transpose();
        run.bog_later.A.row(k) = r1.A.transpose();
        run.bog_later.B.row(k) = r1.B.transpose();
    });
    run.N_series = Eigen::MatrixXd::Zero(setup.samples, N);
    for (const auto& p : partial) run.N_series += p;

    Eigen::VectorXd ksq = Eigen::VectorXd::Constant(N, sys.ksq_perp());
    run.N = photon_numbers(run.bog, ksq);
    Eigen::VectorXd N_later = photon_numbers(run.bog_later, ksq);
    run.unitarity_defect = unitarity_defect(run.bog);
    run.translation_defect =
        ((run.N - N_later).array().abs() / run.N.array().max(1.0)).maxCoeff();
    return run;
}

} // namespace dce
