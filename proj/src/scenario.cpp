#include "dce/scenario.hpp"
#include "dce/errors.hpp"
#include "dce/tem.hpp"

#include <json.hpp>
#include <yaml-cpp/yaml.h>

#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <set>
#include <sstream>

namespace dce {

using std::numbers::pi;
using json = nlohmann::ordered_json;

namespace {

// ------------------------------------------------------------------ parsing

void check_keys(const YAML::Node& n, const std::string& where, const std::set<std::string>& allowed) {
    if (!n.IsMap()) throw DomainError("'" + where + "' must be a mapping");
    for (const auto& kv : n) {
        auto k = kv.first.as<std::string>();
        if (!allowed.count(k)) throw DomainError("unknown key '" + k + "' in " + where);
    }
}

template <class T>
void read(const YAML::Node& n, const char* key, T& out) {
    if (!n[key]) return;
    try {
        out = n[key].as<T>();
    } catch (const YAML::Exception&) {
        throw DomainError(std::string("bad value for '") + key + "'");
    }
}

template <class T>
void read(const YAML::Node& n, const char* key, std::optional<T>& out) {
    if (!n[key]) return;
    T v{};
    read(n, key, v);
    out = v;
}

ScenarioConfig from_yaml(const YAML::Node& root) {
    ScenarioConfig c;
    check_keys(root, "config", {"schema", "task", "geometry", "mode", "drive", "numerics", "spectrum", "tem", "estimate"});
    if (!root["schema"]) throw DomainError("missing 'schema'");
    read(root, "schema", c.schema);
    if (c.schema != 1) throw DomainError("unsupported schema " + std::to_string(c.schema));
    read(root, "task", c.task);
    if (auto g = root["geometry"]) {
        check_keys(g, "geometry", {"section", "Lx", "Ly", "R", "a", "b", "L0"});
        read(g, "section", c.geometry.section);
        read(g, "Lx", c.geometry.Lx);
        read(g, "Ly", c.geometry.Ly);
        read(g, "R", c.geometry.R);
        read(g, "a", c.geometry.a);
        read(g, "b", c.geometry.b);
        read(g, "L0", c.geometry.L0);
    }
    if (auto m = root["mode"]) {
        check_keys(m, "mode", {"pol", "t1", "t2", "nz"});
        read(m, "pol", c.mode.pol);
        read(m, "t1", c.mode.t1);
        read(m, "t2", c.mode.t2);
        read(m, "nz", c.mode.nz);
    }
    if (auto d = root["drive"]) {
        check_keys(d, "drive", {"eps", "Omega", "resonance", "q", "gamma", "T", "periods"});
        read(d, "eps", c.drive.eps);
        read(d, "Omega", c.drive.Omega);
        read(d, "resonance", c.drive.resonance);
        read(d, "q", c.drive.q);
        read(d, "gamma", c.drive.gamma);
        read(d, "T", c.drive.T);
        read(d, "periods", c.drive.periods);
    }
    if (auto n = root["numerics"]) {
        check_keys(n, "numerics", {"N_z", "rel_tol", "abs_tol", "scheme", "samples", "gauge", "zero_mode", "floquet"});
        read(n, "N_z", c.numerics.N_z);
        read(n, "rel_tol", c.numerics.rel_tol);
        read(n, "abs_tol", c.numerics.abs_tol);
        read(n, "scheme", c.numerics.scheme);
        read(n, "samples", c.numerics.samples);
        read(n, "gauge", c.numerics.gauge);
        read(n, "zero_mode", c.numerics.zero_mode);
        read(n, "floquet", c.numerics.floquet);
    }
    if (auto s = root["spectrum"]) {
        check_keys(s, "spectrum", {"pol", "omega_max", "tol"});
        read(s, "pol", c.spectrum.pol);
        read(s, "omega_max", c.spectrum.omega_max);
        read(s, "tol", c.spectrum.tol);
    }
    if (auto t = root["tem"]) {
        check_keys(t, "tem", {"profile_times", "profile_points", "midpoint_t0", "midpoint_t1", "midpoint_samples",
                              "energy_times", "N_modes"});
        read(t, "profile_times", c.tem.profile_times);
        read(t, "profile_points", c.tem.profile_points);
        read(t, "midpoint_t0", c.tem.midpoint_t0);
        read(t, "midpoint_t1", c.tem.midpoint_t1);
        read(t, "midpoint_samples", c.tem.midpoint_samples);
        read(t, "energy_times", c.tem.energy_times);
        read(t, "N_modes", c.tem.N_modes);
    }
    if (auto e = root["estimate"]) {
        check_keys(e, "estimate", {"two_lambda_over_omega", "a", "eps", "Q_factor"});
        read(e, "two_lambda_over_omega", c.estimate.two_lambda_over_omega);
        read(e, "a", c.estimate.a);
        read(e, "eps", c.estimate.eps);
        read(e, "Q_factor", c.estimate.Q_factor);
    }
    return c;
}

const std::set<std::string> tasks = {"spectrum", "simulate", "tem", "table1", "resonances", "estimate"};

Gauge parse_gauge(const std::string& s) {
    if (s == "primary") return Gauge::primary;
    if (s == "secondary") return Gauge::secondary;
    if (s == "zero") return Gauge::zero;
    throw DomainError("unknown gauge '" + s + "'");
}

ZeroMode parse_zero_mode(const std::string& s) {
    if (s == "printed") return ZeroMode::printed;
    if (s == "orthonormal") return ZeroMode::orthonormal;
    throw DomainError("unknown zero_mode '" + s + "'");
}

IntegratorConfig make_integrator(const ScenarioConfig& c) {
    IntegratorConfig ic;
    ic.rel_tol = c.numerics.rel_tol;
    ic.abs_tol = c.numerics.abs_tol;
    ic.scheme = c.numerics.scheme;
    ic.validate();
    return ic;
}

// ------------------------------------------------------------------ output

// Shortest text that reads back to the same double.
std::string num(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string label(const ModeIndex& m) {
    return to_string(m.pol) + "_" + std::to_string(m.t1) + "_" + std::to_string(m.t2) + "_" + std::to_string(m.nz);
}

json mode_json(const ModeIndex& m) {
    return {{"pol", to_string(m.pol)}, {"t1", m.t1}, {"t2", m.t2}, {"nz", m.nz}};
}

// Non-finite numbers are not valid JSON; they are stored as strings.
json number(double v) {
    if (std::isfinite(v)) return v;
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

RunRecord finish(const ScenarioConfig& cfg, const std::string& task, json outputs, std::string summary,
                 std::vector<CsvFile> files, std::chrono::steady_clock::time_point start) {
    json doc;
    doc["task"] = task;
    doc["library_version"] = library_version;
    doc["config"] = echo_config(cfg);
    doc["timing_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    doc["outputs"] = std::move(outputs);
    json listing = json::array();
    for (const auto& f : files) listing.push_back(f.name);
    doc["files"] = listing;
    return {task, doc.dump(2) + "\n", std::move(summary), std::move(files)};
}

std::string sh(double v) { return num(v); }

std::vector<std::string> shv(const std::vector<double>& v) {
    std::vector<std::string> out;
    for (double x : v) out.push_back(sh(x));
    return out;
}

double drive_frequency(const ScenarioConfig& c) {
    if (c.drive.Omega) return *c.drive.Omega;
    if (c.drive.q) return *c.drive.q * pi / c.geometry.L0;
    if (c.drive.resonance) return 2 * eigenfrequency(make_geometry(c), make_mode(c), c.geometry.L0);
    throw DomainError("drive needs one of Omega, resonance or q");
}

} // namespace

ScenarioConfig parse_config(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw DomainError(std::string("config is not valid YAML: ") + e.what());
    }
    ScenarioConfig c = from_yaml(root);
    validate(c);
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot read config '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string echo_config(const ScenarioConfig& c) {
    YAML::Emitter out;
    out << YAML::BeginMap;
    out << YAML::Key << "schema" << YAML::Value << c.schema;
    if (!c.task.empty()) out << YAML::Key << "task" << YAML::Value << c.task;
    const auto& g = c.geometry;
    out << YAML::Key << "geometry" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "section" << YAML::Value << g.section;
    out << YAML::Key << "Lx" << YAML::Value << sh(g.Lx) << YAML::Key << "Ly" << YAML::Value << sh(g.Ly);
    out << YAML::Key << "R" << YAML::Value << sh(g.R);
    out << YAML::Key << "a" << YAML::Value << sh(g.a) << YAML::Key << "b" << YAML::Value << sh(g.b);
    out << YAML::Key << "L0" << YAML::Value << sh(g.L0) << YAML::EndMap;
    out << YAML::Key << "mode" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "pol" << YAML::Value << c.mode.pol << YAML::Key << "t1" << YAML::Value << c.mode.t1;
    out << YAML::Key << "t2" << YAML::Value << c.mode.t2 << YAML::Key << "nz" << YAML::Value << c.mode.nz
        << YAML::EndMap;
    const auto& d = c.drive;
    out << YAML::Key << "drive" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "eps" << YAML::Value << sh(d.eps);
    if (d.Omega) out << YAML::Key << "Omega" << YAML::Value << sh(*d.Omega);
    out << YAML::Key << "resonance" << YAML::Value << d.resonance;
    if (d.q) out << YAML::Key << "q" << YAML::Value << *d.q;
    if (d.gamma) out << YAML::Key << "gamma" << YAML::Value << sh(*d.gamma);
    if (d.T) out << YAML::Key << "T" << YAML::Value << sh(*d.T);
    if (d.periods) out << YAML::Key << "periods" << YAML::Value << sh(*d.periods);
    out << YAML::EndMap;
    const auto& n = c.numerics;
    out << YAML::Key << "numerics" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "N_z" << YAML::Value << n.N_z << YAML::Key << "rel_tol" << YAML::Value << sh(n.rel_tol);
    out << YAML::Key << "abs_tol" << YAML::Value << sh(n.abs_tol) << YAML::Key << "scheme" << YAML::Value << n.scheme;
    out << YAML::Key << "samples" << YAML::Value << n.samples << YAML::Key << "gauge" << YAML::Value << n.gauge;
    out << YAML::Key << "zero_mode" << YAML::Value << n.zero_mode;
    out << YAML::Key << "floquet" << YAML::Value << n.floquet << YAML::EndMap;
    out << YAML::Key << "spectrum" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "pol" << YAML::Value << c.spectrum.pol;
    out << YAML::Key << "omega_max" << YAML::Value << sh(c.spectrum.omega_max);
    out << YAML::Key << "tol" << YAML::Value << sh(c.spectrum.tol) << YAML::EndMap;
    const auto& t = c.tem;
    out << YAML::Key << "tem" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "profile_times" << YAML::Value << YAML::Flow << shv(t.profile_times);
    out << YAML::Key << "profile_points" << YAML::Value << t.profile_points;
    out << YAML::Key << "midpoint_t0" << YAML::Value << sh(t.midpoint_t0);
    out << YAML::Key << "midpoint_t1" << YAML::Value << sh(t.midpoint_t1);
    out << YAML::Key << "midpoint_samples" << YAML::Value << t.midpoint_samples;
    out << YAML::Key << "energy_times" << YAML::Value << YAML::Flow << shv(t.energy_times);
    out << YAML::Key << "N_modes" << YAML::Value << t.N_modes << YAML::EndMap;
    const auto& e = c.estimate;
    out << YAML::Key << "estimate" << YAML::Value << YAML::BeginMap;
    if (e.two_lambda_over_omega) out << YAML::Key << "two_lambda_over_omega" << YAML::Value << sh(*e.two_lambda_over_omega);
    if (e.a) out << YAML::Key << "a" << YAML::Value << sh(*e.a);
    out << YAML::Key << "eps" << YAML::Value << sh(e.eps);
    out << YAML::Key << "Q_factor" << YAML::Value << sh(e.Q_factor) << YAML::EndMap;
    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

void validate(const ScenarioConfig& c) {
    require(c.schema == 1, "unsupported schema");
    require(c.task.empty() || tasks.count(c.task), "unknown task '" + c.task + "'");
    make_geometry(c).validate();
    parse_polarization(c.mode.pol);
    parse_polarization(c.spectrum.pol);
    parse_gauge(c.numerics.gauge);
    parse_zero_mode(c.numerics.zero_mode);
    make_integrator(c);
    require(c.numerics.N_z >= 1, "N_z must be >= 1");
    require(c.numerics.samples >= 2, "samples must be >= 2");
    require(std::isfinite(c.drive.eps) && std::abs(c.drive.eps) < 0.1, "|eps| must be below 0.1");
    int sources = (c.drive.Omega ? 1 : 0) + (c.drive.resonance ? 1 : 0) + (c.drive.q ? 1 : 0);
    require(sources <= 1, "drive takes only one of Omega, resonance, q");
    require(!(c.drive.T && c.drive.periods), "drive takes T or periods, not both");
    if (c.drive.Omega) require(*c.drive.Omega > 0, "Omega must be positive");
    if (c.drive.q) require(*c.drive.q >= 1, "q must be a positive integer");
    if (c.drive.gamma) require(*c.drive.gamma >= 0 && std::isfinite(*c.drive.gamma), "gamma must be finite, >= 0");
    if (c.drive.T) require(*c.drive.T > 0, "T must be positive");
    if (c.drive.periods) require(*c.drive.periods > 0, "periods must be positive");
    require(c.spectrum.omega_max >= 0, "omega_max must be non-negative");
    require(c.spectrum.tol > 0, "tol must be positive");
    require(c.tem.profile_points >= 2 && c.tem.midpoint_samples >= 2, "tem sample counts must be >= 2");
    require(c.tem.midpoint_t1 >= c.tem.midpoint_t0 && c.tem.midpoint_t0 >= 0, "bad midpoint window");
    for (double t : c.tem.profile_times) require(t >= 0, "profile times must be non-negative");
    for (double t : c.tem.energy_times) require(t >= 0, "energy times must be non-negative");
    require(c.tem.N_modes >= 0, "N_modes must be >= 0");
    require(c.estimate.eps >= 0 && c.estimate.Q_factor >= 0, "estimate inputs must be non-negative");
    require(!(c.estimate.two_lambda_over_omega && c.estimate.a), "estimate takes two_lambda_over_omega or a");
}

CavityGeometry make_geometry(const ScenarioConfig& c) {
    const auto& g = c.geometry;
    CavityGeometry geom;
    geom.L0 = g.L0;
    if (g.section == "rectangular")
        geom.section = Rectangular{g.Lx, g.Ly};
    else if (g.section == "circular")
        geom.section = Circular{g.R};
    else if (g.section == "coaxial")
        geom.section = Coaxial{g.a, g.b};
    else
        throw DomainError("unknown section '" + g.section + "'");
    geom.validate();
    return geom;
}

ModeIndex make_mode(const ScenarioConfig& c) {
    return {parse_polarization(c.mode.pol), c.mode.t1, c.mode.t2, c.mode.nz};
}

WallTrajectory make_trajectory(const ScenarioConfig& c) {
    double Omega = drive_frequency(c);
    double T;
    if (c.drive.T)
        T = *c.drive.T;
    else if (c.drive.periods)
        T = *c.drive.periods * 2 * pi / Omega;
    else
        throw DomainError("drive needs T or periods");
    return WallTrajectory::make(c.geometry.L0, c.drive.eps, Omega, T, c.drive.gamma.value_or(-1.0));
}

// ------------------------------------------------------------------ commands

RunRecord cmd_spectrum(const ScenarioConfig& cfg) {
    auto start = std::chrono::steady_clock::now();
    auto geom = make_geometry(cfg);
    auto modes = enumerate_modes(geom, parse_polarization(cfg.spectrum.pol), cfg.spectrum.omega_max);
    std::ostringstream csv, sum;
    csv << "pol,t1,t2,nz,omega [1/length]\n";
    json rows = json::array();
    for (const auto& m : modes) {
        csv << to_string(m.mode.pol) << "," << m.mode.t1 << "," << m.mode.t2 << "," << m.mode.nz << "," << num(m.omega)
            << "\n";
        sum << to_string(m.mode) << "  omega = " << num(m.omega) << "\n";
        json r = mode_json(m.mode);
        r["omega"] = m.omega;
        rows.push_back(r);
    }
    sum << modes.size() << " modes with omega <= " << cfg.spectrum.omega_max << "\n";
    return finish(cfg, "spectrum", {{"modes", rows}}, sum.str(), {{"spectrum.csv", csv.str()}}, start);
}

RunRecord cmd_simulate(const ScenarioConfig& cfg) {
    auto start = std::chrono::steady_clock::now();
    FamilySetup s;
    s.geom = make_geometry(cfg);
    s.representative = make_mode(cfg);
    s.N_z = cfg.numerics.N_z;
    s.traj = make_trajectory(cfg);
    s.integrator = make_integrator(cfg);
    s.gauge = parse_gauge(cfg.numerics.gauge);
    s.zero_mode = parse_zero_mode(cfg.numerics.zero_mode);
    s.samples = cfg.numerics.samples;
    require(s.representative.pol != Polarization::TEM || !s.geom.simply_connected(),
            "TEM modes do not exist in hollow cylinders");
    FamilyRun run = run_family(s);

    const int N = static_cast<int>(run.modes.size());
    std::ostringstream series;
    series << "t [length]";
    for (const auto& m : run.modes) series << ",N_" << label(m) << " [1]";
    series << ",N_total [1]\n";
    std::vector<double> total(run.times.size());
    for (std::size_t i = 0; i < run.times.size(); ++i) {
        series << num(run.times[i]);
        for (int k = 0; k < N; ++k) series << "," << num(run.N_series(i, k));
        total[i] = run.N_series.row(i).sum();
        series << "," << num(total[i]) << "\n";
    }
    std::ostringstream photons;
    photons << "mode,omega_out [1/length],N [1]\n";
    json per_mode = json::array();
    for (int k = 0; k < N; ++k) {
        photons << label(run.modes[k]) << "," << num(run.omega_out(k)) << "," << num(run.N(k)) << "\n";
        json r = mode_json(run.modes[k]);
        r["omega_out"] = run.omega_out(k);
        r["N"] = number(run.N(k));
        per_mode.push_back(r);
    }

    ModeSystem sys = make_system(s);
    double eps = s.traj.eps;
    std::optional<GrowthFit> fit;
    try {
        fit = fit_growth_exponent(run.times, total);
    } catch (const NumericalError&) {
        // too few samples with 1 <= N <= 100
    }
    double slow = slow_flow_rate(sys.table(), sys.ksq_perp(), s.geom.L0, s.traj.Omega);
    json out;
    out["Omega"] = s.traj.Omega;
    out["T"] = s.traj.T;
    out["photons"] = per_mode;
    out["N_total"] = number(run.N.sum());
    if (fit)
        out["fit"] = {{"exponent", fit->exponent}, {"exponent_over_eps", eps != 0 ? fit->exponent / eps : 0.0},
                      {"points", fit->points}};
    else
        out["fit"] = nullptr;
    out["slow_flow_exponent"] = 2 * slow * eps;
    out["unitarity_defect"] = number(run.unitarity_defect);
    out["translation_defect"] = number(run.translation_defect);
    std::ostringstream sum;
    sum << "N_total(T) = " << num(run.N.sum()) << "\n";
    if (fit)
        sum << "fitted exponent = " << num(fit->exponent) << " (" << fit->points << " points)\n";
    else
        sum << "fitted exponent: no samples with 1 <= N <= 100\n";
    sum << "slow-flow exponent = " << num(2 * slow * eps) << "\n";
    sum << "unitarity defect = " << num(run.unitarity_defect) << "\n";
    if (cfg.numerics.floquet) {
        double Td = 2 * pi / s.traj.Omega;
        FloquetResult fr = floquet(sys, std::max(0.0, 0.5 * s.traj.T - Td), s.integrator);
        out["floquet"] = {{"exponent", fr.exponent}, {"beat_period", fr.beat_period}};
        sum << "Floquet exponent = " << num(fr.exponent) << ", beat period " << num(fr.beat_period) << "\n";
    }
    return finish(cfg, "simulate", out, sum.str(), {{"n_t.csv", series.str()}, {"photons.csv", photons.str()}},
                  start);
}

RunRecord cmd_tem(const ScenarioConfig& cfg) {
    auto start = std::chrono::steady_clock::now();
    auto geom = make_geometry(cfg);
    double prefactor = tem_prefactor(geom);
    WallTrajectory traj = make_trajectory(cfg);
    MooreFunction moore(traj);
    const double L0 = geom.L0;
    std::vector<CsvFile> files;
    json out;
    out["Omega"] = traj.Omega;
    out["prefactor"] = prefactor;
    std::ostringstream sum;
    json profiles = json::array();
    for (double t : cfg.tem.profile_times) {
        EnergyProfile p = energy_profile(moore, t, cfg.tem.profile_points);
        std::ostringstream csv;
        csv << "z [length],T00 [1/length^2]\n";
        for (std::size_t i = 0; i < p.z.size(); ++i) csv << num(p.z[i]) << "," << num(p.T00[i]) << "\n";
        auto peaks = find_peaks(p.T00, 10 * pi / (24 * L0 * L0));
        std::ostringstream name;
        name << "profile_t" << t << ".csv";
        files.push_back({name.str(), csv.str()});
        profiles.push_back({{"t", t}, {"file", name.str()}, {"peaks", peaks.size()}});
        sum << "t = " << t << ": " << peaks.size() << " peaks\n";
    }
    out["profiles"] = profiles;
    {
        std::ostringstream csv;
        csv << "t [length],T00 [1/length^2]\n";
        const auto& w = cfg.tem;
        for (int i = 0; i < w.midpoint_samples; ++i) {
            double t = w.midpoint_t0 + (w.midpoint_t1 - w.midpoint_t0) * i / (w.midpoint_samples - 1);
            csv << num(t) << "," << num(energy_density(moore, 0.5 * length(traj, t), t)) << "\n";
        }
        files.push_back({"midpoint.csv", csv.str()});
    }
    if (!cfg.tem.energy_times.empty()) {
        std::ostringstream csv;
        csv << "t [length],E [1/length],peak_T00 [1/length^2]\n";
        for (double t : cfg.tem.energy_times)
            csv << num(t) << "," << num(total_energy(moore, t)) << "," << num(peak_height(moore, t)) << "\n";
        files.push_back({"energy.csv", csv.str()});
    }
    if (cfg.tem.N_modes > 0) {
        require(cfg.drive.q.has_value(), "mode sum needs drive.q");
        TemModeReport r = tem_mode_photons(traj, *cfg.drive.q, cfg.tem.N_modes, make_integrator(cfg));
        std::ostringstream csv;
        csv << "n,N [1]\n";
        for (std::size_t i = 0; i < r.n.size(); ++i) csv << r.n[i] << "," << num(r.N(i)) << "\n";
        files.push_back({"tem_modes.csv", csv.str()});
        out["mode_energy"] = r.mode_energy;
        out["moore_energy"] = total_energy(moore, traj.T);
        out["unitarity_defect"] = r.unitarity_defect;
        sum << "mode-sum energy at T = " << num(r.mode_energy) << ", Moore energy = " << num(out["moore_energy"].get<double>())
            << "\n";
    }
    out["deepest_reflection"] = moore.deepest();
    return finish(cfg, "tem", out, sum.str(), std::move(files), start);
}

RunRecord cmd_table1(const ScenarioConfig& cfg) {
    auto start = std::chrono::steady_clock::now();
    auto rows = table1(cfg.numerics.N_z, parse_zero_mode(cfg.numerics.zero_mode));
    std::ostringstream csv, sum;
    csv << "cavity,mode,two_lambda_over_omega [1],printed [1]\n";
    json arr = json::array();
    for (const auto& r : rows) {
        csv << r.cavity << "," << label(r.mode) << "," << num(r.two_lambda_over_omega) << "," << num(r.printed) << "\n";
        sum << std::left << std::setw(12) << r.cavity << std::setw(14) << to_string(r.mode) << std::fixed
            << std::setprecision(4) << r.two_lambda_over_omega << "   (" << r.printed << ")\n";
        sum.unsetf(std::ios::floatfield);
        json j = mode_json(r.mode);
        j["cavity"] = r.cavity;
        j["two_lambda_over_omega"] = r.two_lambda_over_omega;
        j["printed"] = r.printed;
        arr.push_back(j);
    }
    return finish(cfg, "table1", {{"rows", arr}}, sum.str(), {{"table1.csv", csv.str()}}, start);
}

RunRecord cmd_resonances(const ScenarioConfig& cfg) {
    auto start = std::chrono::steady_clock::now();
    auto geom = make_geometry(cfg);
    double Omega = drive_frequency(cfg);
    auto rep = detect_resonances(geom, parse_polarization(cfg.spectrum.pol), Omega, cfg.spectrum.omega_max,
                                 cfg.spectrum.tol);
    std::ostringstream csv, sum;
    csv << "kind,mode_a,omega_a [1/length],mode_b,omega_b [1/length]\n";
    json par = json::array(), cpl = json::array();
    for (const auto& m : rep.parametric) {
        csv << "parametric," << label(m.mode) << "," << num(m.omega) << ",,\n";
        sum << "parametric: " << to_string(m.mode) << "\n";
        par.push_back(mode_json(m.mode));
    }
    for (const auto& [x, y] : rep.couplings) {
        csv << "coupling," << label(x.mode) << "," << num(x.omega) << "," << label(y.mode) << "," << num(y.omega)
            << "\n";
        sum << "coupling: " << to_string(x.mode) << " <-> " << to_string(y.mode) << "\n";
        cpl.push_back({mode_json(x.mode), mode_json(y.mode)});
    }
    return finish(cfg, "resonances", {{"Omega", Omega}, {"parametric", par}, {"couplings", cpl}}, sum.str(),
                  {{"resonances.csv", csv.str()}}, start);
}

RunRecord cmd_estimate(const ScenarioConfig& cfg) {
    auto start = std::chrono::steady_clock::now();
    const auto& e = cfg.estimate;
    require(e.two_lambda_over_omega || e.a, "estimate needs two_lambda_over_omega or a");
    Estimate est = e.a ? max_photons_semiconductor(*e.a, e.eps, e.Q_factor)
                       : max_photons(*e.two_lambda_over_omega, e.eps, e.Q_factor);
    double log10N = est.log_value / std::log(10.0);
    std::ostringstream sum, csv;
    sum << "N_max = " << num(est.value) << "  (log10 N = " << num(log10N) << ")\n";
    csv << "ln_N [1],log10_N [1]\n" << num(est.log_value) << "," << num(log10N) << "\n";
    return finish(cfg, "estimate", {{"N", number(est.value)}, {"ln_N", est.log_value}, {"log10_N", log10N}},
                  sum.str(), {{"estimate.csv", csv.str()}}, start);
}

RunRecord run_task(const ScenarioConfig& cfg) {
    if (cfg.task == "spectrum") return cmd_spectrum(cfg);
    if (cfg.task == "simulate") return cmd_simulate(cfg);
    if (cfg.task == "tem") return cmd_tem(cfg);
    if (cfg.task == "table1") return cmd_table1(cfg);
    if (cfg.task == "resonances") return cmd_resonances(cfg);
    if (cfg.task == "estimate") return cmd_estimate(cfg);
    throw DomainError("unknown task '" + cfg.task + "'");
}

void write_run(const RunRecord& rec, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    auto put = [&](const std::string& name, const std::string& text) {
        std::ofstream f(fs::path(dir) / name, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + (fs::path(dir) / name).string());
        f << text;
    };
    put("record.json", rec.json);
    for (const auto& f : rec.files) put(f.name, f.text);
}

} // namespace dce
