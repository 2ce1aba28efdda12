#pragma once

#include "dce/analysis.hpp"
#include "dce/spectrum.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dce {

inline constexpr const char* library_version = "1.0.0";

// One run, as read from a YAML file with `schema: 1`. Lengths and times share
// one unit (c = 1); frequencies are in its inverse.
struct ScenarioConfig {
    int schema = 1;
    std::string task; // spectrum, simulate, tem, table1, resonances, estimate

    struct Geometry {
        std::string section = "rectangular"; // rectangular, circular, coaxial
        double Lx = 1.0, Ly = 1.0; // rectangular
        double R = 1.0;             // circular
        double a = 0.5, b = 1.0;    // coaxial
        double L0 = 1.0;
        bool operator==(const Geometry&) const = default;
    } geometry;

    struct Mode {
        std::string pol = "TE";
        int t1 = 1, t2 = 0, nz = 1;
        bool operator==(const Mode&) const = default;
    } mode;

    struct Drive {
        double eps = 1e-3;
        std::optional<double> Omega;   // explicit drive frequency
        bool resonance = false;        // Omega = 2 omega(mode)
        std::optional<int> q;          // tem: Omega = q pi / L0
        std::optional<double> gamma;   // ramp rate, defaults to Omega
        std::optional<double> T;       // drive duration
        std::optional<double> periods; // or a number of drive periods
        bool operator==(const Drive&) const = default;
    } drive;

    struct Numerics {
        int N_z = 12;
        double rel_tol = 1e-9, abs_tol = 1e-12;
        std::string scheme = "dopri5";
        int samples = 400;
        std::string gauge = "primary";
        std::string zero_mode = "printed";
        bool floquet = false; // also report the Floquet exponent
        bool operator==(const Numerics&) const = default;
    } numerics;

    struct Spectrum {
        std::string pol = "TE";
        double omega_max = 10.0;
        double tol = 1e-6; // relative resonance tolerance
        bool operator==(const Spectrum&) const = default;
    } spectrum;

    struct Tem {
        std::vector<double> profile_times{20.4};
        int profile_points = 4001;
        double midpoint_t0 = 0.0, midpoint_t1 = 20.0;
        int midpoint_samples = 2001;
        std::vector<double> energy_times;
        int N_modes = 0; // > 0 adds the mode-sum photon numbers
        bool operator==(const Tem&) const = default;
    } tem;

    struct EstimateBlock {
        std::optional<double> two_lambda_over_omega;
        std::optional<double> a; // semiconductor form
        double eps = 1e-4;
        double Q_factor = 1e6;
        bool operator==(const EstimateBlock&) const = default;
    } estimate;

    bool operator==(const ScenarioConfig&) const = default;
};

// Parse and validate; DomainError on malformed input or unknown keys.
ScenarioConfig parse_config(const std::string& yaml_text);
ScenarioConfig load_config(const std::string& path);
std::string echo_config(const ScenarioConfig& cfg);

// Checks every field against the module preconditions.
void validate(const ScenarioConfig& cfg);

CavityGeometry make_geometry(const ScenarioConfig& cfg);
ModeIndex make_mode(const ScenarioConfig& cfg);
WallTrajectory make_trajectory(const ScenarioConfig& cfg);

struct CsvFile {
    std::string name;
    std::string text;
};

struct RunRecord {
    std::string task;
    std::string json;    // record.json
    std::string summary; // human-readable lines for stdout
    std::vector<CsvFile> files;
};

RunRecord cmd_spectrum(const ScenarioConfig& cfg);
RunRecord cmd_simulate(const ScenarioConfig& cfg);
RunRecord cmd_tem(const ScenarioConfig& cfg);
RunRecord cmd_table1(const ScenarioConfig& cfg);
RunRecord cmd_resonances(const ScenarioConfig& cfg);
RunRecord cmd_estimate(const ScenarioConfig& cfg);

RunRecord run_task(const ScenarioConfig& cfg);

// Writes record.json and the CSV files into `dir`, creating it if needed.
void write_run(const RunRecord& rec, const std::string& dir);

} // namespace dce
