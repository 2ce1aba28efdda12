#include "dce/checks.hpp"
#include "dce/errors.hpp"
#include "dce/scenario.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace dce;

namespace {

int seed_check() {
    int failed = 0;
    for (const auto& r : run_seed_checks()) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
        failed += !r.passed;
    }
    return failed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Photon creation in cavities with an oscillating end wall"};
    app.set_version_flag("--version", std::string(library_version));
    std::string config_path, out_dir;
    bool seed = false;
    app.add_option("--config", config_path, "YAML scenario file (schema: 1)");
    app.add_option("--out", out_dir, "output directory (record.json + CSV)");
    app.add_flag("--seed-check", seed, "run the invariant suite");

    double est_ratio = 0, est_a = 0, est_eps = 0, est_Q = 0;
    const char* names[] = {"spectrum", "simulate", "tem", "table1", "resonances", "estimate"};
    for (const char* n : names) app.add_subcommand(n)->fallthrough();
    auto* est = app.get_subcommand("estimate");
    auto* o_ratio = est->add_option("--ratio", est_ratio, "2 lambda / omega");
    auto* o_a = est->add_option("--a", est_a, "semiconductor coefficient a");
    auto* o_eps = est->add_option("--eps", est_eps, "relative amplitude");
    auto* o_Q = est->add_option("--Q", est_Q, "quality factor");
    app.require_subcommand(0, 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    int failed_checks = seed ? seed_check() : 0;
    if (app.get_subcommands().empty()) {
        if (!seed) {
            std::cerr << app.help();
            return 2;
        }
        return failed_checks ? 1 : 0;
    }
    std::string task = app.get_subcommands().front()->get_name();

    try {
        ScenarioConfig cfg;
        if (!config_path.empty()) cfg = load_config(config_path);
        if (!cfg.task.empty() && cfg.task != task)
            throw DomainError("config task '" + cfg.task + "' does not match subcommand '" + task + "'");
        cfg.task = task;
        if (o_ratio->count()) cfg.estimate.two_lambda_over_omega = est_ratio;
        if (o_a->count()) cfg.estimate.a = est_a;
        if (o_eps->count()) cfg.estimate.eps = est_eps;
        if (o_Q->count()) cfg.estimate.Q_factor = est_Q;
        if (config_path.empty() && task != "table1" && task != "estimate")
            throw DomainError(task + " needs --config");
        validate(cfg);
        RunRecord rec = run_task(cfg);
        std::cout << rec.summary;
        if (!out_dir.empty()) write_run(rec, out_dir);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return failed_checks ? 1 : 0;
}
