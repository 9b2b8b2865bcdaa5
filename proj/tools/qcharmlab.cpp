// Command-line front end: run a scenario config, list bundled scenarios,
// or validate a config without running it.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qcharmlab/errors.hpp"
#include "qcharmlab/scenario.hpp"

namespace {

using qcharmlab::Json;

Json resolve_config(const std::string& source) {
    for (const auto& name : qcharmlab::list_scenarios()) {
        if (name == source) return qcharmlab::bundled_scenario(name);
    }
    return qcharmlab::load_config(source);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qcharmlab: harmonic-map bi-Lipschitz laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string grid_override;

    auto* run = app.add_subcommand("run", "run a scenario and write artifacts");
    run->add_option("config", config_path,
                    "config file (.json or .toml) or bundled scenario name")
        ->required();
    run->add_option("--out", out_dir, "output directory (default: out/<name>)");
    run->add_option("--seed", seed, "override the scenario RNG seed")
        ->each([&](const std::string&) { seed_set = true; });
    run->add_option("--K-grid", grid_override,
                    "override the dilatation grid, e.g. 128x2048");

    auto* list = app.add_subcommand("list", "list bundled scenarios");

    auto* validate =
        app.add_subcommand("validate", "check a config and print diagnostics");
    validate->add_option("config", config_path, "config file or bundled name")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            for (const auto& name : qcharmlab::list_scenarios()) {
                std::cout << name << '\n';
            }
            return 0;
        }
        if (validate->parsed()) {
            Json config = resolve_config(config_path);
            auto diags = qcharmlab::validate_scenario(config);
            if (diags.empty()) {
                std::cout << "ok: " << config.value("name", std::string{"?"})
                          << '\n';
                return 0;
            }
            for (const auto& d : diags) std::cout << "error: " << d << '\n';
            return 1;
        }

        Json config = resolve_config(config_path);
        if (seed_set) config["seed"] = seed;
        if (!grid_override.empty()) {
            int nr = 0, na = 0;
            if (std::sscanf(grid_override.c_str(), "%dx%d", &nr, &na) != 2) {
                std::cerr << "error: --K-grid expects RxA, e.g. 128x2048\n";
                return 2;
            }
            config["grids"]["qc"] = {nr, na};
        }
        qcharmlab::Scenario scenario = qcharmlab::Scenario::parse(config);
        if (out_dir.empty()) out_dir = "out/" + scenario.name;

        qcharmlab::RunReport report = qcharmlab::run_scenario(scenario, out_dir);
        for (const auto& e : report.errors) {
            std::cout << "stage " << e.stage << " failed [" << e.code << "]: "
                      << e.message << '\n';
        }
        std::cout << scenario.name << ": "
                  << (report.all_passed ? "all checks passed" : "FAILED")
                  << " (artifacts in " << out_dir << ")\n";
        return report.all_passed ? 0 : 1;
    } catch (const qcharmlab::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
