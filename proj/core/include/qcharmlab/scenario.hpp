// Configuration-driven pipeline runner: build curve, extend boundary data,
// certify, profile dilatation, audit the barrier, assemble the Hopf and
// co-Lipschitz bounds, sample empirical constants, and emit artifacts.

#ifndef QCHARMLAB_SCENARIO_HPP
#define QCHARMLAB_SCENARIO_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcharmlab/barrier.hpp"
#include "qcharmlab/lipschitz.hpp"
#include "qcharmlab/qc.hpp"

namespace qcharmlab {

using Json = nlohmann::json;

struct Scenario {
    std::string name;
    Json curve_spec;
    Json boundary_spec;
    int n_boundary{1024};
    GridSpec qc_grid{64, 1024};
    GridSpec barrier_grid{64, 1024};
    GridSpec interior_grid{64, 512};
    int n_pairs{100000};
    double B{0};
    std::uint64_t seed{1};
    std::vector<std::string> outputs{"report", "audit_csv", "field_csv", "svg"};

    // Parses and validates; throws ConfigError on any diagnostic.
    static Scenario parse(const Json& config);
};

// Schema diagnostics without running; empty means valid.
std::vector<std::string> validate_scenario(const Json& config);

// Bundled fixtures, by name.
std::vector<std::string> list_scenarios();
Json bundled_scenario(const std::string& name);

// Loads a config file: JSON, or a flat TOML front-end mapped onto the same
// schema (chosen by file extension .toml).
Json load_config(const std::string& path);

struct StageError {
    std::string stage;
    std::string code;
    std::string message;
};

struct RunReport {
    Json document;       // full report, serialized as report.json
    bool all_passed{false};
    std::vector<StageError> errors;
};

// Executes the pipeline, short-circuiting on structured stage errors, and
// writes report.json plus requested artifacts under out_dir. Wall-clock
// numbers go to timings.txt so report.json stays byte-stable across runs.
RunReport run_scenario(const Scenario& scenario, const std::string& out_dir);

}  // namespace qcharmlab

#endif
