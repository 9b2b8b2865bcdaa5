#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "qcharmlab/errors.hpp"
#include "qcharmlab/scenario.hpp"

using namespace qcharmlab;

TEST_CASE("bundled scenarios validate cleanly") {
    auto names = list_scenarios();
    CHECK(names.size() >= 4);
    for (const auto& name : names) {
        CHECK(validate_scenario(bundled_scenario(name)).empty());
    }
}

TEST_CASE("schema diagnostics") {
    Json config = bundled_scenario("unit_disk_identity");
    config["N"] = 10;
    auto diags = validate_scenario(config);
    bool found = false;
    for (const auto& d : diags) {
        if (d.find("N below minimum 64") != std::string::npos) found = true;
    }
    CHECK(found);

    Json bad_name = bundled_scenario("unit_disk_identity");
    bad_name["name"] = "has spaces/and slashes";
    CHECK(!validate_scenario(bad_name).empty());

    Json no_version = bundled_scenario("unit_disk_identity");
    no_version.erase("schema_version");
    CHECK(!validate_scenario(no_version).empty());

    CHECK_THROWS_AS(Scenario::parse(bad_name), Error);
}

TEST_CASE("toml front-end maps onto the same schema") {
    const char* toml = R"(
# comment
schema_version = 1
name = "toml_case"
N = 256
seed = 12
B = 0.0
n_pairs = 10000

[curve]
family = "circle"
n_points = 64
kind = "trig_poly"

[boundary.phase]
kind = "uniform"
offset = 0.5

[grids]
qc = [32, 256]
barrier = [8, 64]
interior = [8, 64]
)";
    const std::string path = "/tmp/qcharmlab_test_config.toml";
    { std::ofstream(path) << toml; }
    Json config = load_config(path);
    std::filesystem::remove(path);

    CHECK(validate_scenario(config).empty());
    Scenario s = Scenario::parse(config);
    CHECK(s.name == "toml_case");
    CHECK(s.n_boundary == 256);
    CHECK(s.qc_grid.n_radial == 32);
    CHECK(s.boundary_spec["phase"]["offset"].get<double>() == 0.5);
}

TEST_CASE("fast identity pipeline run") {
    Json config = bundled_scenario("unit_disk_identity");
    config["name"] = "identity_small";
    config["grids"] = {{"qc", {32, 256}}, {"barrier", {8, 64}},
                       {"interior", {8, 64}}};
    config["n_pairs"] = 10000;

    const std::string out = "/tmp/qcharmlab_test_run";
    std::filesystem::remove_all(out);
    auto report = run_scenario(Scenario::parse(config), out);

    CHECK(report.errors.empty());
    CHECK(report.all_passed);
    CHECK(std::filesystem::exists(out + "/report.json"));
    CHECK(std::filesystem::exists(out + "/audit.csv"));
    CHECK(std::filesystem::exists(out + "/field.csv"));
    CHECK(std::filesystem::exists(out + "/plots/circles.svg"));
    CHECK(std::filesystem::exists(out + "/plots/audit.svg"));
    CHECK(std::filesystem::exists(out + "/timings.txt"));

    const Json& doc = report.document;
    CHECK(doc["checks"]["chain"].get<bool>());
    CHECK(std::fabs(doc["hopf"]["rho"].get<double>() - 0.5) < 1e-6);
    std::filesystem::remove_all(out);
}

TEST_CASE("orientation-reversing input fails with a structured error") {
    Json config = bundled_scenario("affine_reject_k2");
    config["grids"] = {{"qc", {32, 256}}, {"barrier", {8, 64}},
                       {"interior", {8, 64}}};
    config["n_pairs"] = 10000;

    const std::string out = "/tmp/qcharmlab_test_reject";
    std::filesystem::remove_all(out);
    auto report = run_scenario(Scenario::parse(config), out);
    std::filesystem::remove_all(out);

    CHECK(!report.all_passed);
    bool orientation = false;
    for (const auto& e : report.errors) {
        if (e.code == "OrientationFailure") orientation = true;
    }
    CHECK(orientation);
    // Partial results survive the failed stage: the boundary certificate is
    // still in the report with the witness Jacobian.
    CHECK(std::fabs(report.document["certificate"]["min_jacobian"].get<double>() +
                    3.0) < 1e-9);
}
