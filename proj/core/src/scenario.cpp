#include "qcharmlab/scenario.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "qcharmlab/errors.hpp"
#include "qcharmlab/svg.hpp"

namespace qcharmlab {

namespace {

bool filesystem_safe(const std::string& name) {
    if (name.empty()) return false;
    for (char c : name) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) {
            return false;
        }
    }
    return true;
}

std::vector<Complex> family_points(const Json& spec) {
    const std::string family = spec.at("family").get<std::string>();
    const int n = spec.value("n_points", 64);
    std::vector<Complex> pts(n);
    if (family == "circle") {
        const double radius = spec.value("radius", 1.0);
        for (int j = 0; j < n; ++j) pts[j] = std::polar(radius, kTwoPi * j / n);
    } else if (family == "ellipse") {
        const double a = spec.at("a").get<double>();
        const double b = spec.at("b").get<double>();
        for (int j = 0; j < n; ++j) {
            double t = kTwoPi * j / n;
            pts[j] = Complex(a * std::cos(t), b * std::sin(t));
        }
    } else if (family == "perturbed_circle") {
        const double eps = spec.value("epsilon", 0.08);
        const int mode = spec.value("mode", 3);
        for (int j = 0; j < n; ++j) {
            double t = kTwoPi * j / n;
            pts[j] = std::polar(1.0 + eps * std::cos(mode * t), t);
        }
    } else {
        throw Error(ErrorCode::ConfigError, "unknown curve family " + family);
    }
    return pts;
}

JordanCurve build_curve_from_spec(const Json& spec) {
    CurveKind kind = CurveKind::TrigPoly;
    if (spec.contains("kind")) {
        const std::string k = spec.at("kind").get<std::string>();
        if (k == "periodic_spline") kind = CurveKind::PeriodicSpline;
        else if (k != "trig_poly")
            throw Error(ErrorCode::ConfigError, "unknown curve kind " + k);
    }
    if (spec.contains("file")) {
        return load_curve_file(spec.at("file").get<std::string>());
    }
    std::vector<Complex> pts;
    if (spec.contains("points")) {
        for (const auto& xy : spec.at("points")) {
            pts.emplace_back(xy.at(0).get<double>(), xy.at(1).get<double>());
        }
    } else {
        pts = family_points(spec);
    }
    return JordanCurve::build(pts, kind);
}

// Boundary samples F(e^{i theta_j}). The "affine" kind bypasses the
// correspondence machinery and supplies raw samples of z + k conj(z); this
// is how deliberately broken (orientation-reversing) inputs enter the
// pipeline instead of being rejected at construction.
std::vector<Complex> boundary_samples_from_spec(const Json& spec,
                                                const JordanCurve& curve, int n) {
    const Json& phase = spec.contains("phase") ? spec.at("phase") : spec;
    const std::string kind = phase.value("kind", "uniform");
    if (kind == "affine") {
        const double k = phase.at("k").get<double>();
        std::vector<Complex> samples(n);
        for (int j = 0; j < n; ++j) {
            Complex t = std::polar(1.0, kTwoPi * j / n);
            samples[j] = t + k * std::conj(t);
        }
        return samples;
    }
    PhaseMap pm;
    if (kind == "uniform") {
        pm = PhaseMap::uniform(phase.value("offset", 0.0));
    } else if (kind == "param_uniform") {
        pm = PhaseMap::param_uniform();
    } else if (kind == "perturbed_uniform") {
        pm = PhaseMap::perturbed_uniform(phase.value("amplitude", 0.0),
                                         phase.value("mode", 1),
                                         phase.value("phase", 0.0));
    } else if (kind == "tabulated") {
        pm = PhaseMap::tabulated(phase.at("values").get<std::vector<double>>());
    } else {
        throw Error(ErrorCode::ConfigError, "unknown phase kind " + kind);
    }
    return BoundaryCorrespondence::make(curve, pm, n).samples;
}

GridSpec grid_from(const Json& grids, const std::string& key, GridSpec fallback) {
    if (!grids.contains(key)) return fallback;
    const auto& g = grids.at(key);
    return {g.at(0).get<int>(), g.at(1).get<int>()};
}

}  // namespace

std::vector<std::string> validate_scenario(const Json& config) {
    std::vector<std::string> diags;
    if (config.value("schema_version", 0) != 1) {
        diags.push_back("schema_version must be 1");
    }
    if (!config.contains("name") ||
        !filesystem_safe(config.at("name").get<std::string>())) {
        diags.push_back("name missing or not filesystem-safe");
    }
    if (!config.contains("curve")) diags.push_back("curve spec missing");
    const int n = config.value("N", 1024);
    if (n < 64) diags.push_back("N below minimum 64");
    if (!std::has_single_bit(static_cast<unsigned>(std::max(1, n)))) {
        diags.push_back("N must be a power of two");
    }
    if (config.contains("grids")) {
        const auto& grids = config.at("grids");
        GridSpec qc = grid_from(grids, "qc", {64, 1024});
        if (qc.n_radial < 32 || qc.n_angular < 256) {
            diags.push_back("qc grid below minimum 32x256");
        }
        GridSpec barrier = grid_from(grids, "barrier", {64, 1024});
        if (barrier.n_radial < 8 || barrier.n_angular < 64) {
            diags.push_back("barrier grid below minimum 8x64");
        }
    }
    if (config.value("n_pairs", 100000) < 10000) {
        diags.push_back("n_pairs below minimum 10000");
    }
    if (config.value("B", 0.0) < 0) diags.push_back("B must be >= 0");
    return diags;
}

Scenario Scenario::parse(const Json& config) {
    auto diags = validate_scenario(config);
    if (!diags.empty()) {
        std::string joined;
        for (const auto& d : diags) joined += d + "; ";
        throw Error(ErrorCode::ConfigError, joined);
    }
    Scenario s;
    s.name = config.at("name").get<std::string>();
    s.curve_spec = config.at("curve");
    s.boundary_spec = config.value("boundary", Json::object());
    s.n_boundary = config.value("N", 1024);
    if (config.contains("grids")) {
        const auto& grids = config.at("grids");
        s.qc_grid = grid_from(grids, "qc", s.qc_grid);
        s.barrier_grid = grid_from(grids, "barrier", s.barrier_grid);
        s.interior_grid = grid_from(grids, "interior", s.interior_grid);
    }
    s.n_pairs = config.value("n_pairs", 100000);
    s.B = config.value("B", 0.0);
    s.seed = config.value("seed", std::uint64_t{1});
    if (config.contains("outputs")) {
        s.outputs = config.at("outputs").get<std::vector<std::string>>();
    }
    return s;
}

std::vector<std::string> list_scenarios() {
    return {"unit_disk_identity", "rotation", "affine_ellipse_k13",
            "perturbed_smooth", "affine_reject_k2"};
}

Json bundled_scenario(const std::string& name) {
    Json base = {
        {"schema_version", 1},
        {"name", name},
        {"N", 1024},
        {"B", 0.0},
        {"n_pairs", 100000},
        {"grids", {{"qc", {64, 1024}}, {"barrier", {64, 1024}},
                   {"interior", {64, 512}}}},
        {"outputs", {"report", "audit_csv", "field_csv", "svg"}},
    };
    if (name == "unit_disk_identity") {
        base["curve"] = {{"family", "circle"}, {"n_points", 64}, {"kind", "trig_poly"}};
        base["boundary"] = {{"phase", {{"kind", "uniform"}}}};
        base["seed"] = 7;
    } else if (name == "rotation") {
        base["curve"] = {{"family", "circle"}, {"n_points", 64}, {"kind", "trig_poly"}};
        base["boundary"] = {{"phase", {{"kind", "uniform"},
                                       {"offset", std::numbers::pi / 7.0}}}};
        base["seed"] = 8;
    } else if (name == "affine_ellipse_k13") {
        base["curve"] = {{"family", "ellipse"}, {"a", 4.0 / 3.0}, {"b", 2.0 / 3.0},
                         {"n_points", 64}, {"kind", "trig_poly"}};
        base["boundary"] = {{"phase", {{"kind", "affine"}, {"k", 1.0 / 3.0}}}};
        base["seed"] = 9;
    } else if (name == "perturbed_smooth") {
        base["curve"] = {{"family", "perturbed_circle"}, {"epsilon", 0.08},
                         {"mode", 3}, {"n_points", 64}, {"kind", "trig_poly"}};
        base["boundary"] = {{"phase", {{"kind", "perturbed_uniform"},
                                       {"amplitude", 0.03}, {"mode", 2}}}};
        base["seed"] = 10;
    } else if (name == "affine_reject_k2") {
        base["curve"] = {{"family", "ellipse"}, {"a", 3.0}, {"b", 1.0},
                         {"n_points", 64}, {"kind", "trig_poly"}};
        base["boundary"] = {{"phase", {{"kind", "affine"}, {"k", 2.0}}}};
        base["seed"] = 11;
    } else {
        throw Error(ErrorCode::ConfigError, "no bundled scenario named " + name);
    }
    return base;
}

namespace {

// Minimal flat-TOML front end: [dotted.sections], key = value with strings,
// numbers, booleans, and one-line arrays. Enough to mirror the JSON schema.
Json parse_toml_value(const std::string& raw);

Json parse_toml_scalar(std::string v) {
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"') {
        return v.substr(1, v.size() - 2);
    }
    if (v == "true") return true;
    if (v == "false") return false;
    try {
        std::size_t used = 0;
        if (v.find_first_of(".eE") == std::string::npos) {
            long long i = std::stoll(v, &used);
            if (used == v.size()) return i;
        }
        double d = std::stod(v, &used);
        if (used == v.size()) return d;
    } catch (...) {
    }
    throw Error(ErrorCode::ConfigError, "cannot parse TOML value: " + v);
}

Json parse_toml_value(const std::string& raw) {
    std::string v = raw;
    auto trim = [](std::string& s) {
        s.erase(0, s.find_first_not_of(" \t"));
        s.erase(s.find_last_not_of(" \t") + 1);
    };
    trim(v);
    if (!v.empty() && v.front() == '[') {
        if (v.back() != ']') {
            throw Error(ErrorCode::ConfigError, "unterminated TOML array: " + v);
        }
        Json arr = Json::array();
        std::string body = v.substr(1, v.size() - 2);
        std::string item;
        int depth = 0;
        for (char c : body + ",") {
            if (c == '[') ++depth;
            if (c == ']') --depth;
            if (c == ',' && depth == 0) {
                trim(item);
                if (!item.empty()) arr.push_back(parse_toml_value(item));
                item.clear();
            } else {
                item += c;
            }
        }
        return arr;
    }
    return parse_toml_scalar(v);
}

Json parse_toml(std::istream& in) {
    Json root = Json::object();
    Json* section = &root;
    std::string line;
    while (std::getline(in, line)) {
        std::size_t hash = line.find('#');
        if (hash != std::string::npos &&
            line.find('"', hash) == std::string::npos) {
            line.resize(hash);
        }
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        std::size_t b = line.find_last_not_of(" \t\r");
        line = line.substr(a, b - a + 1);
        if (line.front() == '[') {
            std::string path = line.substr(1, line.size() - 2);
            section = &root;
            std::istringstream parts(path);
            std::string key;
            while (std::getline(parts, key, '.')) {
                section = &(*section)[key];
            }
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorCode::ConfigError, "malformed TOML line: " + line);
        }
        std::string key = line.substr(0, eq);
        key.erase(key.find_last_not_of(" \t") + 1);
        (*section)[key] = parse_toml_value(line.substr(eq + 1));
    }
    return root;
}

}  // namespace

Json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ConfigError, "cannot open config " + path);
    try {
        if (path.size() >= 5 && path.substr(path.size() - 5) == ".toml") {
            return parse_toml(in);
        }
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::ConfigError, e.what());
    }
}

namespace {

Json json_of(const QcProfile& p) {
    return {{"K_global", p.K_global},
            {"k_global", p.k_global},
            {"K_boundary", p.K_boundary},
            {"min_boundary_jacobian", p.min_boundary_jacobian},
            {"grid", {p.grid.n_radial, p.grid.n_angular}},
            {"worst_point", {p.worst_point.real(), p.worst_point.imag()}},
            {"certified", p.certified},
            {"refinement_converged", p.refinement_converged}};
}

Json json_of(const DiffeoCertificate& c) {
    return {{"certified", c.certified},
            {"min_jacobian", c.min_jacobian},
            {"argmin_theta", c.argmin_theta},
            {"n_samples", c.n_samples}};
}

Json json_of(const HopfCertificate& c) {
    return {{"rho", c.rho},
            {"M_rho", c.M_rho},
            {"hopf_constant", c.hopf_constant},
            {"A", c.A},
            {"K", c.K},
            {"kappa0", c.kappa0}};
}

void write_audit_csv(const std::string& path, const BarrierAudit& audit) {
    std::ofstream out(path);
    out.precision(17);
    out << "x,y,chi,grad_chi,grad_w,lap_chi_formula,lap_chi_fd,lap_phi,"
           "sandwich_pass\n";
    for (const AuditRow& r : audit.rows) {
        out << r.z.real() << ',' << r.z.imag() << ',' << r.chi << ','
            << r.grad_chi << ',' << r.grad_w << ',' << r.lap_chi_formula << ','
            << r.lap_chi_fd << ',' << r.lap_phi << ','
            << (r.sandwich_pass ? 1 : 0) << '\n';
    }
}

void write_field_csv(const std::string& path, const DistanceField& field) {
    std::ofstream out(path);
    out.precision(17);
    out << "x,y,d,nu_x,nu_y,kappa_foot\n";
    const auto& pts = field.curve().input_points();
    double min_x = pts[0].real(), max_x = min_x;
    double min_y = pts[0].imag(), max_y = min_y;
    for (Complex p : pts) {
        min_x = std::min(min_x, p.real());
        max_x = std::max(max_x, p.real());
        min_y = std::min(min_y, p.imag());
        max_y = std::max(max_y, p.imag());
    }
    const int n = 96;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Complex z(min_x + (max_x - min_x) * (i + 0.5) / n,
                      min_y + (max_y - min_y) * (j + 0.5) / n);
            try {
                FootResult fr = field.query(z);
                out << z.real() << ',' << z.imag() << ',' << fr.distance << ','
                    << fr.foot.inner_normal.real() << ','
                    << fr.foot.inner_normal.imag() << ',' << fr.foot.curvature
                    << '\n';
            } catch (const Error&) {
                // exterior or ambiguous points are simply omitted
            }
        }
    }
}

void write_map_json(const std::string& path, const HarmonicMap& map) {
    Json coeffs = Json::array();
    for (int k = -map.max_order(); k <= map.max_order(); ++k) {
        Complex c = map.coefficient(k);
        if (c != Complex(0)) coeffs.push_back({k, c.real(), c.imag()});
    }
    std::ofstream out(path);
    out << Json(coeffs).dump(1) << '\n';
}

bool wants(const Scenario& s, const std::string& artifact) {
    return std::find(s.outputs.begin(), s.outputs.end(), artifact) !=
           s.outputs.end();
}

}  // namespace

RunReport run_scenario(const Scenario& scenario, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    RunReport result;
    Json& doc = result.document;
    doc["schema_version"] = 1;
    doc["scenario"] = {{"name", scenario.name},
                       {"curve", scenario.curve_spec},
                       {"boundary", scenario.boundary_spec},
                       {"N", scenario.n_boundary},
                       {"B", scenario.B},
                       {"seed", scenario.seed},
                       {"n_pairs", scenario.n_pairs},
                       {"grids",
                        {{"qc", {scenario.qc_grid.n_radial, scenario.qc_grid.n_angular}},
                         {"barrier",
                          {scenario.barrier_grid.n_radial,
                           scenario.barrier_grid.n_angular}},
                         {"interior",
                          {scenario.interior_grid.n_radial,
                           scenario.interior_grid.n_angular}}}}};

    std::ostringstream timings;
    auto timed = [&](const std::string& stage, auto&& fn) -> bool {
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = true;
        try {
            fn();
        } catch (const Error& e) {
            result.errors.push_back({stage, e.code_name(), e.what()});
            ok = false;
        } catch (const std::exception& e) {
            result.errors.push_back({stage, "Unhandled", e.what()});
            ok = false;
        }
        const auto t1 = std::chrono::steady_clock::now();
        timings << stage << ' '
                << std::chrono::duration<double>(t1 - t0).count() << " s\n";
        return ok;
    };

    std::optional<JordanCurve> curve;
    std::optional<DistanceField> field;
    std::optional<HarmonicMap> map;
    std::optional<DiffeoCertificate> cert;
    std::optional<QcProfile> profile;
    std::optional<BarrierSpec> spec;
    std::optional<BarrierAudit> audit;
    std::optional<HopfCertificate> hopf;
    std::optional<double> bound;
    std::optional<InteriorExtension> interior;
    std::optional<EmpiricalBiLip> empirical;

    bool chain_alive = timed("build_curve", [&] {
        curve.emplace(build_curve_from_spec(scenario.curve_spec));
        field.emplace(*curve);
        doc["curve"] = {{"length", curve->length()},
                        {"kappa0", field->kappa0()},
                        {"reach", field->reach()},
                        {"collar_depth", field->collar_depth()}};
    });

    chain_alive = chain_alive && timed("extend", [&] {
        auto samples = boundary_samples_from_spec(scenario.boundary_spec, *curve,
                                                  scenario.n_boundary);
        map.emplace(HarmonicMap::from_boundary_samples(samples));
        doc["map"] = {{"N", scenario.n_boundary},
                      {"max_order", map->max_order()},
                      {"alias_warning", map->alias_warning()},
                      {"alias_ratio", map->alias_ratio()},
                      {"w0", {map->base_value().real(), map->base_value().imag()}}};
    });

    bool certified_ok = chain_alive && timed("certify", [&] {
        cert.emplace(certify_diffeomorphism(*map, 2048));
        doc["certificate"] = json_of(*cert);
    });
    certified_ok = certified_ok && cert && cert->certified;

    // The dilatation profile still runs for uncertified maps so a failed
    // certification leaves debuggable output behind.
    bool qc_ok = chain_alive && timed("qc_profile", [&] {
        profile.emplace(dilatation_profile(*map, scenario.qc_grid));
        doc["qc_profile"] = json_of(*profile);
    });

    bool pipeline_ok = certified_ok && qc_ok;

    pipeline_ok = pipeline_ok && timed("barrier_audit", [&] {
        spec.emplace(BarrierSpec::make(field->kappa0(), profile->K_global,
                                       scenario.B));
        doc["barrier_spec"] = {{"A", spec->A},
                               {"B", spec->B},
                               {"kappa0", spec->kappa0},
                               {"K", spec->K},
                               {"collar_bound", spec->collar_bound}};
        audit.emplace(audit_subharmonicity(*map, *field, *spec,
                                           scenario.barrier_grid, true));
        int n_within = 0;
        double max_rel = 0;
        for (const AuditRow& r : audit->rows) {
            double rel = std::fabs(r.lap_chi_formula - r.lap_chi_fd) /
                         (1.0 + std::fabs(r.lap_chi_formula));
            max_rel = std::max(max_rel, rel);
            if (rel < 5e-4) ++n_within;
        }
        doc["barrier_audit"] = {
            {"pass", audit->pass},
            {"rows", audit->rows.size()},
            {"min_lap_phi", audit->min_lap_phi},
            {"max_abs_lap_phi", audit->max_abs_lap_phi},
            {"argmin", {audit->argmin.real(), audit->argmin.imag()}},
            {"sandwich_failures", audit->sandwich_failures},
            {"laplacian_fd_within_5e-4",
             static_cast<double>(n_within) / audit->rows.size()},
            {"laplacian_fd_max_rel", max_rel}};
    });

    pipeline_ok = pipeline_ok && timed("hopf", [&] {
        hopf.emplace(hopf_bound(*map, *field, *spec, *audit));
        doc["hopf"] = json_of(*hopf);
    });

    pipeline_ok = pipeline_ok && timed("boundary_colip", [&] {
        bound = boundary_colip(*map, *spec, *hopf);
        doc["bounds"]["boundary_colip"] = *bound;
    });

    pipeline_ok = pipeline_ok && timed("interior_extension", [&] {
        interior.emplace(interior_extension(*map, *bound, spec->K,
                                            scenario.interior_grid));
        doc["bounds"]["theoretical_colip"] = interior->theoretical_colip;
        doc["bounds"]["ab_max"] = interior->ab_max;
        doc["bounds"]["min_l_grad"] = interior->min_l_grad;
    });

    if (map) {
        timed("empirical", [&] {
            empirical.emplace(
                empirical_bilipschitz(*map, scenario.n_pairs, scenario.seed));
            doc["empirical"] = {{"lip", empirical->lip},
                                {"colip", empirical->colip},
                                {"n_pairs", empirical->n_pairs},
                                {"seed", empirical->seed}};
        });
    }

    // Per-check verdicts.
    Json checks;
    checks["certified"] = certified_ok;
    checks["qc_profile"] = qc_ok;
    checks["barrier_audit"] = audit.has_value() && audit->pass;
    checks["gradient_sandwich"] = audit.has_value() && audit->sandwich_failures == 0;
    checks["laplacian_formula"] =
        audit.has_value() &&
        doc["barrier_audit"]["laplacian_fd_within_5e-4"].get<double>() >= 0.99 &&
        doc["barrier_audit"]["laplacian_fd_max_rel"].get<double>() < 5e-3;
    checks["hopf"] = hopf.has_value();
    checks["boundary_colip"] = bound.has_value();
    checks["interior_extension"] = interior.has_value();
    checks["chain"] = interior.has_value() && empirical.has_value() &&
                      interior->theoretical_colip <= empirical->colip + 2e-3;
    doc["checks"] = checks;

    Json errors = Json::array();
    for (const StageError& e : result.errors) {
        errors.push_back({{"stage", e.stage}, {"code", e.code},
                          {"message", e.message}});
    }
    doc["errors"] = errors;

    result.all_passed = result.errors.empty();
    for (const auto& [key, value] : checks.items()) {
        if (!value.get<bool>()) result.all_passed = false;
    }
    doc["all_passed"] = result.all_passed;

    // Artifacts.
    if (wants(scenario, "report")) {
        std::ofstream out(out_dir + "/report.json");
        out << doc.dump(1) << '\n';
    }
    {
        std::ofstream out(out_dir + "/timings.txt");
        out << timings.str();
    }
    if (map && wants(scenario, "report")) {
        write_map_json(out_dir + "/map.json", *map);
    }
    if (audit && wants(scenario, "audit_csv")) {
        write_audit_csv(out_dir + "/audit.csv", *audit);
    }
    if (field && wants(scenario, "field_csv")) {
        write_field_csv(out_dir + "/field.csv", *field);
    }
    if (wants(scenario, "svg") && map && curve) {
        fs::create_directories(out_dir + "/plots");
        write_circle_image_svg(out_dir + "/plots/circles.svg", *map, *curve);
        if (audit) {
            write_audit_heatmap_svg(out_dir + "/plots/audit.svg", *audit);
        }
    }
    return result;
}

}  // namespace qcharmlab
