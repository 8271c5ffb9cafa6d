#include "cahs/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "cahs/errors.hpp"
#include "cahs/mesh.hpp"
#include "cahs/numeric.hpp"

namespace cahs {

using nlohmann::json;

// ---------------------------------------------------------------------------
// ReportNode

ReportNode ReportNode::number(double v) {
    ReportNode n;
    n.kind_ = Kind::Number;
    n.num_ = v;
    return n;
}

ReportNode ReportNode::integer(long long v) {
    ReportNode n;
    n.kind_ = Kind::Integer;
    n.int_ = v;
    return n;
}

ReportNode ReportNode::boolean(bool v) {
    ReportNode n;
    n.kind_ = Kind::Bool;
    n.bool_ = v;
    return n;
}

ReportNode ReportNode::text(std::string v) {
    ReportNode n;
    n.kind_ = Kind::Text;
    n.text_ = std::move(v);
    return n;
}

ReportNode ReportNode::array() {
    ReportNode n;
    n.kind_ = Kind::Array;
    return n;
}

ReportNode& ReportNode::set(const std::string& key, ReportNode v) {
    members_.emplace_back(key, std::move(v));
    return *this;
}

ReportNode& ReportNode::push(ReportNode v) {
    items_.push_back(std::move(v));
    return *this;
}

const ReportNode* ReportNode::find(const std::string& key) const {
    for (const auto& [k, v] : members_)
        if (k == key) return &v;
    return nullptr;
}

namespace {

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

}  // namespace

std::string ReportNode::serialize(int indent) const {
    const std::string pad(indent, ' ');
    const std::string pad2(indent + 2, ' ');
    switch (kind_) {
        case Kind::Number:
            return format_number(num_);
        case Kind::Integer:
            return std::to_string(int_);
        case Kind::Bool:
            return bool_ ? "true" : "false";
        case Kind::Text:
            return "\"" + json_escape(text_) + "\"";
        case Kind::Array: {
            if (items_.empty()) return "[]";
            std::string out = "[\n";
            for (std::size_t i = 0; i < items_.size(); ++i) {
                out += pad2 + items_[i].serialize(indent + 2);
                out += i + 1 < items_.size() ? ",\n" : "\n";
            }
            return out + pad + "]";
        }
        case Kind::Object: {
            if (members_.empty()) return "{}";
            std::string out = "{\n";
            for (std::size_t i = 0; i < members_.size(); ++i) {
                out += pad2 + "\"" + json_escape(members_[i].first) + "\": " +
                       members_[i].second.serialize(indent + 2);
                out += i + 1 < members_.size() ? ",\n" : "\n";
            }
            return out + pad + "}";
        }
    }
    return "null";
}

void ReportNode::csv_rows(const std::string& prefix, std::vector<std::string>& rows) const {
    switch (kind_) {
        case Kind::Number:
            rows.push_back(prefix + "," + format_number(num_));
            return;
        case Kind::Integer:
            rows.push_back(prefix + "," + std::to_string(int_));
            return;
        case Kind::Bool:
            rows.push_back(prefix + std::string(",") + (bool_ ? "true" : "false"));
            return;
        case Kind::Text:
            rows.push_back(prefix + "," + text_);
            return;
        case Kind::Array:
            for (std::size_t i = 0; i < items_.size(); ++i)
                items_[i].csv_rows(prefix + "." + std::to_string(i), rows);
            return;
        case Kind::Object:
            for (const auto& [k, v] : members_)
                v.csv_rows(prefix.empty() ? k : prefix + "." + k, rows);
            return;
    }
}

// ---------------------------------------------------------------------------
// Logging

namespace {

int log_level() {
    static const int level = [] {
        const char* env = std::getenv("CAHS_LOG");
        if (!env) return 1;
        const std::string s(env);
        if (s == "off") return 0;
        if (s == "debug") return 2;
        return 1;
    }();
    return level;
}

void log_info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "[cahs] " << msg << "\n";
}

void log_debug(const std::string& msg) {
    if (log_level() >= 2) std::cerr << "[cahs:debug] " << msg << "\n";
}

// ---------------------------------------------------------------------------
// Config parsing

void require_keys(const json& obj, const std::string& path,
                  std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw ConfigError("expected an object", path);
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            if (it.key() == a) {
                ok = true;
                break;
            }
        if (!ok) throw ConfigError("unknown key '" + it.key() + "'", path + "." + it.key());
    }
}

double as_number(const json& v, const std::string& path) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
    }
    throw ConfigError("expected a number (or \"inf\"/\"-inf\")", path);
}

double number_field(const json& obj, const char* key, const std::string& path, double fallback) {
    if (!obj.contains(key)) return fallback;
    return as_number(obj.at(key), path + "." + key);
}

std::vector<double> vector_field(const json& obj, const char* key, const std::string& path) {
    std::vector<double> out;
    if (!obj.contains(key)) return out;
    const json& arr = obj.at(key);
    if (!arr.is_array()) throw ConfigError("expected an array", path + "." + key);
    for (std::size_t i = 0; i < arr.size(); ++i)
        out.push_back(as_number(arr[i], path + "." + key + "[" + std::to_string(i) + "]"));
    return out;
}

}  // namespace

ScenarioConfig ScenarioConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file", path);
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

ScenarioConfig ScenarioConfig::from_json_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what(), "<root>");
    }
    require_keys(root, "<root>",
                 {"name", "profile", "base", "seed", "angle", "s0", "surface", "distance",
                  "sampling", "checks", "output"});

    ScenarioConfig cfg;
    if (root.contains("name")) cfg.name = root.at("name").get<std::string>();
    cfg.s0 = number_field(root, "s0", "<root>", 1.0);

    if (root.contains("profile")) {
        const json& p = root.at("profile");
        require_keys(p, "profile", {"kind", "value", "theta", "interval", "csv"});
        const std::string kind = p.value("kind", "constant");
        if (kind == "constant")
            cfg.profile_kind = WarpingProfile::Kind::Constant;
        else if (kind == "reciprocal")
            cfg.profile_kind = WarpingProfile::Kind::Reciprocal;
        else if (kind == "linear_over_sin")
            cfg.profile_kind = WarpingProfile::Kind::LinearOverSin;
        else if (kind == "custom_csv")
            cfg.profile_kind = WarpingProfile::Kind::Custom;
        else
            throw ConfigError("unknown profile kind '" + kind + "'", "profile.kind");
        cfg.profile_value = number_field(p, "value", "profile", 1.0);
        cfg.profile_theta = number_field(p, "theta", "profile", 0.0);
        if (p.contains("csv")) cfg.profile_csv = p.at("csv").get<std::string>();
        if (p.contains("interval")) {
            auto iv = vector_field(p, "interval", "profile");
            if (iv.size() != 2) throw ConfigError("interval needs [lo, hi]", "profile.interval");
            cfg.profile_interval = Interval{iv[0], iv[1]};
            cfg.profile_interval_given = true;
        }
    }

    if (root.contains("base")) {
        const json& b = root.at("base");
        require_keys(b, "base", {"kind", "dimension", "radius"});
        const std::string kind = b.value("kind", "euclidean");
        if (kind == "euclidean")
            cfg.base_kind = BaseManifold::Kind::EuclideanFlat;
        else if (kind == "sphere2")
            cfg.base_kind = BaseManifold::Kind::RoundSphere2;
        else
            throw ConfigError("unknown base kind '" + kind + "'", "base.kind");
        cfg.base_dimension = static_cast<int>(number_field(b, "dimension", "base", 2));
        cfg.base_radius = number_field(b, "radius", "base", 1.0);
    }

    if (root.contains("seed")) {
        const json& s = root.at("seed");
        require_keys(s, "seed",
                     {"kind", "normal", "offset", "center", "radius", "great_circle", "samples",
                      "mask_file", "orientation"});
        const std::string kind = s.value("kind", "hyperplane");
        if (kind == "hyperplane")
            cfg.seed_kind = SeedKind::Hyperplane;
        else if (kind == "sphere_shell")
            cfg.seed_kind = SeedKind::SphereShell;
        else if (kind == "great_circle")
            cfg.seed_kind = SeedKind::GreatCircle;
        else if (kind == "grid_level_set")
            cfg.seed_kind = SeedKind::GridLevelSet;
        else
            throw ConfigError("unknown seed kind '" + kind + "'", "seed.kind");
        cfg.seed_normal = vector_field(s, "normal", "seed");
        cfg.seed_offset = number_field(s, "offset", "seed", 0.0);
        cfg.seed_center = vector_field(s, "center", "seed");
        cfg.seed_radius = number_field(s, "radius", "seed", 1.0);
        cfg.circle_samples = static_cast<int>(number_field(s, "samples", "seed", 1024));
        cfg.seed_orientation = static_cast<int>(number_field(s, "orientation", "seed", 1));
        if (s.contains("mask_file")) cfg.seed_mask_file = s.at("mask_file").get<std::string>();
        if (s.contains("great_circle")) {
            const json& gc = s.at("great_circle");
            require_keys(gc, "seed.great_circle", {"a", "b"});
            cfg.circle_a = vector_field(gc, "a", "seed.great_circle");
            cfg.circle_b = vector_field(gc, "b", "seed.great_circle");
        }
    }

    if (root.contains("angle")) {
        const json& a = root.at("angle");
        require_keys(a, "angle", {"theta", "C"});
        if (a.contains("theta") == a.contains("C"))
            throw ConfigError("exactly one of theta / C must be given", "angle");
        if (a.contains("theta")) cfg.theta = as_number(a.at("theta"), "angle.theta");
        if (a.contains("C")) cfg.C = as_number(a.at("C"), "angle.C");
    }

    if (root.contains("surface")) {
        const json& s = root.at("surface");
        require_keys(s, "surface",
                     {"variant", "t0", "g_constant", "integral_base", "g_integral_base"});
        cfg.variant = s.value("variant", "graph");
        const char* variants[] = {"graph",    "cylinder",     "slice",
                                  "munteanu", "dillen_graph", "dillen_cylinder"};
        if (std::find_if(std::begin(variants), std::end(variants), [&](const char* v) {
                return cfg.variant == v;
            }) == std::end(variants))
            throw ConfigError("unknown variant '" + cfg.variant + "'", "surface.variant");
        cfg.slice_t0 = number_field(s, "t0", "surface", 0.0);
        cfg.dillen_g_constant = number_field(s, "g_constant", "surface", 1.0);
        cfg.integral_base = number_field(s, "integral_base", "surface", 1.0);
        cfg.g_integral_base = number_field(s, "g_integral_base", "surface", 0.0);
    }

    if (root.contains("distance")) {
        const json& d = root.at("distance");
        require_keys(d, "distance", {"kind", "grid"});
        const std::string kind = d.value("kind", "analytic");
        if (kind == "fmm")
            cfg.use_fmm = true;
        else if (kind != "analytic")
            throw ConfigError("unknown distance kind '" + kind + "'", "distance.kind");
        if (d.contains("grid")) {
            const json& g = d.at("grid");
            require_keys(g, "distance.grid", {"nx", "ny", "nz", "h", "origin"});
            cfg.fmm_grid.nx = static_cast<int>(number_field(g, "nx", "distance.grid", 129));
            cfg.fmm_grid.ny = static_cast<int>(number_field(g, "ny", "distance.grid", 129));
            cfg.fmm_grid.nz = static_cast<int>(number_field(g, "nz", "distance.grid", 1));
            cfg.fmm_grid.dim = g.contains("nz") ? 3 : 2;
            cfg.fmm_grid.h = number_field(g, "h", "distance.grid", 0.015625);
            auto origin = vector_field(g, "origin", "distance.grid");
            if (origin.size() >= 2) {
                cfg.fmm_grid.ox = origin[0];
                cfg.fmm_grid.oy = origin[1];
                if (origin.size() >= 3) cfg.fmm_grid.oz = origin[2];
            }
        }
    }

    if (root.contains("sampling")) {
        const json& s = root.at("sampling");
        require_keys(s, "sampling", {"box", "count", "grid", "seed"});
        if (s.contains("box")) {
            const json& b = s.at("box");
            if (!b.is_array()) throw ConfigError("box must be an array of [lo,hi]", "sampling.box");
            for (std::size_t i = 0; i < b.size(); ++i) {
                const std::string path = "sampling.box[" + std::to_string(i) + "]";
                if (!b[i].is_array() || b[i].size() != 2)
                    throw ConfigError("box entries are [lo, hi]", path);
                cfg.box.emplace_back(as_number(b[i][0], path), as_number(b[i][1], path));
            }
        }
        cfg.sample_count = static_cast<int>(number_field(s, "count", "sampling", 1000));
        if (s.contains("grid")) {
            auto g = vector_field(s, "grid", "sampling");
            if (g.size() != 2) throw ConfigError("grid needs [nu, nv]", "sampling.grid");
            cfg.grid_u = static_cast<int>(g[0]);
            cfg.grid_v = static_cast<int>(g[1]);
        }
        cfg.seed_rng = static_cast<std::uint64_t>(number_field(s, "seed", "sampling", 0));
    }

    if (root.contains("checks")) {
        const json& c = root.at("checks");
        require_keys(c, "checks",
                     {"angle_constancy", "transnormal_residual", "principal_direction",
                      "geodesic", "minimality"});
        for (auto it = c.begin(); it != c.end(); ++it) {
            ScenarioConfig::CheckSpec spec;
            const json& entry = it.value();
            if (!entry.is_object()) throw ConfigError("check must be an object", "checks." + it.key());
            for (auto f = entry.begin(); f != entry.end(); ++f) {
                if (f.key() == "enabled")
                    spec.enabled = f.value().get<bool>();
                else if (f.key().rfind("tol", 0) == 0 || f.key() == "arc_length" ||
                         f.key() == "step")
                    spec.tols[f.key()] = as_number(f.value(), "checks." + it.key() + "." + f.key());
                else
                    throw ConfigError("unknown key '" + f.key() + "'",
                                      "checks." + it.key() + "." + f.key());
            }
            cfg.checks[it.key()] = spec;
        }
    }

    if (root.contains("output")) {
        const json& o = root.at("output");
        require_keys(o, "output", {"mesh", "h_table", "distance_csv", "curves"});
        cfg.out_mesh = o.value("mesh", true);
        cfg.out_h_table = o.value("h_table", true);
        cfg.out_distance_csv = o.value("distance_csv", false);
        cfg.out_curves = o.value("curves", false);
    }
    return cfg;
}

// ---------------------------------------------------------------------------
// Scenario construction

namespace {

Vector to_vector(const std::vector<double>& v) {
    Vector out(static_cast<int>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<int>(i)) = v[i];
    return out;
}

WarpingProfile make_profile(const ScenarioConfig& cfg) {
    Interval domain = cfg.profile_interval;
    switch (cfg.profile_kind) {
        case WarpingProfile::Kind::Constant:
            return WarpingProfile::constant(cfg.profile_value,
                                            cfg.profile_interval_given ? domain : Interval{});
        case WarpingProfile::Kind::Reciprocal:
            return cfg.profile_interval_given ? WarpingProfile::reciprocal(domain)
                                              : WarpingProfile::reciprocal();
        case WarpingProfile::Kind::LinearOverSin:
            return cfg.profile_interval_given
                       ? WarpingProfile::linear_over_sin(cfg.profile_theta, domain)
                       : WarpingProfile::linear_over_sin(cfg.profile_theta);
        case WarpingProfile::Kind::Custom:
            return WarpingProfile::from_csv(cfg.profile_csv);
    }
    throw ConfigError("unsupported profile", "profile");
}

SeedHypersurface make_seed(const ScenarioConfig& cfg, const BaseManifold& base) {
    switch (cfg.seed_kind) {
        case ScenarioConfig::SeedKind::Hyperplane:
            return SeedHypersurface::hyperplane(to_vector(cfg.seed_normal), cfg.seed_offset,
                                                cfg.seed_orientation);
        case ScenarioConfig::SeedKind::SphereShell:
            return SeedHypersurface::sphere_shell(to_vector(cfg.seed_center), cfg.seed_radius,
                                                  cfg.seed_orientation);
        case ScenarioConfig::SeedKind::GreatCircle: {
            if (cfg.circle_a.size() != 3 || cfg.circle_b.size() != 3)
                throw ConfigError("great circle needs 3-vectors a and b", "seed.great_circle");
            auto curve = SphereCurve::great_circle(
                {cfg.circle_a[0], cfg.circle_a[1], cfg.circle_a[2]},
                {cfg.circle_b[0], cfg.circle_b[1], cfg.circle_b[2]});
            return SeedHypersurface::spherical_curve(
                curve.sample_scaled(base.radius(), cfg.circle_samples), base.radius(),
                cfg.seed_orientation);
        }
        case ScenarioConfig::SeedKind::GridLevelSet:
            return SeedHypersurface::grid_level_set(GridMask::load(cfg.seed_mask_file));
        case ScenarioConfig::SeedKind::None:
            break;
    }
    throw ConfigError("seed is required for this variant", "seed");
}

GridMask rasterize_seed(const SeedHypersurface& seed, const BaseManifold& base,
                        const GridSpec& spec) {
    GridMask mask;
    mask.spec = spec;
    mask.cells.assign(spec.cell_count(), 0);
    const int nz = spec.dim == 3 ? spec.nz : 1;
    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < spec.ny; ++j)
            for (int i = 0; i < spec.nx; ++i) {
                const double d = distance_value(seed, base, spec.point(i, j, k));
                if (std::abs(d) <= 0.5 * spec.h) mask.cells[spec.index(i, j, k)] = 1;
            }
    return mask;
}

}  // namespace

BuiltScenario build_scenario(const ScenarioConfig& cfg) {
    WarpingProfile profile = make_profile(cfg);
    BaseManifold base = cfg.base_kind == BaseManifold::Kind::EuclideanFlat
                            ? BaseManifold::euclidean(cfg.base_dimension)
                            : BaseManifold::sphere2(cfg.base_radius);

    std::optional<double> theta = cfg.theta;
    std::optional<double> C = cfg.C;
    if (theta && !C) C = std::tan(*theta);
    if (C && !theta) theta = std::atan(*C);

    const bool needs_builder =
        cfg.variant == "graph" || cfg.variant == "munteanu" || cfg.variant == "dillen_graph";
    if (needs_builder && !C)
        throw ConfigError("angle.theta or angle.C is required for this variant", "angle");

    if (cfg.variant == "munteanu") {
        if (cfg.circle_a.size() != 3 || cfg.circle_b.size() != 3)
            throw ConfigError("munteanu needs seed.great_circle", "seed.great_circle");
        auto curve = SphereCurve::great_circle({cfg.circle_a[0], cfg.circle_a[1], cfg.circle_a[2]},
                                               {cfg.circle_b[0], cfg.circle_b[1], cfg.circle_b[2]});
        CAHypersurface surface = CAHypersurface::munteanu(*theta, curve);
        WarpedProduct ambient = surface.ambient();
        const double st = std::sin(*theta);
        auto builder = TransnormalBuilder::from_theta(ambient.profile(), *theta, cfg.s0);
        auto dist = DistanceField::analytic(
            BaseManifold::sphere2(st),
            SeedHypersurface::spherical_curve(curve.sample_scaled(st, cfg.circle_samples), st,
                                              cfg.seed_orientation));
        BuiltScenario built{ambient, builder, dist, TransnormalField(builder, dist),
                            surface,  *theta,  true};
        return built;
    }

    if (cfg.variant == "dillen_graph") {
        const double gc = cfg.dillen_g_constant;
        CAHypersurface surface = CAHypersurface::dillen_graph(
            *theta, profile, [gc](double) { return gc; }, cfg.integral_base, cfg.g_integral_base);
        auto builder = TransnormalBuilder::from_theta(profile, *theta, cfg.integral_base);
        // Constant g traces a circle of radius g centered at (-g, 0) (taking
        // g_integral_base = 0), so the matching distance field is available.
        std::optional<DistanceField> dist;
        std::optional<TransnormalField> field;
        if (cfg.g_integral_base == 0.0 && gc > 0.0) {
            Vector center(2);
            center << -gc, 0.0;
            dist = DistanceField::analytic(BaseManifold::euclidean(2),
                                           SeedHypersurface::sphere_shell(center, gc));
            field = TransnormalField(builder, *dist);
        }
        BuiltScenario built{surface.ambient(), builder, dist, field, surface, *theta, true};
        return built;
    }

    if (cfg.variant == "dillen_cylinder") {
        if (!theta) throw ConfigError("angle is required for dillen_cylinder", "angle");
        CAHypersurface surface = CAHypersurface::dillen_cylinder(*theta, profile, cfg.integral_base);
        BuiltScenario built{surface.ambient(), std::nullopt, std::nullopt, std::nullopt, surface,
                            *theta, true};
        return built;
    }

    WarpedProduct ambient(profile, base);

    if (cfg.variant == "slice")
        return BuiltScenario{ambient, std::nullopt, std::nullopt, std::nullopt,
                             CAHypersurface::slice(ambient, cfg.slice_t0), 0.0, true};

    SeedHypersurface seed = make_seed(cfg, base);

    if (cfg.variant == "cylinder")
        return BuiltScenario{ambient, std::nullopt, std::nullopt, std::nullopt,
                             CAHypersurface::cylinder(ambient, std::move(seed)), M_PI / 2, true};

    // graph
    auto builder = TransnormalBuilder::from_constant(profile, *C, cfg.s0);
    DistanceField dist = [&] {
        if (!cfg.use_fmm) return DistanceField::analytic(base, seed);
        if (seed.kind() == SeedHypersurface::Kind::GridLevelSet)
            return DistanceField::fast_marching(seed.grid_level_set_data().mask);
        log_debug("rasterizing analytic seed onto the fast-marching grid");
        return DistanceField::fast_marching(rasterize_seed(seed, base, cfg.fmm_grid));
    }();
    TransnormalField field(builder, dist);
    return BuiltScenario{ambient,
                         builder,
                         dist,
                         field,
                         CAHypersurface::graph(ambient, field),
                         std::atan(*C),
                         true};
}

// ---------------------------------------------------------------------------
// Artifact writing

void write_report_files(const ReportNode& report, const std::string& out_dir,
                        std::vector<std::string>* artifacts) {
    std::filesystem::create_directories(out_dir);
    const std::string json_path = out_dir + "/report.json";
    std::ofstream out(json_path);
    out << report.serialize() << "\n";
    out.close();

    const std::string csv_path = out_dir + "/report.csv";
    std::ofstream csv(csv_path);
    csv << "metric,value\n";
    std::vector<std::string> rows;
    report.csv_rows("", rows);
    for (const auto& r : rows) csv << r << "\n";
    if (artifacts) {
        artifacts->push_back(json_path);
        artifacts->push_back(csv_path);
    }
}

CommandOutcome cmd_build(const ScenarioConfig& cfg, const std::string& out_dir) {
    log_info("building scenario '" + cfg.name + "'");
    BuiltScenario built = build_scenario(cfg);
    std::filesystem::create_directories(out_dir);
    CommandOutcome outcome;

    if (cfg.out_mesh && built.surface.param_dim() == 2) {
        if (cfg.box.size() < 2) throw ConfigError("mesh export needs sampling.box", "sampling.box");
        Vector lo(2), hi(2);
        lo << cfg.box[0].first, cfg.box[1].first;
        hi << cfg.box[0].second, cfg.box[1].second;
        TriangleMesh mesh = export_mesh(built.surface, lo, hi, cfg.grid_u, cfg.grid_v);
        mesh.write_obj(out_dir + "/mesh.obj");
        mesh.write_ply(out_dir + "/mesh.ply");
        outcome.artifacts.push_back(out_dir + "/mesh.obj");
        outcome.artifacts.push_back(out_dir + "/mesh.ply");
        log_debug("mesh: " + std::to_string(mesh.triangles.size()) + " triangles, " +
                  std::to_string(mesh.degenerate_skipped) + " degenerate cells skipped");
    }
    if (cfg.out_h_table && built.builder) {
        built.builder->export_h_table_csv(out_dir + "/h_table.csv");
        outcome.artifacts.push_back(out_dir + "/h_table.csv");
    }
    if (built.distance && built.distance->is_grid()) {
        built.distance->grid().export_csv(out_dir + "/distance.csv");
        outcome.artifacts.push_back(out_dir + "/distance.csv");
    }

    ReportNode report;
    report.set("scenario", ReportNode::text(cfg.name));
    report.set("command", ReportNode::text("build"));
    ReportNode files = ReportNode::array();
    for (const auto& a : outcome.artifacts) files.push(ReportNode::text(a));
    report.set("artifacts", files);
    outcome.report = report;
    return outcome;
}

// ---------------------------------------------------------------------------
// Verification

namespace {

struct CheckContext {
    const ScenarioConfig& cfg;
    const BuiltScenario& built;
    DeterministicRng rng;
    int threads;

    double tol(const std::string& check, const std::string& key, double fallback) const {
        auto it = cfg.checks.find(check);
        if (it == cfg.checks.end()) return fallback;
        auto jt = it->second.tols.find(key);
        return jt == it->second.tols.end() ? fallback : jt->second;
    }
    bool enabled(const std::string& check) const {
        auto it = cfg.checks.find(check);
        return it == cfg.checks.end() ? true : it->second.enabled;
    }
};

std::vector<Vector> random_params(const ScenarioConfig& cfg, const CAHypersurface& surface,
                                  DeterministicRng& rng, int count) {
    const int dim = surface.param_dim();
    if (static_cast<int>(cfg.box.size()) != dim)
        throw ConfigError("sampling.box must bound every surface parameter", "sampling.box");
    std::vector<Vector> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        Vector p(dim);
        for (int a = 0; a < dim; ++a) p(a) = rng.uniform(cfg.box[a].first, cfg.box[a].second);
        out.push_back(p);
    }
    return out;
}

ReportNode check_angle(CheckContext& ctx, bool& pass) {
    const bool grid = ctx.built.distance && ctx.built.distance->is_grid();
    const double h = grid ? ctx.built.distance->grid_spacing() : 0.0;
    const double tol_spread = ctx.tol("angle_constancy", "tol_spread", grid ? 5 * h : 1e-8);
    const double tol_mean = ctx.tol("angle_constancy", "tol_mean", grid ? 5 * h : 1e-8);

    auto params = random_params(ctx.cfg, ctx.built.surface, ctx.rng,
                                std::max(ctx.cfg.sample_count, 2));
    std::vector<double> thetas(params.size(), std::numeric_limits<double>::quiet_NaN());
    parallel_for(params.size(), ctx.threads, [&](std::size_t i) {
        try {
            thetas[i] = ctx.built.surface.sample(params[i]).theta;
        } catch (const Error&) {
        }
    });
    double lo = 10, hi = -10, sum = 0;
    std::size_t n = 0;
    for (double t : thetas) {
        if (std::isnan(t)) continue;
        lo = std::min(lo, t);
        hi = std::max(hi, t);
        sum += t;
        ++n;
    }
    if (n < params.size() / 2)
        log_info("angle check: dropped " + std::to_string(params.size() - n) +
                 " out-of-validity samples");
    const double mean = sum / std::max<std::size_t>(n, 1);
    const double spread = hi - lo;
    const double expected = ctx.built.expected_theta;

    pass = spread <= tol_spread &&
           (!ctx.built.expected_theta_known || std::abs(mean - expected) <= tol_mean);
    ReportNode node;
    node.set("samples", ReportNode::integer(static_cast<long long>(n)));
    node.set("mean", ReportNode::number(mean));
    node.set("spread", ReportNode::number(spread));
    if (ctx.built.expected_theta_known) node.set("expected", ReportNode::number(expected));
    node.set("tol_spread", ReportNode::number(tol_spread));
    node.set("tol_mean", ReportNode::number(tol_mean));
    node.set("passed", ReportNode::boolean(pass));
    return node;
}

ReportNode check_transnormal(CheckContext& ctx, bool& pass, bool& applicable) {
    if (!ctx.built.field) {
        applicable = false;
        pass = true;
        ReportNode node;
        node.set("skipped", ReportNode::text("no transnormal field in this variant"));
        return node;
    }
    const TransnormalField& field = *ctx.built.field;
    const bool grid = field.distance().is_grid();
    const double h = grid ? field.distance().grid_spacing() : 0.0;
    const double tol = ctx.tol("transnormal_residual", "tol", grid ? 5 * h : 1e-8);

    ResidualStats stats;
    if (grid) {
        stats = transnormal_residual_grid(field);
    } else {
        auto params = random_params(ctx.cfg, ctx.built.surface, ctx.rng, ctx.cfg.sample_count);
        std::vector<Vector> points;
        for (const auto& p : params) {
            try {
                points.push_back(ctx.built.surface.position(p).p);
            } catch (const Error&) {
            }
        }
        stats = transnormal_residual(field.as_scalar_field(), field.builder().profile(),
                                     field.builder().constant(), points);
    }
    pass = stats.max_rel <= tol;
    ReportNode node;
    node.set("samples", ReportNode::integer(static_cast<long long>(stats.count)));
    node.set("max_rel", ReportNode::number(stats.max_rel));
    node.set("mean_rel", ReportNode::number(stats.mean_rel));
    node.set("tol", ReportNode::number(tol));
    node.set("passed", ReportNode::boolean(pass));
    return node;
}

ReportNode check_principal_direction(CheckContext& ctx, bool& pass, bool& applicable) {
    if (ctx.built.surface.variant() == CAHypersurface::Variant::Slice) {
        applicable = false;
        pass = true;
        ReportNode node;
        node.set("skipped", ReportNode::text("theta = 0: T undefined on slices"));
        return node;
    }
    const double tol_angle = ctx.tol("principal_direction", "tol_angle", 1e-4);
    const double tol_eigen = ctx.tol("principal_direction", "tol_eigenvalue", 1e-4);

    auto params = random_params(ctx.cfg, ctx.built.surface, ctx.rng, 100);
    double max_angle = 0.0, max_eigen_rel = 0.0;
    std::size_t n = 0;
    const WarpingProfile& prof = ctx.built.ambient.profile();
    for (const auto& p : params) {
        try {
            const auto entry = shape_operator_fd(ctx.built.surface, p);
            if (!entry.AT_defined) continue;
            const auto s = ctx.built.surface.sample(p);
            const double expected =
                -std::cos(s.theta) * prof.rho_prime(s.point.t) / prof.rho(s.point.t);
            max_angle = std::max(max_angle, entry.AT_angle);
            // Relative against the predicted eigenvalue; absolute when the
            // prediction vanishes (theta = pi/2 or constant warping).
            const double scale = std::abs(expected) > 1e-8 ? std::abs(expected) : 1.0;
            max_eigen_rel =
                std::max(max_eigen_rel, std::abs(entry.AT_eigenvalue - expected) / scale);
            ++n;
        } catch (const Error&) {
        }
    }
    pass = n > 0 && max_angle <= tol_angle && max_eigen_rel <= tol_eigen;
    ReportNode node;
    node.set("samples", ReportNode::integer(static_cast<long long>(n)));
    node.set("max_angle", ReportNode::number(max_angle));
    node.set("max_eigenvalue_rel_dev", ReportNode::number(max_eigen_rel));
    node.set("tol_angle", ReportNode::number(tol_angle));
    node.set("tol_eigenvalue", ReportNode::number(tol_eigen));
    node.set("passed", ReportNode::boolean(pass));
    return node;
}

ReportNode check_geodesic(CheckContext& ctx, bool& pass, bool& applicable,
                          const std::string& out_dir) {
    if (ctx.built.surface.variant() == CAHypersurface::Variant::Slice) {
        applicable = false;
        pass = true;
        ReportNode node;
        node.set("skipped", ReportNode::text("theta = 0: T undefined on slices"));
        return node;
    }
    const double arc = ctx.tol("geodesic", "arc_length", 1.0);
    const double step = ctx.tol("geodesic", "step", 1e-3);
    const double tol_tan = ctx.tol("geodesic", "tol_tangential", 1e-4);
    const double tol_full = ctx.tol("geodesic", "tol_full", 1e-6);
    const double tol_normal = ctx.tol("geodesic", "tol_normal", 1e-3);

    const bool ambient_geodesic =
        ctx.built.ambient.profile().kind() == WarpingProfile::Kind::Constant ||
        ctx.built.surface.variant() == CAHypersurface::Variant::Cylinder;

    auto starts = random_params(ctx.cfg, ctx.built.surface, ctx.rng, 5);
    double max_tan = 0.0, max_full = 0.0, max_normal = 0.0;
    int curves = 0;
    for (std::size_t i = 0; i < starts.size(); ++i) {
        try {
            const CurveResult curve = integral_curve_T(ctx.built.surface, starts[i], arc, step);
            max_tan = std::max(max_tan, curve.max_tangential_residual);
            max_full = std::max(max_full, curve.max_full_accel);
            max_normal = std::max(max_normal, curve.max_normal_mismatch);
            ++curves;
            if (ctx.cfg.out_curves)
                export_curve_csv(curve, out_dir + "/curve_" + std::to_string(i) + ".csv");
        } catch (const Error&) {
        }
    }
    pass = curves > 0 && max_tan <= tol_tan && max_normal <= tol_normal &&
           (!ambient_geodesic || max_full <= tol_full);
    ReportNode node;
    node.set("curves", ReportNode::integer(curves));
    node.set("max_tangential_residual", ReportNode::number(max_tan));
    node.set("max_normal_mismatch", ReportNode::number(max_normal));
    node.set("tol_tangential", ReportNode::number(tol_tan));
    node.set("tol_normal", ReportNode::number(tol_normal));
    if (ambient_geodesic) {
        node.set("max_full_accel", ReportNode::number(max_full));
        node.set("tol_full", ReportNode::number(tol_full));
    }
    node.set("passed", ReportNode::boolean(pass));
    return node;
}

ReportNode check_minimality(CheckContext& ctx, bool& pass, bool& applicable) {
    if (ctx.built.ambient.profile().kind() != WarpingProfile::Kind::Constant) {
        applicable = false;
        pass = true;
        ReportNode node;
        node.set("skipped", ReportNode::text("classifier needs a constant warping function"));
        return node;
    }
    const int dim = ctx.built.surface.param_dim();
    Vector lo(dim), hi(dim);
    for (int a = 0; a < dim; ++a) {
        lo(a) = ctx.cfg.box[a].first;
        hi(a) = ctx.cfg.box[a].second;
    }
    ClassifyOptions options;
    options.mean_curvature_tol = ctx.tol("minimality", "tol", 1e-6);
    const MinimalVerdict verdict = classify_minimal_ca(ctx.built.surface, lo, hi, options);
    pass = true;  // reporting check: the verdict itself is the result
    ReportNode node;
    node.set("verdict", ReportNode::text(to_string(verdict.verdict)));
    node.set("theta_mean", ReportNode::number(verdict.theta_mean));
    node.set("theta_spread", ReportNode::number(verdict.theta_spread));
    node.set("max_mean_curvature", ReportNode::number(verdict.max_mean_curvature));
    node.set("passed", ReportNode::boolean(pass));
    return node;
}

}  // namespace

CommandOutcome cmd_verify(const ScenarioConfig& cfg, const std::string& out_dir, int threads) {
    log_info("verifying scenario '" + cfg.name + "'");
    BuiltScenario built = build_scenario(cfg);
    CheckContext ctx{cfg, built, DeterministicRng(cfg.seed_rng), threads};

    CommandOutcome outcome;
    ReportNode report;
    report.set("scenario", ReportNode::text(cfg.name));
    report.set("command", ReportNode::text("verify"));
    report.set("seed", ReportNode::integer(static_cast<long long>(cfg.seed_rng)));

    ReportNode skipped = ReportNode::array();
    auto run = [&](const std::string& name,
                   const std::function<ReportNode(bool&, bool&)>& check) {
        if (!ctx.enabled(name)) {
            ReportNode s;
            s.set("check", ReportNode::text(name));
            s.set("reason", ReportNode::text("disabled in config"));
            skipped.push(s);
            return;
        }
        bool pass = true, applicable = true;
        ReportNode node = check(pass, applicable);
        report.set(name, node);
        if (!applicable) {
            ReportNode s;
            s.set("check", ReportNode::text(name));
            const ReportNode* reason = node.find("skipped");
            s.set("reason", reason ? *reason : ReportNode::text("not applicable"));
            skipped.push(s);
            return;
        }
        ++outcome.checks_run;
        outcome.all_passed = outcome.all_passed && pass;
    };

    run("angle_constancy", [&](bool& pass, bool&) { return check_angle(ctx, pass); });
    run("transnormal_residual",
        [&](bool& pass, bool& app) { return check_transnormal(ctx, pass, app); });
    run("principal_direction",
        [&](bool& pass, bool& app) { return check_principal_direction(ctx, pass, app); });
    run("geodesic",
        [&](bool& pass, bool& app) { return check_geodesic(ctx, pass, app, out_dir); });
    run("minimality", [&](bool& pass, bool& app) { return check_minimality(ctx, pass, app); });

    ReportNode summary;
    summary.set("checks_run", ReportNode::integer(outcome.checks_run));
    summary.set("skipped", skipped);
    summary.set("all_passed", ReportNode::boolean(outcome.all_passed));
    report.set("summary", summary);

    write_report_files(report, out_dir, &outcome.artifacts);
    outcome.report = report;
    return outcome;
}

// ---------------------------------------------------------------------------
// Golden reproductions

namespace {

struct Metric {
    std::string name;
    double value;
    double tol;
    bool passed() const { return value <= tol; }
};

ReportNode metrics_node(const std::vector<Metric>& metrics, bool& all) {
    ReportNode node;
    for (const auto& m : metrics) {
        ReportNode entry;
        entry.set("value", ReportNode::number(m.value));
        entry.set("tol", ReportNode::number(m.tol));
        entry.set("passed", ReportNode::boolean(m.passed()));
        all = all && m.passed();
        node.set(m.name, entry);
    }
    return node;
}

ReportNode reproduce_hyperbolic(bool& all_passed) {
    ReportNode node;
    for (double C : {0.5, 1.0, 2.0}) {
        auto builder = TransnormalBuilder::from_constant(WarpingProfile::reciprocal(), C, 1.0);
        Vector normal = Vector::Zero(3);
        normal(2) = 1.0;
        auto dist = DistanceField::analytic(BaseManifold::euclidean(3),
                                            SeedHypersurface::hyperplane(normal, 0.0));
        TransnormalField field(builder, dist);

        DeterministicRng rng(2026);
        double max_f = 0.0, max_grad = 0.0;
        for (int i = 0; i < 1000; ++i) {
            Vector p(3);
            p << rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(0.01, 3.0);
            const double closed = std::sqrt(2.0 * C * p(2) + 1.0);
            max_f = std::max(max_f, std::abs(field.value(p) - closed));
            Vector expected = Vector::Zero(3);
            expected(2) = C / closed;
            max_grad = std::max(max_grad, (field.gradient(p) - expected).norm());
        }
        bool ok = true;
        ReportNode entry = metrics_node({{"max_f_deviation", max_f, 1e-10},
                                         {"max_grad_deviation", max_grad, 1e-8}},
                                        ok);
        all_passed = all_passed && ok;
        char key[32];
        std::snprintf(key, sizeof key, "C=%g", C);
        node.set(key, entry);
    }
    return node;
}

ReportNode reproduce_munteanu(bool& all_passed) {
    const double theta = M_PI / 4;
    const double st = std::sin(theta);
    auto alpha = SphereCurve::great_circle({1, 0, 0}, {0, 1, 0});
    auto builder =
        TransnormalBuilder::from_theta(WarpingProfile::linear_over_sin(theta), theta, 1.0);
    auto dist = DistanceField::analytic(
        BaseManifold::sphere2(st),
        SeedHypersurface::spherical_curve(alpha.sample_scaled(st, 2048), st));
    TransnormalField field(builder, dist);

    double max_f = 0.0, max_angle = 0.0;
    for (int i = 0; i < 50; ++i)
        for (int j = 0; j < 50; ++j) {
            const double u = 1.0 + 2.0 * i / 49.0;
            const double v = 2.0 * M_PI * j / 49.0;
            const Eigen::Vector3d phi3 = munteanu_parametrize(theta, alpha, u, v) / u;
            Vector p(3);
            p << phi3(0), phi3(1), phi3(2);
            max_f = std::max(max_f, std::abs(field.value(p) - u));

            const double du = 1e-6 * (1 + u), dv = 1e-6;
            const Eigen::Vector3d ru = (munteanu_parametrize(theta, alpha, u + du, v) -
                                        munteanu_parametrize(theta, alpha, u - du, v)) /
                                       (2 * du);
            const Eigen::Vector3d rv = (munteanu_parametrize(theta, alpha, u, v + dv) -
                                        munteanu_parametrize(theta, alpha, u, v - dv)) /
                                       (2 * dv);
            const Eigen::Vector3d n = ru.cross(rv).normalized();
            const Eigen::Vector3d radial = munteanu_parametrize(theta, alpha, u, v).normalized();
            const double ang = std::acos(std::clamp(std::abs(n.dot(radial)), 0.0, 1.0));
            max_angle = std::max(max_angle, std::abs(ang - theta));
        }
    return metrics_node({{"max_f_deviation", max_f, 1e-8},
                         {"max_normal_angle_deviation", max_angle, 1e-6}},
                        all_passed);
}

ReportNode reproduce_dillen_graph(bool& all_passed) {
    ReportNode node;
    const double theta = M_PI / 3;
    const double st = std::sin(theta);
    const char* names[2] = {"rho=1/t", "rho=1"};
    const WarpingProfile profiles[2] = {WarpingProfile::reciprocal(),
                                        WarpingProfile::constant(1.0)};
    for (int variant = 0; variant < 2; ++variant) {
        const WarpingProfile& profile = profiles[variant];
        auto g = [](double) { return 1.0; };
        Vector center(2);
        center << -1.0, 0.0;
        auto builder = TransnormalBuilder::from_theta(profile, theta, 1.0);
        auto dist = DistanceField::analytic(BaseManifold::euclidean(2),
                                            SeedHypersurface::sphere_shell(center, 1.0));
        TransnormalField field(builder, dist);

        double max_f = 0.0;
        for (int i = 0; i < 50; ++i)
            for (int j = 0; j < 50; ++j) {
                const double u = (1.0 + 1.5 * i / 49.0) / st;
                const double v = 2.0 * M_PI * j / 49.0;
                const Eigen::Vector3d r = dillen_parametrize(theta, profile, g, u, v, 1.0);
                Vector p(2);
                p << r(1), r(2);
                max_f = std::max(max_f, std::abs(field.value(p) - u * st));
            }
        bool ok = true;
        node.set(names[variant], metrics_node({{"max_f_deviation", max_f, 1e-8}}, ok));
        all_passed = all_passed && ok;
    }
    return node;
}

ReportNode reproduce_dillen_cylinder(bool& all_passed) {
    ReportNode node;
    const double theta = M_PI / 4;
    const char* names[2] = {"rho=1/t", "rho=1"};
    const WarpingProfile profiles[2] = {WarpingProfile::reciprocal(),
                                        WarpingProfile::constant(1.0)};
    for (int variant = 0; variant < 2; ++variant) {
        const WarpingProfile& profile = profiles[variant];
        double max_G_dev = 0.0;
        for (int i = 0; i <= 100; ++i) {
            const double t = 1.0 + 1.5 * i / 100.0;
            const double G = dillen_cylinder_G(theta, profile, 1.0, t);
            max_G_dev = std::max(
                max_G_dev, std::abs(G - reciprocal_rho_integral(profile, std::tan(theta), 1.0, t)));
        }

        auto cyl = CAHypersurface::dillen_cylinder(theta, profile, 1.0);
        double lo = 10, hi = -10;
        for (int i = 0; i < 200; ++i) {
            const double t = 1.0 + 1.5 * (i % 20) / 19.0;
            const double y = -1.0 + 2.0 * (i / 20) / 9.0;
            Vector params(2);
            params << t, y;
            const double th = cyl.sample(params).theta;
            lo = std::min(lo, th);
            hi = std::max(hi, th);
        }
        bool ok = true;
        node.set(names[variant], metrics_node({{"max_G_deviation", max_G_dev, 1e-10},
                                               {"angle_spread", hi - lo, 1e-8}},
                                              ok));
        all_passed = all_passed && ok;
    }
    return node;
}

ReportNode reproduce_euclidean_helix(bool& all_passed) {
    const double theta = M_PI / 3;
    const double C = std::tan(theta);
    auto profile = WarpingProfile::constant(1.0);
    auto builder = TransnormalBuilder::from_constant(profile, C, 0.0);
    Vector normal(2);
    normal << 1.0, 0.0;
    auto dist = DistanceField::analytic(BaseManifold::euclidean(2),
                                        SeedHypersurface::hyperplane(normal, 0.0));
    TransnormalField field(builder, dist);
    WarpedProduct ambient(profile, BaseManifold::euclidean(2));
    auto graph = CAHypersurface::graph(ambient, field);

    DeterministicRng rng(7);
    double max_f = 0.0, theta_lo = 10, theta_hi = -10;
    const ScalarField sf = field.as_scalar_field();
    for (int i = 0; i < 1000; ++i) {
        Vector p(2);
        p << rng.uniform(0.1, 3.0), rng.uniform(-2.0, 2.0);
        max_f = std::max(max_f, std::abs(field.value(p) - C * p(0)));
        const double th = graph_normal_and_angle(sf, ambient, p).theta;
        theta_lo = std::min(theta_lo, th);
        theta_hi = std::max(theta_hi, th);
    }
    Vector start(2);
    start << 1.0, 0.0;
    const CurveResult curve = integral_curve_T(graph, start, 1.0, 1e-3);
    return metrics_node({{"max_f_deviation", max_f, 1e-12},
                         {"angle_spread", theta_hi - theta_lo, 1e-12},
                         {"angle_mean_deviation",
                          std::abs(0.5 * (theta_hi + theta_lo) - theta), 1e-12},
                         {"max_full_acceleration", curve.max_full_accel, 1e-6}},
                        all_passed);
}

}  // namespace

CommandOutcome cmd_reproduce(const std::string& example_id, const std::string& out_dir) {
    log_info("reproducing '" + example_id + "'");
    CommandOutcome outcome;
    ReportNode report;
    report.set("command", ReportNode::text("reproduce"));
    report.set("example", ReportNode::text(example_id));

    bool all = true;
    if (example_id == "hyperbolic")
        report.set("results", reproduce_hyperbolic(all));
    else if (example_id == "munteanu")
        report.set("results", reproduce_munteanu(all));
    else if (example_id == "dillen_graph")
        report.set("results", reproduce_dillen_graph(all));
    else if (example_id == "dillen_cylinder")
        report.set("results", reproduce_dillen_cylinder(all));
    else if (example_id == "euclidean_helix")
        report.set("results", reproduce_euclidean_helix(all));
    else
        throw ConfigError("unknown example id '" + example_id + "'", "reproduce");

    ReportNode summary;
    summary.set("all_passed", ReportNode::boolean(all));
    report.set("summary", summary);
    outcome.all_passed = all;
    outcome.checks_run = 1;
    write_report_files(report, out_dir, &outcome.artifacts);
    outcome.report = report;
    return outcome;
}

}  // namespace cahs
