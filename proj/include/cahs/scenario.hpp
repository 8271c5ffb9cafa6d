#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cahs/hypersurface.hpp"
#include "cahs/verify.hpp"

namespace cahs {

/// Ordered JSON value for reports. Doubles are printed with 17 significant
/// digits so identical runs serialize byte-identically.
class ReportNode {
public:
    ReportNode() : kind_(Kind::Object) {}

    static ReportNode number(double v);
    static ReportNode integer(long long v);
    static ReportNode boolean(bool v);
    static ReportNode text(std::string v);
    static ReportNode array();

    ReportNode& set(const std::string& key, ReportNode v);
    ReportNode& push(ReportNode v);

    std::string serialize(int indent = 0) const;
    /// Flat CSV rows "path,value" for every leaf.
    void csv_rows(const std::string& prefix, std::vector<std::string>& rows) const;

    bool is_object() const { return kind_ == Kind::Object; }
    const ReportNode* find(const std::string& key) const;

private:
    enum class Kind { Object, Array, Number, Integer, Bool, Text };
    Kind kind_;
    double num_ = 0.0;
    long long int_ = 0;
    bool bool_ = false;
    std::string text_;
    std::vector<std::pair<std::string, ReportNode>> members_;
    std::vector<ReportNode> items_;
};

/// Scenario description parsed from JSON. Unknown keys anywhere are errors
/// carrying the offending field path.
struct ScenarioConfig {
    std::string name = "scenario";

    // profile
    WarpingProfile::Kind profile_kind = WarpingProfile::Kind::Constant;
    double profile_value = 1.0;
    double profile_theta = 0.0;
    Interval profile_interval;
    bool profile_interval_given = false;
    std::string profile_csv;

    // base manifold
    BaseManifold::Kind base_kind = BaseManifold::Kind::EuclideanFlat;
    int base_dimension = 2;
    double base_radius = 1.0;

    // seed
    enum class SeedKind { None, Hyperplane, SphereShell, GreatCircle, GridLevelSet };
    SeedKind seed_kind = SeedKind::None;
    std::vector<double> seed_normal;
    double seed_offset = 0.0;
    std::vector<double> seed_center;
    double seed_radius = 1.0;
    std::vector<double> circle_a, circle_b;
    int circle_samples = 1024;
    std::string seed_mask_file;
    int seed_orientation = 1;

    // angle and base value
    std::optional<double> theta;
    std::optional<double> C;
    double s0 = 1.0;

    // surface
    std::string variant = "graph";
    double slice_t0 = 0.0;
    double dillen_g_constant = 1.0;
    double integral_base = 1.0;
    double g_integral_base = 0.0;

    // distance realization
    bool use_fmm = false;
    GridSpec fmm_grid;

    // sampling
    std::vector<std::pair<double, double>> box;
    int sample_count = 1000;
    int grid_u = 50, grid_v = 50;
    std::uint64_t seed_rng = 0;

    // checks: name -> (enabled, tolerances by key)
    struct CheckSpec {
        bool enabled = true;
        std::map<std::string, double> tols;
    };
    std::map<std::string, CheckSpec> checks;

    // outputs
    bool out_mesh = true;
    bool out_h_table = true;
    bool out_distance_csv = false;
    bool out_curves = false;

    static ScenarioConfig from_json_file(const std::string& path);
    static ScenarioConfig from_json_text(const std::string& text);
};

/// A constructed scenario, ready for measurement.
struct BuiltScenario {
    WarpedProduct ambient;
    std::optional<TransnormalBuilder> builder;
    std::optional<DistanceField> distance;
    std::optional<TransnormalField> field;
    CAHypersurface surface;
    double expected_theta = 0.0;
    bool expected_theta_known = false;
};

BuiltScenario build_scenario(const ScenarioConfig& config);

struct CommandOutcome {
    bool all_passed = true;
    int checks_run = 0;
    std::vector<std::string> artifacts;
    ReportNode report;
};

/// build: construct and write artifacts (mesh.obj/mesh.ply, h_table.csv,
/// distance.csv) into out_dir.
CommandOutcome cmd_build(const ScenarioConfig& config, const std::string& out_dir);

/// verify: run the enabled checks and write report.json / report.csv;
/// all_passed mirrors the exit-code contract.
CommandOutcome cmd_verify(const ScenarioConfig& config, const std::string& out_dir, int threads = 1);

/// reproduce: one of hyperbolic, munteanu, dillen_graph, dillen_cylinder,
/// euclidean_helix, compared against its closed forms.
CommandOutcome cmd_reproduce(const std::string& example_id, const std::string& out_dir);

void write_report_files(const ReportNode& report, const std::string& out_dir,
                        std::vector<std::string>* artifacts);

}  // namespace cahs
