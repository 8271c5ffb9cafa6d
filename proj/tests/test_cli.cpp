#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cahs/errors.hpp"
#include "cahs/scenario.hpp"

using namespace cahs;

namespace {

const char* kSmallScenario = R"({
  "name": "cli-test",
  "profile": {"kind": "reciprocal"},
  "base": {"kind": "euclidean", "dimension": 3},
  "seed": {"kind": "hyperplane", "normal": [0, 0, 1], "offset": 0},
  "angle": {"C": 1.0},
  "s0": 1.0,
  "surface": {"variant": "graph"},
  "sampling": {"box": [[-1, 1], [-1, 1], [0.1, 2]], "count": 50, "seed": 3},
  "checks": {
    "principal_direction": {"enabled": false},
    "geodesic": {"enabled": false},
    "minimality": {"enabled": false}
  },
  "output": {"mesh": false, "h_table": true}
})";

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("config validation reports offending field paths") {
    try {
        ScenarioConfig::from_json_text(R"({"profile": {"kind": "reciprocal", "bogus": 1}})");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.path == "profile.bogus");
    }

    try {
        ScenarioConfig::from_json_text(R"({"angle": {"theta": 0.5, "C": 1.0}})");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.path == "angle");
    }

    CHECK_THROWS_AS(ScenarioConfig::from_json_text(R"({"surface": {"variant": "wibble"}})"),
                    ConfigError);
    CHECK_THROWS_AS(ScenarioConfig::from_json_text("not json"), ConfigError);
    CHECK_THROWS_AS(ScenarioConfig::from_json_text(R"({"unknown_top": 1})"), ConfigError);

    // A graph variant without an angle cannot be built.
    auto cfg = ScenarioConfig::from_json_text(R"({"surface": {"variant": "graph"}})");
    CHECK_THROWS_AS(build_scenario(cfg), ConfigError);
}

TEST_CASE("shipped scenario configs parse") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::path(CAHS_SOURCE_DIR) / "scenarios";
    int parsed = 0;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() != ".json") continue;
        CHECK_NOTHROW(ScenarioConfig::from_json_file(entry.path().string()));
        ++parsed;
    }
    CHECK(parsed >= 4);
}

TEST_CASE("verify is deterministic: identical config and seed, identical bytes") {
    auto cfg = ScenarioConfig::from_json_text(kSmallScenario);
    auto out1 = cmd_verify(cfg, "cli_det_a");
    auto out2 = cmd_verify(cfg, "cli_det_b");
    CHECK(out1.all_passed);
    CHECK(out2.all_passed);
    CHECK(slurp("cli_det_a/report.json") == slurp("cli_det_b/report.json"));
    CHECK(slurp("cli_det_a/report.csv") == slurp("cli_det_b/report.csv"));
    CHECK(!slurp("cli_det_a/report.json").empty());

    // A different seed moves the sample values.
    auto cfg2 = cfg;
    cfg2.seed_rng = 99;
    cmd_verify(cfg2, "cli_det_c");
    CHECK(slurp("cli_det_a/report.json") != slurp("cli_det_c/report.json"));

    std::filesystem::remove_all("cli_det_a");
    std::filesystem::remove_all("cli_det_b");
    std::filesystem::remove_all("cli_det_c");
}

TEST_CASE("multithreaded verify matches the single-threaded report") {
    auto cfg = ScenarioConfig::from_json_text(kSmallScenario);
    cmd_verify(cfg, "cli_thr_1", 1);
    cmd_verify(cfg, "cli_thr_2", 2);
    CHECK(slurp("cli_thr_1/report.json") == slurp("cli_thr_2/report.json"));
    std::filesystem::remove_all("cli_thr_1");
    std::filesystem::remove_all("cli_thr_2");
}

TEST_CASE("build writes the declared artifacts") {
    auto cfg = ScenarioConfig::from_json_text(R"({
      "name": "build-test",
      "profile": {"kind": "constant", "value": 1.0},
      "base": {"kind": "euclidean", "dimension": 2},
      "seed": {"kind": "sphere_shell", "center": [0, 0], "radius": 0.5},
      "angle": {"C": 1.0},
      "s0": 0.0,
      "surface": {"variant": "graph"},
      "sampling": {"box": [[0.7, 2.0], [0.7, 2.0]], "grid": [16, 16]},
      "output": {"mesh": true, "h_table": true}
    })");
    auto outcome = cmd_build(cfg, "cli_build");
    CHECK(std::filesystem::exists("cli_build/mesh.obj"));
    CHECK(std::filesystem::exists("cli_build/mesh.ply"));
    CHECK(std::filesystem::exists("cli_build/h_table.csv"));
    CHECK(outcome.artifacts.size() >= 3);
    std::filesystem::remove_all("cli_build");
}

TEST_CASE("failing tolerances drive all_passed false") {
    auto cfg = ScenarioConfig::from_json_text(kSmallScenario);
    cfg.checks["angle_constancy"].tols["tol_mean"] = 1e-30;
    cfg.checks["angle_constancy"].tols["tol_spread"] = 1e-30;
    auto outcome = cmd_verify(cfg, "cli_fail");
    CHECK(!outcome.all_passed);
    std::filesystem::remove_all("cli_fail");
}

TEST_CASE("unknown reproduce id is a config error") {
    CHECK_THROWS_AS(cmd_reproduce("nonsense", "cli_rep"), ConfigError);
}
