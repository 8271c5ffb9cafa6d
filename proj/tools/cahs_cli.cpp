#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cahs/errors.hpp"
#include "cahs/scenario.hpp"

namespace {

int run(int argc, char** argv) {
    CLI::App app{"constant angle hypersurface construction and verification"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", example_id;
    long long seed = -1;
    int threads = 1;

    auto add_common = [&](CLI::App* cmd, bool needs_config) {
        if (needs_config)
            cmd->add_option("--config", config_path, "scenario config JSON")->required();
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--seed", seed, "override the sampling seed");
        cmd->add_option("--threads", threads, "worker threads for sampling loops");
    };

    CLI::App* build = app.add_subcommand("build", "construct the surface and write artifacts");
    add_common(build, true);
    CLI::App* verify = app.add_subcommand("verify", "run the verification checks");
    add_common(verify, true);
    CLI::App* reproduce = app.add_subcommand("reproduce", "run a published construction");
    reproduce
        ->add_option("example", example_id,
                     "one of hyperbolic, munteanu, dillen_graph, dillen_cylinder, euclidean_helix")
        ->required();
    add_common(reproduce, false);

    CLI11_PARSE(app, argc, argv);

    cahs::CommandOutcome outcome;
    if (build->parsed() || verify->parsed()) {
        cahs::ScenarioConfig cfg = cahs::ScenarioConfig::from_json_file(config_path);
        if (seed >= 0) cfg.seed_rng = static_cast<std::uint64_t>(seed);
        outcome = build->parsed() ? cahs::cmd_build(cfg, out_dir)
                                  : cahs::cmd_verify(cfg, out_dir, threads);
    } else {
        outcome = cahs::cmd_reproduce(example_id, out_dir);
    }

    for (const auto& artifact : outcome.artifacts) std::cout << artifact << "\n";
    if (verify->parsed() || reproduce->parsed())
        std::cout << (outcome.all_passed ? "PASS" : "FAIL") << "\n";
    return outcome.all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const cahs::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
