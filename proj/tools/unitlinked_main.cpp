#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "unitlinked/commands.hpp"

namespace {

// 0 ok, 2 bad input or config, 3 numerical failure.
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

}  // namespace

int main(int argc, char** argv) {
    using namespace unitlinked;

    CLI::App app{"Unit-linked life insurance pricer (Vasicek-Heston + Black-Scholes)"};
    app.require_subcommand(1);

    std::string config_path;
    std::uint64_t seed = 0;
    std::size_t paths = 0;
    std::size_t steps = 0;
    std::string out_dir;
    bool strict_printed = false;

    auto* config_opt =
        app.add_option("--config", config_path, "TOML run configuration file");
    auto* seed_opt = app.add_option("--seed", seed, "RNG seed override");
    auto* paths_opt = app.add_option("--paths", paths, "Monte Carlo path count");
    auto* steps_opt =
        app.add_option("--steps", steps, "Euler steps (0 = ceil(252 T))");
    auto* out_opt = app.add_option("--out", out_dir, "output directory");
    app.add_flag("--strict-paper", strict_printed,
                 "use the printed Black-Scholes death-benefit premium formula");

    auto* fit = app.add_subcommand("fit-mortality",
                                   "fit a + b e^{ct} to a mortality table");
    auto* compare = app.add_subcommand(
        "compare-models", "survival-free endowment values under both models");
    auto* surface = app.add_subcommand(
        "price-surface", "pure endowment premiums over an age x guarantee grid");
    auto* distribution = app.add_subcommand(
        "distribution", "per-path discounted payoffs and QQ data");
    auto* premiums = app.add_subcommand(
        "premiums", "single and yearly premiums under both models");
    for (auto* sub : {fit, compare, surface, distribution, premiums})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        CliOverrides overrides;
        if (config_opt->count()) overrides.config_path = config_path;
        if (seed_opt->count()) overrides.seed = seed;
        if (paths_opt->count()) overrides.paths = paths;
        if (steps_opt->count()) overrides.steps = steps;
        if (out_opt->count()) overrides.out_dir = out_dir;
        overrides.strict_printed_formula = strict_printed;
        const RunConfig cfg = resolve_config(overrides);

        if (app.got_subcommand(fit)) cmd_fit_mortality(cfg);
        else if (app.got_subcommand(compare)) cmd_compare_models(cfg);
        else if (app.got_subcommand(surface)) cmd_price_surface(cfg);
        else if (app.got_subcommand(distribution)) cmd_distribution(cfg);
        else if (app.got_subcommand(premiums)) cmd_premiums(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
