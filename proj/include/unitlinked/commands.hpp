#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "unitlinked/config.hpp"

namespace unitlinked {

/// One point of a normal QQ plot: theoretical quantile at level (i + 1/2)/n
/// against the sample quantile standardised by the sample mean and sd.
struct QqPoint {
    double normal_q = 0.0;
    double sample_q = 0.0;
};

std::vector<QqPoint> qq_against_normal(std::span<const double> values);

/// Flag-level overrides applied on top of the config file (or the built-in
/// defaults when no file is given). Seed priority: --seed, then the config
/// file, then the UNITLINKED_SEED environment variable, then the default.
struct CliOverrides {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> paths;
    std::optional<std::size_t> steps;
    std::optional<std::string> out_dir;
    bool strict_printed_formula = false;
};

RunConfig resolve_config(const CliOverrides& o);

// Each command validates what it needs, computes, and writes its CSV outputs
// plus resolved_config.toml and manifest.csv into the output directory.
void cmd_fit_mortality(const RunConfig& cfg);
void cmd_compare_models(const RunConfig& cfg);
void cmd_price_surface(const RunConfig& cfg);
void cmd_distribution(const RunConfig& cfg);
void cmd_premiums(const RunConfig& cfg);

}  // namespace unitlinked
