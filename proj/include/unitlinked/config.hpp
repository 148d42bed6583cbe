#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "unitlinked/market_models.hpp"

namespace unitlinked {

/// Everything a run needs. Defaults reproduce the model-comparison setup:
/// S0 = 100, guarantee 100, maturities {10, 20, 30, 40}, 5000 paths.
struct RunConfig {
    VasicekParams vasicek;
    HestonParams heston;
    BlackScholesParams blackscholes;

    double age = 30.0;                 // insured age for premium quotes
    std::vector<double> ages;          // age grid for surfaces
    double guarantee = 100.0;          // endowment guarantee G_e
    std::vector<double> guarantees;    // guarantee grid for surfaces
    double guarantee_death = 100.0;    // death benefit guarantee G_d
    bool death_benefit = false;
    bool strict_printed_formula = false;
    std::vector<double> maturities = {10.0, 20.0, 30.0, 40.0};

    std::size_t paths = 5000;
    std::size_t steps = 0;             // 0: use ceil(252 T) per maturity
    std::uint64_t seed = 12345;

    std::string mortality_table;       // CSV path; empty if a verb does not need it
    double window_lo = 9.0;            // fit window in years of age
    double window_hi = 89.0;

    std::string out_dir = ".";

    bool operator==(const RunConfig&) const = default;

    /// Model parameters plus grid sanity. Field combinations specific to one
    /// verb (e.g. a non-empty age grid) are checked by that verb.
    void validate() const;

    /// Canonical TOML echo; parsing it back yields an equal RunConfig.
    std::string to_toml() const;
};

struct ParsedRunConfig {
    RunConfig config;
    bool seed_in_file = false;
};

/// Parses the TOML subset used for run configs: [section], key = value with
/// number / bool / quoted string / one-line number array values, # comments.
/// Unknown sections or keys and duplicate keys are rejected with the line
/// number; source_name prefixes every error.
ParsedRunConfig parse_run_config(const std::string& text,
                                 const std::string& source_name);

/// Reads and parses a config file. A relative mortality table path is
/// resolved against the directory containing the file.
ParsedRunConfig load_run_config_file(const std::string& path);

}  // namespace unitlinked
