#include "unitlinked/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "unitlinked/io.hpp"
#include "unitlinked/mc_engine.hpp"
#include "unitlinked/mortality.hpp"
#include "unitlinked/pricing.hpp"

namespace unitlinked {

namespace {

std::optional<std::uint64_t> seed_from_env() {
    const char* raw = std::getenv("UNITLINKED_SEED");
    if (!raw) return std::nullopt;
    const std::string text(raw);
    std::uint64_t v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw std::invalid_argument("UNITLINKED_SEED is not a non-negative integer: '" +
                                    text + "'");
    return v;
}

GompertzMakehamFit load_and_fit(const RunConfig& cfg) {
    if (cfg.mortality_table.empty())
        throw std::invalid_argument(
            "this command needs a mortality table; set [mortality].table");
    const auto rows = load_mortality_table_file(cfg.mortality_table);
    return fit_gompertz_makeham(empirical_hazard(rows), cfg.window_lo,
                                cfg.window_hi);
}

TimeGrid grid_for(const RunConfig& cfg, double maturity) {
    const std::size_t steps =
        cfg.steps == 0 ? default_num_steps(maturity) : cfg.steps;
    return TimeGrid(maturity, steps);
}

void require_maturities(const RunConfig& cfg) {
    if (cfg.maturities.empty())
        throw std::invalid_argument("config: maturities must not be empty");
}

void finish(const RunConfig& cfg, OutputBundle& bundle) {
    bundle.add("resolved_config.toml", cfg.to_toml());
    bundle.write(cfg.out_dir);
}

std::string fd(double x) { return format_double(x); }

}  // namespace

std::vector<QqPoint> qq_against_normal(std::span<const double> values) {
    const McEstimate est = mc_estimate(values);
    const double n = static_cast<double>(values.size());
    const double sd = est.std_err * std::sqrt(n);
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<QqPoint> points(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double level = (static_cast<double>(i) + 0.5) / n;
        points[i] = {normal_quantile(level), (sorted[i] - est.mean) / sd};
    }
    return points;
}

RunConfig resolve_config(const CliOverrides& o) {
    ParsedRunConfig parsed;
    if (!o.config_path.empty()) parsed = load_run_config_file(o.config_path);
    RunConfig cfg = parsed.config;
    if (o.seed) {
        cfg.seed = *o.seed;
    } else if (!parsed.seed_in_file) {
        if (const auto env = seed_from_env()) cfg.seed = *env;
    }
    if (o.paths) cfg.paths = *o.paths;
    if (o.steps) cfg.steps = *o.steps;
    if (o.out_dir) cfg.out_dir = *o.out_dir;
    if (o.strict_printed_formula) cfg.strict_printed_formula = true;
    cfg.validate();
    return cfg;
}

void cmd_fit_mortality(const RunConfig& cfg) {
    const GompertzMakehamFit fit = load_and_fit(cfg);
    const auto rows = load_mortality_table_file(cfg.mortality_table);

    std::string fit_csv = "a,b,c,window_lo,window_hi,sse\n";
    fit_csv += fd(fit.a) + "," + fd(fit.b) + "," + fd(fit.c) + "," +
               fd(fit.window_lo) + "," + fd(fit.window_hi) + "," + fd(fit.sse) +
               "\n";

    std::string curve = "age,fitted_hazard\n";
    for (int age = 0; age <= 100; ++age)
        curve += std::to_string(age) + "," + fd(hazard(fit, age)) + "\n";

    std::string empirical = "age,rate\n";
    for (const auto& o : empirical_hazard(rows))
        empirical += fd(o.age) + "," + fd(o.rate) + "\n";

    OutputBundle bundle;
    bundle.add("fit.csv", std::move(fit_csv));
    bundle.add("hazard_curve.csv", std::move(curve));
    bundle.add("empirical_hazard.csv", std::move(empirical));
    finish(cfg, bundle);
}

void cmd_compare_models(const RunConfig& cfg) {
    require_maturities(cfg);
    std::string csv = "T,bs_price,vh_price,vh_stderr\n";
    for (const double T : cfg.maturities) {
        const PathSet paths = simulate_vh_paths(cfg.vasicek, cfg.heston,
                                                grid_for(cfg, T), cfg.paths,
                                                cfg.seed);
        const McEstimate vh = discounted_endowment_value(paths, cfg.guarantee);
        const double bs = bs_endowment(0.0, T, cfg.blackscholes.s0, cfg.guarantee,
                                       cfg.blackscholes.r, cfg.blackscholes.sigma);
        csv += fd(T) + "," + fd(bs) + "," + fd(vh.mean) + "," + fd(vh.std_err) +
               "\n";
    }
    OutputBundle bundle;
    bundle.add("compare_models.csv", std::move(csv));
    finish(cfg, bundle);
}

void cmd_price_surface(const RunConfig& cfg) {
    require_maturities(cfg);
    const GompertzMakehamFit fit = load_and_fit(cfg);
    std::string csv = "T,age,guarantee,premium,stderr\n";
    for (const double T : cfg.maturities) {
        const PathSet paths = simulate_vh_paths(cfg.vasicek, cfg.heston,
                                                grid_for(cfg, T), cfg.paths,
                                                cfg.seed);
        const PriceSurface surface =
            price_surface(paths, fit, cfg.ages, cfg.guarantees);
        for (std::size_t i = 0; i < surface.ages.size(); ++i)
            for (std::size_t j = 0; j < surface.guarantees.size(); ++j) {
                const McEstimate& cell =
                    surface.cells[i * surface.guarantees.size() + j];
                csv += fd(T) + "," + fd(surface.ages[i]) + "," +
                       fd(surface.guarantees[j]) + "," + fd(cell.mean) + "," +
                       fd(cell.std_err) + "\n";
            }
    }
    OutputBundle bundle;
    bundle.add("price_surface.csv", std::move(csv));
    finish(cfg, bundle);
}

void cmd_distribution(const RunConfig& cfg) {
    require_maturities(cfg);
    std::string payoff_csv = "T,path,discounted_payoff\n";
    std::string qq_csv = "T,index,normal_quantile,sample_quantile\n";
    for (const double T : cfg.maturities) {
        const PathSet paths = simulate_vh_paths(cfg.vasicek, cfg.heston,
                                                grid_for(cfg, T), cfg.paths,
                                                cfg.seed);
        const std::vector<double> values =
            discounted_endowment_payoffs(paths, cfg.guarantee);
        for (std::size_t i = 0; i < values.size(); ++i)
            payoff_csv += fd(T) + "," + std::to_string(i) + "," + fd(values[i]) +
                          "\n";

        const auto points = qq_against_normal(values);
        for (std::size_t i = 0; i < points.size(); ++i)
            qq_csv += fd(T) + "," + std::to_string(i) + "," +
                      fd(points[i].normal_q) + "," + fd(points[i].sample_q) + "\n";
    }
    OutputBundle bundle;
    bundle.add("distribution_payoffs.csv", std::move(payoff_csv));
    bundle.add("distribution_qq.csv", std::move(qq_csv));
    finish(cfg, bundle);
}

void cmd_premiums(const RunConfig& cfg) {
    require_maturities(cfg);
    const GompertzMakehamFit fit = load_and_fit(cfg);
    std::string csv = "T,bs_single,vh_single,vh_stderr,bs_yearly,vh_yearly\n";
    for (const double T : cfg.maturities) {
        const PathSet paths = simulate_vh_paths(cfg.vasicek, cfg.heston,
                                                grid_for(cfg, T), cfg.paths,
                                                cfg.seed);
        BsPremium bs;
        McPremium vh;
        if (cfg.death_benefit) {
            bs = endowment_with_death_benefit_bs(
                cfg.blackscholes, fit, cfg.age, T, cfg.guarantee,
                cfg.guarantee_death, cfg.strict_printed_formula);
            vh = endowment_with_death_benefit_vh(paths, fit, cfg.age,
                                                 cfg.guarantee,
                                                 cfg.guarantee_death);
        } else {
            bs = pure_endowment_bs(cfg.blackscholes, fit, cfg.age, T,
                                   cfg.guarantee);
            vh = pure_endowment_vh(paths, fit, cfg.age, cfg.guarantee);
        }
        csv += fd(T) + "," + fd(bs.single) + "," + fd(vh.single) + "," +
               fd(vh.single_se) + "," + fd(bs.yearly) + "," + fd(vh.yearly) +
               "\n";
    }
    OutputBundle bundle;
    bundle.add("premiums.csv", std::move(csv));
    finish(cfg, bundle);
}

}  // namespace unitlinked
