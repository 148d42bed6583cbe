#include "unitlinked/pricing.hpp"

#include <cmath>

#include "unitlinked/quadrature.hpp"

namespace unitlinked {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

// Trapezoid weight for node k on an (N+1)-node uniform grid.
double trapezoid_weight(std::size_t k, std::size_t n, double dt) {
    return (k == 0 || k == n) ? 0.5 * dt : dt;
}

}  // namespace

double endowment_payoff(double terminal_stock, double guarantee) {
    require(guarantee > 0.0, "endowment_payoff: guarantee must be > 0");
    return std::max(terminal_stock, guarantee);
}

std::vector<double> discounted_endowment_payoffs(const PathSet& paths, double G) {
    require(G > 0.0, "discounted_endowment_payoffs: guarantee must be > 0");
    const std::size_t n_steps = paths.grid.num_steps();
    std::vector<double> values = pathwise_discount(paths, n_steps);
    for (std::size_t i = 0; i < paths.n_paths; ++i)
        values[i] *= std::max(paths.get(paths.s, i, n_steps), G);
    return values;
}

McEstimate discounted_endowment_value(const PathSet& paths, double G) {
    const auto values = discounted_endowment_payoffs(paths, G);
    return mc_estimate(values);
}

double annuity_factor_bs(double r, const GompertzMakehamFit& fit, double x,
                         double T) {
    require(T > 0.0, "annuity_factor_bs: T must be > 0");
    return adaptive_simpson(
        [&](double s) { return std::exp(-r * s) * survival_probability(fit, x, s); },
        0.0, T, 1e-8);
}

double mc_annuity_factor_vh(const PathSet& paths, const GompertzMakehamFit& fit,
                            double x) {
    const std::size_t n = paths.grid.num_steps();
    const std::size_t n_paths = paths.n_paths;
    const double dt = paths.grid.dt();
    std::vector<double> mean_discount(n + 1, 0.0);
    for (std::size_t i = 0; i < n_paths; ++i) {
        double rate_sum = 0.0;
        mean_discount[0] += 1.0;
        for (std::size_t k = 1; k <= n; ++k) {
            rate_sum += paths.get(paths.r, i, k - 1);
            mean_discount[k] += std::exp(-rate_sum * dt);
        }
    }
    double annuity = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
        const double p = survival_probability(fit, x, paths.grid.node(k));
        annuity += trapezoid_weight(k, n, dt) *
                   (mean_discount[k] / static_cast<double>(n_paths)) * p;
    }
    return annuity;
}

BsPremium pure_endowment_bs(const BlackScholesParams& p,
                            const GompertzMakehamFit& fit, double x, double T,
                            double G) {
    require(T > 0.0, "pure_endowment_bs: T must be > 0");
    BsPremium quote;
    quote.single = bs_endowment(0.0, T, p.s0, G, p.r, p.sigma) *
                   survival_probability(fit, x, T);
    quote.annuity = annuity_factor_bs(p.r, fit, x, T);
    quote.yearly = quote.single / quote.annuity;
    return quote;
}

McPremium pure_endowment_vh(const PathSet& paths, const GompertzMakehamFit& fit,
                            double x, double G) {
    const double T = paths.grid.maturity();
    const double p_survive = survival_probability(fit, x, T);
    std::vector<double> values = discounted_endowment_payoffs(paths, G);
    for (double& v : values) v *= p_survive;
    const McEstimate est = mc_estimate(values);
    McPremium quote;
    quote.single = est.mean;
    quote.single_se = est.std_err;
    quote.annuity = mc_annuity_factor_vh(paths, fit, x);
    quote.yearly = quote.single / quote.annuity;
    quote.yearly_se = quote.single_se / quote.annuity;
    return quote;
}

BsPremium endowment_with_death_benefit_bs(const BlackScholesParams& p,
                                          const GompertzMakehamFit& fit,
                                          double x, double T, double G_e,
                                          double G_d, bool strict_printed) {
    require(T > 0.0, "endowment_with_death_benefit_bs: T must be > 0");
    const double endow = bs_endowment(0.0, T, p.s0, G_e, p.r, p.sigma);
    const double first =
        strict_printed ? endow : endow * survival_probability(fit, x, T);
    const auto integrand = [&](double s) {
        double v = bs_endowment(0.0, s, p.s0, G_d, p.r, p.sigma) *
                   survival_probability(fit, x, s) * hazard(fit, x + s);
        if (strict_printed) v *= std::exp(-p.r * s);
        return v;
    };
    BsPremium quote;
    quote.single = first + adaptive_simpson(integrand, 0.0, T, 1e-8);
    quote.annuity = annuity_factor_bs(p.r, fit, x, T);
    quote.yearly = quote.single / quote.annuity;
    return quote;
}

McPremium endowment_with_death_benefit_vh(const PathSet& paths,
                                          const GompertzMakehamFit& fit,
                                          double x, double G_e, double G_d) {
    require(G_e > 0.0, "endowment_with_death_benefit_vh: G_e must be > 0");
    require(G_d > 0.0, "endowment_with_death_benefit_vh: G_d must be > 0");
    const std::size_t n = paths.grid.num_steps();
    const std::size_t n_paths = paths.n_paths;
    const double dt = paths.grid.dt();

    std::vector<double> survive(n + 1), death_density(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        const double t = paths.grid.node(k);
        survive[k] = survival_probability(fit, x, t);
        death_density[k] = survive[k] * hazard(fit, x + t);
    }

    std::vector<double> totals(n_paths);
    for (std::size_t i = 0; i < n_paths; ++i) {
        double rate_sum = 0.0;
        double total = trapezoid_weight(0, n, dt) *
                       std::max(G_d, paths.get(paths.s, i, 0)) * death_density[0];
        for (std::size_t k = 1; k <= n; ++k) {
            rate_sum += paths.get(paths.r, i, k - 1);
            const double discount = std::exp(-rate_sum * dt);
            total += trapezoid_weight(k, n, dt) * discount *
                     std::max(G_d, paths.get(paths.s, i, k)) * death_density[k];
            if (k == n)
                total += discount * std::max(paths.get(paths.s, i, k), G_e) *
                         survive[n];
        }
        totals[i] = total;
    }
    const McEstimate est = mc_estimate(totals);
    McPremium quote;
    quote.single = est.mean;
    quote.single_se = est.std_err;
    quote.annuity = mc_annuity_factor_vh(paths, fit, x);
    quote.yearly = quote.single / quote.annuity;
    quote.yearly_se = quote.single_se / quote.annuity;
    return quote;
}

PriceSurface price_surface(const PathSet& paths, const GompertzMakehamFit& fit,
                           const std::vector<double>& ages,
                           const std::vector<double>& guarantees) {
    require(!ages.empty(), "price_surface: age grid is empty");
    require(!guarantees.empty(), "price_surface: guarantee grid is empty");
    const double T = paths.grid.maturity();
    PriceSurface surface;
    surface.maturity = T;
    surface.ages = ages;
    surface.guarantees = guarantees;
    surface.cells.resize(ages.size() * guarantees.size());

    // One estimate per guarantee; ages only scale it by the survival factor,
    // so every cell shares the same draws.
    std::vector<McEstimate> per_guarantee(guarantees.size());
    for (std::size_t j = 0; j < guarantees.size(); ++j)
        per_guarantee[j] = discounted_endowment_value(paths, guarantees[j]);
    for (std::size_t i = 0; i < ages.size(); ++i) {
        const double p = survival_probability(fit, ages[i], T);
        for (std::size_t j = 0; j < guarantees.size(); ++j) {
            const McEstimate& e = per_guarantee[j];
            surface.cells[i * guarantees.size() + j] = {p * e.mean, p * e.std_err};
        }
    }
    return surface;
}

}  // namespace unitlinked
