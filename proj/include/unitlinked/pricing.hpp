#pragma once

#include <vector>

#include "unitlinked/market_models.hpp"
#include "unitlinked/mc_engine.hpp"
#include "unitlinked/mortality.hpp"

namespace unitlinked {

/// max(S_T, G).
double endowment_payoff(double terminal_stock, double guarantee);

/// Per-path D_{0,T} max(S_T, G): the contract value with survival ignored.
std::vector<double> discounted_endowment_payoffs(const PathSet& paths, double G);

McEstimate discounted_endowment_value(const PathSet& paths, double G);

/// Closed-form quote. The annuity factor is the expected discounted time
/// spent alive, int_0^T e^{-r s} p(x, x+s) ds; yearly = single / annuity.
struct BsPremium {
    double single = 0.0;
    double yearly = 0.0;
    double annuity = 0.0;
};

/// Monte Carlo quote with standard errors. yearly_se treats the annuity
/// factor as a fixed scale.
struct McPremium {
    double single = 0.0;
    double single_se = 0.0;
    double yearly = 0.0;
    double yearly_se = 0.0;
    double annuity = 0.0;
};

double annuity_factor_bs(double r, const GompertzMakehamFit& fit, double x,
                         double T);

/// Trapezoid of (mean pathwise discount at t_k) * p(x, x+t_k) over the grid.
double mc_annuity_factor_vh(const PathSet& paths, const GompertzMakehamFit& fit,
                            double x);

BsPremium pure_endowment_bs(const BlackScholesParams& p,
                            const GompertzMakehamFit& fit, double x, double T,
                            double G);

McPremium pure_endowment_vh(const PathSet& paths, const GompertzMakehamFit& fit,
                            double x, double G);

/// Endowment paying max(S_T, G_e) at T if alive plus max(G_d, S_s) at the
/// time of death s < T. With strict_printed the first term drops the
/// survival factor and the integrand carries an extra e^{-r s}.
BsPremium endowment_with_death_benefit_bs(const BlackScholesParams& p,
                                          const GompertzMakehamFit& fit,
                                          double x, double T, double G_e,
                                          double G_d,
                                          bool strict_printed = false);

McPremium endowment_with_death_benefit_vh(const PathSet& paths,
                                          const GompertzMakehamFit& fit,
                                          double x, double G_e, double G_d);

/// Single premiums of the pure endowment on an (age x guarantee) grid,
/// all cells priced from the same PathSet.
struct PriceSurface {
    double maturity = 0.0;
    std::vector<double> ages;
    std::vector<double> guarantees;
    std::vector<McEstimate> cells;  // cells[i_age * guarantees.size() + i_g]
};

PriceSurface price_surface(const PathSet& paths, const GompertzMakehamFit& fit,
                           const std::vector<double>& ages,
                           const std::vector<double>& guarantees);

}  // namespace unitlinked
