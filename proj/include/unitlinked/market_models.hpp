#pragma once

#include <stdexcept>

namespace unitlinked {

// Short-rate model dr = k(theta - r)dt + sigma dW0.
struct VasicekParams {
    double k = 0.3;       // mean-reversion speed (1/year)
    double theta = 0.01;  // long-run rate level
    double sigma = 0.02;  // rate volatility
    double r0 = 0.01;     // initial short rate

    void validate() const;
    bool operator==(const VasicekParams&) const = default;
};

// Stock/variance model dS = mu S dt + S sqrt(nu) dW1,
// dnu = -kappa(nu - nu_bar)dt + eta sqrt(nu) dW2.
struct HestonParams {
    double kappa = 1e-3;   // variance mean-reversion speed (1/year)
    double nu_bar = 0.01;  // long-run variance level
    double eta = 0.01;     // vol-of-vol
    double nu0 = 0.04;     // initial instantaneous variance
    double mu = 0.015;     // real-world stock drift
    double s0 = 100.0;     // initial stock price

    void validate() const;
    bool operator==(const HestonParams&) const = default;
};

struct BlackScholesParams {
    double s0 = 100.0;    // initial stock price
    double r = 0.01;      // constant short rate
    double sigma = 0.04;  // constant volatility

    void validate() const;
    bool operator==(const BlackScholesParams&) const = default;
};

/// B(t,T) = (1 - e^{-k(T-t)})/k. Zero at t = T, bounded by T - t.
double vasicek_b(double t, double T, const VasicekParams& p);

/// A(t,T) = exp((theta - sigma^2/(2k^2))(B(t,T) + t - T) - sigma^2/(4k) B(t,T)^2).
double vasicek_a(double t, double T, const VasicekParams& p);

/// Zero-coupon bond price P(t,T) = A(t,T) e^{-B(t,T) r_t}.
double vasicek_zcb_price(double t, double T, double r_t, const VasicekParams& p);

struct RateMoments {
    double mean;
    double variance;
};

/// Conditional law of r_T given r_t: normal with
/// mean e^{-k(T-t)} r_t + theta(1 - e^{-k(T-t)}) and
/// variance sigma^2/(2k) (1 - e^{-2k(T-t)}).
RateMoments vasicek_conditional_moments(double t, double T, double r_t,
                                        const VasicekParams& p);

/// Forward variance quote xi_{t,u} = nu_bar + e^{-kappa(u-t)}(nu_t - nu_bar).
double forward_variance_from_nu(double t, double u, double nu_t,
                                const HestonParams& p);

/// Inverse map: nu_t = nu_bar + e^{kappa(u-t)}(xi_{t,u} - nu_bar).
double nu_from_forward_variance(double t, double u, double xi,
                                const HestonParams& p);

/// Diffusion coefficient of the forward variance quote,
/// lambda(t,u,xi) = e^{-kappa(u-t)} eta sqrt(nu_t) with nu_t recovered from xi.
/// Throws if the recovered instantaneous variance is negative.
double lambda_heston(double t, double u, double xi, const HestonParams& p);

/// Standard normal distribution function, absolute error below 1e-12 on [-8, 8].
double normal_cdf(double x);

/// Inverse of normal_cdf on (0, 1).
double normal_quantile(double p);

/// European call price; for t >= T returns the intrinsic value max(S - K, 0).
double bs_call(double t, double T, double S, double K, double r, double sigma);

/// Pure endowment value Phi(d1) S + G e^{-r(T-t)} Phi(-d2);
/// for t >= T returns the terminal payoff max(S, G).
double bs_endowment(double t, double T, double S, double G, double r,
                    double sigma);

}  // namespace unitlinked
