#include "unitlinked/market_models.hpp"

#include <cmath>
#include <string>

namespace unitlinked {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

void VasicekParams::validate() const {
    require(std::isfinite(k) && k > 0.0, "vasicek: k must be > 0");
    require(std::isfinite(theta), "vasicek: theta must be finite");
    // sigma = 0 is admitted so the model can degenerate to a deterministic rate.
    require(std::isfinite(sigma) && sigma >= 0.0, "vasicek: sigma must be >= 0");
    require(std::isfinite(r0), "vasicek: r0 must be finite");
}

void HestonParams::validate() const {
    require(std::isfinite(kappa) && kappa > 0.0, "heston: kappa must be > 0");
    require(std::isfinite(nu_bar) && nu_bar >= 0.0, "heston: nu_bar must be >= 0");
    require(std::isfinite(eta) && eta >= 0.0, "heston: eta must be >= 0");
    require(std::isfinite(nu0) && nu0 >= 0.0, "heston: nu0 must be >= 0");
    require(std::isfinite(mu), "heston: mu must be finite");
    require(std::isfinite(s0) && s0 > 0.0, "heston: s0 must be > 0");
}

void BlackScholesParams::validate() const {
    require(std::isfinite(s0) && s0 > 0.0, "blackscholes: s0 must be > 0");
    require(std::isfinite(r), "blackscholes: r must be finite");
    // sigma = 0 degenerates to the deterministic account; closed-form pricing
    // rejects it at the operation level.
    require(std::isfinite(sigma) && sigma >= 0.0, "blackscholes: sigma must be >= 0");
}

double vasicek_b(double t, double T, const VasicekParams& p) {
    require(t >= 0.0 && t <= T, "vasicek_b: need 0 <= t <= T");
    return -std::expm1(-p.k * (T - t)) / p.k;
}

double vasicek_a(double t, double T, const VasicekParams& p) {
    const double B = vasicek_b(t, T, p);
    const double k = p.k;
    const double s2 = p.sigma * p.sigma;
    return std::exp((p.theta - s2 / (2.0 * k * k)) * (B + t - T) -
                    s2 / (4.0 * k) * B * B);
}

double vasicek_zcb_price(double t, double T, double r_t, const VasicekParams& p) {
    return vasicek_a(t, T, p) * std::exp(-vasicek_b(t, T, p) * r_t);
}

RateMoments vasicek_conditional_moments(double t, double T, double r_t,
                                        const VasicekParams& p) {
    require(t <= T, "vasicek_conditional_moments: t must be <= T");
    const double decay = std::exp(-p.k * (T - t));
    RateMoments m;
    m.mean = decay * r_t + p.theta * (1.0 - decay);
    m.variance = p.sigma * p.sigma / (2.0 * p.k) * (1.0 - decay * decay);
    return m;
}

double forward_variance_from_nu(double t, double u, double nu_t,
                                const HestonParams& p) {
    require(t <= u, "forward_variance_from_nu: t must be <= u");
    return p.nu_bar + std::exp(-p.kappa * (u - t)) * (nu_t - p.nu_bar);
}

double nu_from_forward_variance(double t, double u, double xi,
                                const HestonParams& p) {
    require(t <= u, "nu_from_forward_variance: t must be <= u");
    return p.nu_bar + std::exp(p.kappa * (u - t)) * (xi - p.nu_bar);
}

double lambda_heston(double t, double u, double xi, const HestonParams& p) {
    const double nu = nu_from_forward_variance(t, u, xi, p);
    require(nu >= 0.0, "lambda_heston: recovered variance is negative");
    return std::exp(-p.kappa * (u - t)) * p.eta * std::sqrt(nu);
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

// Wichura's PPND16 rational approximations, relative error ~1e-16.
double normal_quantile(double p) {
    require(p > 0.0 && p < 1.0, "normal_quantile: p must be in (0, 1)");
    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        const double num =
            (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                  6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
              1.3314166789178437745e2) * r + 3.3871328727963666080e0);
        const double den =
            (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                  3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
              4.2313330701600911252e1) * r + 1.0);
        return q * num / den;
    }
    double r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        const double num =
            (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
              4.63033784615654529590e0) * r + 1.42343711074968357734e0);
        const double den =
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
              2.05319162663775882187e0) * r + 1.0);
        val = num / den;
    } else {
        r -= 5.0;
        const double num =
            (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
              5.46378491116411436990e0) * r + 6.65790464350110377720e0);
        const double den =
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
        val = num / den;
    }
    return (q < 0.0) ? -val : val;
}

double bs_call(double t, double T, double S, double K, double r, double sigma) {
    require(S > 0.0, "bs_call: S must be > 0");
    require(K > 0.0, "bs_call: K must be > 0");
    require(sigma > 0.0, "bs_call: sigma must be > 0");
    const double tau = T - t;
    if (tau <= 0.0) return std::max(S - K, 0.0);
    const double sqt = sigma * std::sqrt(tau);
    const double d1 = (std::log(S / K) + (r + 0.5 * sigma * sigma) * tau) / sqt;
    const double d2 = d1 - sqt;
    return normal_cdf(d1) * S - normal_cdf(d2) * K * std::exp(-r * tau);
}

double bs_endowment(double t, double T, double S, double G, double r,
                    double sigma) {
    require(S > 0.0, "bs_endowment: S must be > 0");
    require(G > 0.0, "bs_endowment: G must be > 0");
    require(sigma > 0.0, "bs_endowment: sigma must be > 0");
    const double tau = T - t;
    if (tau <= 0.0) return std::max(S, G);
    const double sqt = sigma * std::sqrt(tau);
    const double d1 = (std::log(S / G) + (r + 0.5 * sigma * sigma) * tau) / sqt;
    const double d2 = d1 - sqt;
    return normal_cdf(d1) * S + G * std::exp(-r * tau) * normal_cdf(-d2);
}

}  // namespace unitlinked
