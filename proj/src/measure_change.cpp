#include "unitlinked/measure_change.hpp"

#include <cmath>

namespace unitlinked {

double gamma1(double r, double mu, double nu) {
    if (!(nu > 0.0)) throw std::invalid_argument("gamma1: nu must be > 0");
    return (r - mu) / std::sqrt(nu);
}

double gamma2(double t, double T, double r, double xi, double nu,
              const HestonParams& p) {
    if (t > T) throw std::invalid_argument("gamma2: t must be <= T");
    if (!(nu > 0.0)) throw std::invalid_argument("gamma2: nu must be > 0");
    if (!(p.eta > 0.0)) throw std::invalid_argument("gamma2: eta must be > 0");
    return xi * r / (p.eta * std::exp(-p.kappa * (T - t)) * std::sqrt(nu));
}

double gamma0(double t, double T, double r, const VasicekParams& p) {
    if (!(t < T)) throw std::invalid_argument("gamma0: t must be < T");
    if (!(p.sigma > 0.0)) throw std::invalid_argument("gamma0: sigma must be > 0");
    const double B = vasicek_b(t, T, p);
    return (2.0 * (B * p.k - 1.0) * r +
            B * (B * p.sigma * p.sigma - 2.0 * p.k * p.theta)) /
           (2.0 * B * p.sigma);
}

double gamma0_raw(double t, double T, double r, double nu,
                  const VasicekParams& vp, const HestonParams& hp) {
    if (!(t < T)) throw std::invalid_argument("gamma0_raw: t must be < T");
    if (!(nu > 0.0)) throw std::invalid_argument("gamma0_raw: nu must be > 0");
    if (!(vp.sigma > 0.0))
        throw std::invalid_argument("gamma0_raw: sigma must be > 0");
    if (!(hp.eta > 0.0)) throw std::invalid_argument("gamma0_raw: eta must be > 0");
    const double B = vasicek_b(t, T, vp);
    const double root_nu = std::sqrt(nu);
    const double theta_den = 2.0 * B * vp.sigma * hp.eta * root_nu;
    return hp.eta * root_nu *
           (2.0 * (-1.0 + B * vp.k) * r +
            B * (B * vp.sigma * vp.sigma - 2.0 * vp.k * vp.theta)) /
           theta_den;
}

double gamma0_root_rate(double t, double T, const VasicekParams& p) {
    if (!(t < T)) throw std::invalid_argument("gamma0_root_rate: t must be < T");
    const double B = vasicek_b(t, T, p);
    return B * (2.0 * p.k * p.theta - B * p.sigma * p.sigma) /
           (2.0 * (B * p.k - 1.0));
}

}  // namespace unitlinked
