#pragma once

#include "unitlinked/market_models.hpp"

namespace unitlinked {

// Girsanov kernels (gamma0, gamma1, gamma2) that turn the discounted stock,
// the discounted forward variance quote and the discounted T-bond into
// martingales simultaneously.

/// Stock kernel gamma1 = (r - mu)/sqrt(nu). Requires nu > 0.
double gamma1(double r, double mu, double nu);

/// Forward-variance kernel gamma2 = xi r / (eta e^{-kappa(T-t)} sqrt(nu)).
/// Requires nu > 0 and eta > 0.
double gamma2(double t, double T, double r, double xi, double nu,
              const HestonParams& p);

/// Bond kernel in closed form,
///   gamma0 = [2(Bk - 1) r + B(B sigma^2 - 2 k theta)] / (2 B sigma),
/// with B = B(t,T). Requires t < T and sigma > 0. Does not depend on nu.
double gamma0(double t, double T, double r, const VasicekParams& p);

/// Full-state signature; the variance arguments cancel out of the value.
inline double gamma0(double t, double T, double r, double /*nu*/,
                     const VasicekParams& vp, const HestonParams&) {
    return gamma0(t, T, r, vp);
}

/// Same kernel written as eta sqrt(nu) (2(-1 + Bk) r + B(B sigma^2 - 2 k theta)) / Theta
/// with Theta = 2 B sigma eta sqrt(nu). Agrees with gamma0 for every admissible
/// state; kept separate so the cancellation can be checked directly.
double gamma0_raw(double t, double T, double r, double nu,
                  const VasicekParams& vp, const HestonParams& hp);

/// The short-rate value at which gamma0 vanishes for given (t, T):
///   r* = B(2 k theta - B sigma^2) / (2(Bk - 1)).
double gamma0_root_rate(double t, double T, const VasicekParams& p);

}  // namespace unitlinked
