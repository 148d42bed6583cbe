#pragma once

#include <cmath>
#include <stdexcept>

namespace unitlinked {

namespace detail {

template <class F>
double simpson_branch(const F& f, double a, double b, double fa, double fm,
                      double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_branch(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_branch(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson with Richardson correction.
template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol = 1e-8,
                        int max_depth = 48) {
    if (!(a <= b)) throw std::invalid_argument("adaptive_simpson: a must be <= b");
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_branch(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace unitlinked
