#include "unitlinked/mc_engine.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "unitlinked/io.hpp"
#include "unitlinked/rng.hpp"

namespace unitlinked {

TimeGrid::TimeGrid(double maturity, std::size_t num_steps)
    : maturity_(maturity), num_steps_(num_steps) {
    if (!(std::isfinite(maturity) && maturity > 0.0))
        throw std::invalid_argument("TimeGrid: maturity must be > 0");
    if (num_steps < 1)
        throw std::invalid_argument("TimeGrid: need at least one step");
    dt_ = maturity_ / static_cast<double>(num_steps_);
}

double TimeGrid::node(std::size_t k) const {
    if (k > num_steps_) throw std::invalid_argument("TimeGrid: node out of range");
    // Pin the endpoint so t_N == T holds exactly.
    if (k == num_steps_) return maturity_;
    return static_cast<double>(k) * dt_;
}

std::size_t default_num_steps(double maturity) {
    if (!(std::isfinite(maturity) && maturity > 0.0))
        throw std::invalid_argument("default_num_steps: maturity must be > 0");
    return static_cast<std::size_t>(std::ceil(252.0 * maturity));
}

PathSet::PathSet(const TimeGrid& g, std::size_t n) : grid(g), n_paths(n) {
    if (n < 1) throw std::invalid_argument("PathSet: need at least one path");
    const std::size_t total = n * nodes();
    r.resize(total);
    xi.resize(total);
    nu.resize(total);
    s.resize(total);
    p.resize(total);
}

namespace {

// Everything that depends only on the step index, shared across paths.
struct StepTables {
    std::vector<double> bond_b;    // B(t_k, T) for k < N
    std::vector<double> xi_vol;    // eta e^{-kappa(T - t_k)} for k < N
    std::vector<double> nu_back;   // e^{kappa(T - t_k)} for all nodes
    std::vector<double> drift_c1;  // sigma gamma0(t_k, r) = c1 r + c0
    std::vector<double> drift_c0;
    double dt = 0.0;
    double sqrt_dt = 0.0;
    bool truncate_rate = true;
};

StepTables make_tables(const VasicekParams& vp, const HestonParams& hp,
                       const TimeGrid& g, const VhSimOptions& opt) {
    const std::size_t n = g.num_steps();
    const double T = g.maturity();
    StepTables tab;
    tab.dt = g.dt();
    tab.sqrt_dt = std::sqrt(g.dt());
    tab.truncate_rate = opt.truncate_rate_drift;
    tab.bond_b.resize(n);
    tab.xi_vol.resize(n);
    tab.nu_back.resize(n + 1);
    tab.drift_c1.assign(n, 0.0);
    tab.drift_c0.assign(n, 0.0);
    // The gamma0 correction enters only through sigma gamma0, which is affine
    // in r; with sigma = 0 the W0 leg vanishes and the term is dropped.
    const bool use_gamma0 = !opt.zero_gamma0 && vp.sigma > 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = g.node(k);
        const double B = vasicek_b(t, T, vp);
        tab.bond_b[k] = B;
        tab.xi_vol[k] = hp.eta * std::exp(-hp.kappa * (T - t));
        if (use_gamma0) {
            tab.drift_c1[k] = (B * vp.k - 1.0) / B;
            tab.drift_c0[k] =
                0.5 * (B * vp.sigma * vp.sigma - 2.0 * vp.k * vp.theta);
        }
    }
    for (std::size_t k = 0; k <= n; ++k)
        tab.nu_back[k] = std::exp(hp.kappa * (T - g.node(k)));
    return tab;
}

std::size_t simulate_one_path(std::size_t i, const VasicekParams& vp,
                              const HestonParams& hp, std::uint64_t seed,
                              const StepTables& tab, PathSet& out) {
    const std::size_t n = out.grid.num_steps();
    const double dt = tab.dt;
    const double sqdt = tab.sqrt_dt;
    std::size_t negative_s = 0;

    double r = vp.r0;
    double xi = out.get(out.xi, i, 0);
    double nu = hp.nu0;
    double s = hp.s0;
    double p = out.get(out.p, i, 0);
    out.at(out.r, i, 0) = r;
    out.at(out.nu, i, 0) = nu;
    out.at(out.s, i, 0) = s;

    for (std::size_t k = 0; k < n; ++k) {
        const double w0 = gaussian_stream(seed, i, 0, k);
        const double w1 = gaussian_stream(seed, i, 1, k);
        const double w2 = gaussian_stream(seed, i, 2, k);

        const double nu_plus = std::max(nu, 0.0);
        const double root_nu_dt = std::sqrt(nu_plus * dt);
        const double r_in_drift = tab.truncate_rate ? std::max(r, 0.0) : r;

        const double r1 = r +
                          (vp.k * (vp.theta - r_in_drift) +
                           (tab.drift_c1[k] * r + tab.drift_c0[k])) * dt +
                          vp.sigma * sqdt * w0;
        const double xi1 = xi + r * xi * dt + tab.xi_vol[k] * root_nu_dt * w2;
        const double nu1 = hp.nu_bar + tab.nu_back[k + 1] * (xi1 - hp.nu_bar);
        const double s1 = s + r * s * dt + s * root_nu_dt * w1;
        const double p1 = p + p * (r * dt - vp.sigma * tab.bond_b[k] * sqdt * w0);

        if (!(std::isfinite(r1) && std::isfinite(xi1) && std::isfinite(nu1) &&
              std::isfinite(s1) && std::isfinite(p1)))
            throw std::runtime_error(
                "simulate_vh_paths: non-finite state at path " +
                std::to_string(i) + " step " + std::to_string(k + 1));
        if (s1 < 0.0) ++negative_s;

        r = r1;
        xi = xi1;
        nu = nu1;
        s = s1;
        p = p1;
        out.at(out.r, i, k + 1) = r;
        out.at(out.xi, i, k + 1) = xi;
        out.at(out.nu, i, k + 1) = nu;
        out.at(out.s, i, k + 1) = s;
        out.at(out.p, i, k + 1) = p;
    }
    return negative_s;
}

PathSet init_path_set(const VasicekParams& vp, const HestonParams& hp,
                      const TimeGrid& grid, std::size_t n_paths,
                      std::uint64_t seed) {
    vp.validate();
    hp.validate();
    PathSet out(grid, n_paths);
    out.seed = seed;
    const double T = grid.maturity();
    const double xi0 = forward_variance_from_nu(0.0, T, hp.nu0, hp);
    const double p0 = vasicek_zcb_price(0.0, T, vp.r0, vp);
    for (std::size_t i = 0; i < n_paths; ++i) {
        out.at(out.xi, i, 0) = xi0;
        out.at(out.p, i, 0) = p0;
    }
    return out;
}

}  // namespace

PathSet simulate_vh_paths_serial(const VasicekParams& vp, const HestonParams& hp,
                                 const TimeGrid& grid, std::size_t n_paths,
                                 std::uint64_t seed, const VhSimOptions& opt) {
    PathSet out = init_path_set(vp, hp, grid, n_paths, seed);
    const StepTables tab = make_tables(vp, hp, grid, opt);
    for (std::size_t i = 0; i < n_paths; ++i)
        out.negative_s_nodes += simulate_one_path(i, vp, hp, seed, tab, out);
    return out;
}

PathSet simulate_vh_paths(const VasicekParams& vp, const HestonParams& hp,
                          const TimeGrid& grid, std::size_t n_paths,
                          std::uint64_t seed, const VhSimOptions& opt) {
#ifndef _OPENMP
    return simulate_vh_paths_serial(vp, hp, grid, n_paths, seed, opt);
#else
    PathSet out = init_path_set(vp, hp, grid, n_paths, seed);
    const StepTables tab = make_tables(vp, hp, grid, opt);
    const int threads =
        opt.num_threads > 0 ? opt.num_threads : omp_get_max_threads();
    std::atomic<bool> failed{false};
    // Integer sum over paths, so the total is scheduling-independent.
    std::atomic<std::size_t> negative_s{0};
    std::string first_error;
    std::mutex error_mutex;
#pragma omp parallel for schedule(static) num_threads(threads)
    for (long long i = 0; i < static_cast<long long>(n_paths); ++i) {
        if (failed.load(std::memory_order_relaxed)) continue;
        try {
            negative_s.fetch_add(
                simulate_one_path(static_cast<std::size_t>(i), vp, hp, seed,
                                  tab, out),
                std::memory_order_relaxed);
        } catch (const std::exception& e) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!failed.exchange(true)) first_error = e.what();
        }
    }
    if (failed) throw std::runtime_error(first_error);
    out.negative_s_nodes = negative_s.load();
    return out;
#endif
}

std::vector<double> simulate_bs_terminal(const BlackScholesParams& p,
                                         const TimeGrid& grid,
                                         std::size_t n_paths,
                                         std::uint64_t seed) {
    p.validate();
    if (n_paths < 1)
        throw std::invalid_argument("simulate_bs_terminal: need at least one path");
    const std::size_t n = grid.num_steps();
    const double dt = grid.dt();
    const double sqdt = std::sqrt(dt);
    const double drift = (p.r - 0.5 * p.sigma * p.sigma) * dt;
    std::vector<double> terminal(n_paths);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long i = 0; i < static_cast<long long>(n_paths); ++i) {
        double s = p.s0;
        for (std::size_t k = 0; k < n; ++k) {
            const double w1 =
                gaussian_stream(seed, static_cast<std::uint64_t>(i), 1, k);
            s *= std::exp(drift + p.sigma * sqdt * w1);
        }
        terminal[static_cast<std::size_t>(i)] = s;
    }
    return terminal;
}

std::vector<double> pathwise_discount(const PathSet& paths, std::size_t k) {
    if (k > paths.grid.num_steps())
        throw std::invalid_argument("pathwise_discount: node out of range");
    const double dt = paths.grid.dt();
    std::vector<double> d(paths.n_paths);
    for (std::size_t i = 0; i < paths.n_paths; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < k; ++j) acc += paths.get(paths.r, i, j);
        d[i] = std::exp(-acc * dt);
    }
    return d;
}

std::string path_set_csv(const PathSet& paths) {
    std::string out = "path,k,t,r,nu,xi,s,p\n";
    for (std::size_t i = 0; i < paths.n_paths; ++i)
        for (std::size_t k = 0; k < paths.nodes(); ++k) {
            out += std::to_string(i) + "," + std::to_string(k) + "," +
                   format_double(paths.grid.node(k)) + "," +
                   format_double(paths.get(paths.r, i, k)) + "," +
                   format_double(paths.get(paths.nu, i, k)) + "," +
                   format_double(paths.get(paths.xi, i, k)) + "," +
                   format_double(paths.get(paths.s, i, k)) + "," +
                   format_double(paths.get(paths.p, i, k)) + "\n";
        }
    return out;
}

McEstimate mc_estimate(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) throw std::invalid_argument("mc_estimate: need at least two values");
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double v : values) {
        const double d = v - mean;
        ss += d * d;
    }
    const double var = ss / static_cast<double>(n - 1);
    return {mean, std::sqrt(var / static_cast<double>(n))};
}

}  // namespace unitlinked
