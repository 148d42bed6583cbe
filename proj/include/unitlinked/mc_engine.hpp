#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "unitlinked/market_models.hpp"

namespace unitlinked {

/// Uniform grid 0 = t_0 < ... < t_N = T. The final node is pinned to T
/// exactly rather than accumulated.
class TimeGrid {
  public:
    TimeGrid(double maturity, std::size_t num_steps);

    double maturity() const { return maturity_; }
    std::size_t num_steps() const { return num_steps_; }
    double dt() const { return dt_; }
    double node(std::size_t k) const;

  private:
    double maturity_;
    std::size_t num_steps_;
    double dt_;
};

/// Default step count for a maturity: ceil(252 T).
std::size_t default_num_steps(double maturity);

/// Simulated joint paths of (r, xi, nu, S, P) on a shared grid.
/// Storage is row-major per path so one path's history is contiguous.
struct PathSet {
    TimeGrid grid;
    std::size_t n_paths = 0;
    std::uint64_t seed = 0;
    // Diagnostic count of nodes where the additive stock step went negative;
    // the value itself is kept as simulated.
    std::size_t negative_s_nodes = 0;
    std::vector<double> r;
    std::vector<double> xi;
    std::vector<double> nu;
    std::vector<double> s;
    std::vector<double> p;

    PathSet(const TimeGrid& g, std::size_t n);

    std::size_t nodes() const { return grid.num_steps() + 1; }
    double& at(std::vector<double>& v, std::size_t path, std::size_t k) {
        return v[path * nodes() + k];
    }
    double get(const std::vector<double>& v, std::size_t path,
               std::size_t k) const {
        return v[path * nodes() + k];
    }
    std::span<const double> path_r(std::size_t i) const {
        return {r.data() + i * nodes(), nodes()};
    }
    std::span<const double> path_s(std::size_t i) const {
        return {s.data() + i * nodes(), nodes()};
    }
};

struct VhSimOptions {
    // Diagnostic switches; defaults reproduce the pricing scheme.
    bool zero_gamma0 = false;          // drop the sigma*gamma0 rate drift term
    bool truncate_rate_drift = true;   // use (r)+ inside k(theta - r)
    int num_threads = 0;               // 0 = library default
};

/// Euler simulation of the joint model under the pricing measure:
///   r_{k+1}  = r_k + [k(theta - (r_k)+) + sigma gamma0(t_k)] dt + sigma dW0
///   xi_{k+1} = xi_k + r_k xi_k dt + eta e^{-kappa(T - t_k)} sqrt((nu_k)+ dt) dW2
///   nu_{k+1} = nu_bar + e^{kappa(T - t_{k+1})}(xi_{k+1} - nu_bar)
///   S_{k+1}  = S_k + r_k S_k dt + S_k sqrt((nu_k)+ dt) dW1
///   P_{k+1}  = P_k + P_k [r_k dt - sigma B(t_k, T) sqrt(dt) dW0]
/// Throws std::runtime_error naming path and step if a state goes non-finite.
PathSet simulate_vh_paths(const VasicekParams& vp, const HestonParams& hp,
                          const TimeGrid& grid, std::size_t n_paths,
                          std::uint64_t seed, const VhSimOptions& opt = {});

/// Single-threaded reference; byte-identical output to simulate_vh_paths.
PathSet simulate_vh_paths_serial(const VasicekParams& vp, const HestonParams& hp,
                                 const TimeGrid& grid, std::size_t n_paths,
                                 std::uint64_t seed, const VhSimOptions& opt = {});

/// Terminal stock values under the log-Euler Black-Scholes scheme
///   S_{k+1} = S_k exp((r - sigma^2/2) dt + sigma sqrt(dt) dW1).
std::vector<double> simulate_bs_terminal(const BlackScholesParams& p,
                                         const TimeGrid& grid,
                                         std::size_t n_paths,
                                         std::uint64_t seed);

/// Left-endpoint discount factors D_{0,t_k} = exp(-sum_{j<k} r_{t_j} dt),
/// one per path. k = 0 gives 1 for every path.
std::vector<double> pathwise_discount(const PathSet& paths, std::size_t k);

/// Debug dump, one row per (path, node): path,k,t,r,nu,xi,s,p.
std::string path_set_csv(const PathSet& paths);

struct McEstimate {
    double mean = 0.0;
    double std_err = 0.0;
};

/// Sample mean and standard error s/sqrt(n) (ddof = 1). Requires n >= 2.
McEstimate mc_estimate(std::span<const double> values);

}  // namespace unitlinked
