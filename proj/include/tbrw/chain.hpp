#ifndef TBRW_CHAIN_HPP
#define TBRW_CHAIN_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>
#include <span>
#include <tuple>
#include <vector>

#include "tbrw/graph.hpp"

namespace tbrw {

/// Relative residual bound every linear solve must meet.
inline constexpr double kSolveResidual = 1e-9;

/// pi(v) = strength(v) / (2 * total weight).
std::vector<double> stationary(const WeightedGraph& wg);

/// H(v, target) for every v: zero on the target, otherwise the solution of
/// the one-step equations. Every vertex must reach the target (true when the
/// graph is connected). The target is collapsed to an absorbing state.
std::vector<double> hitting_times(const WeightedGraph& wg, const VertexSet& target,
                                  double* residual = nullptr);

/// Expected first return time to u: 1 + sum_x P(u,x) H(x,u).
double return_time(const WeightedGraph& wg, Vertex u);

/// Grounded Laplacian of a connected weighted graph, factorised once; answers
/// resistance and single-target hitting-time queries by back-substitution.
class LaplacianSolver {
 public:
  explicit LaplacianSolver(const WeightedGraph& wg, Vertex ground = 0);
  ~LaplacianSolver();
  LaplacianSolver(LaplacianSolver&&) noexcept;
  LaplacianSolver& operator=(LaplacianSolver&&) noexcept;

  /// Effective resistance with conductances equal to weights; 0 when u == v.
  double resistance(Vertex u, Vertex v) const;

  /// Column H(., v) from the potential driven by d - vol * e_v.
  std::vector<double> hitting_column(Vertex v) const;

  /// Worst relative residual seen by any solve so far.
  double worst_residual() const noexcept { return worst_residual_; }

 private:
  std::vector<double> solve(std::vector<double> rhs) const;

  struct Impl;
  std::unique_ptr<Impl> impl_;
  const WeightedGraph* wg_ = nullptr;
  Vertex ground_ = 0;
  mutable double worst_residual_ = 0.0;
};

double effective_resistance(const WeightedGraph& wg, Vertex u, Vertex v);

/// |H(u,v) + H(v,u) - R_eff(u,v) * 2 * sum_e w(e)|, with the hitting times
/// from the absorbing-state solver and R_eff from the Laplacian solver.
double check_commute_identity(const WeightedGraph& wg, Vertex u, Vertex v);

/// max_{u,v in W} H(u,v) * (1 + 1/2 + ... + 1/|W|).
double matthews_bound(const WeightedGraph& wg, const VertexSet& w);

/// max_{u,v in W} H(u,v).
double max_hitting_within(const WeightedGraph& wg, const VertexSet& w);

double harmonic_number(std::size_t m);

/// alpha = 4 - 20 eps / (4 eps + 1): up/down odds of the layer walk under the
/// bias toward V_1.
double layered_alpha(double eps);

/// pi_{k-1} / pi_1 on the (k-1)-vertex path whose i-th edge has weight
/// alpha^{i-1}, computed from stationary().
double layered_expected_visits(double eps, int k);

/// Path 0..len with edge i -- i+1 weighted by weights[i].
WeightedGraph weighted_path(std::span<const double> weights);

/// One layer of the layer-by-layer hitting bound. G_i is induced by the
/// vertices at distance >= i-1 from U, minus the edges inside U_{i-1},
/// weighted by w_U.
struct LayerBound {
  int layer = 0;
  double t = 0.0;    ///< max over U_i of the hitting time of U_{i-1} in G_i
  double rhs = 0.0;  ///< 2 sum_{e in G_i} (1-eps)^{dist(e, U_{i-1})}
};
std::vector<LayerBound> layer_bounds(const Graph& g, const VertexSet& u, double eps);

/// W = V minus {w : dist(w,U) > dist(v,U) + 2 log_{1/(1-eps)} n}, and the
/// bound 2 eps^-1 (e(G[W]) + 1) on H_{w_U}(v, U).
struct LocalizedBound {
  VertexSet w;
  double bound = 0.0;
};
LocalizedBound localized_hitting_bound(const Graph& g, const VertexSet& u, double eps, Vertex v);

/// Stationary distribution plus on-demand hitting columns, cached.
class ChainSolution {
 public:
  explicit ChainSolution(WeightedGraph wg);

  const WeightedGraph& graph() const noexcept { return wg_; }
  const std::vector<double>& pi() const noexcept { return pi_; }

  /// H(., target). Thread-safe.
  std::shared_ptr<const std::vector<double>> hitting(const VertexSet& target) const;
  double hitting(Vertex from, Vertex to) const;

 private:
  WeightedGraph wg_;
  std::vector<double> pi_;
};

/// Cache of hitting-time vectors keyed by (graph hash, weight hash, target
/// hash). Concurrent readers, single-writer insertion.
class HittingCache {
 public:
  std::shared_ptr<const std::vector<double>> get(const WeightedGraph& wg, const VertexSet& target);
  std::size_t size() const;

  static HittingCache& global();

 private:
  using Key = std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>;
  mutable std::shared_mutex mutex_;
  std::map<Key, std::shared_ptr<const std::vector<double>>> entries_;
};

}  // namespace tbrw

#endif  // TBRW_CHAIN_HPP
