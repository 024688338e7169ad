#include "tbrw/chain.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "tbrw/error.hpp"
#include "tbrw/hash.hpp"

namespace tbrw {

namespace {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

double relative_residual(const SparseMatrix& a, const Eigen::VectorXd& x, const Eigen::VectorXd& b) {
  const double bn = b.norm();
  return (a * x - b).norm() / (bn > 0.0 ? bn : 1.0);
}

// Symmetric positive definite solve with Jacobi scaling. Sparse Cholesky with
// iterative refinement; conjugate gradient if the factorisation breaks down.
class SpdSolver {
 public:
  explicit SpdSolver(SparseMatrix a) : a_(std::move(a)), scale_(a_.rows()) {
    for (Eigen::Index i = 0; i < a_.rows(); ++i) {
      const double d = a_.coeff(i, i);
      if (!(d > 0.0)) throw InternalError("chain solver: non-positive diagonal");
      scale_[i] = 1.0 / std::sqrt(d);
    }
    scaled_ = scale_.asDiagonal() * a_ * scale_.asDiagonal();
    ldlt_.compute(scaled_);
    factored_ = ldlt_.info() == Eigen::Success;
    if (!factored_) cg_.compute(scaled_);
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& b, double& residual) const {
    const Eigen::VectorXd sb = scale_.cwiseProduct(b);
    Eigen::VectorXd y;
    if (factored_) {
      y = ldlt_.solve(sb);
      for (int it = 0; it < 3 && relative_residual(scaled_, y, sb) > 1e-13; ++it) {
        y += ldlt_.solve(sb - scaled_ * y);
      }
    } else {
      cg_.setTolerance(1e-10);
      cg_.setMaxIterations(100 * std::max<Eigen::Index>(scaled_.rows(), 10));
      y = cg_.solve(sb);
    }
    Eigen::VectorXd x = scale_.cwiseProduct(y);
    residual = relative_residual(a_, x, b);
    if (!(residual <= kSolveResidual)) {
      throw InternalError("chain solver: residual " + std::to_string(residual) + " above tolerance");
    }
    return x;
  }

 private:
  SparseMatrix a_;
  Eigen::VectorXd scale_;
  SparseMatrix scaled_;
  Eigen::SimplicialLDLT<SparseMatrix> ldlt_;
  mutable Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper> cg_;
  bool factored_ = false;
};

void require_reaches(const Graph& g, const VertexSet& target) {
  auto dist = bfs_distances(g, target);
  if (std::any_of(dist.begin(), dist.end(), [](int d) { return d == kUnreachable; })) {
    throw PreconditionError("hitting_times: some vertex cannot reach the target");
  }
}

}  // namespace

std::vector<double> stationary(const WeightedGraph& wg) {
  require(wg.size() > 0, "stationary: empty graph");
  require(wg.base().connected(), "stationary: graph must be connected");
  std::vector<double> pi(wg.size());
  if (wg.size() == 1) {
    pi[0] = 1.0;
    return pi;
  }
  const double norm = 2.0 * wg.total_weight();
  for (Vertex v = 0; v < wg.size(); ++v) pi[v] = wg.strength(v) / norm;
  return pi;
}

std::vector<double> hitting_times(const WeightedGraph& wg, const VertexSet& target, double* residual) {
  require(!target.empty(), "hitting_times: target must be non-empty");
  require(target.universe() == wg.size(), "hitting_times: target over a different vertex range");
  const Graph& g = wg.base();
  require_reaches(g, target);

  const std::size_t n = g.size();
  std::vector<Eigen::Index> row(n, -1);
  Eigen::Index m = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (!target.contains(v)) row[v] = m++;
  }
  std::vector<double> h(n, 0.0);
  if (m == 0) {
    if (residual) *residual = 0.0;
    return h;
  }
  std::vector<Triplet> trips;
  Eigen::VectorXd b(m);
  for (Vertex v = 0; v < n; ++v) {
    if (row[v] < 0) continue;
    trips.emplace_back(row[v], row[v], wg.strength(v));
    b[row[v]] = wg.strength(v);
    auto nb = g.neighbors(v);
    auto w = wg.weights(v);
    for (std::size_t s = 0; s < nb.size(); ++s) {
      if (row[nb[s]] >= 0) trips.emplace_back(row[v], row[nb[s]], -w[s]);
    }
  }
  SparseMatrix a(m, m);
  a.setFromTriplets(trips.begin(), trips.end());
  double res = 0.0;
  Eigen::VectorXd x = SpdSolver(std::move(a)).solve(b, res);
  if (residual) *residual = res;
  for (Vertex v = 0; v < n; ++v) {
    if (row[v] >= 0) h[v] = x[row[v]];
  }
  return h;
}

double return_time(const WeightedGraph& wg, Vertex u) {
  auto h = hitting_times(wg, VertexSet(wg.size(), {u}));
  auto nb = wg.base().neighbors(u);
  auto p = wg.transition(u);
  double t = 1.0;
  for (std::size_t s = 0; s < nb.size(); ++s) t += p[s] * h[nb[s]];
  return t;
}

struct LaplacianSolver::Impl {
  std::vector<Eigen::Index> row;
  std::unique_ptr<SpdSolver> solver;
};

LaplacianSolver::LaplacianSolver(const WeightedGraph& wg, Vertex ground)
    : impl_(std::make_unique<Impl>()), wg_(&wg), ground_(ground) {
  const Graph& g = wg.base();
  require(ground < g.size(), "laplacian: ground out of range");
  require(g.connected(), "laplacian: graph must be connected");
  const std::size_t n = g.size();
  impl_->row.assign(n, -1);
  Eigen::Index m = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (v != ground) impl_->row[v] = m++;
  }
  if (m == 0) return;
  std::vector<Triplet> trips;
  for (Vertex v = 0; v < n; ++v) {
    const Eigen::Index r = impl_->row[v];
    if (r < 0) continue;
    trips.emplace_back(r, r, wg.strength(v));
    auto nb = g.neighbors(v);
    auto w = wg.weights(v);
    for (std::size_t s = 0; s < nb.size(); ++s) {
      if (impl_->row[nb[s]] >= 0) trips.emplace_back(r, impl_->row[nb[s]], -w[s]);
    }
  }
  SparseMatrix a(m, m);
  a.setFromTriplets(trips.begin(), trips.end());
  impl_->solver = std::make_unique<SpdSolver>(std::move(a));
}

LaplacianSolver::~LaplacianSolver() = default;
LaplacianSolver::LaplacianSolver(LaplacianSolver&&) noexcept = default;
LaplacianSolver& LaplacianSolver::operator=(LaplacianSolver&&) noexcept = default;

std::vector<double> LaplacianSolver::solve(std::vector<double> rhs) const {
  const std::size_t n = rhs.size();
  std::vector<double> x(n, 0.0);
  if (!impl_->solver) return x;
  Eigen::VectorXd b(static_cast<Eigen::Index>(n - 1));
  for (Vertex v = 0; v < n; ++v) {
    if (impl_->row[v] >= 0) b[impl_->row[v]] = rhs[v];
  }
  double res = 0.0;
  Eigen::VectorXd sol = impl_->solver->solve(b, res);
  worst_residual_ = std::max(worst_residual_, res);
  for (Vertex v = 0; v < n; ++v) {
    if (impl_->row[v] >= 0) x[v] = sol[impl_->row[v]];
  }
  return x;
}

double LaplacianSolver::resistance(Vertex u, Vertex v) const {
  const std::size_t n = wg_->size();
  require(u < n && v < n, "resistance: vertex out of range");
  if (u == v) return 0.0;
  std::vector<double> rhs(n, 0.0);
  rhs[u] = 1.0;
  rhs[v] = -1.0;
  auto x = solve(std::move(rhs));
  return x[u] - x[v];
}

std::vector<double> LaplacianSolver::hitting_column(Vertex v) const {
  // L h = d - vol e_v has the hitting column (up to a constant) as solution.
  const std::size_t n = wg_->size();
  require(v < n, "hitting_column: vertex out of range");
  std::vector<double> rhs(n);
  double vol = 0.0;
  for (Vertex x = 0; x < n; ++x) {
    rhs[x] = wg_->strength(x);
    vol += rhs[x];
  }
  rhs[v] -= vol;
  auto x = solve(std::move(rhs));
  const double base = x[v];
  for (double& xi : x) xi -= base;
  return x;
}

double effective_resistance(const WeightedGraph& wg, Vertex u, Vertex v) {
  if (u == v) return 0.0;
  return LaplacianSolver(wg, v).resistance(u, v);
}

double check_commute_identity(const WeightedGraph& wg, Vertex u, Vertex v) {
  require(u != v, "commute identity: vertices must differ");
  const double huv = hitting_times(wg, VertexSet(wg.size(), {v}))[u];
  const double hvu = hitting_times(wg, VertexSet(wg.size(), {u}))[v];
  const double r = effective_resistance(wg, u, v);
  return std::abs(huv + hvu - r * 2.0 * wg.total_weight());
}

double harmonic_number(std::size_t m) {
  double h = 0.0;
  for (std::size_t j = 1; j <= m; ++j) h += 1.0 / static_cast<double>(j);
  return h;
}

double max_hitting_within(const WeightedGraph& wg, const VertexSet& w) {
  require(!w.empty(), "max_hitting_within: set must be non-empty");
  if (w.size() == 1) return 0.0;
  LaplacianSolver solver(wg, w.members().front());
  double best = 0.0;
  for (Vertex v : w.members()) {
    auto col = solver.hitting_column(v);
    for (Vertex u : w.members()) best = std::max(best, col[u]);
  }
  return best;
}

double matthews_bound(const WeightedGraph& wg, const VertexSet& w) {
  return max_hitting_within(wg, w) * harmonic_number(w.size());
}

double layered_alpha(double eps) {
  require(eps >= 0.0 && eps < 1.0, "layered_alpha: eps must lie in [0, 1)");
  return 4.0 - 20.0 * eps / (4.0 * eps + 1.0);
}

WeightedGraph weighted_path(std::span<const double> weights) {
  const std::size_t n = weights.size() + 1;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(Vertex(i), Vertex(i + 1));
  Graph g(n, edges);
  std::vector<double> slots(2 * edges.size());
  for (Vertex v = 0; v < n; ++v) {
    auto nb = g.neighbors(v);
    for (std::size_t s = 0; s < nb.size(); ++s) slots[g.slot_offset(v) + s] = weights[std::min(v, nb[s])];
  }
  return WeightedGraph(std::move(g), std::move(slots));
}

double layered_expected_visits(double eps, int k) {
  require(k >= 4, "layered_expected_visits: k must be at least 4");
  const double alpha = layered_alpha(eps);
  std::vector<double> w(static_cast<std::size_t>(k - 2));
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::pow(alpha, static_cast<double>(i));
  auto pi = stationary(weighted_path(w));
  return pi.back() / pi.front();
}

ChainSolution::ChainSolution(WeightedGraph wg) : wg_(std::move(wg)), pi_(stationary(wg_)) {}

std::shared_ptr<const std::vector<double>> ChainSolution::hitting(const VertexSet& target) const {
  return HittingCache::global().get(wg_, target);
}

double ChainSolution::hitting(Vertex from, Vertex to) const {
  return (*hitting(VertexSet(wg_.size(), {to})))[from];
}

std::shared_ptr<const std::vector<double>> HittingCache::get(const WeightedGraph& wg,
                                                             const VertexSet& target) {
  Fnv1a th;
  auto members = target.sorted();
  th.value(target.universe());
  th.values(std::span<const Vertex>(members));
  const Key key{wg.base().hash(), wg.hash(), th.digest()};
  {
    std::shared_lock lock(mutex_);
    auto it = entries_.find(key);
    if (it != entries_.end()) return it->second;
  }
  auto value = std::make_shared<const std::vector<double>>(hitting_times(wg, target));
  std::unique_lock lock(mutex_);
  return entries_.emplace(key, std::move(value)).first->second;
}

std::size_t HittingCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

HittingCache& HittingCache::global() {
  static HittingCache cache;
  return cache;
}

std::vector<LayerBound> layer_bounds(const Graph& g, const VertexSet& u, double eps) {
  require(!u.empty(), "layer_bounds: U must be non-empty");
  require(eps > 0.0 && eps < 1.0, "layer_bounds: eps must lie in (0, 1)");
  const auto dist = bfs_distances(g, u);
  int depth = 0;
  for (int d : dist) {
    if (d == kUnreachable) throw PreconditionError("layer_bounds: graph must be connected");
    depth = std::max(depth, d);
  }
  const auto wu = weight_field_from_distances(g, dist, eps);
  std::vector<LayerBound> out;
  for (int i = 1; i <= depth; ++i) {
    std::vector<Vertex> members;
    std::vector<Vertex> local(g.size(), static_cast<Vertex>(-1));
    for (Vertex v = 0; v < g.size(); ++v) {
      if (dist[v] >= i - 1) {
        local[v] = static_cast<Vertex>(members.size());
        members.push_back(v);
      }
    }
    std::vector<Edge> edges;
    LayerBound lb;
    lb.layer = i;
    for (const Edge& e : g.edges()) {
      const int a = dist[e.u];
      const int b = dist[e.v];
      if (a < i - 1 || b < i - 1 || (a == i - 1 && b == i - 1)) continue;
      edges.push_back({local[e.u], local[e.v]});
      lb.rhs += 2.0 * std::pow(1.0 - eps, std::min(a, b) - (i - 1));
    }
    Graph gi(members.size(), edges);
    std::vector<double> slots;
    slots.reserve(2 * edges.size());
    for (Vertex a = 0; a < gi.size(); ++a) {
      for (Vertex b : gi.neighbors(a)) slots.push_back(wu.weight(members[a], members[b]));
    }
    WeightedGraph wi(std::move(gi), std::move(slots));
    VertexSet target(members.size());
    for (Vertex a = 0; a < members.size(); ++a) {
      if (dist[members[a]] == i - 1) target.insert(a);
    }
    const auto h = hitting_times(wi, target);
    for (Vertex a = 0; a < members.size(); ++a) {
      if (dist[members[a]] == i) lb.t = std::max(lb.t, h[a]);
    }
    out.push_back(lb);
  }
  return out;
}

LocalizedBound localized_hitting_bound(const Graph& g, const VertexSet& u, double eps, Vertex v) {
  require(eps > 0.0 && eps < 1.0, "localized_hitting_bound: eps must lie in (0, 1)");
  require(v < g.size(), "localized_hitting_bound: vertex out of range");
  const auto dist = bfs_distances(g, u);
  const double reach = 2.0 * std::log(static_cast<double>(g.size())) / -std::log1p(-eps);
  LocalizedBound out{VertexSet(g.size()), 0.0};
  for (Vertex w = 0; w < g.size(); ++w) {
    if (dist[w] == kUnreachable) throw PreconditionError("localized_hitting_bound: graph must be connected");
    if (static_cast<double>(dist[w]) <= static_cast<double>(dist[v]) + reach) out.w.insert(w);
  }
  std::size_t inside = 0;
  for (const Edge& e : g.edges()) inside += out.w.contains(e.u) && out.w.contains(e.v) ? 1 : 0;
  out.bound = 2.0 / eps * (static_cast<double>(inside) + 1.0);
  return out;
}

}  // namespace tbrw
