#ifndef TBRW_TESTS_ORACLES_HPP
#define TBRW_TESTS_ORACLES_HPP

// Reference computations written without the library's solvers: dense
// matrices, Floyd-Warshall, Gaussian elimination with partial pivoting.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "tbrw/graph.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

inline constexpr int kFar = std::numeric_limits<int>::max() / 4;

/// All-pairs distances; kFar for unreachable pairs.
inline std::vector<std::vector<int>> floyd(std::size_t n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> d(n, std::vector<int>(n, kFar));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (auto [a, b] : edges) d[a][b] = d[b][a] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

inline std::vector<std::pair<int, int>> edge_pairs(const tbrw::Graph& g) {
  std::vector<std::pair<int, int>> out;
  for (const auto& e : g.edges()) out.emplace_back(static_cast<int>(e.u), static_cast<int>(e.v));
  return out;
}

inline std::vector<std::vector<int>> floyd(const tbrw::Graph& g) { return floyd(g.size(), edge_pairs(g)); }

/// Solves a x = b in place; a is square and nonsingular.
inline std::vector<double> solve(Matrix a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      if (f == 0.0) continue;
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return x;
}

/// Dense weight matrix w[u][v] (zero off the edge set).
inline Matrix weight_matrix(const tbrw::WeightedGraph& wg) {
  const std::size_t n = wg.size();
  Matrix w(n, std::vector<double>(n, 0.0));
  for (const auto& e : wg.base().edges()) w[e.u][e.v] = w[e.v][e.u] = wg.weight(e.u, e.v);
  return w;
}

/// H(v, target) from the one-step equations h = 1 + P h off the target.
inline std::vector<double> hitting(const Matrix& w, const std::vector<char>& target) {
  const std::size_t n = w.size();
  std::vector<int> idx(n, -1);
  std::vector<std::size_t> free;
  for (std::size_t v = 0; v < n; ++v)
    if (!target[v]) {
      idx[v] = static_cast<int>(free.size());
      free.push_back(v);
    }
  Matrix a(free.size(), std::vector<double>(free.size(), 0.0));
  std::vector<double> b(free.size(), 1.0);
  for (std::size_t i = 0; i < free.size(); ++i) {
    const std::size_t v = free[i];
    double deg = 0.0;
    for (std::size_t u = 0; u < n; ++u) deg += w[v][u];
    a[i][i] = 1.0;
    for (std::size_t u = 0; u < n; ++u)
      if (w[v][u] > 0.0 && idx[u] >= 0) a[i][idx[u]] -= w[v][u] / deg;
  }
  std::vector<double> x = solve(a, b);
  std::vector<double> h(n, 0.0);
  for (std::size_t i = 0; i < free.size(); ++i) h[free[i]] = x[i];
  return h;
}

/// Effective resistance from the Laplacian with u grounded: R = phi(v) where
/// L phi = e_v - e_u, phi(u) = 0.
inline double resistance(const Matrix& w, std::size_t u, std::size_t v) {
  if (u == v) return 0.0;
  const std::size_t n = w.size();
  std::vector<std::size_t> keep;
  for (std::size_t x = 0; x < n; ++x)
    if (x != u) keep.push_back(x);
  Matrix a(keep.size(), std::vector<double>(keep.size(), 0.0));
  std::vector<double> b(keep.size(), 0.0);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    const std::size_t x = keep[i];
    for (std::size_t y = 0; y < n; ++y) a[i][i] += w[x][y];
    for (std::size_t j = 0; j < keep.size(); ++j)
      if (j != i) a[i][j] = -w[x][keep[j]];
    if (x == v) b[i] = 1.0;
  }
  const std::vector<double> phi = solve(a, b);
  for (std::size_t i = 0; i < keep.size(); ++i)
    if (keep[i] == v) return phi[i];
  return 0.0;
}

/// Hand-rolled random connected graph: a random tree plus extra edges.
struct RandomGraph {
  std::size_t n = 0;
  std::vector<std::pair<int, int>> edges;
};

inline RandomGraph random_connected(std::mt19937_64& rng, std::size_t min_n, std::size_t max_n, double density) {
  RandomGraph out;
  out.n = min_n + rng() % (max_n - min_n + 1);
  std::set<std::pair<int, int>> seen;
  for (std::size_t v = 1; v < out.n; ++v) {
    const int parent = static_cast<int>(rng() % v);
    seen.insert({parent, static_cast<int>(v)});
  }
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (std::size_t a = 0; a < out.n; ++a)
    for (std::size_t b = a + 1; b < out.n; ++b)
      if (coin(rng) < density) seen.insert({static_cast<int>(a), static_cast<int>(b)});
  out.edges.assign(seen.begin(), seen.end());
  return out;
}

inline tbrw::Graph to_graph(const RandomGraph& r) {
  std::vector<tbrw::Edge> es;
  for (auto [a, b] : r.edges) es.emplace_back(static_cast<tbrw::Vertex>(a), static_cast<tbrw::Vertex>(b));
  return tbrw::Graph(r.n, es);
}

inline tbrw::VertexSet random_set(std::mt19937_64& rng, std::size_t n, std::size_t max_size) {
  tbrw::VertexSet s(n);
  const std::size_t size = 1 + rng() % std::max<std::size_t>(1, max_size);
  while (s.size() < std::min(size, n)) s.insert(static_cast<tbrw::Vertex>(rng() % n));
  return s;
}

/// dist(v, U) from the all-pairs table.
inline std::vector<int> dist_to_set(const std::vector<std::vector<int>>& d, const tbrw::VertexSet& u) {
  std::vector<int> out(d.size(), kFar);
  for (std::size_t v = 0; v < d.size(); ++v)
    for (tbrw::Vertex x : u.members()) out[v] = std::min(out[v], d[v][x]);
  return out;
}

}  // namespace oracle

#endif
