#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tbrw/chain.hpp"
#include "tbrw/generators.hpp"

using namespace tbrw;

namespace {

WeightedGraph random_weights(const Graph& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> w(0.1, 3.0);
  std::vector<double> per_edge;
  for (std::size_t i = 0; i < g.edge_count(); ++i) per_edge.push_back(w(rng));
  auto edges = g.edges();
  std::vector<double> slots;
  for (Vertex v = 0; v < g.size(); ++v)
    for (Vertex x : g.neighbors(v)) {
      auto it = std::lower_bound(edges.begin(), edges.end(), Edge(v, x));
      slots.push_back(per_edge[static_cast<std::size_t>(it - edges.begin())]);
    }
  return WeightedGraph(g, slots);
}

}  // namespace

TEST_CASE("hitting times match dense elimination") {
  std::mt19937_64 rng(21);
  for (int round = 0; round < 40; ++round) {
    auto r = oracle::random_connected(rng, 2, 30, 0.1);
    Graph g = oracle::to_graph(r);
    WeightedGraph wg = random_weights(g, rng);
    VertexSet target = oracle::random_set(rng, r.n, 3);
    std::vector<char> mask(r.n, 0);
    for (Vertex t : target.members()) mask[t] = 1;
    auto expect = oracle::hitting(oracle::weight_matrix(wg), mask);
    double residual = 1.0;
    auto got = hitting_times(wg, target, &residual);
    CHECK(residual < 1e-9);
    for (std::size_t v = 0; v < r.n; ++v) CHECK(got[v] == doctest::Approx(expect[v]).epsilon(1e-9));
  }
}

TEST_CASE("stationary law is detailed-balanced") {
  std::mt19937_64 rng(4);
  for (int round = 0; round < 20; ++round) {
    Graph g = oracle::to_graph(oracle::random_connected(rng, 2, 20, 0.2));
    WeightedGraph wg = random_weights(g, rng);
    auto pi = stationary(wg);
    double s = 0.0;
    for (double x : pi) s += x;
    CHECK(s == doctest::Approx(1.0));
    for (Vertex v = 0; v < g.size(); ++v) {
      auto t = wg.transition(v);
      auto nb = g.neighbors(v);
      for (std::size_t j = 0; j < nb.size(); ++j) {
        auto back = wg.transition(nb[j]);
        auto nb2 = g.neighbors(nb[j]);
        const std::size_t jj = static_cast<std::size_t>(std::find(nb2.begin(), nb2.end(), v) - nb2.begin());
        CHECK(pi[v] * t[j] == doctest::Approx(pi[nb[j]] * back[jj]).epsilon(1e-12));
      }
      // Kac: return time is 1 / pi(v).
      CHECK(return_time(wg, v) == doctest::Approx(1.0 / pi[v]).epsilon(1e-8));
    }
  }
}

TEST_CASE("effective resistance matches the grounded Laplacian and the commute identity") {
  std::mt19937_64 rng(8);
  for (int round = 0; round < 25; ++round) {
    Graph g = oracle::to_graph(oracle::random_connected(rng, 2, 25, 0.12));
    WeightedGraph wg = random_weights(g, rng);
    auto w = oracle::weight_matrix(wg);
    LaplacianSolver solver(wg, static_cast<Vertex>(rng() % g.size()));
    for (int q = 0; q < 5; ++q) {
      const Vertex u = static_cast<Vertex>(rng() % g.size());
      const Vertex v = static_cast<Vertex>(rng() % g.size());
      const double expect = oracle::resistance(w, u, v);
      CHECK(effective_resistance(wg, u, v) == doctest::Approx(expect).epsilon(1e-9));
      CHECK(solver.resistance(u, v) == doctest::Approx(expect).epsilon(1e-9));
      if (u != v) CHECK(check_commute_identity(wg, u, v) < 1e-7 * (1.0 + expect * wg.total_weight()));
      std::vector<char> mask(g.size(), 0);
      mask[v] = 1;
      auto h = oracle::hitting(w, mask);
      auto col = solver.hitting_column(v);
      for (Vertex x = 0; x < g.size(); ++x) CHECK(col[x] == doctest::Approx(h[x]).epsilon(1e-8).scale(1.0));
    }
    CHECK(solver.worst_residual() < 1e-9);
  }
}

TEST_CASE("series resistance on a weighted path") {
  std::vector<double> ws{1.0, 0.5, 2.0, 4.0};
  WeightedGraph p = weighted_path(ws);
  CHECK(p.size() == 5);
  double series = 0.0;
  for (double w : ws) series += 1.0 / w;
  CHECK(effective_resistance(p, 0, 4) == doctest::Approx(series));
  // Unweighted path: H(0, n-1) = (n-1)^2.
  WeightedGraph path = WeightedGraph::uniform(make_path(9));
  CHECK(hitting_times(path, VertexSet(9, {8}))[0] == doctest::Approx(64.0));
}

TEST_CASE("Matthews bound against the hitting oracle") {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 10; ++round) {
    Graph g = oracle::to_graph(oracle::random_connected(rng, 2, 14, 0.2));
    WeightedGraph wg = random_weights(g, rng);
    auto w = oracle::weight_matrix(wg);
    VertexSet set = oracle::random_set(rng, g.size(), g.size());
    double worst = 0.0;
    for (Vertex v : set.members()) {
      std::vector<char> mask(g.size(), 0);
      mask[v] = 1;
      auto h = oracle::hitting(w, mask);
      for (Vertex u : set.members()) worst = std::max(worst, h[u]);
    }
    double harmonic = 0.0;
    for (std::size_t j = 1; j <= set.size(); ++j) harmonic += 1.0 / static_cast<double>(j);
    CHECK(max_hitting_within(wg, set) == doctest::Approx(worst).epsilon(1e-9));
    CHECK(harmonic_number(set.size()) == doctest::Approx(harmonic));
    CHECK(matthews_bound(wg, set) == doctest::Approx(worst * harmonic).epsilon(1e-9));
  }
}

TEST_CASE("layered closed form") {
  CHECK(layered_alpha(0.0) == doctest::Approx(4.0));
  CHECK(layered_alpha(0.25) == doctest::Approx(4.0 - 5.0 / 2.0));
  for (double eps : {0.0, 0.01, 0.05, 0.2}) {
    const double alpha = layered_alpha(eps);
    CHECK(alpha >= 4.0 * (1.0 - 5.0 * eps) - 1e-12);
    for (int k = 4; k <= 8; ++k) {
      CHECK(layered_expected_visits(eps, k) == doctest::Approx(std::pow(alpha, k - 3)).epsilon(1e-9));
    }
  }
}

TEST_CASE("layer-by-layer and localized hitting bounds hold on random graphs") {
  std::mt19937_64 rng(29);
  for (int round = 0; round < 30; ++round) {
    auto r = oracle::random_connected(rng, 2, 22, 0.08);
    Graph g = oracle::to_graph(r);
    VertexSet u = oracle::random_set(rng, r.n, 2);
    const double eps = round % 2 ? 0.1 : 0.5;
    for (const LayerBound& lb : layer_bounds(g, u, eps)) {
      CHECK(lb.layer >= 1);
      CHECK(lb.t <= lb.rhs * (1.0 + 1e-9));
    }
    auto h = hitting_times(weight_field(g, u, eps), u);
    auto du = oracle::dist_to_set(oracle::floyd(r.n, r.edges), u);
    for (Vertex v = 0; v < g.size(); ++v) {
      CHECK(h[v] <= 2.0 / eps * static_cast<double>(g.edge_count()) + 1e-9);
      LocalizedBound lb = localized_hitting_bound(g, u, eps, v);
      const double slack = 2.0 * std::log(static_cast<double>(r.n)) / -std::log(1.0 - eps);
      for (Vertex x = 0; x < g.size(); ++x) CHECK(lb.w.contains(x) == (du[x] <= du[v] + slack));
      CHECK(h[v] <= lb.bound + 1e-9);
    }
  }
}
