#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "tbrw/error.hpp"
#include "tbrw/generators.hpp"
#include "tbrw/graph.hpp"

using namespace tbrw;

TEST_CASE("graph construction rejects loops, duplicates and bad endpoints") {
  CHECK_THROWS_AS(Graph(3, {Edge(0, 0)}), PreconditionError);
  CHECK_THROWS_AS(Graph(3, {Edge(0, 1), Edge(1, 0)}), PreconditionError);
  CHECK_THROWS_AS(Graph(3, {Edge(0, 3)}), PreconditionError);
  Graph g(4, {Edge(2, 1), Edge(0, 3), Edge(1, 0)});
  CHECK(g.size() == 4);
  CHECK(g.edge_count() == 3);
  CHECK(g.has_edge(1, 2));
  CHECK(g.has_edge(3, 0));
  CHECK_FALSE(g.has_edge(2, 3));
  CHECK(g.max_degree() == 2);
  CHECK(g.connected());
}

TEST_CASE("bfs, balls and powers agree with all-pairs distances") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 40; ++round) {
    auto r = oracle::random_connected(rng, 2, 30, 0.08);
    Graph g = oracle::to_graph(r);
    auto d = oracle::floyd(r.n, r.edges);
    VertexSet u = oracle::random_set(rng, r.n, 4);
    auto du = oracle::dist_to_set(d, u);
    CHECK(bfs_distances(g, u) == std::vector<int>(du.begin(), du.end()));

    const int radius = static_cast<int>(rng() % 4);
    const Vertex v = static_cast<Vertex>(rng() % r.n);
    VertexSet b = ball(g, v, radius);
    std::size_t expect = 0;
    for (std::size_t x = 0; x < r.n; ++x) {
      CHECK(b.contains(static_cast<Vertex>(x)) == (d[v][x] <= radius));
      expect += d[v][x] <= radius;
    }
    CHECK(b.size() == expect);
    CHECK(ball_sizes(g, radius)[v] == expect);

    auto within = bfs_within(g, u, radius);
    for (std::size_t x = 0; x < r.n; ++x) CHECK(within[x] == (du[x] <= radius ? du[x] : kUnreachable));

    const int k = 1 + static_cast<int>(rng() % 3);
    Graph p = graph_power(g, k);
    for (std::size_t a = 0; a < r.n; ++a)
      for (std::size_t c = a + 1; c < r.n; ++c)
        CHECK(p.has_edge(static_cast<Vertex>(a), static_cast<Vertex>(c)) == (d[a][c] <= k));

    int diam = 0;
    for (auto& row : d)
      for (int x : row) diam = std::max(diam, x);
    CHECK(diameter(g) == diam);

    VertexSet nplus = closed_neighborhood(g, u);
    for (std::size_t x = 0; x < r.n; ++x) CHECK(nplus.contains(static_cast<Vertex>(x)) == (du[x] <= 1));
  }
}

TEST_CASE("induced radius against brute force") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 60; ++round) {
    auto r = oracle::random_connected(rng, 2, 16, 0.15);
    Graph g = oracle::to_graph(r);
    VertexSet u = oracle::random_set(rng, r.n, r.n);
    std::vector<std::pair<int, int>> inner;
    for (auto [a, b] : r.edges)
      if (u.contains(static_cast<Vertex>(a)) && u.contains(static_cast<Vertex>(b))) inner.emplace_back(a, b);
    auto d = oracle::floyd(r.n, inner);
    int best = kInfiniteRadius;
    for (Vertex c : u.members()) {
      int ecc = 0;
      for (Vertex x : u.members()) ecc = std::max(ecc, d[c][x]);
      const int e = ecc >= oracle::kFar ? kInfiniteRadius : ecc;
      CHECK(induced_eccentricity(g, u, c) == e);
      best = std::min(best, e);
    }
    RadiusResult rr = induced_radius(g, u);
    CHECK(rr.radius == best);
    if (rr.finite()) CHECK(induced_eccentricity(g, u, rr.center) == best);
  }
}

TEST_CASE("weight field is (1-eps)^min endpoint distance") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 30; ++round) {
    auto r = oracle::random_connected(rng, 2, 25, 0.1);
    Graph g = oracle::to_graph(r);
    VertexSet u = oracle::random_set(rng, r.n, 3);
    const double eps = 0.05 + 0.9 * static_cast<double>(rng() % 100) / 100.0;
    auto du = oracle::dist_to_set(oracle::floyd(r.n, r.edges), u);
    WeightedGraph wg = weight_field(g, u, eps);
    double total = 0.0;
    for (auto [a, b] : r.edges) {
      const double expect = std::pow(1.0 - eps, std::min(du[a], du[b]));
      CHECK(wg.weight(static_cast<Vertex>(a), static_cast<Vertex>(b)) == doctest::Approx(expect).epsilon(1e-14));
      CHECK(edge_distance(g, Edge(a, b), u) == std::min(du[a], du[b]));
      total += expect;
    }
    CHECK(wg.total_weight() == doctest::Approx(total).epsilon(1e-12));
    for (Vertex v = 0; v < g.size(); ++v) {
      auto t = wg.transition(v);
      double s = 0.0;
      for (double x : t) s += x;
      CHECK(s == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("weighted graph rejects asymmetric or non-positive weights") {
  Graph g = make_path(3);
  CHECK_THROWS_AS(WeightedGraph(g, {1.0, 1.0, 2.0, 1.0}), PreconditionError);
  CHECK_THROWS_AS(WeightedGraph(g, {1.0, 0.0, 0.0, 1.0}), PreconditionError);
  CHECK_THROWS_AS(WeightedGraph(g, {1.0, 1.0}), PreconditionError);
  WeightedGraph ok(g, {2.0, 2.0, 3.0, 3.0});
  CHECK(ok.strength(1) == 5.0);
  CHECK(ok.total_weight() == 5.0);
}

TEST_CASE("vertex sets") {
  VertexSet a(6, {1, 3, 5});
  VertexSet b(6, {3, 4});
  CHECK(a.united(b).sorted() == std::vector<Vertex>{1, 3, 4, 5});
  CHECK(a.intersected(b).sorted() == std::vector<Vertex>{3});
  CHECK(VertexSet(6, {3}).is_subset_of(a));
  CHECK_FALSE(b.is_subset_of(a));
  CHECK_FALSE(a.insert(3));
  CHECK(a.insert(0));
  CHECK(VertexSet::all(4).size() == 4);
  CHECK_THROWS_AS(a.insert(6), PreconditionError);
}

TEST_CASE("graph text format round trip and parse errors") {
  Graph g = make_grid(3, 4);
  std::stringstream ss;
  write_graph(ss, g);
  CHECK(read_graph(ss) == g);

  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      read_graph(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("3 2\n0 1\n1 x\n") == 3);
  CHECK(line_of("3\n") == 1);
  CHECK(line_of("3 2\n0 1\n1 1\n") == 3);
  CHECK(line_of("3 1\n0 7\n") == 2);
  CHECK(line_of("3 1\n0 1\n1 2\n") == 3);
  CHECK(line_of("3 2\n0 1\n") == 2);
}
