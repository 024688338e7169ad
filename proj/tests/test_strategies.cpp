#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tbrw/chain.hpp"
#include "tbrw/generators.hpp"
#include "tbrw/strategies.hpp"
#include "tbrw/walk.hpp"

using namespace tbrw;

TEST_CASE("emulation mixing probability") {
  CHECK(emulation_mix(2, 0, 0.3) == 0.0);
  CHECK(emulation_mix(3, 3, 0.3) == doctest::Approx(0.7 * 9.0 / (6.0 * 5.1)));
  CHECK_THROWS(emulation_mix(0, 3, 0.3));
  CHECK(emulation_mix(1, 1, 0.5) == doctest::Approx(0.5 / (2.0 * 1.5)));
}

TEST_CASE("phi_U reproduces the weighted transition law exactly") {
  std::mt19937_64 rng(1);
  for (int round = 0; round < 150; ++round) {
    auto r = oracle::random_connected(rng, 2, 40, 0.07);
    Graph g = oracle::to_graph(r);
    VertexSet u = oracle::random_set(rng, r.n, 3);
    const double eps = 0.05 + 0.9 * static_cast<double>(rng() % 101) / 100.0;
    auto du = oracle::dist_to_set(oracle::floyd(r.n, r.edges), u);
    EmulationBias phi(g, u, eps);
    for (Vertex v = 0; v < g.size(); ++v) {
      auto nb = g.neighbors(v);
      std::vector<double> w;
      double total = 0.0;
      for (Vertex x : nb) {
        w.push_back(std::pow(1.0 - eps, std::min(du[v], du[x])));
        total += w.back();
      }
      for (double& x : w) x /= total;
      auto law = tbrw_step_law(g, eps, phi, v);
      CHECK(total_variation(law, w) < 1e-12);
    }
  }
}

TEST_CASE("naive strategy moves strictly closer") {
  Graph g = make_grid(4, 4);
  VertexSet target(16, {0});
  NaiveTowardBias phi(g, target);
  auto d = bfs_distances(g, target);
  for (Vertex v = 1; v < 16; ++v) {
    auto law = phi.distribution(v);
    auto nb = g.neighbors(v);
    for (std::size_t j = 0; j < nb.size(); ++j) {
      if (d[nb[j]] < d[v]) {
        CHECK(law[j] > 0.0);
      } else {
        CHECK(law[j] == 0.0);
      }
    }
  }
  // With eps = 1 the walk follows a shortest path.
  Rng rng(2);
  auto out = walk_until_hit(g, 1.0, phi, 15, target, rng, {});
  CHECK(out.steps == 6);
}

TEST_CASE("spanning walk is a closed tour of length 2n - 2") {
  std::mt19937_64 rng(6);
  for (int round = 0; round < 20; ++round) {
    Graph g = oracle::to_graph(oracle::random_connected(rng, 1, 30, 0.05));
    const Vertex s = static_cast<Vertex>(rng() % g.size());
    auto tour = spanning_walk(g, s);
    REQUIRE(tour.size() == 2 * g.size() - 1);
    CHECK(tour.front() == s);
    CHECK(tour.back() == s);
    VertexSet seen(g.size());
    for (std::size_t j = 0; j < tour.size(); ++j) {
      seen.insert(tour[j]);
      if (j) CHECK(g.has_edge(tour[j - 1], tour[j]));
    }
    CHECK(seen.size() == g.size());
  }
}

TEST_CASE("spanning strategy and closest-uncovered cover the graph") {
  Graph g = make_grid(5, 5);
  SpanningWalkBias spanning(g, 0.5, 0);
  ClosestUncoveredBias closest(g);
  for (BiasFunction* phi : std::initializer_list<BiasFunction*>{&spanning, &closest}) {
    Rng rng(9);
    auto out = walk_until_cover(g, 0.5, *phi, 0, rng, {0, true});
    CHECK_FALSE(out.capped);
    REQUIRE(out.trace.cover_time.has_value());
    CHECK(static_cast<std::uint64_t>(*out.trace.cover_time) == out.steps);
    for (auto t : out.trace.first_visit) CHECK(t >= 0);
  }
  // eps = 1: every step is the controller's, so the tour is followed exactly.
  SpanningWalkBias exact(g, 1.0, 0);
  Rng rng(1);
  auto out = walk_until_cover(g, 1.0, exact, 0, rng, {});
  CHECK(out.steps <= 2 * 25 - 2);
}

TEST_CASE("ball growth constant against direct summation") {
  for (std::size_t side : {3u, 5u}) {
    Graph g = make_grid(side, side);
    const double eps = 0.5;
    auto d = oracle::floyd(g);
    double best = 0.0;
    for (std::size_t v = 0; v < g.size(); ++v) {
      double s = 0.0;
      for (int k = 0; k < 200; ++k) {
        std::size_t b = 0;
        for (std::size_t x = 0; x < g.size(); ++x) b += d[v][x] <= k;
        s += static_cast<double>(b) * std::pow(1.0 - eps, k);
      }
      best = std::max(best, s);
    }
    CHECK(ball_growth_constant(g, eps) == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("Monte Carlo hitting times agree with the linear solver") {
  Graph g = make_grid(3, 4);
  VertexSet u(12, {11});
  const double eps = 0.3;
  EmulationBias phi(g, u, eps);
  auto exact = hitting_times(weight_field(g, u, eps), u);
  auto rep = estimate_hitting_time(g, eps, phi, 0, u, 4000, 5, {1.0, 1});
  CHECK(rep.cap_hits == 0);
  CHECK(std::abs(rep.mean - exact[0]) <= 4.0 * rep.std_error);
}

TEST_CASE("estimates are reproducible and independent of the thread count") {
  Graph g = make_cycle(20);
  UniformBias phi(g);
  auto a = estimate_cover_time(g, 0.5, phi, 0, 64, 42, {1.0, 1});
  auto b = estimate_cover_time(g, 0.5, phi, 0, 64, 42, {1.0, 3});
  CHECK(a.samples == b.samples);
  auto c = estimate_cover_time(g, 0.5, phi, 0, 64, 43, {1.0, 1});
  CHECK(a.samples != c.samples);
}

TEST_CASE("summary statistics") {
  auto rep = summarize({1.0, 2.0, 3.0, std::nan(""), 6.0}, 3);
  CHECK(rep.trials == 5);
  CHECK(rep.cap_hits == 1);
  CHECK(rep.mean == doctest::Approx(3.0));
  // sample variance 14/3, standard error sqrt(14/3 / 4)
  CHECK(rep.std_error == doctest::Approx(std::sqrt(14.0 / 12.0)));
  CHECK(rep.ci_low == doctest::Approx(3.0 - 1.96 * rep.std_error));
}

TEST_CASE("step cap stops a walk") {
  Graph g = make_path(50);
  UniformBias phi(g);
  Rng rng(3);
  auto out = walk_until_cover(g, 0.0, phi, 0, rng, {10, false});
  CHECK(out.capped);
  CHECK(out.steps == 10);
}
