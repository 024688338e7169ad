#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tbrw/cover.hpp"
#include "tbrw/error.hpp"
#include "tbrw/generators.hpp"

using namespace tbrw;

TEST_CASE("singleton and whole-graph covers") {
  std::mt19937_64 rng(2);
  for (int round = 0; round < 20; ++round) {
    Graph g = oracle::to_graph(oracle::random_connected(rng, 1, 30, 0.1));
    const double n = static_cast<double>(g.size());
    Cover single = singleton_cover(g);
    CoverReport rep = validate_cover(g, single, true);
    CHECK(rep.valid());
    CHECK(single.r == 0);
    CHECK(rep.k_actual == doctest::Approx((2.0 * static_cast<double>(g.edge_count()) + n) / n));

    Cover whole = whole_graph_cover(g);
    CoverReport wrep = validate_cover(g, whole, true);
    CHECK(wrep.valid());
    CHECK(wrep.k_actual == doctest::Approx(1.0));
    auto d = oracle::floyd(g);
    int radius = oracle::kFar;
    for (auto& row : d) radius = std::min(radius, *std::max_element(row.begin(), row.end()));
    CHECK(whole.r == radius);
  }
}

TEST_CASE("validation reports the first violation") {
  Graph g = make_path(6);
  Cover c = make_cover(g, {{0, 1, 2}, {3, 4}});
  CoverReport rep = validate_cover(g, c);
  CHECK_FALSE(rep.coverage_ok);
  REQUIRE(rep.uncovered.has_value());
  CHECK(*rep.uncovered == 5);

  Cover wide = make_cover(g, {{0, 1, 2, 3, 4}, {5}});
  CHECK(wide.r == 2);
  wide.r = 1;
  CoverReport bad = validate_cover(g, wide, true);
  CHECK(bad.coverage_ok);
  CHECK_FALSE(bad.radius_ok);
  REQUIRE(bad.radius_violation.has_value());
  CHECK(*bad.radius_violation == 0);
  CHECK(bad.exact_radius == std::vector<int>{2, 0});
}

TEST_CASE("cover schedule and overlap threshold") {
  CoverSchedule s = CoverSchedule::make(64, 2);
  CHECK(s.log_n == doctest::Approx(6.0));
  CHECK(s.t[0] == doctest::Approx(1.0));
  CHECK(s.t[2] == doctest::Approx(64.0 * 6.0));
  CHECK(s.t[1] == doctest::Approx(std::sqrt(384.0)));
  CHECK(s.p[0] == doctest::Approx(1.0));
  CHECK(s.p[1] == doctest::Approx(12.0 / std::sqrt(384.0)));
  CHECK(overlap_bound(64, 2) == doctest::Approx(8.0 * 8.0 * std::pow(6.0, 1.5)));
}

TEST_CASE("k = 1 gives the singleton cover") {
  Graph g = make_cycle(12);
  BuiltCover b = build_random_cover(g, 1, 3);
  CHECK(b.cover.r == 0);
  CHECK(b.cover.sets.size() == 12);
  CHECK(validate_cover(g, b.cover, true).valid());
  CoverLevels levels = cover_levels(g, CoverSchedule::make(12, 1));
  for (Vertex v = 0; v < 12; ++v) CHECK(greedy_ball_claim_check(g, v, levels) == 0);
}

TEST_CASE("random covers are valid and within the overlap threshold") {
  Graph path = make_path(64);
  BuiltCover b = build_random_cover(path, 2, 7);
  CoverReport rep = validate_cover(path, b.cover, true);
  CHECK(rep.valid());
  CHECK(b.cover.r == 1);
  CHECK(rep.k_actual <= overlap_bound(64, 2));
  CHECK(b.attempts >= 1);

  std::mt19937_64 rng(12);
  for (int round = 0; round < 15; ++round) {
    Graph g = oracle::to_graph(oracle::random_connected(rng, 5, 120, 0.01));
    const int k = 1 + round % 3;
    BuiltCover c = build_random_cover(g, k, rng());
    CoverReport r = validate_cover(g, c.cover, true);
    CHECK(r.valid());
    CHECK(c.cover.r == (1 << (k - 1)) - 1);
    CHECK(r.k_actual <= overlap_bound(g.size(), k) + 1e-9);
    for (int e : r.exact_radius) CHECK(e <= c.cover.r);
  }
}

TEST_CASE("sqrt-log level count") {
  CHECK(sqrtlog_levels(1024) == 6);
  CHECK(sqrtlog_levels(4) >= 1);
  CHECK(sqrtlog_levels(2) >= 1);
  SqrtLogCover s = build_sqrtlog_cover(make_grid(4, 4), 1);
  CHECK(validate_cover(make_grid(4, 4), s.built.cover).valid());
}

TEST_CASE("ball claim holds on a star and on random graphs") {
  std::vector<Edge> spokes;
  for (Vertex v = 1; v < 40; ++v) spokes.emplace_back(0, v);
  Graph star(40, spokes);
  CoverLevels levels = cover_levels(star, CoverSchedule::make(40, 2));
  for (Vertex v = 0; v < 40; ++v) {
    const int i = greedy_ball_claim_check(star, v, levels);
    CHECK(i >= 0);
    CHECK(i <= 1);
  }
  std::mt19937_64 rng(4);
  for (int round = 0; round < 10; ++round) {
    Graph g = oracle::to_graph(oracle::random_connected(rng, 2, 150, 0.02));
    for (int k = 1; k <= 4; ++k) {
      CoverLevels lv = cover_levels(g, CoverSchedule::make(g.size(), k));
      for (Vertex v = 0; v < g.size(); ++v) CHECK_NOTHROW(greedy_ball_claim_check(g, v, lv));
    }
  }
}

TEST_CASE("rooted samples stay within the radius") {
  Graph g = make_grid(7, 7);
  Rng rng(3);
  for (int round = 0; round < 100; ++round) {
    const Vertex c = static_cast<Vertex>(rng.below(49));
    const int radius = static_cast<int>(rng.below(4));
    VertexSet s = sample_rooted_set(g, c, radius, rng);
    CHECK(s.contains(c));
    CHECK(induced_eccentricity(g, s, c) <= radius);
  }
}

TEST_CASE("Cayley lower-bound inequalities") {
  AffineCayleyGraph c5 = make_affine_cayley({5, CayleyVariant::radius2});
  const Vertex f = 0;
  REQUIRE_FALSE(c5.in_y[f]);
  InequalityCheck single = radius2_lower_inequality(c5, VertexSet(c5.graph.size(), {f}), f);
  CHECK(single.holds);
  CHECK(single.rhs == 0.0);
  CHECK(single.lhs == static_cast<double>(c5.graph.degree(f) + 1));

  VertexSet b2 = ball(c5.graph, f, 2);
  InequalityCheck full = radius2_lower_inequality(c5, b2, f);
  std::size_t in_y = 0;
  for (Vertex v : b2.members()) in_y += c5.in_y[v];
  CHECK(full.rhs == doctest::Approx(4.0 / 4.0 * static_cast<double>(in_y)));
  CHECK(full.lhs == static_cast<double>(closed_neighborhood(c5.graph, b2).size()));
  CHECK(full.holds);
  CHECK_THROWS_AS(radius2_lower_inequality(c5, ball(c5.graph, f, 3), f), PreconditionError);

  AffineCayleyGraph c3 = make_affine_cayley({3, CayleyVariant::radius3});
  VertexSet b3 = ball(c3.graph, 0, 3);
  InequalityCheck r3 = radius3_lower_inequality(c3, b3, 0);
  std::size_t y3 = 0;
  for (Vertex v : b3.members()) y3 += c3.in_y[v];
  CHECK(r3.rhs == doctest::Approx(2.0 / 27.0 * static_cast<double>(y3)));
  CHECK(r3.holds);
  CHECK(radius3_lower_inequality(c3, VertexSet(c3.graph.size(), {0}), 0).holds);
}

TEST_CASE("radius-0 covers") {
  for (std::size_t n = 1; n <= 9; ++n) CHECK(min_radius0_overlap(make_complete(n)) == doctest::Approx(double(n)));
  Graph p = make_path(5);
  CHECK(min_radius0_overlap(p) == doctest::Approx((2.0 * 4.0 + 5.0) / 5.0));
}

TEST_CASE("cover JSON round trip and rejection") {
  Graph g = make_grid(5, 5);
  BuiltCover b = build_random_cover(g, 2, 9);
  nlohmann::json j = cover_to_json(b.cover, b.k_actual);
  Cover back = cover_from_json(j, g.size());
  REQUIRE(back.sets.size() == b.cover.sets.size());
  CHECK(back.r == b.cover.r);
  CHECK(back.k == b.cover.k);
  for (std::size_t i = 0; i < back.sets.size(); ++i) {
    CHECK(back.sets[i].vertices == b.cover.sets[i].vertices);
    CHECK(back.sets[i].center == b.cover.sets[i].center);
    CHECK(back.sets[i].level == b.cover.sets[i].level);
  }
  nlohmann::json wrong = j;
  wrong["schema"] = "tbrw.cover/99";
  CHECK_THROWS_AS(cover_from_json(wrong, g.size()), ParseError);
  CHECK_THROWS_AS(cover_from_json(j, 4), ParseError);
}
