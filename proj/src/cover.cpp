#include "tbrw/cover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "tbrw/error.hpp"

namespace tbrw {

namespace {

constexpr const char* kCoverSchema = "tbrw.cover/1";

double log2_n(std::size_t n) { return n > 1 ? std::log2(static_cast<double>(n)) : 0.0; }

}  // namespace

Cover make_cover(const Graph& g, const std::vector<std::vector<Vertex>>& sets) {
  Cover c;
  for (const auto& members : sets) {
    VertexSet s(g.size(), std::span<const Vertex>(members));
    require(!s.empty(), "make_cover: empty set");
    auto rad = induced_radius(g, s);
    c.r = std::max(c.r, rad.radius);
    c.sets.push_back({std::move(s), rad.center, 0});
  }
  return c;
}

Cover singleton_cover(const Graph& g) {
  Cover c;
  for (Vertex v = 0; v < g.size(); ++v) c.sets.push_back({VertexSet(g.size(), {v}), v, 0});
  return c;
}

Cover whole_graph_cover(const Graph& g) {
  Cover c;
  auto all = VertexSet::all(g.size());
  auto rad = induced_radius(g, all);
  require(rad.finite(), "whole_graph_cover: graph must be connected");
  c.r = rad.radius;
  c.sets.push_back({std::move(all), rad.center, 0});
  return c;
}

double overlap_of(const Graph& g, const Cover& c) {
  double total = 0.0;
  for (const auto& s : c.sets) total += static_cast<double>(closed_neighborhood(g, s.vertices).size());
  return g.size() ? total / static_cast<double>(g.size()) : 0.0;
}

CoverReport validate_cover(const Graph& g, const Cover& c, bool full_radius) {
  CoverReport rep;
  std::vector<char> covered(g.size(), 0);
  for (std::size_t i = 0; i < c.sets.size(); ++i) {
    const auto& s = c.sets[i];
    for (Vertex v : s.vertices.members()) covered[v] = 1;
    const int ecc = induced_eccentricity(g, s.vertices, s.center);
    rep.center_eccentricity.push_back(ecc);
    int radius = ecc;
    if (full_radius) {
      radius = s.vertices.empty() ? kInfiniteRadius : induced_radius(g, s.vertices).radius;
      rep.exact_radius.push_back(radius);
    }
    if (radius > c.r && rep.radius_ok) {
      rep.radius_ok = false;
      rep.radius_violation = i;
    }
  }
  for (Vertex v = 0; v < g.size(); ++v) {
    if (!covered[v]) {
      rep.coverage_ok = false;
      rep.uncovered = v;
      break;
    }
  }
  rep.k_actual = overlap_of(g, c);
  return rep;
}

CoverReport validate_cover(const Graph& g, const Cover& c) {
  return validate_cover(g, c, g.size() <= 200);
}

CoverSchedule CoverSchedule::make(std::size_t n, int k) {
  require(k >= 1, "cover schedule: k must be at least 1");
  CoverSchedule s;
  s.k = k;
  s.n = n;
  s.log_n = log2_n(n);
  const double base = static_cast<double>(n) * s.log_n;
  for (int i = 0; i <= k; ++i) {
    const double t = std::pow(base, static_cast<double>(i) / k);
    s.t.push_back(t);
    s.p.push_back(std::min(1.0, 2.0 * s.log_n / t));
  }
  return s;
}

double overlap_bound(std::size_t n, int k) {
  const double l = log2_n(n);
  return 4.0 * k * std::pow(static_cast<double>(n), 1.0 / k) * std::pow(l, 1.0 + 1.0 / k);
}

CoverLevels cover_levels(const Graph& g, const CoverSchedule& schedule) {
  require(schedule.n == g.size(), "cover_levels: schedule built for another graph size");
  CoverLevels out{schedule, {}};
  for (int i = 0; i < schedule.k; ++i) {
    auto sizes = ball_sizes(g, 1 << i);
    std::vector<char> in(g.size(), 0);
    for (Vertex v = 0; v < g.size(); ++v) in[v] = static_cast<double>(sizes[v]) <= schedule.t[i + 1];
    out.in_s.push_back(std::move(in));
  }
  return out;
}

int greedy_ball_claim_check(const Graph& g, Vertex v, const CoverLevels& levels) {
  for (int i = 0; i < levels.schedule.k; ++i) {
    auto b = ball(g, v, (1 << i) - 1);
    std::size_t hits = 0;
    for (Vertex u : b.members()) hits += levels.in_s[i][u] ? 1 : 0;
    if (static_cast<double>(hits) >= levels.schedule.t[i]) return i;
  }
  throw InternalError("greedy ball claim failed at vertex " + std::to_string(v));
}

namespace {

CoverAttempt attempt_cover(const Graph& g, const CoverLevels& levels, Rng& rng) {
  const auto& sch = levels.schedule;
  const std::size_t n = g.size();
  // k + 1 independent samples V(p_0), ..., V(p_k); V(p_k) is not used.
  std::vector<std::vector<char>> picked(sch.k + 1, std::vector<char>(n, 0));
  for (int i = 0; i <= sch.k; ++i) {
    for (Vertex v = 0; v < n; ++v) picked[i][v] = rng.bernoulli(sch.p[i]);
  }
  CoverAttempt out;
  out.cover.k = sch.k;
  out.cover.r = (1 << (sch.k - 1)) - 1;
  std::set<std::vector<Vertex>> seen;
  std::vector<char> covered(n, 0);
  double overlap = 0.0;
  for (int i = 0; i < sch.k; ++i) {
    for (Vertex v = 0; v < n; ++v) {
      if (!levels.in_s[i][v] || !picked[i][v]) continue;
      auto b = ball(g, v, (1 << i) - 1);
      if (!seen.insert(b.sorted()).second) continue;
      for (Vertex u : b.members()) covered[u] = 1;
      overlap += static_cast<double>(closed_neighborhood(g, b).size());
      out.cover.sets.push_back({std::move(b), v, i});
    }
  }
  out.covers = std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
  out.k_actual = n ? overlap / static_cast<double>(n) : 0.0;
  return out;
}

}  // namespace

BuiltCover build_random_cover(const Graph& g, int k, std::uint64_t seed, int max_retries) {
  require(k >= 1, "build_random_cover: k must be at least 1");
  require(g.size() >= 1, "build_random_cover: empty graph");
  require(g.connected(), "build_random_cover: graph must be connected");
  require(max_retries >= 1, "build_random_cover: need at least one attempt");
  const auto levels = cover_levels(g, CoverSchedule::make(g.size(), k));
  const double threshold = overlap_bound(g.size(), k);
  if (g.size() == 1) {
    // log n = 0 makes every p_i vanish; the only cover is the vertex itself.
    Cover c = singleton_cover(g);
    c.k = k;
    c.r = (1 << (k - 1)) - 1;
    return {std::move(c), 1.0, 1, threshold};
  }
  std::optional<CoverAttempt> best;
  for (int a = 0; a < max_retries; ++a) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(a));
    CoverAttempt at = attempt_cover(g, levels, rng);
    if (at.covers && at.k_actual <= threshold) return {std::move(at.cover), at.k_actual, a + 1, threshold};
    if (!best || (at.covers && !best->covers) ||
        (at.covers == best->covers && at.k_actual < best->k_actual)) {
      best = std::move(at);
    }
  }
  throw CoverConstructionFailure("build_random_cover: no acceptable cover in " +
                                     std::to_string(max_retries) + " attempts",
                                 std::move(*best));
}

int sqrtlog_levels(std::size_t n) {
  const double l = log2_n(n);
  const int k = static_cast<int>(std::lround(2.0 * std::sqrt(l)));
  const int upper = std::max(1, static_cast<int>(std::ceil(l)));
  return std::clamp(k, 1, upper);
}

SqrtLogCover build_sqrtlog_cover(const Graph& g, std::uint64_t seed, int max_retries) {
  require(g.size() >= 2, "build_sqrtlog_cover: need at least two vertices");
  SqrtLogCover out;
  out.k = sqrtlog_levels(g.size());
  out.built = build_random_cover(g, out.k, seed, max_retries);
  out.target = std::pow(4.0, std::sqrt(log2_n(g.size())));
  out.certified = out.built.cover.r <= out.target && out.built.k_actual <= out.target;
  return out;
}

VertexSet sample_rooted_set(const Graph& g, Vertex center, int radius, Rng& rng) {
  const double keep = 0.05 + 0.95 * rng.uniform();
  auto dist = bfs_within(g, VertexSet(g.size(), {center}), radius);
  std::vector<std::vector<Vertex>> layers(static_cast<std::size_t>(radius) + 1);
  for (Vertex v = 0; v < g.size(); ++v) {
    if (dist[v] != kUnreachable) layers[static_cast<std::size_t>(dist[v])].push_back(v);
  }
  VertexSet out(g.size(), {center});
  for (std::size_t d = 1; d < layers.size(); ++d) {
    for (Vertex v : layers[d]) {
      bool anchored = false;
      for (Vertex w : g.neighbors(v)) {
        if (dist[w] == static_cast<int>(d) - 1 && out.contains(w)) {
          anchored = true;
          break;
        }
      }
      if (anchored && rng.bernoulli(keep)) out.insert(v);
    }
  }
  return out;
}

namespace {

InequalityCheck lower_inequality(const AffineCayleyGraph& cg, const VertexSet& v, Vertex center,
                                 int radius, double factor) {
  const int ecc = induced_eccentricity(cg.graph, v, center);
  if (ecc > radius) throw PreconditionError("cover inequality: set radius exceeds the bound");
  std::size_t in_y = 0;
  for (Vertex u : v.members()) in_y += cg.in_y[u] ? 1 : 0;
  InequalityCheck out;
  out.lhs = static_cast<double>(closed_neighborhood(cg.graph, v).size());
  out.rhs = factor * static_cast<double>(in_y);
  out.holds = out.lhs >= out.rhs;
  return out;
}

}  // namespace

InequalityCheck radius2_lower_inequality(const AffineCayleyGraph& cg, const VertexSet& v, Vertex center) {
  require(cg.spec.variant == CayleyVariant::radius2, "radius2 inequality: needs the radius-2 graph");
  return lower_inequality(cg, v, center, 2, (cg.spec.p - 1) / 4.0);
}

InequalityCheck radius3_lower_inequality(const AffineCayleyGraph& cg, const VertexSet& v, Vertex center) {
  require(cg.spec.variant == CayleyVariant::radius3, "radius3 inequality: needs the radius-3 graph");
  return lower_inequality(cg, v, center, 3, (cg.spec.p - 1) / 27.0);
}

double min_radius0_overlap(const Graph& g) {
  const std::size_t n = g.size();
  require(n >= 1 && n <= 20, "min_radius0_overlap: exhaustive search needs 1 <= n <= 20");
  struct Candidate {
    std::uint32_t mask;
    std::size_t cost;
  };
  std::vector<Candidate> family;
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    VertexSet s(n);
    for (Vertex v = 0; v < n; ++v) {
      if (mask & (1U << v)) s.insert(v);
    }
    if (induced_radius(g, s).radius == 0) family.push_back({mask, closed_neighborhood(g, s).size()});
  }
  // dp over covered masks
  const std::size_t full = (std::size_t{1} << n) - 1;
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dp(full + 1, kNone);
  dp[0] = 0;
  for (std::size_t mask = 0; mask <= full; ++mask) {
    if (dp[mask] == kNone) continue;
    for (const auto& c : family) {
      const std::size_t next = mask | c.mask;
      if (next != mask) dp[next] = std::min(dp[next], dp[mask] + c.cost);
    }
  }
  return static_cast<double>(dp[full]) / static_cast<double>(n);
}

nlohmann::json cover_to_json(const Cover& c, double k_actual) {
  nlohmann::json sets = nlohmann::json::array();
  for (const auto& s : c.sets) {
    sets.push_back({{"center", s.center}, {"level", s.level}, {"vertices", s.vertices.sorted()}});
  }
  return {{"schema", kCoverSchema}, {"r", c.r}, {"k", c.k}, {"sets", sets}, {"K_actual", k_actual}};
}

Cover cover_from_json(const nlohmann::json& j, std::size_t n) {
  if (!j.is_object() || j.value("schema", std::string()) != kCoverSchema) {
    throw ParseError("cover: unknown or missing schema (expected " + std::string(kCoverSchema) + ")", 0);
  }
  try {
    Cover c;
    c.r = j.at("r").get<int>();
    c.k = j.value("k", 0);
    for (const auto& s : j.at("sets")) {
      auto members = s.at("vertices").get<std::vector<Vertex>>();
      for (Vertex v : members) {
        if (v >= n) throw ParseError("cover: vertex " + std::to_string(v) + " out of range", 0);
      }
      const Vertex center = s.at("center").get<Vertex>();
      if (center >= n) throw ParseError("cover: centre out of range", 0);
      c.sets.push_back({VertexSet(n, std::span<const Vertex>(members)), center, s.value("level", 0)});
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("cover: ") + e.what(), 0);
  }
}

}  // namespace tbrw
