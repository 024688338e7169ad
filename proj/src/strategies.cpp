#include "tbrw/strategies.hpp"

#include <algorithm>
#include <cmath>

#include "tbrw/error.hpp"

namespace tbrw {

double emulation_mix(std::size_t n1, std::size_t n2, double eps) {
  require(n1 >= 1, "emulation_mix: N_1 must be non-empty");
  require(eps >= 0.0 && eps <= 1.0, "emulation_mix: eps must lie in [0, 1]");
  if (n2 == 0) return 0.0;
  const double a = static_cast<double>(n1);
  const double b = static_cast<double>(n2);
  return (1.0 - eps) * b * b / ((a + b) * (a + (1.0 - eps) * b));
}

namespace {

std::size_t count_closer(const Graph& g, std::span<const int> dist, Vertex current) {
  const int target = dist[current] - 1;
  std::size_t n1 = 0;
  for (Vertex w : g.neighbors(current)) n1 += dist[w] == target ? 1 : 0;
  return n1;
}

}  // namespace

std::vector<double> emulation_law(const Graph& g, std::span<const int> dist, double eps, Vertex current) {
  auto nb = g.neighbors(current);
  std::vector<double> law(nb.size(), 0.0);
  if (nb.empty()) return law;
  if (dist[current] == 0) {
    std::fill(law.begin(), law.end(), 1.0 / static_cast<double>(nb.size()));
    return law;
  }
  const std::size_t n1 = count_closer(g, dist, current);
  if (n1 == 0) throw InternalError("phi_U: vertex has no neighbour closer to U");
  const std::size_t n2 = nb.size() - n1;
  const double p = emulation_mix(n1, n2, eps);
  for (std::size_t s = 0; s < nb.size(); ++s) {
    law[s] = dist[nb[s]] == dist[current] - 1 ? (1.0 - p) / static_cast<double>(n1)
                                              : p / static_cast<double>(n2);
  }
  return law;
}

std::size_t emulation_sample(const Graph& g, std::span<const int> dist, double eps, Vertex current,
                             Rng& rng) {
  auto nb = g.neighbors(current);
  if (dist[current] == 0) return rng.below(nb.size());
  const std::size_t n1 = count_closer(g, dist, current);
  if (n1 == 0) throw InternalError("phi_U: vertex has no neighbour closer to U");
  const std::size_t n2 = nb.size() - n1;
  const bool far = rng.uniform() < emulation_mix(n1, n2, eps);
  // pick the j-th member of the chosen class
  std::size_t j = rng.below(far ? n2 : n1);
  const int closer = dist[current] - 1;
  for (std::size_t s = 0; s < nb.size(); ++s) {
    if ((dist[nb[s]] == closer) != far && j-- == 0) return s;
  }
  throw InternalError("phi_U: sampling fell off the neighbour list");
}

EmulationBias::EmulationBias(const Graph& g, const VertexSet& u, double eps)
    : g_(&g), dist_(std::make_shared<const std::vector<int>>(bfs_distances(g, u))), eps_(eps) {
  require(eps >= 0.0 && eps <= 1.0, "phi_U: eps must lie in [0, 1]");
  for (int d : *dist_) {
    if (d == kUnreachable) throw PreconditionError("phi_U: graph must be connected");
  }
}

std::vector<double> EmulationBias::distribution(Vertex current) const {
  return emulation_law(*g_, *dist_, eps_, current);
}

std::size_t EmulationBias::sample(Vertex current, Rng& rng) const {
  return emulation_sample(*g_, *dist_, eps_, current, rng);
}

std::unique_ptr<BiasFunction> EmulationBias::clone() const {
  return std::make_unique<EmulationBias>(*this);
}

std::unique_ptr<BiasFunction> phi_U(const Graph& g, const VertexSet& u, double eps) {
  return std::make_unique<EmulationBias>(g, u, eps);
}

NaiveTowardBias::NaiveTowardBias(const Graph& g, const VertexSet& target)
    : g_(&g), dist_(std::make_shared<const std::vector<int>>(bfs_distances(g, target))) {}

std::vector<double> NaiveTowardBias::distribution(Vertex current) const {
  auto nb = g_->neighbors(current);
  const auto& dist = *dist_;
  std::vector<double> law(nb.size(), 0.0);
  std::size_t closer = 0;
  for (Vertex w : nb) {
    closer += (dist[current] != kUnreachable && dist[w] != kUnreachable && dist[w] < dist[current]) ? 1 : 0;
  }
  for (std::size_t s = 0; s < nb.size(); ++s) {
    if (closer == 0) {
      law[s] = 1.0 / static_cast<double>(nb.size());
    } else if (dist[nb[s]] != kUnreachable && dist[nb[s]] < dist[current]) {
      law[s] = 1.0 / static_cast<double>(closer);
    }
  }
  return law;
}

std::unique_ptr<BiasFunction> NaiveTowardBias::clone() const {
  return std::make_unique<NaiveTowardBias>(*this);
}

std::unique_ptr<BiasFunction> naive_toward(const Graph& g, const VertexSet& target) {
  require(!target.empty(), "naive_toward: target must be non-empty");
  return std::make_unique<NaiveTowardBias>(g, target);
}

std::vector<double> UniformBias::distribution(Vertex current) const {
  const std::size_t d = g_->degree(current);
  return std::vector<double>(d, d ? 1.0 / static_cast<double>(d) : 0.0);
}

std::vector<Vertex> spanning_walk(const Graph& g, Vertex start) {
  require(start < g.size(), "spanning_walk: start out of range");
  const std::size_t n = g.size();
  std::vector<std::vector<Vertex>> children(n);
  std::vector<char> seen(n, 0);
  std::vector<Vertex> queue{start};
  seen[start] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (Vertex w : g.neighbors(queue[head])) {
      if (!seen[w]) {
        seen[w] = 1;
        children[queue[head]].push_back(w);
        queue.push_back(w);
      }
    }
  }
  if (queue.size() != n) throw PreconditionError("spanning_walk: graph must be connected");

  std::vector<Vertex> walk{start};
  // (vertex, next child index)
  std::vector<std::pair<Vertex, std::size_t>> stack{{start, 0}};
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    if (next < children[v].size()) {
      const Vertex c = children[v][next++];
      walk.push_back(c);
      stack.emplace_back(c, 0);
    } else {
      stack.pop_back();
      if (!stack.empty()) walk.push_back(stack.back().first);
    }
  }
  return walk;
}

SpanningWalkBias::SpanningWalkBias(const Graph& g, double eps, Vertex start) : g_(&g), eps_(eps) {
  require(eps >= 0.0 && eps <= 1.0, "spanning walk: eps must lie in [0, 1]");
  auto plan = std::make_shared<Plan>();
  plan->waypoints = spanning_walk(g, start);
  plan->dist.resize(g.size());
  for (Vertex v = 0; v < g.size(); ++v) plan->dist[v] = bfs_distances(g, v);
  plan_ = std::move(plan);
}

void SpanningWalkBias::begin(Vertex start) {
  require(start == plan_->waypoints.front(), "spanning walk: begun away from its planned start");
  reached_ = 0;
}

std::span<const int> SpanningWalkBias::current_field() const {
  const auto& wp = plan_->waypoints;
  const std::size_t next = std::min(reached_ + 1, wp.size() - 1);
  return plan_->dist[wp[next]];
}

std::vector<double> SpanningWalkBias::distribution(Vertex current) const {
  return emulation_law(*g_, current_field(), eps_, current);
}

std::size_t SpanningWalkBias::sample(Vertex current, Rng& rng) const {
  return emulation_sample(*g_, current_field(), eps_, current, rng);
}

void SpanningWalkBias::advance(Vertex next, StepSource /*source*/) {
  const auto& wp = plan_->waypoints;
  if (reached_ + 1 < wp.size() && next == wp[reached_ + 1]) ++reached_;
}

std::unique_ptr<BiasFunction> SpanningWalkBias::clone() const {
  return std::make_unique<SpanningWalkBias>(*this);
}

std::unique_ptr<BiasFunction> spanning_walk_strategy(const Graph& g, double eps, Vertex start) {
  return std::make_unique<SpanningWalkBias>(g, eps, start);
}

ClosestUncoveredBias::ClosestUncoveredBias(const Graph& g) : g_(&g), visited_(g.size(), 0) {}

void ClosestUncoveredBias::begin(Vertex start) {
  std::fill(visited_.begin(), visited_.end(), 0);
  visited_[start] = 1;
  unvisited_ = g_->size() - 1;
}

void ClosestUncoveredBias::advance(Vertex next, StepSource /*source*/) {
  if (!visited_[next]) {
    visited_[next] = 1;
    --unvisited_;
  }
}

std::size_t ClosestUncoveredBias::first_hop(Vertex current) const {
  if (unvisited_ == 0) return 0;
  const std::size_t n = g_->size();
  std::vector<int> dist(n, kUnreachable);
  std::vector<std::size_t> hop(n, 0);
  std::vector<Vertex> queue{current};
  dist[current] = 0;
  int found_at = -1;
  Vertex best = 0;
  std::size_t best_hop = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex v = queue[head];
    if (found_at >= 0 && dist[v] > found_at) break;
    if (!visited_[v]) {
      if (found_at < 0 || v < best) {
        best = v;
        best_hop = hop[v];
      }
      found_at = dist[v];
      continue;
    }
    auto vn = g_->neighbors(v);
    for (std::size_t s = 0; s < vn.size(); ++s) {
      const Vertex w = vn[s];
      if (dist[w] == kUnreachable) {
        dist[w] = dist[v] + 1;
        hop[w] = v == current ? s : hop[v];
        queue.push_back(w);
      }
    }
  }
  return found_at >= 0 ? best_hop : 0;
}

std::vector<double> ClosestUncoveredBias::distribution(Vertex current) const {
  std::vector<double> law(g_->degree(current), 0.0);
  if (!law.empty()) law[first_hop(current)] = 1.0;
  return law;
}

std::unique_ptr<BiasFunction> ClosestUncoveredBias::clone() const {
  return std::make_unique<ClosestUncoveredBias>(*this);
}

double ball_growth_constant(const Graph& g, double eps) {
  require(eps > 0.0 && eps <= 1.0, "ball_growth_constant: eps must lie in (0, 1]");
  const double keep = 1.0 - eps;
  const double n = static_cast<double>(g.size());
  double best = 0.0;
  for (Vertex v = 0; v < g.size(); ++v) {
    auto dist = bfs_distances(g, v);
    int ecc = 0;
    for (int d : dist) {
      if (d == kUnreachable) throw PreconditionError("ball_growth_constant: graph must be connected");
      ecc = std::max(ecc, d);
    }
    std::vector<double> layer(static_cast<std::size_t>(ecc) + 1, 0.0);
    for (int d : dist) layer[static_cast<std::size_t>(d)] += 1.0;
    double ball = 0.0;
    double sum = 0.0;
    double factor = 1.0;
    for (std::size_t k = 0; k < layer.size(); ++k) {
      ball += layer[k];
      sum += ball * factor;
      factor *= keep;
    }
    // |B^k(v)| = n for k > ecc: n * sum_{k > ecc} keep^k
    sum += eps < 1.0 ? n * factor / eps : 0.0;
    best = std::max(best, sum);
  }
  return best;
}

}  // namespace tbrw
