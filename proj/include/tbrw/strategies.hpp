#ifndef TBRW_STRATEGIES_HPP
#define TBRW_STRATEGIES_HPP

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "tbrw/graph.hpp"
#include "tbrw/walk.hpp"

namespace tbrw {

// Strategies keep a pointer to the host graph; the graph must outlive them.

/// Mixing probability of the weighted-walk emulation: with n1 neighbours one
/// step closer to U and n2 others,
///   p = (1-eps) n2^2 / ((n1+n2)(n1 + (1-eps) n2)).
/// p = 0 when n2 = 0.
double emulation_mix(std::size_t n1, std::size_t n2, double eps);

/// Controller law of phi_U at `current`, given dist(., U). At distance >= 1:
/// uniform over the closer neighbours N_1 with probability 1-p and over the
/// rest N_2 with probability p. Inside U every incident edge has weight one,
/// so the controller is uniform there.
std::vector<double> emulation_law(const Graph& g, std::span<const int> dist_to_u, double eps,
                                  Vertex current);
std::size_t emulation_sample(const Graph& g, std::span<const int> dist_to_u, double eps,
                             Vertex current, Rng& rng);

/// phi_U: the eps-TBRW under it has the law of the walk on weight_field(g,U,eps).
class EmulationBias final : public BiasFunction {
 public:
  EmulationBias(const Graph& g, const VertexSet& u, double eps);

  std::vector<double> distribution(Vertex current) const override;
  std::size_t sample(Vertex current, Rng& rng) const override;
  std::unique_ptr<BiasFunction> clone() const override;
  std::string name() const override { return "phi_U"; }

  const std::vector<int>& distances() const noexcept { return *dist_; }

 private:
  const Graph* g_;
  std::shared_ptr<const std::vector<int>> dist_;
  double eps_;
};

std::unique_ptr<BiasFunction> phi_U(const Graph& g, const VertexSet& u, double eps);

/// Uniform over neighbours strictly closer to the target; uniform over all
/// neighbours when there are none (the vertex is in the target).
class NaiveTowardBias final : public BiasFunction {
 public:
  NaiveTowardBias(const Graph& g, const VertexSet& target);

  std::vector<double> distribution(Vertex current) const override;
  std::unique_ptr<BiasFunction> clone() const override;
  std::string name() const override { return "naive"; }

 private:
  const Graph* g_;
  std::shared_ptr<const std::vector<int>> dist_;
};

std::unique_ptr<BiasFunction> naive_toward(const Graph& g, const VertexSet& target);

/// Controller that picks uniformly among all neighbours (eps is irrelevant).
class UniformBias final : public BiasFunction {
 public:
  explicit UniformBias(const Graph& g) : g_(&g) {}
  std::vector<double> distribution(Vertex current) const override;
  std::unique_ptr<BiasFunction> clone() const override { return std::make_unique<UniformBias>(*this); }
  std::string name() const override { return "uniform"; }

 private:
  const Graph* g_;
};

/// Closed walk from `start` that traverses each edge of the BFS spanning tree
/// rooted at `start` twice in DFS order (length 2n-2).
std::vector<Vertex> spanning_walk(const Graph& g, Vertex start);

/// Follows spanning_walk(g, start) leg by leg: while the next unreached
/// waypoint is x_{i+1}, acts as phi_U with U = {x_{i+1}}.
class SpanningWalkBias final : public BiasFunction {
 public:
  SpanningWalkBias(const Graph& g, double eps, Vertex start);

  void begin(Vertex start) override;
  std::vector<double> distribution(Vertex current) const override;
  std::size_t sample(Vertex current, Rng& rng) const override;
  void advance(Vertex next, StepSource source) override;
  std::unique_ptr<BiasFunction> clone() const override;
  std::string name() const override { return "spanning"; }

  const std::vector<Vertex>& waypoints() const noexcept { return plan_->waypoints; }
  /// Index i of the last waypoint reached.
  std::size_t position() const noexcept { return reached_; }

 private:
  struct Plan {
    std::vector<Vertex> waypoints;
    std::vector<std::vector<int>> dist;  ///< dist[v] = BFS distances from v
  };
  std::span<const int> current_field() const;

  const Graph* g_;
  double eps_;
  std::shared_ptr<const Plan> plan_;
  std::size_t reached_ = 0;
};

std::unique_ptr<BiasFunction> spanning_walk_strategy(const Graph& g, double eps, Vertex start);

/// Steers toward the lowest-id unvisited vertex among those nearest to the
/// walk. Point mass on the first step of a shortest path. No bound is claimed.
class ClosestUncoveredBias final : public BiasFunction {
 public:
  explicit ClosestUncoveredBias(const Graph& g);

  void begin(Vertex start) override;
  std::vector<double> distribution(Vertex current) const override;
  void advance(Vertex next, StepSource source) override;
  std::unique_ptr<BiasFunction> clone() const override;
  std::string name() const override { return "closest-uncovered"; }

 private:
  std::size_t first_hop(Vertex current) const;

  const Graph* g_;
  std::vector<char> visited_;
  std::size_t unvisited_ = 0;
};

/// L = max_v sum_k |B^k(v)| (1-eps)^k, summed until the balls saturate
/// (after which the tail is a geometric series in closed form).
double ball_growth_constant(const Graph& g, double eps);

}  // namespace tbrw

#endif  // TBRW_STRATEGIES_HPP
