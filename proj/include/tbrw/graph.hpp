#ifndef TBRW_GRAPH_HPP
#define TBRW_GRAPH_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace tbrw {

using Vertex = std::uint32_t;

/// Distance value for vertices not reachable from the sources.
inline constexpr int kUnreachable = -1;

/// Undirected edge, canonicalised so that u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  auto operator<=>(const Edge&) const = default;
};

/// Simple undirected graph on vertices 0..n-1, stored as sorted adjacency
/// arrays (CSR). Immutable after construction.
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list. Rejects self-loops, duplicate edges and
  /// out-of-range endpoints.
  Graph(std::size_t n, std::span<const Edge> edges);
  Graph(std::size_t n, std::initializer_list<Edge> edges)
      : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

  std::size_t size() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return adjacency_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const noexcept { return max_degree_; }

  /// Position of v's adjacency slice inside the flat adjacency array; used to
  /// align per-slot data (weights, transition laws) with neighbors(v).
  std::size_t slot_offset(Vertex v) const { return offsets_[v]; }

  bool has_edge(Vertex a, Vertex b) const;

  /// Canonical edges in lexicographic order.
  std::vector<Edge> edges() const;

  bool connected() const;

  /// FNV-1a over the adjacency structure.
  std::uint64_t hash() const;

  bool operator==(const Graph& other) const {
    return offsets_ == other.offsets_ && adjacency_ == other.adjacency_;
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> adjacency_;
  std::size_t max_degree_ = 0;
};

/// Subset of {0..n-1} with O(1) membership.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe) : in_(universe, 0) {}
  VertexSet(std::size_t universe, std::initializer_list<Vertex> members);
  VertexSet(std::size_t universe, std::span<const Vertex> members);

  static VertexSet all(std::size_t universe);

  /// Returns true if v was not yet a member.
  bool insert(Vertex v);
  bool contains(Vertex v) const { return v < in_.size() && in_[v] != 0; }

  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  std::size_t universe() const noexcept { return in_.size(); }

  /// Members in insertion order.
  const std::vector<Vertex>& members() const noexcept { return members_; }
  std::vector<Vertex> sorted() const;

  VertexSet united(const VertexSet& other) const;
  VertexSet intersected(const VertexSet& other) const;
  bool is_subset_of(const VertexSet& other) const;

  bool operator==(const VertexSet& other) const;

 private:
  std::vector<char> in_;
  std::vector<Vertex> members_;
};

/// Graph with a positive weight on every edge. Weights are stored per
/// adjacency slot, aligned with base().neighbors(v).
class WeightedGraph {
 public:
  WeightedGraph() = default;
  /// `slot_weights` has one entry per adjacency slot and must be symmetric.
  WeightedGraph(Graph base, std::vector<double> slot_weights);

  /// All weights equal to one.
  static WeightedGraph uniform(Graph base);

  const Graph& base() const noexcept { return base_; }
  std::size_t size() const noexcept { return base_.size(); }

  std::span<const double> weights(Vertex v) const {
    return {weights_.data() + base_.slot_offset(v), base_.degree(v)};
  }
  double weight(Vertex a, Vertex b) const;

  /// Sum of weights of edges incident to v.
  double strength(Vertex v) const { return strength_[v]; }
  /// Sum over edges (each edge once).
  double total_weight() const noexcept { return total_weight_; }

  /// Transition law of the reversible walk from v, aligned with neighbors(v).
  std::vector<double> transition(Vertex v) const;

  std::uint64_t hash() const;

 private:
  Graph base_;
  std::vector<double> weights_;
  std::vector<double> strength_;
  double total_weight_ = 0.0;
};

/// Exact BFS distance to the nearest source; kUnreachable where none.
std::vector<int> bfs_distances(const Graph& g, const VertexSet& sources);
std::vector<int> bfs_distances(const Graph& g, Vertex source);

/// Like bfs_distances but stops expanding at `limit`; farther vertices are
/// kUnreachable.
std::vector<int> bfs_within(const Graph& g, const VertexSet& sources, int limit);

/// Closed ball {u : dist(u,v) <= r}.
VertexSet ball(const Graph& g, Vertex v, int r);

/// |ball(g, v, r)| for every v, without materialising the sets.
std::vector<std::size_t> ball_sizes(const Graph& g, int r);

/// N+(U) = U together with all neighbours of U.
VertexSet closed_neighborhood(const Graph& g, const VertexSet& u);

/// k-th power: uv is an edge iff 1 <= dist(u,v) <= k.
Graph graph_power(const Graph& g, int k);

/// Induced subgraph on `members`, relabelled 0..|members|-1 in the given
/// order; `labels[i]` is the original id of new vertex i.
struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> labels;
};
InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> members);

inline constexpr int kInfiniteRadius = std::numeric_limits<int>::max();

struct RadiusResult {
  int radius = kInfiniteRadius;  ///< kInfiniteRadius when G[U] is disconnected
  Vertex center = 0;
  bool finite() const noexcept { return radius != kInfiniteRadius; }
};

/// Radius of G[U] with a centre attaining it.
RadiusResult induced_radius(const Graph& g, const VertexSet& u);

/// Eccentricity of `center` inside G[U]; kInfiniteRadius if G[U] is not
/// connected or center is not in U.
int induced_eccentricity(const Graph& g, const VertexSet& u, Vertex center);

/// min(dist(a,U), dist(b,U)) for e = ab.
int edge_distance(const Graph& g, Edge e, const VertexSet& u);

/// Edge weights w_U(e) = (1 - eps)^{edge_distance(e, U)}.
WeightedGraph weight_field(const Graph& g, const VertexSet& u, double eps);

/// Same, from a precomputed distance field dist(., U).
WeightedGraph weight_field_from_distances(const Graph& g, std::span<const int> dist,
                                          double eps);

/// Diameter (max over BFS eccentricities); kInfiniteRadius if disconnected.
int diameter(const Graph& g);

/// Text format: "n m" then m lines "u v". Writing canonicalises edge order.
Graph read_graph(std::istream& in);
void write_graph(std::ostream& out, const Graph& g);
Graph load_graph(const std::string& path);
void save_graph(const std::string& path, const Graph& g);

}  // namespace tbrw

#endif  // TBRW_GRAPH_HPP
