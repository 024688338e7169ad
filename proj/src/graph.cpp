#include "tbrw/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "tbrw/error.hpp"
#include "tbrw/hash.hpp"

namespace tbrw {

Graph::Graph(std::size_t n, std::span<const Edge> edges) {
  std::vector<std::size_t> deg(n, 0);
  for (const Edge& e : edges) {
    if (e.u == e.v) throw PreconditionError("graph: self-loop at vertex " + std::to_string(e.u));
    if (e.v >= n) throw PreconditionError("graph: edge endpoint out of range");
    ++deg[e.u];
    ++deg[e.v];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
  adjacency_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges) {
    adjacency_[fill[e.u]++] = e.v;
    adjacency_[fill[e.v]++] = e.u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    auto first = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]);
    auto last = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]);
    std::sort(first, last);
    if (std::adjacent_find(first, last) != last) {
      throw PreconditionError("graph: duplicate edge at vertex " + std::to_string(v));
    }
    max_degree_ = std::max(max_degree_, deg[v]);
  }
}

bool Graph::has_edge(Vertex a, Vertex b) const {
  if (a >= size() || b >= size()) return false;
  auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex v = 0; v < size(); ++v) {
    for (Vertex w : neighbors(v)) {
      if (v < w) out.emplace_back(v, w);
    }
  }
  return out;
}

bool Graph::connected() const {
  if (size() <= 1) return true;
  auto dist = bfs_distances(*this, Vertex{0});
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d == kUnreachable; });
}

std::uint64_t Graph::hash() const {
  Fnv1a h;
  h.value(size());
  h.values(std::span<const Vertex>(adjacency_));
  return h.digest();
}

VertexSet::VertexSet(std::size_t universe, std::initializer_list<Vertex> members)
    : VertexSet(universe, std::span<const Vertex>(members.begin(), members.size())) {}

VertexSet::VertexSet(std::size_t universe, std::span<const Vertex> members) : in_(universe, 0) {
  for (Vertex v : members) {
    if (v >= universe) throw PreconditionError("vertex set: member out of range");
    insert(v);
  }
}

VertexSet VertexSet::all(std::size_t universe) {
  VertexSet s(universe);
  s.members_.resize(universe);
  for (std::size_t v = 0; v < universe; ++v) s.members_[v] = static_cast<Vertex>(v);
  std::fill(s.in_.begin(), s.in_.end(), 1);
  return s;
}

bool VertexSet::insert(Vertex v) {
  if (v >= in_.size()) throw PreconditionError("vertex set: member out of range");
  if (in_[v]) return false;
  in_[v] = 1;
  members_.push_back(v);
  return true;
}

std::vector<Vertex> VertexSet::sorted() const {
  std::vector<Vertex> out = members_;
  std::sort(out.begin(), out.end());
  return out;
}

VertexSet VertexSet::united(const VertexSet& other) const {
  VertexSet out = *this;
  for (Vertex v : other.members_) out.insert(v);
  return out;
}

VertexSet VertexSet::intersected(const VertexSet& other) const {
  VertexSet out(universe());
  for (Vertex v : members_) {
    if (other.contains(v)) out.insert(v);
  }
  return out;
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
  return std::all_of(members_.begin(), members_.end(),
                     [&](Vertex v) { return other.contains(v); });
}

bool VertexSet::operator==(const VertexSet& other) const {
  return in_ == other.in_;
}

WeightedGraph::WeightedGraph(Graph base, std::vector<double> slot_weights)
    : base_(std::move(base)), weights_(std::move(slot_weights)) {
  const std::size_t n = base_.size();
  if (weights_.size() != 2 * base_.edge_count()) {
    throw PreconditionError("weighted graph: one weight per adjacency slot required");
  }
  strength_.assign(n, 0.0);
  for (Vertex v = 0; v < n; ++v) {
    auto nb = base_.neighbors(v);
    auto w = weights(v);
    for (std::size_t s = 0; s < nb.size(); ++s) {
      if (!(w[s] > 0.0) || !std::isfinite(w[s])) {
        throw PreconditionError("weighted graph: weights must be positive and finite");
      }
      if (weight(nb[s], v) != w[s]) throw PreconditionError("weighted graph: asymmetric weights");
      strength_[v] += w[s];
      if (v < nb[s]) total_weight_ += w[s];
    }
  }
}

WeightedGraph WeightedGraph::uniform(Graph base) {
  std::vector<double> w(2 * base.edge_count(), 1.0);
  return WeightedGraph(std::move(base), std::move(w));
}

double WeightedGraph::weight(Vertex a, Vertex b) const {
  auto nb = base_.neighbors(a);
  auto it = std::lower_bound(nb.begin(), nb.end(), b);
  if (it == nb.end() || *it != b) throw PreconditionError("weighted graph: no such edge");
  return weights_[base_.slot_offset(a) + static_cast<std::size_t>(it - nb.begin())];
}

std::vector<double> WeightedGraph::transition(Vertex v) const {
  auto w = weights(v);
  std::vector<double> out(w.begin(), w.end());
  for (double& x : out) x /= strength_[v];
  return out;
}

std::uint64_t WeightedGraph::hash() const {
  Fnv1a h;
  h.value(base_.hash());
  h.values(std::span<const double>(weights_));
  return h.digest();
}

namespace {

void bfs_from(const Graph& g, std::vector<int>& dist, std::vector<Vertex>& queue, int limit) {
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex v = queue[head];
    if (dist[v] == limit) continue;
    for (Vertex w : g.neighbors(v)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
}

}  // namespace

std::vector<int> bfs_within(const Graph& g, const VertexSet& sources, int limit) {
  require(!sources.empty(), "bfs: source set must be non-empty");
  require(sources.universe() == g.size(), "bfs: source set over a different vertex range");
  std::vector<int> dist(g.size(), kUnreachable);
  std::vector<Vertex> queue;
  queue.reserve(g.size());
  for (Vertex s : sources.members()) {
    dist[s] = 0;
    queue.push_back(s);
  }
  bfs_from(g, dist, queue, limit);
  return dist;
}

std::vector<int> bfs_distances(const Graph& g, const VertexSet& sources) {
  return bfs_within(g, sources, std::numeric_limits<int>::max());
}

std::vector<int> bfs_distances(const Graph& g, Vertex source) {
  require(source < g.size(), "bfs: source out of range");
  std::vector<int> dist(g.size(), kUnreachable);
  std::vector<Vertex> queue{source};
  queue.reserve(g.size());
  dist[source] = 0;
  bfs_from(g, dist, queue, std::numeric_limits<int>::max());
  return dist;
}

VertexSet ball(const Graph& g, Vertex v, int r) {
  require(r >= 0, "ball: radius must be non-negative");
  require(v < g.size(), "ball: centre out of range");
  auto dist = bfs_within(g, VertexSet(g.size(), {v}), r);
  VertexSet out(g.size());
  for (Vertex u = 0; u < g.size(); ++u) {
    if (dist[u] != kUnreachable) out.insert(u);
  }
  return out;
}

std::vector<std::size_t> ball_sizes(const Graph& g, int r) {
  require(r >= 0, "ball_sizes: radius must be non-negative");
  const std::size_t n = g.size();
  std::vector<std::size_t> sizes(n, 0);
  std::vector<int> dist(n, kUnreachable);
  std::vector<Vertex> queue;
  queue.reserve(n);
  for (Vertex v = 0; v < n; ++v) {
    queue.assign(1, v);
    dist[v] = 0;
    bfs_from(g, dist, queue, r);
    sizes[v] = queue.size();
    for (Vertex u : queue) dist[u] = kUnreachable;
  }
  return sizes;
}

VertexSet closed_neighborhood(const Graph& g, const VertexSet& u) {
  VertexSet out = u;
  for (Vertex v : u.members()) {
    for (Vertex w : g.neighbors(v)) out.insert(w);
  }
  return out;
}

Graph graph_power(const Graph& g, int k) {
  require(k >= 1, "graph_power: k must be at least 1");
  const std::size_t n = g.size();
  std::vector<Edge> edges;
  std::vector<int> dist(n, kUnreachable);
  std::vector<Vertex> queue;
  queue.reserve(n);
  for (Vertex v = 0; v < n; ++v) {
    queue.assign(1, v);
    dist[v] = 0;
    bfs_from(g, dist, queue, k);
    for (Vertex u : queue) {
      if (u > v) edges.emplace_back(v, u);
      dist[u] = kUnreachable;
    }
  }
  return Graph(n, edges);
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> members) {
  std::vector<Vertex> index(g.size(), std::numeric_limits<Vertex>::max());
  for (std::size_t i = 0; i < members.size(); ++i) index[members[i]] = static_cast<Vertex>(i);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (Vertex w : g.neighbors(members[i])) {
      const Vertex j = index[w];
      if (j != std::numeric_limits<Vertex>::max() && i < j) edges.emplace_back(static_cast<Vertex>(i), j);
    }
  }
  return {Graph(members.size(), edges), std::vector<Vertex>(members.begin(), members.end())};
}

int induced_eccentricity(const Graph& g, const VertexSet& u, Vertex center) {
  if (!u.contains(center)) return kInfiniteRadius;
  std::vector<int> dist(g.size(), kUnreachable);
  std::vector<Vertex> queue{center};
  dist[center] = 0;
  int ecc = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex v = queue[head];
    ecc = std::max(ecc, dist[v]);
    for (Vertex w : g.neighbors(v)) {
      if (u.contains(w) && dist[w] == kUnreachable) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return queue.size() == u.size() ? ecc : kInfiniteRadius;
}

RadiusResult induced_radius(const Graph& g, const VertexSet& u) {
  require(!u.empty(), "induced_radius: set must be non-empty");
  RadiusResult best;
  for (Vertex c : u.sorted()) {
    const int ecc = induced_eccentricity(g, u, c);
    if (ecc == kInfiniteRadius) return best;  // disconnected: every centre fails
    if (ecc < best.radius) best = {ecc, c};
  }
  return best;
}

int edge_distance(const Graph& g, Edge e, const VertexSet& u) {
  require(g.has_edge(e.u, e.v), "edge_distance: not an edge of the graph");
  auto dist = bfs_distances(g, u);
  return std::min(dist[e.u], dist[e.v]);
}

WeightedGraph weight_field_from_distances(const Graph& g, std::span<const int> dist, double eps) {
  require(eps >= 0.0 && eps < 1.0, "weight_field: eps must lie in [0, 1)");
  const double keep = 1.0 - eps;
  std::vector<double> w(2 * g.edge_count());
  for (Vertex v = 0; v < g.size(); ++v) {
    auto nb = g.neighbors(v);
    for (std::size_t s = 0; s < nb.size(); ++s) {
      const int d = std::min(dist[v], dist[nb[s]]);
      if (d == kUnreachable) throw PreconditionError("weight_field: graph must be connected");
      const double x = std::pow(keep, d);
      if (x == 0.0) throw PreconditionError("weight_field: weight underflows to zero");
      w[g.slot_offset(v) + s] = x;
    }
  }
  return WeightedGraph(g, std::move(w));
}

WeightedGraph weight_field(const Graph& g, const VertexSet& u, double eps) {
  require(eps >= 0.0 && eps <= 1.0, "weight_field: eps must lie in [0, 1]");
  auto dist = bfs_distances(g, u);
  for (int d : dist) {
    if (d == kUnreachable) throw PreconditionError("weight_field: graph must be connected");
  }
  return weight_field_from_distances(g, dist, eps);
}

int diameter(const Graph& g) {
  int best = 0;
  for (Vertex v = 0; v < g.size(); ++v) {
    for (int d : bfs_distances(g, v)) {
      if (d == kUnreachable) return kInfiniteRadius;
      best = std::max(best, d);
    }
  }
  return best;
}

Graph read_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line()) throw ParseError("empty graph file", 0);
  long long n = -1;
  long long m = -1;
  {
    std::istringstream hs(line);
    std::string extra;
    if (!(hs >> n >> m) || n < 0 || m < 0 || (hs >> extra)) {
      throw ParseError("expected header \"n m\"", lineno);
    }
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_line()) throw ParseError("expected " + std::to_string(m) + " edges, file ended", lineno);
    std::istringstream es(line);
    long long a = -1;
    long long b = -1;
    std::string extra;
    if (!(es >> a >> b) || (es >> extra)) throw ParseError("expected edge \"u v\"", lineno);
    if (a < 0 || b < 0 || a >= n || b >= n) throw ParseError("edge endpoint out of range", lineno);
    if (a == b) throw ParseError("self-loop", lineno);
    edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
  }
  if (next_line()) throw ParseError("trailing content after last edge", lineno);
  std::sort(edges.begin(), edges.end());
  auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end()) {
    throw ParseError("duplicate edge " + std::to_string(dup->u) + " " + std::to_string(dup->v), 0);
  }
  return Graph(static_cast<std::size_t>(n), edges);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.size() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file " + path, 0);
  return read_graph(in);
}

void save_graph(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_graph(out, g);
}

}  // namespace tbrw
