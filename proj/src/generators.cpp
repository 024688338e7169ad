#include "tbrw/generators.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "tbrw/error.hpp"

namespace tbrw {

Graph make_path(std::size_t n) {
  require(n >= 1, "make_path: need at least one vertex");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(Vertex(i), Vertex(i + 1));
  return Graph(n, edges);
}

Graph make_cycle(std::size_t n) {
  require(n >= 3, "make_cycle: need at least three vertices");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) edges.emplace_back(Vertex(i), Vertex((i + 1) % n));
  return Graph(n, edges);
}

Graph make_grid(std::size_t rows, std::size_t cols) {
  require(rows >= 1 && cols >= 1, "make_grid: sizes must be positive");
  std::vector<Edge> edges;
  auto id = [cols](std::size_t r, std::size_t c) { return Vertex(r * cols + c); };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
    }
  }
  return Graph(rows * cols, edges);
}

Graph make_complete(std::size_t n) {
  require(n >= 1, "make_complete: need at least one vertex");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(Vertex(i), Vertex(j));
  }
  return Graph(n, edges);
}

Graph make_binary_tree(std::size_t levels) {
  require(levels >= 1 && levels < 31, "make_binary_tree: levels must be in [1, 30]");
  const std::size_t n = (std::size_t{1} << levels) - 1;
  std::vector<Edge> edges;
  for (std::size_t v = 1; v < n; ++v) edges.emplace_back(Vertex((v - 1) / 2), Vertex(v));
  return Graph(n, edges);
}

Graph make_random_regular(std::size_t n, std::size_t d, std::uint64_t seed) {
  if ((n * d) % 2 != 0) throw PreconditionError("make_random_regular: n*d must be even");
  require(d < n, "make_random_regular: degree must be below n");
  std::mt19937_64 rng(seed);
  std::vector<Vertex> points(n * d);
  for (std::size_t i = 0; i < points.size(); ++i) points[i] = Vertex(i / d);
  std::vector<Edge> edges;
  std::set<Edge> seen;
  for (;;) {
    std::shuffle(points.begin(), points.end(), rng);
    edges.clear();
    seen.clear();
    bool simple = true;
    for (std::size_t i = 0; i < points.size() && simple; i += 2) {
      if (points[i] == points[i + 1]) {
        simple = false;
      } else {
        Edge e(points[i], points[i + 1]);
        simple = seen.insert(e).second;
        edges.push_back(e);
      }
    }
    if (simple) return Graph(n, edges);
  }
}

Graph make_random_connected(std::size_t n, std::size_t extra, std::uint64_t seed) {
  require(n >= 1, "make_random_connected: need at least one vertex");
  std::mt19937_64 rng(seed);
  std::vector<Vertex> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = Vertex(i);
  std::shuffle(order.begin(), order.end(), rng);
  std::set<Edge> edges;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t j = std::uniform_int_distribution<std::size_t>(0, i - 1)(rng);
    edges.insert(Edge(order[i], order[j]));
  }
  const std::size_t room = n * (n - 1) / 2;
  const std::size_t want = std::min(room, edges.size() + extra);
  std::uniform_int_distribution<Vertex> pick(0, Vertex(n - 1));
  while (edges.size() < want) {
    const Vertex a = pick(rng);
    const Vertex b = pick(rng);
    if (a != b) edges.insert(Edge(a, b));
  }
  std::vector<Edge> list(edges.begin(), edges.end());
  return Graph(n, list);
}

LayeredGraph make_layered(std::size_t n) {
  require(n >= 6, "make_layered: n must be at least 6");
  LayeredGraph out;
  int k = 3;
  while ((std::size_t{1} << (k + 1)) - 2 <= n) ++k;
  out.k = k;
  for (int i = 1; i <= k - 1; ++i) out.sizes.push_back(std::size_t{1} << i);
  out.sizes.back() += n - ((std::size_t{1} << k) - 2);

  std::vector<std::size_t> first(out.sizes.size() + 1, 0);
  for (std::size_t i = 0; i < out.sizes.size(); ++i) first[i + 1] = first[i] + out.sizes[i];
  out.layer.resize(n);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < out.sizes.size(); ++i) {
    for (std::size_t a = first[i]; a < first[i + 1]; ++a) {
      out.layer[a] = static_cast<int>(i + 1);
      if (i + 1 < out.sizes.size()) {
        for (std::size_t b = first[i + 1]; b < first[i + 2]; ++b) edges.emplace_back(Vertex(a), Vertex(b));
      }
    }
  }
  out.graph = Graph(n, edges);
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

namespace {

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
  // a^(p-2) mod p
  std::uint64_t result = 1;
  std::uint64_t base = a % p;
  for (std::uint32_t e = p - 2; e > 0; e >>= 1) {
    if (e & 1U) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<std::uint32_t>(result);
}

std::size_t element_index(const AffineElement& e, const AffineCayleySpec& spec) {
  const std::size_t p = spec.p;
  std::size_t idx = (e.slope - 1) * p + e.shift;
  if (spec.variant == CayleyVariant::radius3) idx = idx * p + e.shift2;
  return idx;
}

}  // namespace

AffineElement compose(const AffineElement& a, const AffineElement& b, std::uint32_t p) {
  const std::uint64_t q = p;
  return {static_cast<std::uint32_t>(std::uint64_t{a.slope} * b.slope % q),
          static_cast<std::uint32_t>((std::uint64_t{a.slope} * b.shift + a.shift) % q),
          static_cast<std::uint32_t>((std::uint64_t{a.slope} * b.shift2 + a.shift2) % q)};
}

AffineElement inverse(const AffineElement& a, std::uint32_t p) {
  const std::uint64_t q = p;
  const std::uint32_t inv = mod_inverse(a.slope, p);
  return {inv, static_cast<std::uint32_t>(inv * (q - a.shift) % q),
          static_cast<std::uint32_t>(inv * (q - a.shift2) % q)};
}

std::vector<AffineElement> cayley_generators(const AffineCayleySpec& spec) {
  // S = {id, x+1} (radius-2); S' = {s_v : v in {(0,0),(0,1),(1,0)}} (radius-3).
  std::vector<std::pair<std::uint32_t, std::uint32_t>> shifts;
  if (spec.variant == CayleyVariant::radius2) {
    shifts = {{0, 0}, {1, 0}};
  } else {
    shifts = {{0, 0}, {0, 1}, {1, 0}};
  }
  std::vector<AffineElement> gens;
  for (auto [u1, u2] : shifts) {
    for (std::uint32_t lambda = 1; lambda < spec.p; ++lambda) {
      const AffineElement s{1, u1, u2};
      const AffineElement h{lambda, 0, 0};
      gens.push_back(compose(s, h, spec.p));
    }
  }
  return gens;
}

Vertex AffineCayleyGraph::vertex_of(const AffineElement& e, bool y) const {
  return static_cast<Vertex>(element_index(e, spec) + (y ? group_order : 0));
}

AffineCayleyGraph make_affine_cayley(const AffineCayleySpec& spec) {
  if (spec.p < 3 || !is_prime(spec.p)) throw PreconditionError("make_affine_cayley: p must be an odd prime");
  AffineCayleyGraph out;
  out.spec = spec;
  const std::uint32_t p = spec.p;
  std::vector<AffineElement> group;
  for (std::uint32_t lambda = 1; lambda < p; ++lambda) {
    for (std::uint32_t u = 0; u < p; ++u) {
      if (spec.variant == CayleyVariant::radius2) {
        group.push_back({lambda, u, 0});
      } else {
        for (std::uint32_t u2 = 0; u2 < p; ++u2) group.push_back({lambda, u, u2});
      }
    }
  }
  out.group_order = group.size();
  const std::size_t n = 2 * group.size();
  out.in_y.assign(n, 0);
  out.element.resize(n);
  for (std::size_t i = 0; i < group.size(); ++i) {
    out.element[i] = group[i];
    out.element[i + group.size()] = group[i];
    out.in_y[i + group.size()] = 1;
  }

  const auto gens = cayley_generators(spec);
  {
    // Cosets sH are disjoint, so |SH| = |S||H|.
    std::set<AffineElement> distinct(gens.begin(), gens.end());
    if (distinct.size() != gens.size()) throw InternalError("make_affine_cayley: SH cosets overlap");
  }
  std::vector<Edge> edges;
  edges.reserve(group.size() * gens.size());
  for (const AffineElement& f : group) {
    const Vertex x = out.vertex_of(f, false);
    for (const AffineElement& g : gens) edges.emplace_back(x, out.vertex_of(compose(g, f, p), true));
  }
  out.graph = Graph(n, edges);
  return out;
}

}  // namespace tbrw
