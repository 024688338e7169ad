#ifndef TBRW_GENERATORS_HPP
#define TBRW_GENERATORS_HPP

#include <cstdint>
#include <vector>

#include "tbrw/graph.hpp"

namespace tbrw {

Graph make_path(std::size_t n);
Graph make_cycle(std::size_t n);
Graph make_grid(std::size_t rows, std::size_t cols);
Graph make_complete(std::size_t n);
/// Complete binary tree with `levels` levels (2^levels - 1 vertices), heap order.
Graph make_binary_tree(std::size_t levels);

/// Simple d-regular graph from the pairing model, rejecting loops and
/// multi-edges and retrying until simple.
Graph make_random_regular(std::size_t n, std::size_t d, std::uint64_t seed);

/// Random recursive tree on a shuffled labelling plus `extra` further edges
/// drawn uniformly among the missing ones (fewer if the graph fills up).
Graph make_random_connected(std::size_t n, std::size_t extra, std::uint64_t seed);

/// Layers V_1..V_{k-1} with |V_i| = 2^i, the last layer enlarged so the total
/// is n; complete bipartite joins between consecutive layers.
struct LayeredGraph {
  Graph graph;
  int k = 0;                       ///< 2^k - 2 <= n < 2^{k+1} - 2
  std::vector<int> layer;          ///< 1-based layer index per vertex
  std::vector<std::size_t> sizes;  ///< sizes[i-1] = |V_i|
};
LayeredGraph make_layered(std::size_t n);

enum class CayleyVariant { radius2, radius3 };

struct AffineCayleySpec {
  std::uint32_t p = 3;  ///< odd prime
  CayleyVariant variant = CayleyVariant::radius2;
};

/// Element of the affine group: x -> slope*x + shift (radius-2), or the pair
/// (x -> slope*x + shift, x -> slope*x + shift2) with a common slope
/// (radius-3). shift2 is 0 and unused for radius-2.
struct AffineElement {
  std::uint32_t slope = 1;
  std::uint32_t shift = 0;
  std::uint32_t shift2 = 0;

  auto operator<=>(const AffineElement&) const = default;
};

/// Bipartite Cayley graph: parts X = [0, |group|) and Y = [|group|, 2|group|),
/// both copies of the group; f in X is joined to (sh)f in Y for s in S, h in H.
struct AffineCayleyGraph {
  Graph graph;
  AffineCayleySpec spec;
  std::vector<char> in_y;               ///< part label: 0 for X, 1 for Y
  std::vector<AffineElement> element;   ///< group element carried by each vertex
  std::size_t group_order = 0;

  Vertex vertex_of(const AffineElement& e, bool y) const;
};

/// Composition a∘b (apply b first, then a) in the affine group mod p.
AffineElement compose(const AffineElement& a, const AffineElement& b, std::uint32_t p);
AffineElement inverse(const AffineElement& a, std::uint32_t p);

/// Generating set SH (radius-2) or S'H' (radius-3) as explicit elements.
std::vector<AffineElement> cayley_generators(const AffineCayleySpec& spec);

AffineCayleyGraph make_affine_cayley(const AffineCayleySpec& spec);

bool is_prime(std::uint64_t n);

}  // namespace tbrw

#endif  // TBRW_GENERATORS_HPP
