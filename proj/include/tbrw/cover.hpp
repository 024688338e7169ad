#ifndef TBRW_COVER_HPP
#define TBRW_COVER_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tbrw/generators.hpp"
#include "tbrw/graph.hpp"
#include "tbrw/rng.hpp"

namespace tbrw {

struct CoverSet {
  VertexSet vertices;
  Vertex center = 0;
  int level = 0;  ///< construction level i (ball radius 2^i - 1); 0 for hand-made sets
};

/// Sets V_1..V_m with a certificate centre each and a claimed radius r.
struct Cover {
  std::vector<CoverSet> sets;
  int r = 0;
  int k = 0;  ///< number of levels used by the builder; 0 if not built
};

/// Cover made of the given vertex lists; centre = induced_radius witness.
Cover make_cover(const Graph& g, const std::vector<std::vector<Vertex>>& sets);
Cover singleton_cover(const Graph& g);
Cover whole_graph_cover(const Graph& g);

/// Sum_i |N+(V_i)| / n.
double overlap_of(const Graph& g, const Cover& c);

struct CoverReport {
  bool coverage_ok = true;
  std::optional<Vertex> uncovered;          ///< first vertex in no set
  bool radius_ok = true;
  std::optional<std::size_t> radius_violation;  ///< first set whose radius exceeds r
  std::vector<int> center_eccentricity;     ///< per set, inside G[V_i]
  std::vector<int> exact_radius;            ///< per set; filled when the full check ran
  double k_actual = 0.0;

  bool valid() const noexcept { return coverage_ok && radius_ok; }
};

/// Coverage, radius from each certificate centre (and the exact induced
/// radius when `full_radius`), and the measured overlap K_actual.
CoverReport validate_cover(const Graph& g, const Cover& c, bool full_radius);
CoverReport validate_cover(const Graph& g, const Cover& c);

/// t_i = (n log n)^{i/k}, p_i = min(1, 2 log n / t_i), log base 2.
struct CoverSchedule {
  int k = 1;
  std::size_t n = 0;
  double log_n = 0.0;
  std::vector<double> t;  ///< i = 0..k
  std::vector<double> p;  ///< i = 0..k

  static CoverSchedule make(std::size_t n, int k);
};

/// Acceptance threshold 4 k n^{1/k} log^{1+1/k} n.
double overlap_bound(std::size_t n, int k);

/// S_i = {v : |B(v, 2^i)| <= t_{i+1}} for i = 0..k-1.
struct CoverLevels {
  CoverSchedule schedule;
  std::vector<std::vector<char>> in_s;
};
CoverLevels cover_levels(const Graph& g, const CoverSchedule& schedule);

/// Smallest i with |B(v, 2^i - 1) ∩ S_i| >= t_i. Throws InternalError if
/// there is none.
int greedy_ball_claim_check(const Graph& g, Vertex v, const CoverLevels& levels);

struct CoverAttempt {
  Cover cover;
  bool covers = false;
  double k_actual = 0.0;
};

class CoverConstructionFailure : public std::runtime_error {
 public:
  CoverConstructionFailure(const std::string& what, CoverAttempt best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const CoverAttempt& best() const noexcept { return best_; }

 private:
  CoverAttempt best_;
};

struct BuiltCover {
  Cover cover;
  double k_actual = 0.0;
  int attempts = 0;
  double threshold = 0.0;
};

/// Samples V(p_0..p_k), forms the balls B(v, 2^i - 1) for v in S_i ∩ V(p_i),
/// and retries with fresh randomness until the family covers V(G) with
/// K_actual <= overlap_bound(n, k). Identical balls are kept once.
BuiltCover build_random_cover(const Graph& g, int k, std::uint64_t seed, int max_retries = 100);

/// build_random_cover with k = round(2 sqrt(log n)) clamped to [1, ceil(log n)].
struct SqrtLogCover {
  BuiltCover built;
  int k = 1;
  double target = 0.0;     ///< 4^{sqrt(log n)}
  bool certified = false;  ///< r <= target and K_actual <= target
};
int sqrtlog_levels(std::size_t n);
SqrtLogCover build_sqrtlog_cover(const Graph& g, std::uint64_t seed, int max_retries = 100);

/// Random vertex set containing `center` in which every member at BFS layer d
/// has a member neighbour at layer d-1, so its eccentricity from the centre
/// is at most `radius`.
VertexSet sample_rooted_set(const Graph& g, Vertex center, int radius, Rng& rng);

struct InequalityCheck {
  double lhs = 0.0;  ///< |N+(V_i)|
  double rhs = 0.0;
  bool holds = false;
};

/// |N+(V_i)| >= (p-1)/4 |V_i ∩ Y| on the radius-2 affine Cayley graph.
InequalityCheck radius2_lower_inequality(const AffineCayleyGraph& cg, const VertexSet& v, Vertex center);

/// |N+(V_i)| >= 3^{-3} (p-1) |V_i ∩ Y'| on the radius-3 affine Cayley graph.
InequalityCheck radius3_lower_inequality(const AffineCayleyGraph& cg, const VertexSet& v, Vertex center);

/// Minimum of Sum |N+(V_i)| over all covers by radius-0 sets, found by
/// enumerating every vertex subset (n <= 20). Returns the minimum divided by n.
double min_radius0_overlap(const Graph& g);

nlohmann::json cover_to_json(const Cover& c, double k_actual);
/// Rejects unknown schema versions and out-of-range vertices.
Cover cover_from_json(const nlohmann::json& j, std::size_t n);

}  // namespace tbrw

#endif  // TBRW_COVER_HPP
