#ifndef TBRW_WALK_HPP
#define TBRW_WALK_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tbrw/graph.hpp"
#include "tbrw/rng.hpp"

namespace tbrw {

enum class StepSource : std::uint8_t { random, controller };

/// A controller strategy. The walk driver calls begin() with the start
/// vertex and advance() after every step, so a strategy sees the whole history
/// (v_0, ..., v_t) and may keep state derived from it; distribution() and
/// sample() are then functions of that history.
class BiasFunction {
 public:
  virtual ~BiasFunction() = default;

  virtual void begin(Vertex /*start*/) {}

  /// Controller law at `current`, aligned with g.neighbors(current). Sums to
  /// one.
  virtual std::vector<double> distribution(Vertex current) const = 0;

  /// Index into g.neighbors(current) drawn from distribution(current).
  virtual std::size_t sample(Vertex current, Rng& rng) const;

  virtual void advance(Vertex /*next*/, StepSource /*source*/) {}

  /// Fresh copy with the same configuration and current state.
  virtual std::unique_ptr<BiasFunction> clone() const = 0;

  virtual std::string name() const = 0;
};

/// Draws an index from a probability vector by inversion.
std::size_t sample_index(const std::vector<double>& probs, Rng& rng);

struct Step {
  Vertex next = 0;
  StepSource source = StepSource::random;
};

/// One eps-TBRW step: a uniform neighbour with probability 1 - eps,
/// otherwise a draw from phi. Does not call phi.advance().
Step tbrw_step(const Graph& g, double eps, const BiasFunction& phi, Vertex current, Rng& rng);

/// Exact law of tbrw_step from `current`, aligned with g.neighbors(current).
std::vector<double> tbrw_step_law(const Graph& g, double eps, const BiasFunction& phi, Vertex current);

/// Total variation distance between two laws on the same support.
double total_variation(const std::vector<double>& a, const std::vector<double>& b);

struct WalkTrace {
  Vertex start = 0;
  double eps = 0.0;
  std::uint64_t seed = 0;
  std::vector<Vertex> vertices;     ///< v_1, v_2, ... (start excluded)
  std::vector<StepSource> sources;  ///< source of each step
  std::vector<std::int64_t> first_visit;  ///< -1 if never visited
  std::optional<std::int64_t> cover_time;
};

struct WalkLimits {
  std::uint64_t step_cap = 0;  ///< 0 means no cap
  bool record = false;
};

struct WalkOutcome {
  std::uint64_t steps = 0;
  bool capped = false;
  WalkTrace trace;  ///< filled only when WalkLimits::record
};

/// Runs until every vertex is visited. `phi` is begun at `start` and
/// advanced in place.
WalkOutcome walk_until_cover(const Graph& g, double eps, BiasFunction& phi, Vertex start, Rng& rng,
                             const WalkLimits& limits);

/// Runs until the walk is in `target` (0 steps if start is in target).
WalkOutcome walk_until_hit(const Graph& g, double eps, BiasFunction& phi, Vertex start,
                           const VertexSet& target, Rng& rng, const WalkLimits& limits);

/// Counts visits to `counted` at times 1..T-1 where T is the hitting time of
/// `target`; the start itself is not counted.
struct VisitCount {
  std::uint64_t visits = 0;
  bool capped = false;
};
VisitCount visits_before_hit(const Graph& g, double eps, BiasFunction& phi, Vertex start,
                             const VertexSet& counted, const VertexSet& target, Rng& rng,
                             std::uint64_t step_cap);

struct EstimatorReport {
  std::size_t trials = 0;
  std::size_t cap_hits = 0;  ///< trials stopped by the step cap; excluded from the statistics
  double mean = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::string ci_method = "normal approximation, 95%";
  std::uint64_t seed = 0;
  std::vector<double> samples;  ///< per trial, in trial order; NaN for capped trials
};

/// The estimate is unusable: every trial hit the cap.
class EstimationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EstimatorOptions {
  double cap_multiplier = 1.0;  ///< per-trial cap = cap_multiplier * n^3 (at least 10^4)
  unsigned threads = 0;         ///< 0: TBRW_THREADS or hardware concurrency
};

std::uint64_t step_cap_for(std::size_t n, double multiplier);

/// Mean, standard error and normal 95% interval of the finite samples.
EstimatorReport summarize(std::vector<double> samples, std::uint64_t seed);

/// Runs fn(j) for j in [0, trials) on a pool of worker threads; results are
/// stored by trial index so the outcome does not depend on scheduling.
std::vector<double> run_trials(std::size_t trials, unsigned threads,
                               const std::function<double(std::size_t)>& fn);

unsigned default_threads();

EstimatorReport estimate_cover_time(const Graph& g, double eps, const BiasFunction& phi, Vertex start,
                                    std::size_t trials, std::uint64_t seed,
                                    const EstimatorOptions& options = {});

EstimatorReport estimate_hitting_time(const Graph& g, double eps, const BiasFunction& phi, Vertex start,
                                      const VertexSet& target, std::size_t trials, std::uint64_t seed,
                                      const EstimatorOptions& options = {});

EstimatorReport estimate_visits_before_hit(const Graph& g, double eps, const BiasFunction& phi,
                                           Vertex start, const VertexSet& counted,
                                           const VertexSet& target, std::size_t trials,
                                           std::uint64_t seed, const EstimatorOptions& options = {});

}  // namespace tbrw

#endif  // TBRW_WALK_HPP
