#include "tbrw/walk.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "tbrw/error.hpp"

namespace tbrw {

std::size_t sample_index(const std::vector<double>& probs, Rng& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    acc += probs[i];
    last_positive = i;
    if (u < acc) return i;
  }
  return last_positive;  // rounding left u above the accumulated mass
}

std::size_t BiasFunction::sample(Vertex current, Rng& rng) const {
  return sample_index(distribution(current), rng);
}

Step tbrw_step(const Graph& g, double eps, const BiasFunction& phi, Vertex current, Rng& rng) {
  auto nb = g.neighbors(current);
  if (nb.empty()) throw PreconditionError("tbrw_step: isolated vertex");
  if (rng.uniform() < eps) return {nb[phi.sample(current, rng)], StepSource::controller};
  return {nb[rng.below(nb.size())], StepSource::random};
}

std::vector<double> tbrw_step_law(const Graph& g, double eps, const BiasFunction& phi, Vertex current) {
  const std::size_t deg = g.degree(current);
  if (deg == 0) throw PreconditionError("tbrw_step_law: isolated vertex");
  auto law = phi.distribution(current);
  for (double& x : law) x = (1.0 - eps) / static_cast<double>(deg) + eps * x;
  return law;
}

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
  require(a.size() == b.size(), "total_variation: supports differ");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s / 2.0;
}

namespace {

// Shared driver: steps until `done(next)` or the cap.
template <typename Done>
WalkOutcome drive(const Graph& g, double eps, BiasFunction& phi, Vertex start, Rng& rng,
                  const WalkLimits& limits, Done&& done) {
  WalkOutcome out;
  if (limits.record) {
    out.trace.start = start;
    out.trace.eps = eps;
  }
  Vertex current = start;
  while (!done(current, out.steps)) {
    if (limits.step_cap != 0 && out.steps >= limits.step_cap) {
      out.capped = true;
      break;
    }
    const Step step = tbrw_step(g, eps, phi, current, rng);
    phi.advance(step.next, step.source);
    current = step.next;
    ++out.steps;
    if (limits.record) {
      out.trace.vertices.push_back(step.next);
      out.trace.sources.push_back(step.source);
    }
  }
  return out;
}

void fill_first_visits(WalkTrace& trace, std::size_t n) {
  trace.first_visit.assign(n, -1);
  trace.first_visit[trace.start] = 0;
  std::size_t seen = 1;
  for (std::size_t t = 0; t < trace.vertices.size(); ++t) {
    auto& fv = trace.first_visit[trace.vertices[t]];
    if (fv < 0) {
      fv = static_cast<std::int64_t>(t + 1);
      if (++seen == n) trace.cover_time = fv;
    }
  }
  if (n == 1) trace.cover_time = 0;
}

}  // namespace

WalkOutcome walk_until_cover(const Graph& g, double eps, BiasFunction& phi, Vertex start, Rng& rng,
                             const WalkLimits& limits) {
  require(start < g.size(), "walk: start out of range");
  const std::size_t n = g.size();
  std::vector<char> seen(n, 0);
  std::size_t remaining = n;
  phi.begin(start);
  auto out = drive(g, eps, phi, start, rng, limits, [&](Vertex v, std::uint64_t) {
    if (!seen[v]) {
      seen[v] = 1;
      --remaining;
    }
    return remaining == 0;
  });
  if (limits.record) fill_first_visits(out.trace, n);
  return out;
}

WalkOutcome walk_until_hit(const Graph& g, double eps, BiasFunction& phi, Vertex start,
                           const VertexSet& target, Rng& rng, const WalkLimits& limits) {
  require(start < g.size(), "walk: start out of range");
  require(!target.empty(), "walk: target must be non-empty");
  phi.begin(start);
  auto out = drive(g, eps, phi, start, rng, limits,
                   [&](Vertex v, std::uint64_t) { return target.contains(v); });
  if (limits.record) fill_first_visits(out.trace, g.size());
  return out;
}

VisitCount visits_before_hit(const Graph& g, double eps, BiasFunction& phi, Vertex start,
                             const VertexSet& counted, const VertexSet& target, Rng& rng,
                             std::uint64_t step_cap) {
  VisitCount out;
  phi.begin(start);
  auto walk = drive(g, eps, phi, start, rng, WalkLimits{step_cap, false},
                    [&](Vertex v, std::uint64_t t) {
                      if (target.contains(v)) return true;
                      if (t > 0 && counted.contains(v)) ++out.visits;
                      return false;
                    });
  out.capped = walk.capped;
  return out;
}

std::uint64_t step_cap_for(std::size_t n, double multiplier) {
  const double cube = static_cast<double>(n) * static_cast<double>(n) * static_cast<double>(n);
  const double cap = std::max(1e4, multiplier * cube);
  return cap >= 1.8e19 ? std::numeric_limits<std::uint64_t>::max() : static_cast<std::uint64_t>(cap);
}

EstimatorReport summarize(std::vector<double> samples, std::uint64_t seed) {
  EstimatorReport r;
  r.trials = samples.size();
  r.seed = seed;
  double sum = 0.0;
  std::size_t k = 0;
  for (double x : samples) {
    if (std::isnan(x)) {
      ++r.cap_hits;
    } else {
      sum += x;
      ++k;
    }
  }
  if (k == 0) throw EstimationFailure("estimator: every trial hit the step cap");
  r.mean = sum / static_cast<double>(k);
  double ss = 0.0;
  for (double x : samples) {
    if (!std::isnan(x)) ss += (x - r.mean) * (x - r.mean);
  }
  const double var = k > 1 ? ss / static_cast<double>(k - 1) : 0.0;
  r.std_error = std::sqrt(var / static_cast<double>(k));
  r.ci_low = r.mean - 1.96 * r.std_error;
  r.ci_high = r.mean + 1.96 * r.std_error;
  r.samples = std::move(samples);
  return r;
}

unsigned default_threads() {
  if (const char* env = std::getenv("TBRW_THREADS")) {
    const int t = std::atoi(env);
    if (t > 0) return static_cast<unsigned>(t);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

std::vector<double> run_trials(std::size_t trials, unsigned threads,
                               const std::function<double(std::size_t)>& fn) {
  std::vector<double> out(trials);
  if (threads == 0) threads = default_threads();
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(trials, 1)));
  if (threads <= 1) {
    for (std::size_t j = 0; j < trials; ++j) out[j] = fn(j);
    return out;
  }
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t j = t; j < trials; j += threads) {
        try {
          out[j] = fn(j);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

EstimatorReport estimate_cover_time(const Graph& g, double eps, const BiasFunction& phi, Vertex start,
                                    std::size_t trials, std::uint64_t seed,
                                    const EstimatorOptions& options) {
  require(trials >= 1, "estimate_cover_time: need at least one trial");
  require(g.connected(), "estimate_cover_time: graph must be connected");
  const std::uint64_t cap = step_cap_for(g.size(), options.cap_multiplier);
  auto samples = run_trials(trials, options.threads, [&](std::size_t j) {
    auto local = phi.clone();
    Rng rng = Rng::stream(seed, j);
    auto out = walk_until_cover(g, eps, *local, start, rng, {cap, false});
    return out.capped ? std::nan("") : static_cast<double>(out.steps);
  });
  return summarize(std::move(samples), seed);
}

EstimatorReport estimate_hitting_time(const Graph& g, double eps, const BiasFunction& phi, Vertex start,
                                      const VertexSet& target, std::size_t trials, std::uint64_t seed,
                                      const EstimatorOptions& options) {
  require(trials >= 1, "estimate_hitting_time: need at least one trial");
  const std::uint64_t cap = step_cap_for(g.size(), options.cap_multiplier);
  auto samples = run_trials(trials, options.threads, [&](std::size_t j) {
    auto local = phi.clone();
    Rng rng = Rng::stream(seed, j);
    auto out = walk_until_hit(g, eps, *local, start, target, rng, {cap, false});
    return out.capped ? std::nan("") : static_cast<double>(out.steps);
  });
  return summarize(std::move(samples), seed);
}

EstimatorReport estimate_visits_before_hit(const Graph& g, double eps, const BiasFunction& phi,
                                           Vertex start, const VertexSet& counted,
                                           const VertexSet& target, std::size_t trials,
                                           std::uint64_t seed, const EstimatorOptions& options) {
  require(trials >= 1, "estimate_visits_before_hit: need at least one trial");
  const std::uint64_t cap = step_cap_for(g.size(), options.cap_multiplier);
  auto samples = run_trials(trials, options.threads, [&](std::size_t j) {
    auto local = phi.clone();
    Rng rng = Rng::stream(seed, j);
    auto out = visits_before_hit(g, eps, *local, start, counted, target, rng, cap);
    return out.capped ? std::nan("") : static_cast<double>(out.visits);
  });
  return summarize(std::move(samples), seed);
}

}  // namespace tbrw
