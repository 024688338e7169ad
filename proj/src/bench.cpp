#include "tbrw/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <sstream>

#include "tbrw/chain.hpp"
#include "tbrw/cover.hpp"
#include "tbrw/error.hpp"
#include "tbrw/explorer.hpp"
#include "tbrw/generators.hpp"
#include "tbrw/hash.hpp"
#include "tbrw/rng.hpp"
#include "tbrw/strategies.hpp"

namespace tbrw {

namespace {

constexpr const char* kReportSchema = "tbrw.bench/1";
constexpr double kSolverTolerance = 1e-9;

class RowSink {
 public:
  RowSink(int criterion, const BenchOptions& options) : criterion_(criterion), options_(options) {}

  void add(std::string name, std::string tag, double lhs, double rhs, double tolerance, std::string detail = {}) {
    if (auto it = options_.tolerance_overrides.find(name); it != options_.tolerance_overrides.end()) {
      tolerance = it->second;
    }
    BoundRow row;
    row.criterion = criterion_;
    row.name = std::move(name);
    row.tag = std::move(tag);
    row.lhs = lhs;
    row.rhs = rhs;
    row.tolerance = tolerance;
    row.pass = std::isfinite(lhs) && lhs <= rhs + tolerance;
    row.detail = std::move(detail);
    rows_.push_back(std::move(row));
  }

  std::vector<BoundRow> take() { return std::move(rows_); }

 private:
  int criterion_;
  const BenchOptions& options_;
  std::vector<BoundRow> rows_;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t tag) { return Rng::mix(seed ^ Rng::mix(tag)); }

VertexSet random_subset(std::size_t n, std::size_t max_size, Rng& rng) {
  const std::size_t size = 1 + rng.below(std::max<std::size_t>(1, max_size));
  VertexSet out(n);
  while (out.size() < std::min(size, n)) out.insert(static_cast<Vertex>(rng.below(n)));
  return out;
}

Graph connected_regular(std::size_t n, std::size_t d, std::uint64_t seed) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    Graph g = make_random_regular(n, d, seed + attempt);
    if (g.connected()) return g;
  }
}

struct Named {
  std::string name;
  Graph graph;
};

// ---------------------------------------------------------------- criterion 1

std::vector<BoundRow> emulation_rows(const BenchOptions& options) {
  RowSink sink(1, options);
  Rng rng(sub_seed(options.seed, 1));
  const double eps_choices[] = {0.1, 0.3, 0.5, 0.9};
  double worst = 0.0;
  std::size_t tuples = 0;
  for (; tuples < 200; ++tuples) {
    const std::size_t n = 2 + rng.below(49);
    Graph g;
    switch (tuples % 4) {
      case 0: g = make_random_connected(n, rng.below(n + 1), rng.engine()()); break;
      case 1: g = make_random_connected(n, 0, rng.engine()()); break;
      case 2: g = n >= 3 ? make_cycle(n) : make_path(n); break;
      default: g = make_grid(1 + n / 10, 5); break;
    }
    const double eps = eps_choices[rng.below(4)];
    const auto u = random_subset(g.size(), std::max<std::size_t>(1, g.size() / 4), rng);
    const Vertex v = static_cast<Vertex>(rng.below(g.size()));
    const EmulationBias phi(g, u, eps);
    const auto law = tbrw_step_law(g, eps, phi, v);
    const auto target = weight_field(g, u, eps).transition(v);
    worst = std::max(worst, total_variation(law, target));
  }
  sink.add("emulation/total-variation", "weighted-walk emulation", worst, 1e-12, 0.0,
           std::to_string(tuples) + " (graph, U, eps, vertex) tuples, n <= 50");
  return sink.take();
}

// ------------------------------------------------------------ criteria 2 and 3

std::vector<std::pair<std::string, std::vector<Graph>>> hitting_corpus(std::uint64_t seed) {
  std::vector<std::pair<std::string, std::vector<Graph>>> corpus;
  std::vector<Graph> paths, grids, regular, layered, cayley;
  for (std::size_t j = 0; j < 20; ++j) paths.push_back(make_path(2 + (j * 23) / 19));
  for (std::size_t j = 0; j < 20; ++j) {
    const std::size_t rows = 2 + j % 4;
    const std::size_t cols = 2 + (j / 4) % (25 / rows - 1);
    grids.push_back(make_grid(rows, cols));
  }
  for (std::size_t j = 0; j < 20; ++j) {
    const std::size_t d = 3 + j % 2;
    const std::size_t n = 8 + 2 * ((j / 2) % 9);  // 8..24
    regular.push_back(connected_regular(n, d, sub_seed(seed, 200 + j)));
  }
  for (std::size_t j = 0; j < 20; ++j) layered.push_back(make_layered(6 + j).graph);
  const auto c3 = make_affine_cayley({3, CayleyVariant::radius2});
  for (std::size_t j = 0; j < 20; ++j) cayley.push_back(c3.graph);
  corpus.emplace_back("paths", std::move(paths));
  corpus.emplace_back("grids", std::move(grids));
  corpus.emplace_back("random-regular", std::move(regular));
  corpus.emplace_back("layered", std::move(layered));
  corpus.emplace_back("cayley", std::move(cayley));
  return corpus;
}

std::pair<std::vector<BoundRow>, std::vector<BoundRow>> hitting_rows(const BenchOptions& options) {
  RowSink global(2, options);
  RowSink local(3, options);
  Rng rng(sub_seed(options.seed, 2));
  for (const auto& [family, graphs] : hitting_corpus(options.seed)) {
    double worst_global = 0.0;
    double worst_local = 0.0;
    std::size_t checks = 0;
    std::size_t global_violations = 0;
    std::size_t local_violations = 0;
    for (const auto& g : graphs) {
      const double edges = static_cast<double>(g.edge_count());
      for (int s = 0; s < 20; ++s) {
        const auto u = random_subset(g.size(), std::max<std::size_t>(1, g.size() / 3), rng);
        const Vertex v = static_cast<Vertex>(rng.below(g.size()));
        for (double eps : {0.1, 0.5}) {
          const auto h = hitting_times(weight_field(g, u, eps), u);
          const double bound = 2.0 / eps * edges;
          const auto loc = localized_hitting_bound(g, u, eps, v);
          worst_global = std::max(worst_global, h[v] / bound);
          worst_local = std::max(worst_local, h[v] / loc.bound);
          global_violations += h[v] > bound ? 1 : 0;
          local_violations += h[v] > loc.bound ? 1 : 0;
          ++checks;
        }
      }
    }
    global.add("hitting/" + family, "weighted hitting time <= 2 e(G) / eps", worst_global, 1.0, 0.0,
               "max H/bound over " + std::to_string(checks) + " checks; violations " +
                   std::to_string(global_violations));
    local.add("localized-hitting/" + family, "weighted hitting time <= 2 (e(G[W]) + 1) / eps", worst_local, 1.0,
              0.0,
              "max H/bound over " + std::to_string(checks) + " checks; violations " +
                  std::to_string(local_violations));
  }
  return {global.take(), local.take()};
}

// ---------------------------------------------------------------- criterion 4

std::vector<BoundRow> layered_rows(const BenchOptions& options) {
  RowSink sink(4, options);
  for (double eps : {0.0, 0.01, 0.05}) {
    double worst = 0.0;
    for (int k = 4; k <= 8; ++k) {
      const double closed = std::pow(layered_alpha(eps), k - 3);
      worst = std::max(worst, std::abs(layered_expected_visits(eps, k) - closed) / closed);
    }
    sink.add("layered/stationary-ratio/eps=" + fmt("%g", eps), "layer walk stationary ratio", worst, 1e-9, 0.0,
             "max relative error over k = 4..8");
  }

  const auto lg = make_layered(14);
  const double eps = 0.05;
  VertexSet bottom(lg.graph.size());
  VertexSet top(lg.graph.size());
  Vertex start = 0;
  for (Vertex v = 0; v < lg.graph.size(); ++v) {
    if (lg.layer[v] == 1) bottom.insert(v);
    if (lg.layer[v] == lg.k - 1) top.insert(v);
    if (lg.layer[v] == 2) start = v;
  }
  const NaiveTowardBias phi(lg.graph, bottom);
  const auto rep = estimate_visits_before_hit(lg.graph, eps, phi, start, top, bottom, 10000, sub_seed(options.seed, 4));
  const double closed = std::pow(layered_alpha(eps), lg.k - 3);
  sink.add("layered/monte-carlo-visits", "layer walk stationary ratio", std::abs(rep.mean - closed),
           3.0 * rep.std_error, 0.0,
           fmt("mean %.6g, closed form %.6g, SE %.3g", rep.mean, closed, rep.std_error) + ", 10^4 trials, n = 14");

  double worst_gap = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < 1000; ++j) {
    const double e = j / 1000.0;
    worst_gap = std::max(worst_gap, 4.0 * (1.0 - 5.0 * e) - layered_alpha(e));
  }
  sink.add("layered/alpha-lower-bound", "alpha >= 4 (1 - 5 eps)", worst_gap, 0.0, 0.0,
           "max of 4(1-5eps) - alpha over eps = 0, 0.001, ..., 0.999");
  return sink.take();
}

// ---------------------------------------------------------------- criterion 5

std::vector<BoundRow> layer_rows(const BenchOptions& options) {
  RowSink sink(5, options);
  Rng rng(sub_seed(options.seed, 5));
  const double eps_choices[] = {0.1, 0.3, 0.5, 0.9};
  double worst = 0.0;
  std::size_t layers = 0;
  std::size_t violations = 0;
  for (int j = 0; j < 50; ++j) {
    const std::size_t n = 2 + rng.below(24);
    const Graph g = make_random_connected(n, rng.below(n), rng.engine()());
    const auto u = random_subset(n, std::max<std::size_t>(1, n / 4), rng);
    const double eps = eps_choices[rng.below(4)];
    for (const auto& lb : layer_bounds(g, u, eps)) {
      worst = std::max(worst, lb.t / lb.rhs);
      violations += lb.t > lb.rhs * (1.0 + kSolverTolerance) ? 1 : 0;
      ++layers;
    }
  }
  sink.add("layer-by-layer/hitting", "layer hitting time <= 2 sum_e (1-eps)^dist(e, U_{i-1})", worst, 1.0,
           kSolverTolerance,
           "max T_i/bound over " + std::to_string(layers) + " layers of 50 graphs; violations " +
               std::to_string(violations));
  return sink.take();
}

// ---------------------------------------------------------------- criterion 6

std::vector<Named> cover_corpus(std::uint64_t seed) {
  std::vector<Named> out;
  for (std::size_t n : {64, 256, 1024, 4096}) out.push_back({"cycle-" + std::to_string(n), make_cycle(n)});
  for (std::size_t s : {8, 16, 32, 64}) out.push_back({"grid-" + std::to_string(s), make_grid(s, s)});
  for (std::size_t n : {100, 1000}) out.push_back({"path-" + std::to_string(n), make_path(n)});
  for (std::size_t n : {64, 256, 1024, 4096}) {
    out.push_back({"regular3-" + std::to_string(n), connected_regular(n, 3, sub_seed(seed, 600 + n))});
  }
  for (std::size_t levels : {6, 9, 12}) {
    out.push_back({"tree-" + std::to_string((1u << levels) - 1), make_binary_tree(levels)});
  }
  for (std::size_t n : {500, 2000, 4096}) {
    out.push_back({"random-" + std::to_string(n), make_random_connected(n, n / 2, sub_seed(seed, 700 + n))});
  }
  return out;
}

std::vector<BoundRow> cover_rows(const BenchOptions& options) {
  RowSink sink(6, options);
  for (const auto& [name, g] : cover_corpus(options.seed)) {
    double worst_radius = -std::numeric_limits<double>::infinity();
    double worst_overlap = 0.0;
    std::string detail;
    for (int k : {2, 3, 4}) {
      try {
        const auto built = build_random_cover(g, k, sub_seed(options.seed, 6000 + k), 100);
        const auto rep = validate_cover(g, built.cover);
        const int claimed = (1 << (k - 1)) - 1;
        int radius = 0;
        for (int e : rep.center_eccentricity) radius = std::max(radius, e);
        for (int e : rep.exact_radius) radius = std::max(radius, e);
        if (!rep.coverage_ok) radius = std::numeric_limits<int>::max();
        worst_radius = std::max(worst_radius, static_cast<double>(radius - claimed));
        worst_overlap = std::max(worst_overlap, rep.k_actual / built.threshold);
        detail += fmt("k=%g: sets %g, attempts %g; ", k, static_cast<double>(built.cover.sets.size()),
                      built.attempts);
      } catch (const CoverConstructionFailure& e) {
        worst_radius = worst_overlap = std::numeric_limits<double>::infinity();
        detail += "k=" + std::to_string(k) + ": " + e.what() + "; ";
      }
    }
    sink.add("cover/" + name + "/radius", "cover radius <= 2^(k-1) - 1", worst_radius, 0.0, 0.0, detail);
    sink.add("cover/" + name + "/overlap", "K_actual <= 4 k n^(1/k) log^(1+1/k) n", worst_overlap, 1.0, 0.0,
             "max K_actual/threshold over k = 2, 3, 4");
  }

  Rng rng(sub_seed(options.seed, 61));
  std::size_t failures = 0;
  std::size_t vertices = 0;
  for (int j = 0; j < 100; ++j) {
    const std::size_t n = 2 + rng.below(499);
    const Graph g = make_random_connected(n, rng.below(n), rng.engine()());
    const int k = 2 + static_cast<int>(rng.below(3));
    const auto levels = cover_levels(g, CoverSchedule::make(n, k));
    for (Vertex v = 0; v < n; ++v) {
      try {
        greedy_ball_claim_check(g, v, levels);
      } catch (const InternalError&) {
        ++failures;
      }
      ++vertices;
    }
  }
  sink.add("cover/ball-claim", "every vertex claims a level", static_cast<double>(failures), 0.0, 0.0,
           std::to_string(vertices) + " vertices of 100 random graphs, n <= 500");
  return sink.take();
}

// ---------------------------------------------------------------- criterion 7

std::vector<BoundRow> cayley_rows(const BenchOptions& options) {
  RowSink sink(7, options);
  Rng rng(sub_seed(options.seed, 7));
  auto run = [&](CayleyVariant variant, std::uint32_t p, int samples) {
    const auto cg = make_affine_cayley({p, variant});
    const int radius = variant == CayleyVariant::radius2 ? 2 : 3;
    std::size_t bad = 0;
    double worst = std::numeric_limits<double>::infinity();
    for (int s = 0; s < samples; ++s) {
      const Vertex center = static_cast<Vertex>(rng.below(cg.graph.size()));
      const auto set = sample_rooted_set(cg.graph, center, radius, rng);
      const auto check = variant == CayleyVariant::radius2 ? radius2_lower_inequality(cg, set, center)
                                                           : radius3_lower_inequality(cg, set, center);
      bad += check.holds ? 0 : 1;
      if (check.rhs > 0) worst = std::min(worst, check.lhs / check.rhs);
    }
    const std::string name = std::string(variant == CayleyVariant::radius2 ? "radius2" : "radius3") + "/p=" +
                             std::to_string(p);
    sink.add("cayley/" + name,
             variant == CayleyVariant::radius2 ? "|N+(V)| >= (p-1)/4 |V cap Y|" : "|N+(V)| >= (p-1)/27 |V cap Y'|",
             static_cast<double>(bad), 0.0, 0.0,
             std::to_string(samples) + " sampled sets; min lhs/rhs " + fmt("%.4g", worst));
  };
  for (std::uint32_t p : {3u, 5u, 7u}) run(CayleyVariant::radius2, p, 1000);
  for (std::uint32_t p : {3u, 5u}) run(CayleyVariant::radius3, p, 500);

  double worst = 0.0;
  for (std::size_t n = 1; n <= 12; ++n) {
    worst = std::max(worst, std::abs(min_radius0_overlap(make_complete(n)) - static_cast<double>(n)));
  }
  sink.add("cayley/radius0-complete", "radius-0 overlap of K_n equals n", worst, 0.0, 0.0,
           "exhaustive over all vertex subsets, n = 1..12");
  return sink.take();
}

// ---------------------------------------------------------------- criterion 8

struct PlanCase {
  std::string name;
  std::shared_ptr<const Graph> graph;
  double eps = 0.0;
  Cover cover;
};

void global_case_rows(RowSink& sink, const PlanCase& c, std::uint64_t seed, bool local_tau) {
  auto plan = std::make_shared<const ExplorationPlan>(build_plan(*c.graph, c.eps, 0, c.cover));
  const auto rep = run_global(plan, 200, seed);
  double worst_gap = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < rep.sum_l.size(); ++j) {
    worst_gap = std::max(worst_gap, rep.cover_time.samples[j] - rep.sum_l[j]);
  }
  if (rep.cover_time.cap_hits > 0) worst_gap = std::numeric_limits<double>::infinity();
  const std::string shape = fmt("m = %g, r = %g, K = %.4g", static_cast<double>(plan->size()), plan->r(),
                                plan->k_actual()) +
                            ", k = " + std::to_string(plan->k());
  sink.add("global/" + c.name + "/tau-within-sum", "cover time <= sum of L_i", worst_gap, 0.0, 0.0,
           "max over 200 runs of tau - sum L_i; " + shape);
  sink.add("global/" + c.name + "/mean-cover-time", "mean cover time <= 32 Delta (r+1) K n log^2 n / eps",
           rep.cover_time.mean, rep.bound, 0.0, fmt("SE %.4g; ", rep.cover_time.std_error) + shape);

  double worst_weight = 0.0;
  double worst_resistance = 0.0;
  double worst_tau = 0.0;
  LocalCheckOptions lo;
  lo.trials = local_tau ? 100 : 0;
  lo.exact_hitting = false;
  lo.seed = seed;
  for (std::size_t i = 0; i < plan->size(); ++i) {
    const auto check = check_local_lemma_bound(*plan, i, plan->set(i).entry, lo);
    worst_weight = std::max(worst_weight, check.weight_sum2 / check.weight_sum_rhs);
    worst_resistance = std::max(worst_resistance, check.max_resistance - check.resistance_rhs);
    if (local_tau) worst_tau = std::max(worst_tau, check.tau.mean / check.tau_rhs);
  }
  sink.add("global/" + c.name + "/weight-sum", "2 sum_e w_i(e) <= 2 Delta |N+_{G^k}(V_i)|", worst_weight, 1.0, 0.0,
           "max ratio over " + std::to_string(plan->size()) + " sets");
  sink.add("global/" + c.name + "/resistance", "R_eff(u,v) <= k (2r + 1)", worst_resistance, 0.0, 1e-8,
           "max R_eff - k(2r+1) over 20 sampled pairs per set");
  if (local_tau) {
    sink.add("global/" + c.name + "/local-cover-return", "E tau_i(x) < 32 (r+1) Delta |N+| log^2 n / eps",
             worst_tau, 1.0, 0.0, "max Monte Carlo mean / bound over sets, 100 walks each");
  }
}

std::vector<BoundRow> global_rows(const BenchOptions& options) {
  RowSink sink(8, options);
  std::vector<PlanCase> cases;
  std::vector<PlanCase> multi;
  for (std::size_t n : {64, 256, 1024}) {
    const std::size_t side = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(n))));
    const std::pair<std::string, std::shared_ptr<const Graph>> graphs[] = {
        {"cycle-" + std::to_string(n), std::make_shared<const Graph>(make_cycle(n))},
        {"grid-" + std::to_string(n), std::make_shared<const Graph>(make_grid(side, side))},
        {"regular3-" + std::to_string(n),
         std::make_shared<const Graph>(connected_regular(n, 3, sub_seed(options.seed, 800 + n)))},
    };
    for (const auto& [name, g] : graphs) {
      for (double eps : {0.2, 0.5}) {
        const std::string label = name + "/eps=" + fmt("%g", eps);
        const Graph power = graph_power(*g, choose_k(eps, n));
        const auto cover = build_sqrtlog_cover(power, sub_seed(options.seed, 8000 + n)).built.cover;
        cases.push_back({label + "/sqrtlog-cover", g, eps, cover});
        if (n <= 256) {
          const auto two = build_random_cover(power, 2, sub_seed(options.seed, 8100 + n)).cover;
          multi.push_back({label + "/two-level-cover", g, eps, two});
        }
      }
    }
  }
  for (std::size_t j = 0; j < cases.size(); ++j) {
    global_case_rows(sink, cases[j], sub_seed(options.seed, 8200 + j), false);
  }
  for (std::size_t j = 0; j < multi.size(); ++j) {
    global_case_rows(sink, multi[j], sub_seed(options.seed, 8300 + j), multi[j].graph->size() <= 64);
  }

  // Law of the excised walks on a fixed instance with many proper fattened sets.
  const Graph g = make_cycle(64);
  const double eps = 0.9;
  const auto cover = build_random_cover(graph_power(g, choose_k(eps, g.size())), 2, sub_seed(options.seed, 8400)).cover;
  auto plan = std::make_shared<const ExplorationPlan>(build_plan(g, eps, 0, cover));
  std::vector<std::vector<std::vector<std::uint64_t>>> counts(plan->size());
  std::uint64_t pooled = 0;
  std::size_t runs = 0;
  std::size_t broken_excisions = 0;
  while (pooled < 20000 && runs < 1000) {
    ExplorationBias bias(plan, true);
    bias.begin(0);
    Rng rng = Rng::stream(sub_seed(options.seed, 8401), runs++);
    Vertex current = 0;
    while (!bias.finished()) {
      const Step step = tbrw_step(g, eps, bias, current, rng);
      bias.advance(step.next, step.source);
      current = step.next;
    }
    std::vector<Vertex> tail(plan->size());
    for (std::size_t i = 0; i < plan->size(); ++i) tail[i] = plan->set(i).entry;
    for (const auto& s : bias.log()) {
      if (s.exploration < 0) continue;
      if (s.from != tail[s.exploration]) ++broken_excisions;
      tail[s.exploration] = s.to;
    }
    for (std::size_t i = 0; i < plan->size(); ++i) {
      const auto c = excised_counts(g, bias.log(), static_cast<int>(i));
      if (counts[i].empty()) {
        counts[i] = c;
      } else {
        for (Vertex v = 0; v < g.size(); ++v) {
          for (std::size_t s = 0; s < c[v].size(); ++s) counts[i][v][s] += c[v][s];
        }
      }
    }
    pooled += bias.steps_taken();
  }
  ChiSquare total;
  for (std::size_t i = 0; i < plan->size(); ++i) {
    const auto wg = weight_field_from_distances(g, plan->set(i).dist_to_w, eps);
    const auto part = transition_chi_square(wg, counts[i]);
    total.statistic += part.statistic;
    total.dof += part.dof;
    total.steps += part.steps;
  }
  total.p_value = chi_square_p(total.statistic, total.dof);
  sink.add("global/excision-continuity", "excised walks are contiguous from a_i", static_cast<double>(broken_excisions),
           0.0, 0.0, std::to_string(runs) + " runs on cycle-64, eps = 0.9");
  sink.add("global/excision-chi-square", "excised walks follow (G, w_i)", 0.001, total.p_value, 0.0,
           fmt("chi2 = %.6g, dof = %g, tested steps = %g", total.statistic, total.dof,
               static_cast<double>(total.steps)) +
               fmt(", pooled steps = %g, sets = %g", static_cast<double>(pooled), static_cast<double>(plan->size())));
  return sink.take();
}

// ---------------------------------------------------------------- criterion 9

std::vector<BoundRow> growth_rows(const BenchOptions& options) {
  RowSink sink(9, options);
  const double eps = 0.5;
  std::vector<double> means;
  std::vector<double> sizes;
  for (std::size_t side : {8, 16, 32}) {
    const Graph g = make_grid(side, side);
    const double n = static_cast<double>(g.size());
    const double l = ball_growth_constant(g, eps);
    const double c = 4.0 * l * l / (1.0 - eps);
    const SpanningWalkBias phi(g, eps, 0);
    const auto rep = estimate_cover_time(g, eps, phi, 0, 200, sub_seed(options.seed, 900 + side));
    means.push_back(rep.mean);
    sizes.push_back(n);
    sink.add("growth/grid-" + std::to_string(g.size()), "mean cover time <= 4 L^2 n / (1 - eps)", rep.mean, c * n,
             0.0, fmt("L = %.6g, SE %.4g, 200 trials", l, rep.std_error));
  }
  for (std::size_t j = 0; j + 1 < means.size(); ++j) {
    const double ratio = means[j + 1] / means[j];
    const double size_ratio = sizes[j + 1] / sizes[j];
    sink.add("growth/ratio-" + fmt("%g", sizes[j]) + "-" + fmt("%g", sizes[j + 1]),
             "cover time grows at most linearly", ratio, 4.5 * size_ratio, 0.0,
             fmt("mean ratio %.4g, size ratio %g", ratio, size_ratio));
  }
  return sink.take();
}

// --------------------------------------------------------------- criterion 10

std::vector<BoundRow> oracle_rows(const BenchOptions& options) {
  RowSink sink(10, options);
  Rng rng(sub_seed(options.seed, 10));
  const double eps_choices[] = {0.1, 0.2, 0.3};
  int made = 0;
  while (made < 10) {
    const std::size_t n = 5 + rng.below(36);
    const Graph g = make_random_connected(n, n / 2 + rng.below(n), rng.engine()());
    const auto u = random_subset(n, std::max<std::size_t>(1, n / 5), rng);
    const double eps = eps_choices[rng.below(3)];
    const auto t = random_subset(n, std::max<std::size_t>(1, n / 6), rng);
    Vertex start = static_cast<Vertex>(rng.below(n));
    if (t.contains(start)) continue;
    const double exact = hitting_times(weight_field(g, u, eps), t)[start];
    if (exact > 2e4) continue;
    const EmulationBias phi(g, u, eps);
    const auto rep = estimate_hitting_time(g, eps, phi, start, t, 10000, sub_seed(options.seed, 1000 + made));
    sink.add("oracle/instance-" + std::to_string(made), "Monte Carlo hitting time matches the linear solver",
             std::abs(rep.mean - exact), 3.0 * rep.std_error, 0.0,
             fmt("n = %g, exact %.6g, mean %.6g", static_cast<double>(n), exact, rep.mean) +
                 fmt(", SE %.4g, eps %g", rep.std_error, eps));
    ++made;
  }
  return sink.take();
}

}  // namespace

bool BoundReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const BoundRow& r) { return r.pass; });
}

std::vector<const BoundRow*> BoundReport::failures() const {
  std::vector<const BoundRow*> out;
  for (const auto& r : rows) {
    if (!r.pass) out.push_back(&r);
  }
  return out;
}

std::uint64_t bench_config_hash(const std::string& suite, const BenchOptions& options) {
  nlohmann::json config = {{"suite", suite}, {"seed", options.seed}, {"version", kVersion}};
  config["tolerance_overrides"] = options.tolerance_overrides;
  auto only = options.only;
  std::sort(only.begin(), only.end());
  config["only"] = only;
  Fnv1a h;
  h.text(config.dump());
  return h.digest();
}

BoundReport paper_bounds_suite(const BenchOptions& options) {
  BoundReport report;
  report.suite = "paper-bounds";
  report.seed = options.seed;
  report.config_hash = bench_config_hash(report.suite, options);
  auto wanted = [&](int c) {
    return options.only.empty() || std::find(options.only.begin(), options.only.end(), c) != options.only.end();
  };
  auto emit = [&](int c, std::vector<BoundRow> rows) {
    if (options.progress) options.progress(c, rows);
    for (auto& r : rows) report.rows.push_back(std::move(r));
  };
  if (wanted(1)) emit(1, emulation_rows(options));
  if (wanted(2) || wanted(3)) {
    auto [global, local] = hitting_rows(options);
    if (wanted(2)) emit(2, std::move(global));
    if (wanted(3)) emit(3, std::move(local));
  }
  if (wanted(4)) emit(4, layered_rows(options));
  if (wanted(5)) emit(5, layer_rows(options));
  if (wanted(6)) emit(6, cover_rows(options));
  if (wanted(7)) emit(7, cayley_rows(options));
  if (wanted(8)) emit(8, global_rows(options));
  if (wanted(9)) emit(9, growth_rows(options));
  if (wanted(10)) emit(10, oracle_rows(options));
  return report;
}

std::string hex64(std::uint64_t x) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

namespace {

nlohmann::json number(double x) {
  if (std::isfinite(x)) return x;
  return x > 0 ? "inf" : (x < 0 ? "-inf" : "nan");
}

double read_number(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  return std::nan("");
}

}  // namespace

nlohmann::json report_to_json(const BoundReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"criterion", r.criterion},
                    {"name", r.name},
                    {"tag", r.tag},
                    {"lhs", number(r.lhs)},
                    {"rhs", number(r.rhs)},
                    {"tolerance", number(r.tolerance)},
                    {"pass", r.pass},
                    {"detail", r.detail}});
  }
  return {{"schema", kReportSchema},
          {"version", kVersion},
          {"suite", report.suite},
          {"seed", report.seed},
          {"config_hash", hex64(report.config_hash)},
          {"all_pass", report.all_pass()},
          {"rows", rows}};
}

BoundReport report_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("schema", std::string()) != kReportSchema) {
    throw ParseError("bench report: unknown or missing schema (expected " + std::string(kReportSchema) + ")", 0);
  }
  try {
    BoundReport report;
    report.suite = j.at("suite").get<std::string>();
    report.seed = j.at("seed").get<std::uint64_t>();
    report.config_hash = std::stoull(j.at("config_hash").get<std::string>(), nullptr, 16);
    for (const auto& r : j.at("rows")) {
      BoundRow row;
      row.criterion = r.at("criterion").get<int>();
      row.name = r.at("name").get<std::string>();
      row.tag = r.at("tag").get<std::string>();
      row.lhs = read_number(r.at("lhs"));
      row.rhs = read_number(r.at("rhs"));
      row.tolerance = read_number(r.at("tolerance"));
      row.pass = r.at("pass").get<bool>();
      row.detail = r.value("detail", std::string());
      report.rows.push_back(std::move(row));
    }
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bench report: ") + e.what(), 0);
  }
}

}  // namespace tbrw
