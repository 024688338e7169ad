#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tbrw/artifact.hpp"
#include "tbrw/bench.hpp"
#include "tbrw/chain.hpp"
#include "tbrw/cover.hpp"
#include "tbrw/error.hpp"
#include "tbrw/explorer.hpp"
#include "tbrw/generators.hpp"
#include "tbrw/graph.hpp"
#include "tbrw/strategies.hpp"
#include "tbrw/walk.hpp"

using nlohmann::json;
using namespace tbrw;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;
constexpr int kExitViolation = 3;

/// Writes to `path`, or stdout for "" and "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string pretty(const json& j) { return j.dump(2) + "\n"; }

json stats_json(const EstimatorReport& r) {
  return {{"trials", r.trials},     {"cap_hits", r.cap_hits}, {"mean", r.mean},
          {"std_error", r.std_error}, {"ci_low", r.ci_low},  {"ci_high", r.ci_high},
          {"ci_method", r.ci_method}};
}

VertexSet vertex_spec(const std::string& spec, std::size_t n) {
  if (spec.rfind("@", 0) == 0) return load_vertex_set(spec.substr(1), n);
  return parse_vertex_list(spec, n);
}

Vertex checked_vertex(long long v, std::size_t n, const char* what) {
  if (v < 0 || static_cast<std::size_t>(v) >= n) {
    throw PreconditionError(std::string(what) + " out of range");
  }
  return static_cast<Vertex>(v);
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::string family;
  std::size_t n = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t d = 3;
  std::size_t levels = 0;
  std::size_t extra = 0;
  std::uint32_t p = 3;
  std::string variant = "radius2";
  std::uint64_t seed = kDefaultSeed;
  std::string out;
  std::string sidecar;
};

int run_generate(const GenerateArgs& a) {
  json config = {{"command", "generate"}, {"family", a.family}, {"n", a.n},
                 {"rows", a.rows},         {"cols", a.cols},     {"d", a.d},
                 {"levels", a.levels},     {"extra", a.extra},   {"p", a.p},
                 {"variant", a.variant},   {"seed", a.seed}};
  json side = {{"family", a.family}};
  Graph g;
  auto need_n = [&] {
    if (a.n == 0) throw PreconditionError("--n is required for " + a.family);
  };
  if (a.family == "path") {
    need_n();
    g = make_path(a.n);
  } else if (a.family == "cycle") {
    need_n();
    g = make_cycle(a.n);
  } else if (a.family == "complete") {
    need_n();
    g = make_complete(a.n);
  } else if (a.family == "grid") {
    std::size_t rows = a.rows;
    std::size_t cols = a.cols;
    if (rows == 0) {
      need_n();
      rows = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(a.n))));
      if (rows * rows != a.n) throw PreconditionError("grid: --n must be a square, or pass --rows/--cols");
    }
    if (cols == 0) cols = rows;
    g = make_grid(rows, cols);
    side["rows"] = rows;
    side["cols"] = cols;
  } else if (a.family == "tree") {
    if (a.levels == 0) throw PreconditionError("tree: --levels is required");
    g = make_binary_tree(a.levels);
  } else if (a.family == "regular") {
    need_n();
    g = make_random_regular(a.n, a.d, a.seed);
  } else if (a.family == "random") {
    need_n();
    g = make_random_connected(a.n, a.extra, a.seed);
  } else if (a.family == "layered") {
    need_n();
    LayeredGraph lg = make_layered(a.n);
    g = lg.graph;
    side["k"] = lg.k;
    side["layer"] = lg.layer;
    side["sizes"] = lg.sizes;
  } else if (a.family == "cayley") {
    AffineCayleySpec spec;
    spec.p = a.p;
    if (a.variant == "radius2") {
      spec.variant = CayleyVariant::radius2;
    } else if (a.variant == "radius3") {
      spec.variant = CayleyVariant::radius3;
    } else {
      throw PreconditionError("cayley: --variant must be radius2 or radius3");
    }
    AffineCayleyGraph cg = make_affine_cayley(spec);
    g = cg.graph;
    json group = json::array();
    for (const AffineElement& e : cg.element) group.push_back({e.slope, e.shift, e.shift2});
    side["p"] = a.p;
    side["variant"] = a.variant;
    side["group_order"] = cg.group_order;
    side["part"] = cg.in_y;
    side["group"] = group;
  } else {
    throw PreconditionError("unknown family " + a.family);
  }
  side["n"] = g.size();
  side["m"] = g.edge_count();
  side["graph_hash"] = hex64(g.hash());
  side["meta"] = artifact_meta("tbrw.graph/1", config, a.seed);

  std::ostringstream text;
  write_graph(text, g);
  emit(a.out, text.str());
  std::string sidecar = a.sidecar;
  if (sidecar.empty() && !a.out.empty() && a.out != "-") sidecar = a.out + ".json";
  if (!sidecar.empty()) emit(sidecar, pretty(side));
  std::cerr << "generated " << a.family << ": n=" << g.size() << " m=" << g.edge_count() << "\n";
  return 0;
}

// ---------------------------------------------------------------- cover

struct CoverArgs {
  std::string graph;
  int levels = 0;
  int power = 1;
  double eps = -1.0;
  std::uint64_t seed = kDefaultSeed;
  int retries = 100;
  std::string validate;
  std::string out;
};

int run_cover(const CoverArgs& a) {
  Graph g = load_graph(a.graph);
  int power = a.power;
  if (a.eps >= 0.0) {
    if (!(a.eps > 0.0 && a.eps < 1.0)) throw PreconditionError("--eps must lie in (0, 1)");
    power = choose_k(a.eps, g.size());
  }
  if (power < 1) throw PreconditionError("--power must be at least 1");
  Graph target = power == 1 ? g : graph_power(g, power);
  json config = {{"command", "cover"}, {"graph_hash", hex64(g.hash())}, {"levels", a.levels},
                 {"power", power},     {"seed", a.seed},                 {"retries", a.retries},
                 {"validate", !a.validate.empty()}};
  json result;
  Cover cover;
  if (!a.validate.empty()) {
    std::ifstream in(a.validate);
    if (!in) throw ParseError("cannot open cover file " + a.validate, 0);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("cover file: ") + e.what(), 0);
    }
    if (j.contains("cover")) j = j["cover"];
    cover = cover_from_json(j, g.size());
  } else {
    BuiltCover built;
    if (a.levels > 0) {
      built = build_random_cover(target, a.levels, a.seed, a.retries);
    } else {
      built = build_sqrtlog_cover(target, a.seed, a.retries).built;
    }
    cover = built.cover;
    result["attempts"] = built.attempts;
    result["threshold"] = built.threshold;
  }
  CoverReport rep = validate_cover(target, cover, target.size() <= 200);
  result["cover"] = cover_to_json(cover, rep.k_actual);
  result["report"] = {{"valid", rep.valid()},
                      {"coverage_ok", rep.coverage_ok},
                      {"radius_ok", rep.radius_ok},
                      {"k_actual", rep.k_actual},
                      {"sets", cover.sets.size()},
                      {"r", cover.r},
                      {"overlap_bound", cover.k > 0 ? overlap_bound(target.size(), cover.k) : 0.0}};
  if (rep.uncovered) result["report"]["uncovered"] = *rep.uncovered;
  if (rep.radius_violation) result["report"]["radius_violation"] = *rep.radius_violation;
  result["meta"] = artifact_meta("tbrw.cover-report/1", config, a.seed);
  emit(a.out, pretty(result));
  std::cerr << "cover: " << cover.sets.size() << " sets, r=" << cover.r << ", K_actual=" << rep.k_actual
            << (rep.valid() ? ", valid" : ", INVALID") << "\n";
  return rep.valid() ? 0 : kExitRuntime;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string graph;
  double eps = 0.5;
  std::string strategy = "phi_U";
  std::string target;
  std::string mode = "cover";
  long long start = 0;
  std::size_t trials = 100;
  std::uint64_t seed = kDefaultSeed;
  double cap_multiplier = 1.0;
  std::string out;
  std::string csv;
};

int run_simulate(const SimulateArgs& a) {
  Graph g = load_graph(a.graph);
  const Vertex start = checked_vertex(a.start, g.size(), "--start");
  if (!(a.eps >= 0.0 && a.eps < 1.0)) throw PreconditionError("--eps must lie in [0, 1)");
  if (a.trials == 0) throw PreconditionError("--trials must be positive");
  std::optional<VertexSet> target;
  if (!a.target.empty()) target = vertex_spec(a.target, g.size());
  auto need_target = [&]() -> const VertexSet& {
    if (!target || target->empty()) throw PreconditionError("strategy or mode needs a non-empty --target");
    return *target;
  };
  std::unique_ptr<BiasFunction> phi;
  if (a.strategy == "phi_U") {
    phi = phi_U(g, need_target(), a.eps);
  } else if (a.strategy == "naive") {
    phi = naive_toward(g, need_target());
  } else if (a.strategy == "spanning") {
    phi = spanning_walk_strategy(g, a.eps, start);
  } else if (a.strategy == "closest") {
    phi = std::make_unique<ClosestUncoveredBias>(g);
  } else if (a.strategy == "uniform") {
    phi = std::make_unique<UniformBias>(g);
  } else {
    throw PreconditionError("unknown strategy " + a.strategy);
  }
  if (a.mode != "cover" && a.mode != "hit") throw PreconditionError("--mode must be cover or hit");

  json config = {{"command", "simulate"}, {"graph_hash", hex64(g.hash())},
                 {"eps", a.eps},          {"strategy", a.strategy},
                 {"mode", a.mode},        {"start", start},
                 {"trials", a.trials},    {"seed", a.seed},
                 {"cap_multiplier", a.cap_multiplier},
                 {"target", target ? json(target->sorted()) : json()}};
  EstimatorOptions opts;
  opts.cap_multiplier = a.cap_multiplier;
  EstimatorReport rep = a.mode == "cover"
                            ? estimate_cover_time(g, a.eps, *phi, start, a.trials, a.seed, opts)
                            : estimate_hitting_time(g, a.eps, *phi, start, need_target(), a.trials, a.seed, opts);
  json meta = artifact_meta("tbrw.simulate/1", config, a.seed);
  json result = {{"meta", meta}, {"statistics", stats_json(rep)},
                 {"step_cap", step_cap_for(g.size(), a.cap_multiplier)}};
  emit(a.out, pretty(result));
  if (!a.csv.empty()) {
    std::ostringstream csv;
    write_trials_csv(csv, rep.samples, meta);
    emit(a.csv, csv.str());
  }
  std::cerr << a.strategy << " " << a.mode << ": mean " << rep.mean << " +- " << rep.std_error << " over "
            << rep.trials - rep.cap_hits << " trials\n";
  return 0;
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::string graph;
  std::string weights;
  std::string u;
  double eps = 0.5;
  std::string hit;
  std::vector<std::string> pairs;
  std::string out;
};

int run_analyze(const AnalyzeArgs& a) {
  WeightedGraph wg;
  json config = {{"command", "analyze"}};
  if (!a.weights.empty()) {
    wg = load_weighted_graph(a.weights);
    config["weights_hash"] = hex64(wg.hash());
  } else {
    if (a.graph.empty() || a.u.empty()) throw PreconditionError("pass --weights, or --graph with --u and --eps");
    if (!(a.eps >= 0.0 && a.eps < 1.0)) throw PreconditionError("--eps must lie in [0, 1)");
    Graph g = load_graph(a.graph);
    VertexSet u = vertex_spec(a.u, g.size());
    if (u.empty()) throw PreconditionError("--u must be non-empty");
    config["graph_hash"] = hex64(g.hash());
    config["u"] = u.sorted();
    config["eps"] = a.eps;
    wg = weight_field(g, u, a.eps);
  }
  const Graph& g = wg.base();
  if (!g.connected()) throw PreconditionError("analyze needs a connected graph");
  json result;
  result["n"] = g.size();
  result["total_weight"] = wg.total_weight();
  result["stationary"] = stationary(wg);
  if (!a.hit.empty()) {
    VertexSet target = vertex_spec(a.hit, g.size());
    if (target.empty()) throw PreconditionError("--hit must be non-empty");
    config["hit"] = target.sorted();
    double residual = 0.0;
    result["hitting"] = {{"target", target.sorted()}, {"times", hitting_times(wg, target, &residual)},
                         {"residual", residual}};
  }
  json pairs = json::array();
  for (const std::string& spec : a.pairs) {
    long long x = -1;
    long long y = -1;
    char comma = 0;
    std::istringstream ps(spec);
    if (!(ps >> x >> comma >> y) || comma != ',') throw PreconditionError("--pair expects \"u,v\"");
    Vertex u = checked_vertex(x, g.size(), "--pair");
    Vertex v = checked_vertex(y, g.size(), "--pair");
    pairs.push_back({{"u", u}, {"v", v}, {"resistance", effective_resistance(wg, u, v)},
                     {"commute_residual", check_commute_identity(wg, u, v)}});
  }
  config["pairs"] = a.pairs;
  result["pairs"] = pairs;
  result["matthews_bound"] = matthews_bound(wg, VertexSet::all(g.size()));
  result["meta"] = artifact_meta("tbrw.analyze/1", config, 0);
  emit(a.out, pretty(result));
  return 0;
}

// ---------------------------------------------------------------- explore

struct ExploreArgs {
  std::string graph;
  double eps = 0.5;
  long long start = 0;
  std::string cover = "auto";
  std::size_t trials = 100;
  std::uint64_t seed = kDefaultSeed;
  double cap_multiplier = 1.0;
  std::string out;
  std::string csv;
};

int run_explore(const ExploreArgs& a) {
  Graph g = load_graph(a.graph);
  if (!(a.eps > 0.0 && a.eps < 1.0)) throw PreconditionError("--eps must lie in (0, 1)");
  if (a.trials == 0) throw PreconditionError("--trials must be positive");
  const Vertex start = checked_vertex(a.start, g.size(), "--start");
  if (!g.connected()) throw PreconditionError("explore needs a connected graph");
  Cover cover;
  if (a.cover == "auto") {
    cover = auto_power_cover(g, a.eps, a.seed).cover;
  } else {
    std::ifstream in(a.cover);
    if (!in) throw ParseError("cannot open cover file " + a.cover, 0);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("cover file: ") + e.what(), 0);
    }
    if (j.contains("cover")) j = j["cover"];
    cover = cover_from_json(j, g.size());
  }
  auto plan = std::make_shared<const ExplorationPlan>(build_plan(g, a.eps, start, cover));
  EstimatorOptions opts;
  opts.cap_multiplier = a.cap_multiplier;
  GlobalReport rep = run_global(plan, a.trials, a.seed, opts);

  json config = {{"command", "explore"}, {"graph_hash", hex64(g.hash())}, {"eps", a.eps},
                 {"start", start},       {"cover", a.cover == "auto" ? "auto" : "file"},
                 {"trials", a.trials},   {"seed", a.seed},                {"cap_multiplier", a.cap_multiplier},
                 {"cover_json", cover_to_json(cover, plan->k_actual())}};
  json meta = artifact_meta("tbrw.explore/1", config, a.seed);
  json sets = json::array();
  for (std::size_t i = 0; i < plan->size(); ++i) {
    const PlanSet& s = plan->set(i);
    sets.push_back({{"index", i},
                    {"size", s.v.size()},
                    {"w_size", s.w.size()},
                    {"n_plus_power", s.n_plus_power},
                    {"parent", s.parent},
                    {"entry", s.entry},
                    {"mean_l", rep.mean_l.at(i)}});
  }
  double mean_sum_l = 0.0;
  std::size_t finished = 0;
  for (double x : rep.sum_l) {
    if (!std::isnan(x)) {
      mean_sum_l += x;
      ++finished;
    }
  }
  if (finished) mean_sum_l /= static_cast<double>(finished);
  json bounds = json::array();
  bounds.push_back({{"name", "tau-within-sum"}, {"holds", rep.tau_within_sum}});
  bounds.push_back({{"name", "mean-cover-time"},
                    {"lhs", rep.cover_time.mean},
                    {"rhs", rep.bound},
                    {"holds", rep.cover_time.mean <= rep.bound}});
  json result = {{"meta", meta},
                 {"k", rep.k},
                 {"r", rep.r},
                 {"k_actual", rep.k_actual},
                 {"sets", sets},
                 {"cover_time", stats_json(rep.cover_time)},
                 {"mean_sum_l", mean_sum_l},
                 {"bounds", bounds}};
  emit(a.out, pretty(result));
  if (!a.csv.empty()) {
    std::ostringstream csv;
    write_trials_csv(csv, rep.cover_time.samples, meta);
    emit(a.csv, csv.str());
  }
  std::cerr << "explore: " << plan->size() << " sets, k=" << rep.k << ", mean cover time " << rep.cover_time.mean
            << " (bound " << rep.bound << ")\n";
  return 0;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  std::string suite = "paper-bounds";
  std::uint64_t seed = kDefaultSeed;
  std::string out;
  std::vector<std::string> tamper;
  std::vector<int> only;
  bool quiet = false;
};

int run_bench(const BenchArgs& a) {
  if (a.suite != "paper-bounds") throw PreconditionError("unknown suite " + a.suite);
  BenchOptions opts;
  opts.seed = a.seed;
  opts.only = a.only;
  for (const std::string& t : a.tamper) {
    auto eq = t.find('=');
    if (eq == std::string::npos || eq == 0) throw PreconditionError("--tamper expects name=value");
    try {
      opts.tolerance_overrides[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
    } catch (const std::exception&) {
      throw PreconditionError("--tamper: bad value in " + t);
    }
  }
  if (!a.quiet) {
    opts.progress = [](int criterion, const std::vector<BoundRow>& rows) {
      std::size_t bad = 0;
      for (const BoundRow& r : rows) bad += r.pass ? 0 : 1;
      std::cerr << "criterion " << criterion << ": " << rows.size() - bad << "/" << rows.size() << " rows pass\n";
    };
  }
  BoundReport report = paper_bounds_suite(opts);
  for (const auto& [name, value] : opts.tolerance_overrides) {
    bool found = false;
    for (const BoundRow& r : report.rows) found = found || r.name == name;
    if (!found) std::cerr << "warning: --tamper names no row: " << name << "\n";
  }
  emit(a.out, pretty(report_to_json(report)));
  auto failures = report.failures();
  if (failures.empty()) {
    std::cerr << "all " << report.rows.size() << " rows pass\n";
    return 0;
  }
  std::cerr << failures.size() << " of " << report.rows.size() << " rows fail:\n";
  for (const BoundRow* r : failures) {
    std::cerr << "  [" << r->criterion << "] " << r->name << ": lhs " << r->lhs << " > rhs " << r->rhs
              << " + tol " << r->tolerance << "\n";
  }
  return kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"eps-time-biased random walks: generators, exact chains, strategies and bound checks"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write a graph file and a JSON sidecar");
  g->add_option("family", gen.family, "path|cycle|grid|complete|tree|regular|random|layered|cayley")->required();
  g->add_option("--n", gen.n, "number of vertices");
  g->add_option("--rows", gen.rows, "grid rows");
  g->add_option("--cols", gen.cols, "grid columns (default: rows)");
  g->add_option("--d", gen.d, "degree for regular graphs")->capture_default_str();
  g->add_option("--levels", gen.levels, "levels of the binary tree");
  g->add_option("--extra", gen.extra, "extra edges for random graphs")->capture_default_str();
  g->add_option("--p", gen.p, "prime for cayley graphs")->capture_default_str();
  g->add_option("--variant", gen.variant, "radius2|radius3")->capture_default_str();
  g->add_option("--seed", gen.seed)->capture_default_str();
  g->add_option("--out,-o", gen.out, "graph file (default stdout)");
  g->add_option("--sidecar", gen.sidecar, "sidecar JSON (default <out>.json)");

  CoverArgs cov;
  auto* c = app.add_subcommand("cover", "Build or validate a cover");
  c->add_option("--graph", cov.graph)->required();
  c->add_option("--levels,-k", cov.levels, "levels k (default: round(2 sqrt(log n)))");
  c->add_option("--power", cov.power, "cover graph_power(G, power)")->capture_default_str();
  c->add_option("--eps", cov.eps, "cover the power graph used by the explorer for this eps");
  c->add_option("--seed", cov.seed)->capture_default_str();
  c->add_option("--retries", cov.retries)->capture_default_str();
  c->add_option("--validate", cov.validate, "cover JSON to validate instead of building");
  c->add_option("--out,-o", cov.out);

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Monte Carlo cover or hitting times");
  s->add_option("--graph", sim.graph)->required();
  s->add_option("--eps", sim.eps)->capture_default_str();
  s->add_option("--strategy", sim.strategy, "phi_U|naive|spanning|closest|uniform")->capture_default_str();
  s->add_option("--target", sim.target, "vertex list \"1,2\" or @file");
  s->add_option("--mode", sim.mode, "cover|hit")->capture_default_str();
  s->add_option("--start", sim.start)->capture_default_str();
  s->add_option("--trials", sim.trials)->capture_default_str();
  s->add_option("--seed", sim.seed)->capture_default_str();
  s->add_option("--cap-multiplier", sim.cap_multiplier, "step cap = multiplier * n^3")->capture_default_str();
  s->add_option("--out,-o", sim.out);
  s->add_option("--csv", sim.csv, "per-trial CSV");

  AnalyzeArgs an;
  auto* z = app.add_subcommand("analyze", "Exact quantities of a weighted walk");
  z->add_option("--graph", an.graph);
  z->add_option("--weights", an.weights, "weighted graph file \"n m\" then \"u v w\"");
  z->add_option("--u", an.u, "U for the weight field, list or @file");
  z->add_option("--eps", an.eps)->capture_default_str();
  z->add_option("--hit", an.hit, "target set for hitting times");
  z->add_option("--pair", an.pairs, "\"u,v\" for effective resistance (repeatable)");
  z->add_option("--out,-o", an.out);

  ExploreArgs ex;
  auto* e = app.add_subcommand("explore", "Depth-first exploration strategy");
  e->add_option("--graph", ex.graph)->required();
  e->add_option("--eps", ex.eps)->capture_default_str();
  e->add_option("--start", ex.start)->capture_default_str();
  e->add_option("--cover", ex.cover, "cover JSON of the power graph, or auto")->capture_default_str();
  e->add_option("--trials", ex.trials)->capture_default_str();
  e->add_option("--seed", ex.seed)->capture_default_str();
  e->add_option("--cap-multiplier", ex.cap_multiplier)->capture_default_str();
  e->add_option("--out,-o", ex.out);
  e->add_option("--csv", ex.csv, "per-trial CSV");

  BenchArgs be;
  auto* b = app.add_subcommand("bench", "Check the bound suite");
  b->add_option("--suite", be.suite)->capture_default_str();
  b->add_option("--seed", be.seed)->capture_default_str();
  b->add_option("--out,-o", be.out, "report JSON (default stdout)");
  b->add_option("--tamper", be.tamper, "row=tolerance override (repeatable)");
  b->add_option("--only", be.only, "criteria to run (repeatable)");
  b->add_flag("--quiet,-q", be.quiet);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& err) {
    return app.exit(err);
  } catch (const CLI::CallForVersion& err) {
    return app.exit(err);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return kExitConfig;
  }

  try {
    if (*g) return run_generate(gen);
    if (*c) return run_cover(cov);
    if (*s) return run_simulate(sim);
    if (*z) return run_analyze(an);
    if (*e) return run_explore(ex);
    if (*b) return run_bench(be);
  } catch (const ParseError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitConfig;
  } catch (const PreconditionError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitRuntime;
  }
  return kExitConfig;
}
