#include "tbrw/explorer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/gamma.hpp>

#include "tbrw/chain.hpp"
#include "tbrw/error.hpp"
#include "tbrw/strategies.hpp"

namespace tbrw {

int choose_k(double eps, std::size_t n) {
  require(eps > 0.0 && eps < 1.0, "choose_k: eps must lie in (0, 1)");
  require(n >= 2, "choose_k: need n >= 2");
  const double raw = -4.0 * std::log(static_cast<double>(n)) / std::log1p(-eps);
  // a hair of slack so exact even values are not pushed up by rounding
  int k = static_cast<int>(std::ceil(raw - 1e-9));
  if (k % 2 != 0) ++k;
  return std::max(k, 2);
}

double ExplorationPlan::k_actual() const {
  double total = 0.0;
  for (const auto& s : sets_) total += static_cast<double>(s.n_plus_power);
  return total / static_cast<double>(g_->size());
}

std::string ExplorationPlan::check() const {
  const std::size_t m = sets_.size();
  if (m == 0) return "plan has no sets";
  if (!sets_[root_].v.contains(start_)) return "root set does not contain the start";
  std::vector<char> reached(m, 0);
  std::vector<int> queue{root_};
  reached[root_] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (int j : h_[queue[head]]) {
      if (!reached[j]) {
        reached[j] = 1;
        queue.push_back(j);
      }
    }
  }
  if (queue.size() != m) return "auxiliary graph H is disconnected";
  std::size_t tree_edges = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& s = sets_[i];
    if (!s.v.is_subset_of(s.w)) return "V_" + std::to_string(i) + " is not inside W_" + std::to_string(i);
    if (static_cast<int>(i) == root_) {
      if (s.parent != -1) return "root has a parent";
      if (s.entry != start_) return "root entry is not the start";
      continue;
    }
    if (s.parent < 0) return "set " + std::to_string(i) + " has no parent";
    const auto& adj = h_[s.parent];
    if (!std::binary_search(adj.begin(), adj.end(), static_cast<int>(i))) {
      return "tree edge " + std::to_string(s.parent) + "-" + std::to_string(i) + " is not in H";
    }
    const auto& kids = sets_[s.parent].children;
    if (std::find(kids.begin(), kids.end(), static_cast<int>(i)) == kids.end()) {
      return "set " + std::to_string(i) + " missing from its parent's children";
    }
    if (!s.w.contains(s.entry) || !sets_[s.parent].w.contains(s.entry)) {
      return "portal of set " + std::to_string(i) + " is not in both fattened sets";
    }
    ++tree_edges;
  }
  if (tree_edges != m - 1) return "tree has the wrong number of edges";
  // acyclic: walking up from every set reaches the root
  for (std::size_t i = 0; i < m; ++i) {
    int at = static_cast<int>(i);
    std::size_t hops = 0;
    while (at != root_ && hops++ <= m) at = sets_[at].parent;
    if (at != root_) return "parent pointers contain a cycle";
  }
  return {};
}

ExplorationPlan build_plan(const Graph& g, double eps, Vertex start, const Cover& cover) {
  const std::size_t n = g.size();
  require(start < n, "build_plan: start out of range");
  require(!cover.sets.empty(), "build_plan: cover has no sets");
  require(g.connected(), "build_plan: graph must be connected");
  ExplorationPlan plan;
  plan.g_ = &g;
  plan.eps_ = eps;
  plan.k_ = choose_k(eps, n);
  plan.r_ = cover.r;
  plan.start_ = start;

  const Graph power = graph_power(g, plan.k_);
  std::vector<char> covered(n, 0);
  for (std::size_t i = 0; i < cover.sets.size(); ++i) {
    const auto& s = cover.sets[i];
    if (s.vertices.universe() != n) throw PreconditionError("build_plan: cover built for another graph size");
    if (s.vertices.empty() || !s.vertices.contains(s.center)) {
      throw PreconditionError("build_plan: set " + std::to_string(i) + " does not contain its centre");
    }
    if (induced_eccentricity(power, s.vertices, s.center) > cover.r) {
      throw PreconditionError("build_plan: set " + std::to_string(i) + " exceeds radius " +
                              std::to_string(cover.r) + " in the power graph");
    }
    for (Vertex v : s.vertices.members()) covered[v] = 1;
  }
  for (Vertex v = 0; v < n; ++v) {
    if (!covered[v]) throw PreconditionError("build_plan: vertex " + std::to_string(v) + " is uncovered");
  }

  const std::size_t m = cover.sets.size();
  std::vector<std::vector<int>> holders(n);
  for (std::size_t i = 0; i < m; ++i) {
    PlanSet ps;
    ps.v = cover.sets[i].vertices;
    ps.center = cover.sets[i].center;
    auto near = bfs_within(g, ps.v, plan.k_);
    ps.w = VertexSet(n);
    for (Vertex u = 0; u < n; ++u) {
      if (near[u] == kUnreachable) continue;
      ++ps.n_plus_power;
      if (near[u] <= plan.k_ / 2) {
        ps.w.insert(u);
        holders[u].push_back(static_cast<int>(i));
      }
    }
    ps.dist_to_w = bfs_distances(g, ps.w);
    plan.sets_.push_back(std::move(ps));
  }

  plan.h_.assign(m, {});
  for (const auto& list : holders) {
    for (std::size_t a = 0; a < list.size(); ++a) {
      for (std::size_t b = a + 1; b < list.size(); ++b) {
        plan.h_[list[a]].push_back(list[b]);
        plan.h_[list[b]].push_back(list[a]);
      }
    }
  }
  for (auto& adj : plan.h_) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }

  plan.root_ = -1;
  for (std::size_t i = 0; i < m && plan.root_ < 0; ++i) {
    if (plan.sets_[i].v.contains(start)) plan.root_ = static_cast<int>(i);
  }
  if (plan.root_ < 0) throw InternalError("build_plan: no set contains the start");

  std::vector<char> reached(m, 0);
  std::vector<int> queue{plan.root_};
  reached[plan.root_] = 1;
  plan.sets_[plan.root_].entry = start;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int i = queue[head];
    for (int j : plan.h_[i]) {
      if (reached[j]) continue;
      reached[j] = 1;
      queue.push_back(j);
      auto& child = plan.sets_[j];
      child.parent = i;
      plan.sets_[i].children.push_back(j);
      const auto& wi = plan.sets_[i].w;
      Vertex portal = static_cast<Vertex>(n);
      for (Vertex u : child.w.members()) {
        if (wi.contains(u)) portal = std::min(portal, u);
      }
      child.entry = portal;
    }
  }
  if (queue.size() != m) throw InternalError("build_plan: auxiliary graph H is disconnected");
  for (auto& s : plan.sets_) std::sort(s.children.begin(), s.children.end());
  plan.portal_children_.assign(n, {});
  for (std::size_t j = 0; j < m; ++j) {
    if (static_cast<int>(j) != plan.root_) plan.portal_children_[plan.sets_[j].entry].push_back(static_cast<int>(j));
  }

  if (auto problem = plan.check(); !problem.empty()) throw InternalError("build_plan: " + problem);
  return plan;
}

ExplorationBias::ExplorationBias(std::shared_ptr<const ExplorationPlan> plan, bool log_steps)
    : plan_(std::move(plan)), log_steps_(log_steps) {
  require(plan_ != nullptr, "ExplorationBias: null plan");
}

void ExplorationBias::begin(Vertex start) {
  require(start == plan_->start(), "ExplorationBias: begun away from the planned start");
  const std::size_t m = plan_->size();
  const std::size_t n = plan_->graph().size();
  current_ = start;
  status_.assign(m, ExplorationStatus::unstarted);
  stack_.clear();
  seen_.assign(m, std::vector<char>(n, 0));
  missing_.resize(m);
  for (std::size_t i = 0; i < m; ++i) missing_[i] = plan_->set(i).w.size();
  children_done_.assign(m, 0);
  steps_.assign(m, 0);
  total_ = 0;
  log_.clear();
  launches_.clear();
  launch(plan_->root());
  settle();
}

void ExplorationBias::credit(int i, Vertex v) {
  if (plan_->set(i).w.contains(v) && !seen_[i][v]) {
    seen_[i][v] = 1;
    --missing_[i];
  }
}

void ExplorationBias::launch(int j) {
  if (!stack_.empty()) status_[stack_.back()] = ExplorationStatus::suspended;
  stack_.push_back(j);
  status_[j] = ExplorationStatus::active;
  credit(j, current_);
  launches_.emplace_back(total_, j);
}

void ExplorationBias::settle() {
  while (!stack_.empty()) {
    const int i = stack_.back();
    const auto& s = plan_->set(i);
    int next_child = -1;
    for (int j : plan_->children_at(current_)) {
      if (plan_->set(j).parent == i && status_[j] == ExplorationStatus::unstarted) {
        next_child = j;
        break;
      }
    }
    if (next_child >= 0) {
      launch(next_child);
      continue;
    }
    if (missing_[i] == 0 && children_done_[i] == s.children.size() && current_ == s.entry) {
      status_[i] = ExplorationStatus::finished;
      stack_.pop_back();
      if (stack_.empty()) break;
      const int parent = stack_.back();
      if (parent != s.parent) throw InternalError("explorer: stack is not a tree path");
      status_[parent] = ExplorationStatus::active;
      ++children_done_[parent];
      continue;
    }
    break;
  }
}

std::vector<double> ExplorationBias::distribution(Vertex current) const {
  return emulation_law(plan_->graph(), plan_->set(controlling()).dist_to_w, plan_->eps(), current);
}

std::size_t ExplorationBias::sample(Vertex current, Rng& rng) const {
  return emulation_sample(plan_->graph(), plan_->set(controlling()).dist_to_w, plan_->eps(), current, rng);
}

void ExplorationBias::advance(Vertex next, StepSource /*source*/) {
  const int i = active();
  if (log_steps_) log_.push_back({i, current_, next});
  if (i >= 0) {
    ++steps_[i];
    credit(i, next);
  }
  current_ = next;
  ++total_;
  settle();
}

std::unique_ptr<BiasFunction> ExplorationBias::clone() const {
  return std::make_unique<ExplorationBias>(*this);
}

std::string ExplorationBias::check_state() const {
  const std::size_t m = plan_->size();
  std::vector<char> on_stack(m, 0);
  for (std::size_t d = 0; d < stack_.size(); ++d) {
    const int i = stack_[d];
    if (on_stack[i]) return "exploration " + std::to_string(i) + " appears twice on the stack";
    on_stack[i] = 1;
    const int expected_parent = d == 0 ? -1 : stack_[d - 1];
    if (plan_->set(i).parent != expected_parent) return "stack is not a root-to-node path";
    const auto want = d + 1 == stack_.size() ? ExplorationStatus::active : ExplorationStatus::suspended;
    if (status_[i] != want) return "exploration " + std::to_string(i) + " has the wrong status";
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (on_stack[i]) continue;
    if (status_[i] == ExplorationStatus::active || status_[i] == ExplorationStatus::suspended) {
      return "exploration " + std::to_string(i) + " is running but not on the stack";
    }
    if (status_[i] == ExplorationStatus::finished && missing_[i] != 0) {
      return "exploration " + std::to_string(i) + " finished without covering W_i";
    }
  }
  return {};
}

ExplorationRun run_exploration(std::shared_ptr<const ExplorationPlan> plan, Rng& rng, std::uint64_t step_cap) {
  const Graph& g = plan->graph();
  const std::size_t n = g.size();
  ExplorationBias bias(plan);
  Vertex current = plan->start();
  bias.begin(current);
  std::vector<char> seen(n, 0);
  seen[current] = 1;
  std::size_t remaining = n - 1;
  ExplorationRun run;
  std::uint64_t t = 0;
  while (!bias.finished()) {
    if (step_cap != 0 && t >= step_cap) {
      run.capped = true;
      break;
    }
    const Step step = tbrw_step(g, plan->eps(), bias, current, rng);
    bias.advance(step.next, step.source);
    current = step.next;
    ++t;
    if (!seen[current]) {
      seen[current] = 1;
      if (--remaining == 0) run.cover_time = t;
    }
  }
  run.l = bias.step_counts();
  for (auto x : run.l) run.sum_l += x;
  if (!run.capped) {
    if (remaining != 0) throw InternalError("explorer: root terminated before the graph was covered");
    if (run.cover_time > run.sum_l) throw InternalError("explorer: cover time exceeds the sum of L_i");
  }
  return run;
}

double global_bound(double eps, std::size_t max_degree, int r, double k_actual, std::size_t n) {
  const double l = std::log2(static_cast<double>(n));
  return 32.0 / eps * static_cast<double>(max_degree) * (r + 1) * k_actual * static_cast<double>(n) * l * l;
}

GlobalReport run_global(std::shared_ptr<const ExplorationPlan> plan, std::size_t trials, std::uint64_t seed,
                        const EstimatorOptions& options) {
  require(trials >= 1, "run_global: need at least one trial");
  const Graph& g = plan->graph();
  const std::uint64_t cap = step_cap_for(g.size(), options.cap_multiplier);
  std::vector<ExplorationRun> runs(trials);
  auto samples = run_trials(trials, options.threads, [&](std::size_t j) {
    Rng rng = Rng::stream(seed, j);
    runs[j] = run_exploration(plan, rng, cap);
    return runs[j].capped ? std::nan("") : static_cast<double>(runs[j].cover_time);
  });
  GlobalReport rep;
  rep.cover_time = summarize(std::move(samples), seed);
  rep.mean_l.assign(plan->size(), 0.0);
  std::size_t finished = 0;
  for (const auto& run : runs) {
    if (run.capped) {
      rep.sum_l.push_back(std::nan(""));
      continue;
    }
    ++finished;
    rep.sum_l.push_back(static_cast<double>(run.sum_l));
    rep.tau_within_sum = rep.tau_within_sum && run.cover_time <= run.sum_l;
    for (std::size_t i = 0; i < run.l.size(); ++i) rep.mean_l[i] += static_cast<double>(run.l[i]);
  }
  for (double& x : rep.mean_l) x = finished ? x / static_cast<double>(finished) : std::nan("");
  rep.k_actual = plan->k_actual();
  rep.r = plan->r();
  rep.k = plan->k();
  rep.sets = plan->size();
  rep.bound = global_bound(plan->eps(), g.max_degree(), plan->r(), rep.k_actual, g.size());
  return rep;
}

GlobalReport run_global(const Graph& g, double eps, Vertex start, const Cover& cover_of_power,
                        std::size_t trials, std::uint64_t seed, const EstimatorOptions& options) {
  auto plan = std::make_shared<const ExplorationPlan>(build_plan(g, eps, start, cover_of_power));
  return run_global(std::move(plan), trials, seed, options);
}

BuiltCover auto_power_cover(const Graph& g, double eps, std::uint64_t seed) {
  const Graph power = graph_power(g, choose_k(eps, g.size()));
  return build_sqrtlog_cover(power, seed).built;
}

LocalBoundCheck check_local_lemma_bound(const ExplorationPlan& plan, std::size_t i, Vertex x,
                                        const LocalCheckOptions& options) {
  const Graph& g = plan.graph();
  const auto& s = plan.set(i);
  require(s.w.contains(x), "check_local_lemma_bound: x must lie in W_i");
  const double eps = plan.eps();
  const double delta = static_cast<double>(g.max_degree());
  const double nplus = static_cast<double>(s.n_plus_power);
  const double l = std::log2(static_cast<double>(g.size()));
  const auto wg = weight_field_from_distances(g, s.dist_to_w, eps);

  LocalBoundCheck out;
  out.set = i;
  out.x = x;

  out.weight_sum2 = 2.0 * wg.total_weight();
  out.weight_sum_rhs = 2.0 * delta * nplus;
  out.weight_ok = out.weight_sum2 <= out.weight_sum_rhs;

  LaplacianSolver solver(wg, x);
  Rng pick(Rng::stream(options.seed, 0x5eed + i));
  const auto& members = s.w.members();
  for (std::size_t p = 0; p < options.resistance_pairs; ++p) {
    const Vertex u = members[pick.below(members.size())];
    const Vertex v = members[pick.below(members.size())];
    out.max_resistance = std::max(out.max_resistance, solver.resistance(u, v));
  }
  out.resistance_rhs = static_cast<double>(plan.k()) * (2.0 * plan.r() + 1.0);
  out.resistance_ok = out.max_resistance <= out.resistance_rhs + 1e-8;

  out.max_hitting_rhs = 16.0 / eps * delta * nplus * (plan.r() + 1) * l;
  if (options.exact_hitting) {
    for (Vertex v : members) {
      const auto column = solver.hitting_column(v);
      for (Vertex u : members) out.max_hitting = std::max(out.max_hitting, column[u]);
    }
    out.hitting_ok = out.max_hitting < out.max_hitting_rhs;
  } else {
    out.max_hitting = std::nan("");
    out.hitting_ok = true;
  }

  out.tau_rhs = 32.0 * (plan.r() + 1) * delta / eps * nplus * l * l;
  if (options.trials > 0) {
    const EmulationBias phi(g, s.w, eps);
    const std::uint64_t cap = step_cap_for(g.size(), 1.0);
    auto samples = run_trials(options.trials, 0, [&](std::size_t j) {
      Rng rng = Rng::stream(options.seed, j);
      std::vector<char> seen(g.size(), 0);
      std::size_t missing = s.w.size() - 1;
      seen[x] = 1;
      Vertex current = x;
      std::uint64_t t = 0;
      while (missing > 0 || current != x) {
        if (t >= cap) return std::nan("");
        current = tbrw_step(g, eps, phi, current, rng).next;
        ++t;
        if (s.w.contains(current) && !seen[current]) {
          seen[current] = 1;
          --missing;
        }
      }
      return static_cast<double>(t);
    });
    out.tau = summarize(std::move(samples), options.seed);
    out.tau_ok = out.tau.mean < out.tau_rhs;
  } else {
    out.tau_ok = true;
  }
  return out;
}

std::vector<std::vector<std::uint64_t>> excised_counts(const Graph& g, const std::vector<LoggedStep>& log,
                                                       int exploration) {
  std::vector<std::vector<std::uint64_t>> counts(g.size());
  for (Vertex v = 0; v < g.size(); ++v) counts[v].assign(g.degree(v), 0);
  for (const auto& step : log) {
    if (step.exploration != exploration) continue;
    auto nb = g.neighbors(step.from);
    auto it = std::find(nb.begin(), nb.end(), step.to);
    if (it == nb.end()) throw InternalError("excised_counts: logged step is not an edge");
    ++counts[step.from][static_cast<std::size_t>(it - nb.begin())];
  }
  return counts;
}

ChiSquare transition_chi_square(const WeightedGraph& wg, const std::vector<std::vector<std::uint64_t>>& counts,
                                std::uint64_t min_row) {
  require(counts.size() == wg.size(), "transition_chi_square: one count row per vertex");
  ChiSquare out;
  for (Vertex v = 0; v < wg.size(); ++v) {
    const auto& row = counts[v];
    std::uint64_t total = 0;
    for (auto c : row) total += c;
    if (total < min_row) continue;
    out.steps += total;
    const auto law = wg.transition(v);
    std::vector<std::pair<double, double>> groups;  // (observed, expected)
    double obs = 0.0;
    double exp = 0.0;
    for (std::size_t s = 0; s < row.size(); ++s) {
      obs += static_cast<double>(row[s]);
      exp += law[s] * static_cast<double>(total);
      if (exp >= 5.0) {
        groups.emplace_back(obs, exp);
        obs = exp = 0.0;
      }
    }
    if (exp > 0.0 || obs > 0.0) {
      if (groups.empty()) {
        groups.emplace_back(obs, exp);
      } else {
        groups.back().first += obs;
        groups.back().second += exp;
      }
    }
    if (groups.size() < 2) continue;
    for (const auto& [o, e] : groups) out.statistic += (o - e) * (o - e) / e;
    out.dof += static_cast<double>(groups.size() - 1);
  }
  out.p_value = chi_square_p(out.statistic, out.dof);
  return out;
}

double chi_square_p(double statistic, double dof) {
  if (dof <= 0.0) return 1.0;
  return boost::math::gamma_q(dof / 2.0, statistic / 2.0);
}

}  // namespace tbrw
