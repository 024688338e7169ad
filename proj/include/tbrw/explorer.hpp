#ifndef TBRW_EXPLORER_HPP
#define TBRW_EXPLORER_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tbrw/cover.hpp"
#include "tbrw/graph.hpp"
#include "tbrw/walk.hpp"

namespace tbrw {

/// Smallest even k >= -4 ln n / ln(1 - eps), at least 2.
int choose_k(double eps, std::size_t n);

struct PlanSet {
  VertexSet v;
  VertexSet w;               ///< vertices within k/2 of V_i
  Vertex center = 0;
  std::vector<int> dist_to_w;
  std::size_t n_plus_power = 0;  ///< |N+_{G^k}(V_i)|
  int parent = -1;
  std::vector<int> children;  ///< ascending
  Vertex entry = 0;           ///< a_i
};

/// Immutable; shared between trials. Keeps a pointer to the graph.
class ExplorationPlan {
 public:
  const Graph& graph() const noexcept { return *g_; }
  double eps() const noexcept { return eps_; }
  int k() const noexcept { return k_; }
  int r() const noexcept { return r_; }
  Vertex start() const noexcept { return start_; }
  int root() const noexcept { return root_; }
  std::size_t size() const noexcept { return sets_.size(); }
  const PlanSet& set(std::size_t i) const { return sets_.at(i); }
  const std::vector<PlanSet>& sets() const noexcept { return sets_; }
  /// Adjacency of H, each list ascending.
  const std::vector<std::vector<int>>& h() const noexcept { return h_; }
  /// Children whose portal is v, ascending.
  const std::vector<int>& children_at(Vertex v) const { return portal_children_.at(v); }

  /// Sum_i |N+_{G^k}(V_i)| / n.
  double k_actual() const;

  /// Empty when H is connected, the tree is a spanning tree of H, every
  /// portal lies in W_i ∩ W_parent and V_i ⊆ W_i; otherwise the first problem.
  std::string check() const;

 private:
  friend ExplorationPlan build_plan(const Graph&, double, Vertex, const Cover&);

  const Graph* g_ = nullptr;
  double eps_ = 0.0;
  int k_ = 2;
  int r_ = 0;
  Vertex start_ = 0;
  int root_ = 0;
  std::vector<PlanSet> sets_;
  std::vector<std::vector<int>> h_;
  std::vector<std::vector<int>> portal_children_;
};

/// `cover` must be a valid cover of graph_power(g, choose_k(eps, n)) with
/// claimed radius cover.r (checked from the certificate centres).
ExplorationPlan build_plan(const Graph& g, double eps, Vertex start, const Cover& cover);

enum class ExplorationStatus : std::uint8_t { unstarted, active, suspended, finished };

/// One controller step for the step log: exploration whose strategy chose the
/// step, and the step itself.
struct LoggedStep {
  int exploration = 0;
  Vertex from = 0;
  Vertex to = 0;
};

/// The depth-first exploration as a bias function. While E_i is active the
/// controller is phi_{W_i}; after the root terminates it stays phi_{W_r}.
class ExplorationBias final : public BiasFunction {
 public:
  explicit ExplorationBias(std::shared_ptr<const ExplorationPlan> plan, bool log_steps = false);

  void begin(Vertex start) override;
  std::vector<double> distribution(Vertex current) const override;
  std::size_t sample(Vertex current, Rng& rng) const override;
  void advance(Vertex next, StepSource source) override;
  std::unique_ptr<BiasFunction> clone() const override;
  std::string name() const override { return "explorer"; }

  bool finished() const noexcept { return stack_.empty(); }
  int active() const noexcept { return stack_.empty() ? -1 : stack_.back(); }
  const std::vector<int>& stack() const noexcept { return stack_; }
  ExplorationStatus status(std::size_t i) const { return status_.at(i); }
  const std::vector<std::uint64_t>& step_counts() const noexcept { return steps_; }
  std::uint64_t steps_taken() const noexcept { return total_; }
  const std::vector<LoggedStep>& log() const noexcept { return log_; }
  /// (time, exploration) for each launch, in order.
  const std::vector<std::pair<std::uint64_t, int>>& launches() const noexcept { return launches_; }

  /// Empty when the state is consistent; otherwise a description.
  std::string check_state() const;

 private:
  void settle();
  void launch(int j);
  void credit(int i, Vertex v);
  int controlling() const noexcept { return stack_.empty() ? plan_->root() : stack_.back(); }

  std::shared_ptr<const ExplorationPlan> plan_;
  bool log_steps_;
  Vertex current_ = 0;
  std::vector<ExplorationStatus> status_;
  std::vector<int> stack_;
  std::vector<std::vector<char>> seen_;
  std::vector<std::size_t> missing_;       ///< unvisited members of W_i
  std::vector<std::size_t> children_done_;
  std::vector<std::uint64_t> steps_;       ///< L_i
  std::uint64_t total_ = 0;
  std::vector<LoggedStep> log_;
  std::vector<std::pair<std::uint64_t, int>> launches_;
};

struct ExplorationRun {
  std::uint64_t cover_time = 0;   ///< tau_phi
  std::uint64_t sum_l = 0;        ///< Sum_i L_i
  std::vector<std::uint64_t> l;   ///< L_i
  bool capped = false;
};

/// Walks until the root exploration terminates (or the cap).
ExplorationRun run_exploration(std::shared_ptr<const ExplorationPlan> plan, Rng& rng, std::uint64_t step_cap);

struct GlobalReport {
  EstimatorReport cover_time;
  std::vector<double> sum_l;      ///< per trial; NaN when capped
  std::vector<double> mean_l;     ///< per exploration over finished trials
  bool tau_within_sum = true;     ///< tau_phi <= Sum L_i on every finished trial
  double bound = 0.0;             ///< 32 eps^-1 Delta (r+1) K n log^2 n
  double k_actual = 0.0;
  int r = 0;
  int k = 0;
  std::size_t sets = 0;
};

/// 32 eps^-1 Delta (r+1) K n log^2 n with log base 2.
double global_bound(double eps, std::size_t max_degree, int r, double k_actual, std::size_t n);

GlobalReport run_global(const Graph& g, double eps, Vertex start, const Cover& cover_of_power,
                        std::size_t trials, std::uint64_t seed, const EstimatorOptions& options = {});
GlobalReport run_global(std::shared_ptr<const ExplorationPlan> plan, std::size_t trials,
                        std::uint64_t seed, const EstimatorOptions& options = {});

/// Cover of graph_power(g, choose_k(eps, n)) from build_sqrtlog_cover, with
/// the radius of the construction.
BuiltCover auto_power_cover(const Graph& g, double eps, std::uint64_t seed);

struct LocalBoundCheck {
  std::size_t set = 0;
  Vertex x = 0;
  EstimatorReport tau;         ///< Monte Carlo E[tau_i(x)]
  double tau_rhs = 0.0;        ///< 32 (r+1) Delta eps^-1 |N+| log^2 n
  double max_hitting = 0.0;    ///< max_{u,v in W_i} H(u,v), exact
  double max_hitting_rhs = 0.0;
  double weight_sum2 = 0.0;    ///< 2 Sum_e w_i(e)
  double weight_sum_rhs = 0.0; ///< 2 Delta |N+|
  double max_resistance = 0.0; ///< over the sampled pairs
  double resistance_rhs = 0.0; ///< k (2r + 1)
  bool tau_ok = false;
  bool hitting_ok = false;
  bool weight_ok = false;
  bool resistance_ok = false;
};

struct LocalCheckOptions {
  std::size_t trials = 200;
  std::size_t resistance_pairs = 20;
  bool exact_hitting = true;  ///< solve every hitting column of W_i
  std::uint64_t seed = 1;
};

/// tau_i(x): walk on (G, w_i) from x until W_i is covered and the walk is
/// back at x.
LocalBoundCheck check_local_lemma_bound(const ExplorationPlan& plan, std::size_t i, Vertex x,
                                        const LocalCheckOptions& options = {});

/// Transition counts of the excised subsequences of exploration i:
/// counts[v][s] = steps from v to neighbours[s] chosen while E_i was active.
std::vector<std::vector<std::uint64_t>> excised_counts(const Graph& g, const std::vector<LoggedStep>& log,
                                                       int exploration);

struct ChiSquare {
  double statistic = 0.0;
  double dof = 0.0;
  double p_value = 1.0;
  std::uint64_t steps = 0;
};

/// Pooled Pearson test of observed transition counts against the walk on
/// (G, w); rows with fewer than `min_row` steps are skipped, and cells are
/// pooled so expected counts stay at least 5.
ChiSquare transition_chi_square(const WeightedGraph& wg, const std::vector<std::vector<std::uint64_t>>& counts,
                                std::uint64_t min_row = 20);

/// Upper tail P(X >= statistic) of the chi-square law with `dof` degrees.
double chi_square_p(double statistic, double dof);

}  // namespace tbrw

#endif  // TBRW_EXPLORER_HPP
