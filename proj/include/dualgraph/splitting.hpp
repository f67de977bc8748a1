#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dualgraph/graph.hpp"
#include "dualgraph/spanning.hpp"

namespace dualgraph {

enum class BalanceMode { exact, near };

/// Balance requirement for a k-way split of an n-vertex tree. In exact mode
/// every part has n/k vertices (k must divide n); in near mode part sizes lie
/// in {floor(n/k), ceil(n/k)}.
struct BalanceRule {
  int k = 2;
  BalanceMode mode = BalanceMode::exact;

  /// Exact when k divides n, near otherwise.
  static BalanceRule for_size(std::size_t n, int k);

  /// Throws InputError when the rule cannot apply to an n-vertex tree.
  void validate(std::size_t n) const;

  std::size_t min_part(std::size_t n) const noexcept { return n / static_cast<std::size_t>(k); }
  std::size_t max_part(std::size_t n) const noexcept {
    return (n + static_cast<std::size_t>(k) - 1) / static_cast<std::size_t>(k);
  }
  bool part_ok(std::size_t n, std::size_t size) const noexcept {
    return mode == BalanceMode::exact ? size * static_cast<std::size_t>(k) == n
                                      : size >= min_part(n) && size <= max_part(n);
  }
};

std::string to_string(BalanceMode mode);
BalanceMode parse_balance_mode(const std::string& text);

/// Reusable workspace for balance checks; one per thread in hot loops.
class SplitChecker {
 public:
  /// True when k-1 tree edges can be removed to leave k parts that satisfy
  /// the rule. Throws InputError when the rule is invalid for the tree.
  bool splittable(const SpanningTree& tree, const BalanceRule& rule);

  /// The lexicographically smallest valid set of k-1 cut edges (sorted), or
  /// nullopt when none exists.
  std::optional<std::vector<Edge>> find(const SpanningTree& tree, const BalanceRule& rule);

 private:
  enum class EdgeState : char { free, cut, keep };

  void compute_sizes(const SpanningTree& tree);
  bool near_feasible(const SpanningTree& tree, const BalanceRule& rule);

  std::vector<std::size_t> size_;
  std::vector<EdgeState> state_;  // indexed by child vertex of the tree edge
  std::vector<std::uint64_t> dp_;
};

std::optional<std::vector<Edge>> find_balanced_split(const SpanningTree& tree,
                                                     const BalanceRule& rule);

bool is_splittable(const SpanningTree& tree, const BalanceRule& rule);

struct Fraction {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;
  double value() const noexcept {
    return static_cast<double>(numerator) / static_cast<double>(denominator);
  }
};

/// Fraction of all spanning trees of g that admit a balanced split, by
/// exhaustive enumeration. Throws InputError if g is disconnected or has more
/// than `max_trees` spanning trees.
Fraction splittable_fraction_exact(const Graph& g, const BalanceRule& rule,
                                   std::uint64_t max_trees = 1'000'000);

/// Calls visit(tree) for every spanning tree of a connected graph, where
/// tree is the sorted list of n-1 edges.
void for_each_spanning_tree(const Graph& g,
                            const std::function<void(const std::vector<Edge>&)>& visit);

enum class Estimator { ratio, gbas, both };

std::string to_string(Estimator e);
Estimator parse_estimator(const std::string& text);

struct SplitEstimate {
  std::string graph_label;
  std::size_t n = 0;
  int k = 0;
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  /// The reported estimate: the ratio estimate unless the estimator is gbas.
  double p_hat = 0.0;
  double p_hat_ratio = 0.0;
  /// (successes - 1) / R with R the sum of one unit exponential per trial.
  double p_hat_gbas = 0.0;
  std::uint64_t seed = 0;
  Estimator estimator = Estimator::both;
};

inline constexpr std::uint64_t kDefaultTargetSuccesses = 178;

struct GbasOptions {
  std::uint64_t target_successes = kDefaultTargetSuccesses;
  std::uint64_t trial_cap = 100'000'000;
  Estimator estimator = Estimator::both;
  /// 0 = automatic (see worker_count).
  unsigned threads = 0;
};

/// One Bernoulli trial. Receives the trial's derived seed and must be a pure
/// function of it.
using BernoulliOracle = std::function<bool(std::uint64_t trial_seed)>;
/// Builds one oracle per worker thread, so oracles may keep private scratch.
using OracleFactory = std::function<BernoulliOracle()>;

/// Runs trials in index order until `target_successes` successes. Trial i
/// uses derive_seed(seed, {i, 0}) and draws its exponential deviate from
/// derive_seed(seed, {i, 1}). Parallel speculation is reconciled in trial
/// order, so results do not depend on the thread count.
/// Throws TrialCapExceeded if the budget runs out first.
SplitEstimate gbas_estimate(const OracleFactory& make_oracle, const GbasOptions& options,
                            std::uint64_t seed);

/// Sequential convenience overload.
SplitEstimate gbas_estimate(const BernoulliOracle& oracle, const GbasOptions& options,
                            std::uint64_t seed);

/// Wilson sampling plus the balance check as the Bernoulli oracle. A
/// disconnected graph is replaced by its largest component; `mode` defaults to
/// BalanceRule::for_size on that component.
SplitEstimate estimate_splittability(const Graph& g, int k, std::optional<BalanceMode> mode,
                                     const GbasOptions& options, std::uint64_t seed,
                                     const std::string& label = "");

}  // namespace dualgraph
