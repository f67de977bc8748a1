#include "dualgraph/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "dualgraph/error.hpp"
#include "dualgraph/parallel.hpp"
#include "dualgraph/rng.hpp"

namespace dualgraph {

BalanceRule BalanceRule::for_size(std::size_t n, int k) {
  BalanceRule r;
  r.k = k;
  r.mode = (k > 0 && n % static_cast<std::size_t>(k) == 0) ? BalanceMode::exact : BalanceMode::near;
  return r;
}

void BalanceRule::validate(std::size_t n) const {
  if (k < 2) throw InputError("k must be at least 2");
  if (n < static_cast<std::size_t>(k)) {
    throw InputError("cannot split " + std::to_string(n) + " vertices into " + std::to_string(k) +
                     " parts");
  }
  if (mode == BalanceMode::exact && n % static_cast<std::size_t>(k) != 0) {
    throw InputError("exact balance needs k | n (n = " + std::to_string(n) +
                     ", k = " + std::to_string(k) + ")");
  }
}

std::string to_string(BalanceMode mode) { return mode == BalanceMode::exact ? "exact" : "near"; }

BalanceMode parse_balance_mode(const std::string& text) {
  if (text == "exact") return BalanceMode::exact;
  if (text == "near") return BalanceMode::near;
  throw InputError("unknown balance mode '" + text + "' (expected exact or near)");
}

void SplitChecker::compute_sizes(const SpanningTree& tree) {
  const std::size_t n = tree.vertex_count();
  size_.assign(n, 1);
  for (std::size_t i = n; i-- > 1;) {
    const auto v = tree.order[i];
    size_[tree.parent[v]] += size_[v];
  }
}

namespace {

// dst |= (src << shift), keeping only bits [0, limit].
void shift_or(std::uint64_t* dst, const std::uint64_t* src, std::size_t shift, std::size_t words,
              std::size_t limit) {
  const std::size_t ws = shift / 64;
  const std::size_t bs = shift % 64;
  for (std::size_t i = words; i-- > ws;) {
    std::uint64_t word = src[i - ws] << bs;
    if (bs != 0 && i - ws >= 1) word |= src[i - ws - 1] >> (64 - bs);
    dst[i] |= word;
  }
  const std::size_t top_bits = limit % 64 + 1;
  if (top_bits < 64) dst[words - 1] &= (std::uint64_t{1} << top_bits) - 1;
}

bool any_in_range(const std::uint64_t* bits, std::size_t lo, std::size_t hi) {
  for (std::size_t s = lo; s <= hi; ++s) {
    if ((bits[s / 64] >> (s % 64)) & 1U) return true;
  }
  return false;
}

}  // namespace

// Per vertex and per count c of already-closed parts below it, the set of
// achievable sizes of the still-open part containing the vertex, capped at
// the largest allowed part size.
bool SplitChecker::near_feasible(const SpanningTree& tree, const BalanceRule& rule) {
  const std::size_t n = tree.vertex_count();
  const auto k = static_cast<std::size_t>(rule.k);
  const std::size_t lo = rule.min_part(n);
  const std::size_t hi = rule.max_part(n);
  const std::size_t words = hi / 64 + 1;
  const std::size_t stride = k * words;
  dp_.assign(n * stride, 0);
  for (std::size_t v = 0; v < n; ++v) dp_[v * stride] = 2;  // open size 1, nothing closed
  std::vector<std::uint64_t> merged(stride);
  std::vector<char> closable(k);

  for (std::size_t i = n; i-- > 1;) {
    const auto child = tree.order[i];
    const auto parent = tree.parent[child];
    const std::uint64_t* b = &dp_[child * stride];
    std::uint64_t* a = &dp_[parent * stride];
    std::fill(merged.begin(), merged.end(), 0);
    const EdgeState st = state_.empty() ? EdgeState::free : state_[child];

    if (st != EdgeState::keep) {
      for (std::size_t c2 = 0; c2 < k; ++c2) closable[c2] = any_in_range(b + c2 * words, lo, hi);
      for (std::size_t c1 = 0; c1 < k; ++c1) {
        for (std::size_t c2 = 0; c1 + c2 + 1 < k; ++c2) {
          if (!closable[c2]) continue;
          std::uint64_t* dst = &merged[(c1 + c2 + 1) * words];
          for (std::size_t w = 0; w < words; ++w) dst[w] |= a[c1 * words + w];
        }
      }
    }
    if (st != EdgeState::cut) {
      for (std::size_t c1 = 0; c1 < k; ++c1) {
        const std::uint64_t* row = a + c1 * words;
        for (std::size_t s1 = 1; s1 <= hi; ++s1) {
          if (!((row[s1 / 64] >> (s1 % 64)) & 1U)) continue;
          for (std::size_t c2 = 0; c1 + c2 < k; ++c2) {
            shift_or(&merged[(c1 + c2) * words], b + c2 * words, s1, words, hi);
          }
        }
      }
    }
    std::copy(merged.begin(), merged.end(), a);
  }
  return any_in_range(&dp_[tree.root * stride + (k - 1) * words], lo, hi);
}

bool SplitChecker::splittable(const SpanningTree& tree, const BalanceRule& rule) {
  const std::size_t n = tree.vertex_count();
  rule.validate(n);
  compute_sizes(tree);
  const std::size_t lo = rule.min_part(n);
  const std::size_t hi = rule.max_part(n);
  if (lo == hi) {
    std::size_t hits = 0;
    for (std::size_t v = 0; v < n; ++v) hits += size_[v] % lo == 0 ? 1 : 0;
    return hits == static_cast<std::size_t>(rule.k);
  }
  if (rule.k == 2) {
    for (std::size_t v = 0; v < n; ++v) {
      if (v != tree.root && size_[v] >= lo && size_[v] <= hi) return true;
    }
    return false;
  }
  state_.clear();
  return near_feasible(tree, rule);
}

std::optional<std::vector<Edge>> SplitChecker::find(const SpanningTree& tree,
                                                    const BalanceRule& rule) {
  const std::size_t n = tree.vertex_count();
  rule.validate(n);
  compute_sizes(tree);
  const std::size_t lo = rule.min_part(n);
  const std::size_t hi = rule.max_part(n);

  if (lo == hi) {
    // The cut set is forced: the edges above every non-root vertex whose
    // subtree size is a multiple of n/k.
    std::vector<Edge> cuts;
    std::size_t hits = 0;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (size_[v] % lo != 0) continue;
      ++hits;
      if (v != tree.root) cuts.push_back(make_edge(v, tree.parent[v]));
    }
    if (hits != static_cast<std::size_t>(rule.k)) return std::nullopt;
    std::sort(cuts.begin(), cuts.end());
    return cuts;
  }

  if (rule.k == 2) {
    std::optional<Edge> best;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (v == tree.root || size_[v] < lo || size_[v] > hi) continue;
      Edge e = make_edge(v, tree.parent[v]);
      if (!best || e < *best) best = e;
    }
    if (!best) return std::nullopt;
    return std::vector<Edge>{*best};
  }

  // Greedy over edges in sorted order: take each edge if some valid split
  // still exists with it cut and every earlier rejected edge kept.
  state_.assign(n, EdgeState::free);
  if (!near_feasible(tree, rule)) return std::nullopt;
  std::vector<std::pair<Edge, std::uint32_t>> tree_edges;
  tree_edges.reserve(n - 1);
  for (std::uint32_t v = 0; v < n; ++v) {
    if (v != tree.root) tree_edges.emplace_back(make_edge(v, tree.parent[v]), v);
  }
  std::sort(tree_edges.begin(), tree_edges.end());
  std::vector<Edge> cuts;
  for (const auto& [edge, child] : tree_edges) {
    if (cuts.size() + 1 == static_cast<std::size_t>(rule.k)) break;
    state_[child] = EdgeState::cut;
    if (near_feasible(tree, rule)) {
      cuts.push_back(edge);
    } else {
      state_[child] = EdgeState::keep;
    }
  }
  state_.clear();
  return cuts;
}

std::optional<std::vector<Edge>> find_balanced_split(const SpanningTree& tree,
                                                     const BalanceRule& rule) {
  SplitChecker checker;
  return checker.find(tree, rule);
}

bool is_splittable(const SpanningTree& tree, const BalanceRule& rule) {
  SplitChecker checker;
  return checker.splittable(tree, rule);
}

namespace {

class RollbackUnionFind {
 public:
  explicit RollbackUnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<std::uint32_t>(i);
  }
  std::uint32_t find(std::uint32_t x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    history_.push_back(b);
    return true;
  }
  void rollback() {
    const auto b = history_.back();
    history_.pop_back();
    const auto a = parent_[b];
    size_[a] -= size_[b];
    parent_[b] = b;
  }
  std::size_t components() const { return parent_.size() - history_.size(); }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::size_t> size_;
  std::vector<std::uint32_t> history_;
};

class TreeEnumerator {
 public:
  TreeEnumerator(const Graph& g, const std::function<void(const std::vector<Edge>&)>& visit)
      : edges_(g.edges().begin(), g.edges().end()),
        n_(g.vertex_count()),
        uf_(g.vertex_count()),
        visit_(visit) {}

  void run() {
    chosen_.reserve(n_);
    recurse(0);
  }

 private:
  bool still_connectable(std::size_t from) {
    std::size_t merged = 0;
    for (std::size_t i = from; i < edges_.size(); ++i) {
      if (uf_.unite(edges_[i].u, edges_[i].v)) ++merged;
    }
    const bool ok = uf_.components() == 1;
    for (std::size_t i = 0; i < merged; ++i) uf_.rollback();
    return ok;
  }

  void recurse(std::size_t i) {
    if (chosen_.size() + 1 == n_) {
      visit_(chosen_);
      return;
    }
    if (i == edges_.size() || edges_.size() - i < n_ - 1 - chosen_.size()) return;
    const Edge e = edges_[i];
    if (uf_.unite(e.u, e.v)) {
      chosen_.push_back(e);
      recurse(i + 1);
      chosen_.pop_back();
      uf_.rollback();
    }
    if (still_connectable(i + 1)) recurse(i + 1);
  }

  std::vector<Edge> edges_;
  std::size_t n_;
  RollbackUnionFind uf_;
  std::vector<Edge> chosen_;
  const std::function<void(const std::vector<Edge>&)>& visit_;
};

}  // namespace

void for_each_spanning_tree(const Graph& g,
                            const std::function<void(const std::vector<Edge>&)>& visit) {
  if (!is_connected(g)) throw InputError("no spanning trees");
  if (g.vertex_count() == 1) {
    visit({});
    return;
  }
  TreeEnumerator(g, visit).run();
}

Fraction splittable_fraction_exact(const Graph& g, const BalanceRule& rule,
                                   std::uint64_t max_trees) {
  if (!is_connected(g)) throw InputError("no spanning trees");
  rule.validate(g.vertex_count());
  const double ln_count = log_spanning_tree_count(g);
  if (ln_count > std::log(static_cast<double>(max_trees)) + 1e-9) {
    throw InputError("graph has about e^" + std::to_string(ln_count) +
                     " spanning trees; too many to enumerate, use the Monte Carlo estimator");
  }
  Fraction f{0, 0};
  SplitChecker checker;
  for_each_spanning_tree(g, [&](const std::vector<Edge>& edges) {
    ++f.denominator;
    if (checker.splittable(SpanningTree::from_edges(g.vertex_count(), edges), rule)) ++f.numerator;
  });
  return f;
}

std::string to_string(Estimator e) {
  switch (e) {
    case Estimator::ratio: return "ratio";
    case Estimator::gbas: return "gbas";
    case Estimator::both: return "both";
  }
  return "both";
}

Estimator parse_estimator(const std::string& text) {
  if (text == "ratio") return Estimator::ratio;
  if (text == "gbas") return Estimator::gbas;
  if (text == "both") return Estimator::both;
  throw InputError("unknown estimator '" + text + "' (expected ratio, gbas, or both)");
}

SplitEstimate gbas_estimate(const OracleFactory& make_oracle, const GbasOptions& options,
                            std::uint64_t seed) {
  if (options.target_successes < 1) throw InputError("target_successes must be at least 1");
  const unsigned workers = worker_count(options.threads);
  std::vector<BernoulliOracle> oracles;
  oracles.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) oracles.push_back(make_oracle());

  SplitEstimate est;
  est.seed = seed;
  est.estimator = options.estimator;
  double exp_sum = 0.0;
  const std::size_t batch = workers == 1 ? 256 : 1024 * static_cast<std::size_t>(workers);
  std::vector<char> outcome;

  while (est.successes < options.target_successes) {
    if (est.trials >= options.trial_cap) throw TrialCapExceeded(est.successes, est.trials);
    const std::uint64_t first = est.trials;
    const auto count = static_cast<std::size_t>(
        std::min<std::uint64_t>(batch, options.trial_cap - first));
    outcome.assign(count, 0);
    parallel_for(count, workers, [&](unsigned worker, std::size_t i) {
      outcome[i] = oracles[worker](derive_seed(seed, {first + i, 0})) ? 1 : 0;
    });
    // Stopping rule applied strictly in trial order.
    for (std::size_t i = 0; i < count && est.successes < options.target_successes; ++i) {
      ++est.trials;
      exp_sum += SplitMix64(derive_seed(seed, {first + i, 1})).exponential();
      if (outcome[i]) ++est.successes;
    }
  }
  est.p_hat_ratio = static_cast<double>(est.successes) / static_cast<double>(est.trials);
  est.p_hat_gbas = static_cast<double>(est.successes - 1) / exp_sum;
  est.p_hat = options.estimator == Estimator::gbas ? est.p_hat_gbas : est.p_hat_ratio;
  return est;
}

SplitEstimate gbas_estimate(const BernoulliOracle& oracle, const GbasOptions& options,
                            std::uint64_t seed) {
  GbasOptions sequential = options;
  sequential.threads = 1;
  return gbas_estimate([&oracle]() { return oracle; }, sequential, seed);
}

SplitEstimate estimate_splittability(const Graph& g, int k, std::optional<BalanceMode> mode,
                                     const GbasOptions& options, std::uint64_t seed,
                                     const std::string& label) {
  if (g.empty()) throw InputError("empty graph");
  const Graph component = largest_component(g);
  const std::size_t n = component.vertex_count();
  BalanceRule rule = BalanceRule::for_size(n, k);
  if (mode) rule.mode = *mode;
  rule.validate(n);

  auto factory = [&component, rule]() -> BernoulliOracle {
    auto sampler = std::make_shared<WilsonSampler>(component);
    auto checker = std::make_shared<SplitChecker>();
    return [sampler, checker, rule](std::uint64_t trial_seed) {
      return checker->splittable(sampler->sample(trial_seed), rule);
    };
  };
  SplitEstimate est = gbas_estimate(factory, options, seed);
  est.graph_label = label;
  est.n = n;
  est.k = k;
  return est;
}

}  // namespace dualgraph
