#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dualgraph/graph.hpp"
#include "dualgraph/io.hpp"
#include "dualgraph/splitting.hpp"

namespace dualgraph {

struct RegressionFit {
  double slope = 0.0;
  /// Natural-log units: ln p = slope * ln n + intercept.
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t n_points = 0;
};

/// Ordinary least squares of ln p on ln n. Throws InputError for fewer than
/// two samples, any nonpositive sample (naming it), or all-equal n.
RegressionFit loglog_fit(const std::vector<std::pair<double, double>>& samples);

/// Sweep parameters. Config files are `key = value` lines with '#' comments:
///
///   models = 3; 2; 11c            # presets or textual specs, ';'-separated
///   sizes = 100, 250, 500         # ',' or whitespace separated
///   seeds_per_size = 10
///   k_values = 2, 3
///   target_successes = 178
///   trial_cap = 100000000
///   master_seed = 1
///   mode = auto                   # auto | exact | near
///   estimator = both              # ratio | gbas | both
///   threads = 0                   # 0 = automatic
///   data_dir = path               # split sweep: node-link graphs to use
///                                 # instead of generated models
///
/// Missing keys keep their defaults.
struct SweepConfig {
  std::vector<std::string> models;
  std::vector<std::size_t> sizes{100, 250, 500, 1000, 2500};
  std::size_t seeds_per_size = 10;
  std::vector<int> k_values{2};
  std::uint64_t target_successes = kDefaultTargetSuccesses;
  std::uint64_t trial_cap = 100'000'000;
  std::uint64_t master_seed = 0;
  std::optional<BalanceMode> mode;
  Estimator estimator = Estimator::both;
  unsigned threads = 0;
  std::optional<std::filesystem::path> data_dir;

  /// Throws InputError on empty or nonpositive sizes, seeds_per_size == 0,
  /// or k < 2.
  void validate() const;
  /// models, or the whole preset catalog when empty.
  std::vector<std::string> model_list() const;
};

SweepConfig parse_sweep_config(const std::string& text, const std::string& source_name = "<string>");
SweepConfig load_sweep_config(const std::filesystem::path& path);

/// Seed of instance `index` of `model` at size n: derived from the master
/// seed and a stable hash of the model's textual form.
std::uint64_t instance_seed(std::uint64_t master_seed, const std::string& model_text, std::size_t n,
                            std::size_t index);

extern const std::vector<std::string> kAnalyzeColumns;
extern const std::vector<std::string> kSplitColumns;
extern const std::vector<std::string> kModelSweepColumns;
extern const std::vector<std::string> kStconstColumns;
extern const std::vector<std::string> kFitColumns;

/// analyze row. ln_st and st_constant refer to the largest component.
ResultRow analyze_row(const Graph& g, const std::string& label);

ResultRow split_row(const SplitEstimate& e);

/// One row per model, in config order. Per-instance failures are counted in
/// the `errors` column and left out of the averages.
std::vector<ResultRow> model_sweep(const SweepConfig& config);

struct LabeledGraph {
  std::string label;
  Graph graph;
};

/// Instances for the split sweep: every model x size x seed, labelled
/// `<model name>/n=<n>/s=<index>`; or, when data_dir is set, every .json file
/// there in name order, labelled by file stem.
std::vector<LabeledGraph> sweep_graphs(const SweepConfig& config);

struct SplitSweepResult {
  /// One row per (graph, k) that was estimated, in graph order then k order.
  /// p_hat is empty when the trial cap ran out.
  std::vector<ResultRow> rows;
  /// Fit per k over (n, p_hat); absent when fewer than two usable points.
  std::map<int, std::optional<RegressionFit>> fits;
  /// Graphs skipped because n < 4k, as (label, k).
  std::vector<std::pair<std::string, int>> excluded;
  std::size_t cap_exhausted = 0;
};

SplitSweepResult splittability_sweep(const SweepConfig& config, const std::vector<LabeledGraph>& graphs);

/// Rows {model, n, ln_st, st_constant, seed}, one per instance, computed on
/// the largest component (n is that component's size).
std::vector<ResultRow> spanning_constant_sweep(const SweepConfig& config);

ResultRow fit_row(const std::string& x, const std::string& y, const RegressionFit& fit);

/// Reads (x, y) columns from CSV rows, skipping rows where either is empty.
std::vector<std::pair<double, double>> csv_samples(const CsvTable& table, const std::string& x,
                                                   const std::string& y);

}  // namespace dualgraph
