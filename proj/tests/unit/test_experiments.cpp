#include "doctest.h"

#include <cmath>
#include <filesystem>

#include "dualgraph/error.hpp"
#include "dualgraph/experiments.hpp"
#include "dualgraph/io.hpp"
#include "dualgraph/models.hpp"
#include "oracles.hpp"

using namespace dualgraph;
namespace fs = std::filesystem;

namespace {

const Cell& cell(const ResultRow& row, const std::string& name) {
  for (const auto& [key, value] : row) {
    if (key == name) return value;
  }
  FAIL("missing column " << name);
  static const Cell none;
  return none;
}

std::vector<std::string> names(const ResultRow& row) {
  std::vector<std::string> out;
  for (const auto& [key, value] : row) out.push_back(key);
  return out;
}

}  // namespace

TEST_CASE("log-log fit") {
  std::vector<std::pair<double, double>> exact;
  for (double n : {10.0, 50.0, 100.0, 1000.0}) exact.emplace_back(n, 4.0 / n);
  const RegressionFit f = loglog_fit(exact);
  CHECK(f.slope == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(f.intercept == doctest::Approx(std::log(4.0)).epsilon(1e-12));
  CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.n_points == 4);

  // Rescaling p shifts only the intercept.
  std::vector<std::pair<double, double>> noisy{{10, 0.5}, {20, 0.3}, {40, 0.1}, {80, 0.07}, {160, 0.02}};
  const RegressionFit a = loglog_fit(noisy);
  for (auto& [n, p] : noisy) p *= 7.5;
  const RegressionFit b = loglog_fit(noisy);
  CHECK(b.slope == doctest::Approx(a.slope).epsilon(1e-12));
  CHECK(b.intercept - a.intercept == doctest::Approx(std::log(7.5)).epsilon(1e-12));
  CHECK(b.r_squared == doctest::Approx(a.r_squared).epsilon(1e-12));
  CHECK(a.r_squared > 0.0);
  CHECK(a.r_squared < 1.0);

  CHECK_THROWS_AS(loglog_fit({{10, 0.5}}), InputError);
  CHECK_THROWS_WITH_AS(loglog_fit({{10, 0.5}, {20, 0.0}}), doctest::Contains("20"), InputError);
  CHECK_THROWS_AS(loglog_fit({{-1, 0.5}, {20, 0.1}}), InputError);
  CHECK_THROWS_AS(loglog_fit({{10, 0.5}, {10, 0.1}}), InputError);
}

TEST_CASE("config parsing") {
  const SweepConfig c = parse_sweep_config(
      "# sweep\nmodels = 3; x:point_cloud|delaunay ; 11c\nsizes = 64, 128 256\nseeds_per_size = 3\n"
      "k_values = 2,3\ntarget_successes = 50\ntrial_cap = 1000\nmaster_seed = 18446744073709551615\n"
      "mode = near\nestimator = gbas\nthreads = 2\n");
  CHECK(c.models == std::vector<std::string>{"3", "x:point_cloud|delaunay", "11c"});
  CHECK(c.sizes == std::vector<std::size_t>{64, 128, 256});
  CHECK(c.seeds_per_size == 3);
  CHECK(c.k_values == std::vector<int>{2, 3});
  CHECK(c.target_successes == 50);
  CHECK(c.trial_cap == 1000);
  CHECK(c.master_seed == 18446744073709551615ULL);
  CHECK(c.mode == BalanceMode::near);
  CHECK(c.estimator == Estimator::gbas);
  CHECK(c.threads == 2);

  const SweepConfig d = parse_sweep_config("");
  CHECK(d.model_list().size() == 18);
  CHECK(d.sizes == std::vector<std::size_t>{100, 250, 500, 1000, 2500});
  CHECK(d.target_successes == 178);
  CHECK_FALSE(d.mode.has_value());

  CHECK_THROWS_WITH_AS(parse_sweep_config("sizes = 10\ncolour = red\n", "c.cfg"), doctest::Contains("c.cfg:2"),
                       InputError);
  CHECK_THROWS_AS(parse_sweep_config("sizes = 0"), InputError);
  CHECK_THROWS_AS(parse_sweep_config("sizes = ten"), InputError);
  CHECK_THROWS_AS(parse_sweep_config("seeds_per_size = 0"), InputError);
  CHECK_THROWS_AS(parse_sweep_config("k_values = 1"), InputError);
  CHECK_THROWS_AS(parse_sweep_config("no equals sign"), InputError);
  CHECK_THROWS_AS(load_sweep_config("/nonexistent/sweep.cfg"), InputError);
}

TEST_CASE("instance seeds") {
  CHECK(instance_seed(1, "a", 100, 0) == instance_seed(1, "a", 100, 0));
  CHECK(instance_seed(1, "a", 100, 0) != instance_seed(1, "a", 100, 1));
  CHECK(instance_seed(1, "a", 100, 0) != instance_seed(1, "b", 100, 0));
  CHECK(instance_seed(1, "a", 100, 0) != instance_seed(1, "a", 101, 0));
  CHECK(instance_seed(1, "a", 100, 0) != instance_seed(2, "a", 100, 0));
}

TEST_CASE("analyze rows") {
  const ResultRow grid = analyze_row(square_grid(3, 3), "g");
  CHECK(names(grid) == kAnalyzeColumns);
  CHECK(std::get<std::int64_t>(cell(grid, "m")) == 12);
  CHECK(std::get<double>(cell(grid, "ln_st")) == doctest::Approx(std::log(192.0)));
  CHECK(std::get<bool>(cell(grid, "planar")));

  std::mt19937_64 rng(1);
  const ResultRow tree = analyze_row(oracle::random_tree(20, rng), "t");
  CHECK(std::abs(std::get<double>(cell(tree, "st_constant"))) < 1e-12);

  // Disconnected: spanning values refer to the largest component.
  const ResultRow split = analyze_row(Graph::from_indices(7, {Edge{0, 1}, Edge{1, 2}, Edge{0, 2}, Edge{4, 5}}), "d");
  CHECK_FALSE(std::get<bool>(cell(split, "connected")));
  CHECK(std::get<double>(cell(split, "ln_st")) == doctest::Approx(std::log(3.0)));
  CHECK_FALSE(std::get<bool>(cell(analyze_row(oracle::complete_graph(5), "k5"), "planar")));
}

TEST_CASE("degenerate model sweep gives one row") {
  SweepConfig c;
  c.models = {"3"};
  c.sizes = {60};
  c.seeds_per_size = 1;
  c.master_seed = 5;
  const auto rows = model_sweep(c);
  REQUIRE(rows.size() == 1);
  CHECK(names(rows[0]) == kModelSweepColumns);
  CHECK(std::get<std::string>(cell(rows[0], "model")) == to_string(*find_preset("3")));
  CHECK(std::get<double>(cell(rows[0], "planar_rate")) == 1.0);
  CHECK(std::get<std::int64_t>(cell(rows[0], "instances")) == 1);
  CHECK(std::get<std::int64_t>(cell(rows[0], "errors")) == 0);
}

TEST_CASE("model sweep counts failed instances") {
  SweepConfig c;
  c.models = {"3", "x:grid(1,1)|delaunay"};
  c.sizes = {30};
  c.seeds_per_size = 2;
  const auto rows = model_sweep(c);
  REQUIRE(rows.size() == 2);
  // instances counts attempts, errors the failed ones.
  CHECK(std::get<std::int64_t>(cell(rows[1], "errors")) == 2);
  CHECK(std::get<std::int64_t>(cell(rows[1], "instances")) == 2);
  CHECK(std::holds_alternative<std::monostate>(cell(rows[1], "avg_degree")));
}

TEST_CASE("sweeps are byte-identical across runs and thread counts") {
  SweepConfig c;
  c.models = {"3", "11c"};
  c.sizes = {40, 80};
  c.seeds_per_size = 2;
  c.k_values = {2, 3};
  c.target_successes = 20;
  c.master_seed = 77;
  c.threads = 1;
  const std::string models = format_rows(kModelSweepColumns, model_sweep(c));
  const std::string stconst = format_rows(kStconstColumns, spanning_constant_sweep(c));
  const auto graphs = sweep_graphs(c);
  CHECK(graphs.size() == 8);
  CHECK(graphs.front().label == "3/n=40/s=0");
  const SplitSweepResult split = splittability_sweep(c, graphs);
  const std::string split_text = format_rows(kSplitColumns, split.rows);
  CHECK(split.rows.size() == 16);
  REQUIRE(split.fits.count(2) == 1);
  CHECK(split.fits.at(2).has_value());

  c.threads = 3;
  CHECK(format_rows(kModelSweepColumns, model_sweep(c)) == models);
  CHECK(format_rows(kStconstColumns, spanning_constant_sweep(c)) == stconst);
  CHECK(format_rows(kSplitColumns, splittability_sweep(c, sweep_graphs(c)).rows) == split_text);
}

TEST_CASE("split sweep exclusions and exhausted budgets") {
  SweepConfig c;
  c.k_values = {2, 3};
  c.target_successes = 10;
  c.trial_cap = 200;
  std::vector<LabeledGraph> graphs;
  graphs.push_back({"small", oracle::cycle_graph(10)});
  graphs.push_back({"star", Graph::from_indices(13, [] {
                      std::vector<Edge> e;
                      for (std::uint32_t v = 1; v < 13; ++v) e.push_back({0, v});
                      return e;
                    }())});
  const SplitSweepResult r = splittability_sweep(c, graphs);
  // C10 is too small for k = 3 (10 < 12).
  CHECK(r.excluded == std::vector<std::pair<std::string, int>>{{"small", 3}});
  CHECK(r.cap_exhausted == 2);
  REQUIRE(r.rows.size() == 3);
  CHECK(std::holds_alternative<std::monostate>(cell(r.rows[1], "p_hat")));
  CHECK_FALSE(r.fits.at(2).has_value());
}

TEST_CASE("split sweep over a data directory") {
  const fs::path dir = fs::temp_directory_path() / "dualgraph_sweep_data";
  fs::remove_all(dir);
  fs::create_directories(dir);
  save_graph(square_grid(4, 4), dir / "b.json", GraphFormat::node_link);
  save_graph(square_grid(6, 6), dir / "a.json", GraphFormat::node_link);
  write_text_file(dir / "notes.txt", "ignored");
  SweepConfig c;
  c.data_dir = dir;
  c.target_successes = 20;
  const auto graphs = sweep_graphs(c);
  REQUIRE(graphs.size() == 2);
  CHECK(graphs[0].label == "a");
  CHECK(graphs[0].graph.vertex_count() == 36);
  fs::remove_all(dir);
}

TEST_CASE("fit rows and CSV samples") {
  const CsvTable t = parse_csv("n,p_hat\n10,0.4\n20,\n40,0.1\n");
  const auto samples = csv_samples(t, "n", "p_hat");
  REQUIRE(samples.size() == 2);
  const ResultRow row = fit_row("n", "p_hat", loglog_fit(samples));
  CHECK(names(row) == kFitColumns);
  CHECK(std::get<double>(cell(row, "slope")) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(csv_samples(t, "n", "q"), InputError);
  CHECK_THROWS_AS(csv_samples(parse_csv("n,p\nx,1\n"), "n", "p"), InputError);
}
