// dualgraph command-line front end.
//
// Exit codes: 0 success, 2 input error, 3 numerical error or trial cap.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "dualgraph/error.hpp"
#include "dualgraph/experiments.hpp"
#include "dualgraph/io.hpp"
#include "dualgraph/models.hpp"
#include "dualgraph/splitting.hpp"

namespace fs = std::filesystem;
using namespace dualgraph;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    write_text_file(out, text);
  }
}

GraphFormat format_for(const std::string& flag, const fs::path& path) {
  return flag.empty() ? guess_graph_format(path) : parse_graph_format(flag);
}

struct AnalyzeArgs {
  std::string graph;
  std::string format;
  std::string out;
  std::string label;
};

void run_analyze(const AnalyzeArgs& a) {
  const Graph g = load_graph(a.graph, format_for(a.format, a.graph));
  const std::string label = a.label.empty() ? fs::path(a.graph).stem().string() : a.label;
  emit(format_rows(kAnalyzeColumns, {analyze_row(g, label)}), a.out);
}

struct GenerateArgs {
  std::string model;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::string format;
};

void run_generate(const GenerateArgs& a) {
  const Graph g = build_model(resolve_model(a.model), a.n, a.seed);
  const GraphFormat f = a.format.empty() ? (a.out.empty() || a.out == "-" ? GraphFormat::node_link
                                                                          : guess_graph_format(a.out))
                                         : parse_graph_format(a.format);
  emit(f == GraphFormat::node_link ? format_node_link(g) : format_edge_list(g), a.out);
}

struct SplitArgs {
  std::string graph;
  std::string format;
  std::string model;
  std::size_t n = 0;
  int k = 2;
  std::uint64_t successes = kDefaultTargetSuccesses;
  std::string mode;
  std::string estimator = "both";
  std::uint64_t seed = 0;
  std::uint64_t trial_cap = 100'000'000;
  unsigned threads = 0;
  std::string out;
};

void run_split(const SplitArgs& a) {
  if (a.graph.empty() == a.model.empty()) throw InputError("give exactly one of --graph or --model");
  Graph g;
  std::string label;
  if (!a.graph.empty()) {
    g = load_graph(a.graph, format_for(a.format, a.graph));
    label = fs::path(a.graph).stem().string();
  } else {
    if (a.n == 0) throw InputError("--model needs -n");
    const ModelSpec spec = resolve_model(a.model);
    g = build_model(spec, a.n, a.seed);
    label = spec.name + "/n=" + std::to_string(a.n);
  }
  GbasOptions options;
  options.target_successes = a.successes;
  options.trial_cap = a.trial_cap;
  options.estimator = parse_estimator(a.estimator);
  options.threads = a.threads;
  std::optional<BalanceMode> mode;
  if (!a.mode.empty()) mode = parse_balance_mode(a.mode);
  const SplitEstimate e = estimate_splittability(g, a.k, mode, options, a.seed, label);
  emit(format_rows(kSplitColumns, {split_row(e)}), a.out);
}

struct SweepArgs {
  std::string config;
  std::string out;
  std::string fit_out;
};

void run_sweep_models(const SweepArgs& a) {
  const SweepConfig config = load_sweep_config(a.config);
  emit(format_rows(kModelSweepColumns, model_sweep(config)), a.out);
}

void run_sweep_split(const SweepArgs& a) {
  const SweepConfig config = load_sweep_config(a.config);
  const SplitSweepResult result = splittability_sweep(config, sweep_graphs(config));
  emit(format_rows(kSplitColumns, result.rows), a.out);
  for (const auto& [label, k] : result.excluded) {
    std::cerr << "excluded " << label << " for k=" << k << " (fewer than " << 4 * k << " vertices)\n";
  }
  if (result.cap_exhausted > 0) {
    std::cerr << result.cap_exhausted << " estimate(s) hit the trial cap and were left out of the fits\n";
  }
  std::vector<ResultRow> fits;
  for (const auto& [k, fit] : result.fits) {
    if (!fit) {
      std::cerr << "k=" << k << ": not enough usable points for a fit\n";
      continue;
    }
    fits.push_back(fit_row("n", "p_hat[k=" + std::to_string(k) + "]", *fit));
  }
  const std::string fit_text = format_rows(kFitColumns, fits);
  if (!a.fit_out.empty()) {
    emit(fit_text, a.fit_out);
  } else {
    std::cerr << fit_text;
  }
}

void run_sweep_stconst(const SweepArgs& a) {
  const SweepConfig config = load_sweep_config(a.config);
  emit(format_rows(kStconstColumns, spanning_constant_sweep(config)), a.out);
}

struct FitArgs {
  std::string csv;
  std::string x = "n";
  std::string y = "p_hat";
  std::string out;
};

void run_fit(const FitArgs& a) {
  const RegressionFit fit = loglog_fit(csv_samples(read_csv(a.csv), a.x, a.y));
  std::cout << "slope=" << format_real(fit.slope) << " intercept_ln=" << format_real(fit.intercept)
            << " r_squared=" << format_real(fit.r_squared) << " n_points=" << fit.n_points << "\n";
  if (a.out.empty()) return;
  const std::string text = format_rows(kFitColumns, {fit_row(a.x, a.y, fit)});
  if (fs::exists(a.out) && fs::file_size(a.out) > 0) {
    // Append the data line only; the header is already there.
    const CsvTable existing = read_csv(a.out);
    if (existing.header != kFitColumns) throw InputError(a.out + " is not a fit CSV");
    write_text_file(a.out, read_text_file(a.out) + text.substr(text.find('\n') + 1));
  } else {
    write_text_file(a.out, text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual-graph statistics: generation, spanning trees, planarity, splittability"};
  app.require_subcommand(1);

  AnalyzeArgs analyze;
  auto* cmd_analyze = app.add_subcommand("analyze", "Degree, connectivity, planarity and spanning-tree statistics");
  cmd_analyze->add_option("graph", analyze.graph, "Graph file")->required();
  cmd_analyze->add_option("--format", analyze.format, "node-link or edge-list (default: by extension)");
  cmd_analyze->add_option("--out", analyze.out, "CSV output (default: stdout)");
  cmd_analyze->add_option("--label", analyze.label, "Value of the graph column (default: file stem)");

  GenerateArgs generate;
  auto* cmd_generate = app.add_subcommand("generate", "Generate a model graph");
  cmd_generate->add_option("--model", generate.model, "Preset name or textual model spec")->required();
  cmd_generate->add_option("-n", generate.n, "Vertex count")->required();
  cmd_generate->add_option("--seed", generate.seed, "Seed")->required();
  cmd_generate->add_option("-o,--out", generate.out, "Output path (default: stdout)");
  cmd_generate->add_option("--format", generate.format, "node-link or edge-list");

  SplitArgs split;
  auto* cmd_split = app.add_subcommand("split", "Estimate the k-splittability probability");
  cmd_split->add_option("--graph", split.graph, "Graph file");
  cmd_split->add_option("--format", split.format, "node-link or edge-list (default: by extension)");
  cmd_split->add_option("--model", split.model, "Preset name or textual model spec");
  cmd_split->add_option("-n", split.n, "Vertex count for --model");
  cmd_split->add_option("-k", split.k, "Number of parts")->required();
  cmd_split->add_option("--successes", split.successes, "Target success count");
  cmd_split->add_option("--mode", split.mode, "exact or near (default: exact when k divides n)");
  cmd_split->add_option("--estimator", split.estimator, "ratio, gbas or both");
  cmd_split->add_option("--seed", split.seed, "Seed")->required();
  cmd_split->add_option("--trial-cap", split.trial_cap, "Maximum number of trials");
  cmd_split->add_option("--threads", split.threads, "Worker threads (0 = automatic)");
  cmd_split->add_option("--out", split.out, "CSV output (default: stdout)");

  SweepArgs sweep;
  auto* cmd_sweep = app.add_subcommand("sweep", "Batch experiments driven by a config file");
  cmd_sweep->require_subcommand(1);
  auto add_sweep = [&](const char* name, const char* help) {
    auto* sub = cmd_sweep->add_subcommand(name, help);
    sub->add_option("--config", sweep.config, "Config file")->required();
    sub->add_option("--out", sweep.out, "CSV output (default: stdout)");
    return sub;
  };
  auto* sweep_models = add_sweep("models", "Model evaluation table");
  auto* sweep_split = add_sweep("split", "Splittability estimates and log-log fits");
  sweep_split->add_option("--fit-out", sweep.fit_out, "CSV for the per-k fits (default: stderr)");
  auto* sweep_stconst = add_sweep("stconst", "Spanning tree constants per instance");

  FitArgs fit;
  auto* cmd_fit = app.add_subcommand("fit", "Log-log least squares over two CSV columns");
  cmd_fit->add_option("csv", fit.csv, "Input CSV")->required();
  cmd_fit->add_option("--x", fit.x, "Column for n");
  cmd_fit->add_option("--y", fit.y, "Column for p");
  cmd_fit->add_option("--out", fit.out, "Append the fit to this CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*cmd_analyze) run_analyze(analyze);
    else if (*cmd_generate) run_generate(generate);
    else if (*cmd_split) run_split(split);
    else if (*sweep_models) run_sweep_models(sweep);
    else if (*sweep_split) run_sweep_split(sweep);
    else if (*sweep_stconst) run_sweep_stconst(sweep);
    else if (*cmd_fit) run_fit(fit);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return 0;
}
