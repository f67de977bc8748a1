#include "dualgraph/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "dualgraph/error.hpp"
#include "dualgraph/models.hpp"
#include "dualgraph/parallel.hpp"
#include "dualgraph/planarity.hpp"
#include "dualgraph/rng.hpp"
#include "dualgraph/spanning.hpp"

namespace dualgraph {

RegressionFit loglog_fit(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 2) throw InputError("a log-log fit needs at least two samples");
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto [n, p] = samples[i];
    if (!(n > 0.0) || !(p > 0.0) || !std::isfinite(n) || !std::isfinite(p)) {
      throw InputError("sample " + std::to_string(i) + " (" + format_real(n) + ", " + format_real(p) +
                       ") is not positive");
    }
    xs.push_back(std::log(n));
    ys.push_back(std::log(p));
  }
  const auto count = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw InputError("a log-log fit needs at least two distinct n values");
  RegressionFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.n_points = xs.size();
  if (syy == 0.0) {
    fit.r_squared = 1.0;
  } else {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
      ss_res += r * r;
    }
    fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  }
  return fit;
}

// ---------------------------------------------------------------------------
// Config

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_integer(const std::string& text, const std::string& where) {
  T v{};
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw InputError(where + ": bad integer '" + text + "'");
  }
  return v;
}

std::vector<std::string> split_list(const std::string& text, const std::string& seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (seps.find(c) != std::string::npos) {
      if (!trim(cur).empty()) out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

void SweepConfig::validate() const {
  if (sizes.empty()) throw InputError("sweep config: sizes must not be empty");
  for (std::size_t n : sizes) {
    if (n == 0) throw InputError("sweep config: sizes must be positive");
  }
  if (seeds_per_size == 0) throw InputError("sweep config: seeds_per_size must be at least 1");
  if (k_values.empty()) throw InputError("sweep config: k_values must not be empty");
  for (int k : k_values) {
    if (k < 2) throw InputError("sweep config: every k must be at least 2");
  }
  if (target_successes < 2) throw InputError("sweep config: target_successes must be at least 2");
}

std::vector<std::string> SweepConfig::model_list() const {
  if (!models.empty()) return models;
  std::vector<std::string> out;
  for (const ModelSpec& spec : model_catalog()) out.push_back(spec.name);
  return out;
}

SweepConfig parse_sweep_config(const std::string& text, const std::string& source_name) {
  SweepConfig config;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const std::string where = source_name + ":" + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InputError(where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "models") {
      config.models = split_list(value, ";");
    } else if (key == "sizes") {
      config.sizes.clear();
      for (const auto& t : split_list(value, ", \t")) config.sizes.push_back(parse_integer<std::size_t>(t, where));
    } else if (key == "seeds_per_size") {
      config.seeds_per_size = parse_integer<std::size_t>(value, where);
    } else if (key == "k_values") {
      config.k_values.clear();
      for (const auto& t : split_list(value, ", \t")) config.k_values.push_back(parse_integer<int>(t, where));
    } else if (key == "target_successes") {
      config.target_successes = parse_integer<std::uint64_t>(value, where);
    } else if (key == "trial_cap") {
      config.trial_cap = parse_integer<std::uint64_t>(value, where);
    } else if (key == "master_seed") {
      config.master_seed = parse_integer<std::uint64_t>(value, where);
    } else if (key == "mode") {
      if (value == "auto") {
        config.mode.reset();
      } else {
        config.mode = parse_balance_mode(value);
      }
    } else if (key == "estimator") {
      config.estimator = parse_estimator(value);
    } else if (key == "threads") {
      config.threads = parse_integer<unsigned>(value, where);
    } else if (key == "data_dir") {
      config.data_dir = value;
    } else {
      throw InputError(where + ": unknown key '" + key + "'");
    }
  }
  config.validate();
  return config;
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
  return parse_sweep_config(read_text_file(path), path.string());
}

std::uint64_t instance_seed(std::uint64_t master_seed, const std::string& model_text, std::size_t n,
                            std::size_t index) {
  return derive_seed(master_seed, {fnv1a(model_text), n, index});
}

// ---------------------------------------------------------------------------
// Rows

const std::vector<std::string> kAnalyzeColumns{"graph",         "n",        "m",         "avg_degree",
                                               "median_degree", "max_degree", "connected", "planar",
                                               "ln_st",         "st_constant"};
const std::vector<std::string> kSplitColumns{"graph", "n",    "k",         "successes",   "trials",
                                             "p_hat", "seed", "estimator", "p_hat_ratio", "p_hat_gbas"};
const std::vector<std::string> kModelSweepColumns{"model",         "planar_rate", "connected_rate",
                                                  "avg_degree",    "median_degree", "max_degree",
                                                  "avg_st_constant", "instances", "errors"};
const std::vector<std::string> kStconstColumns{"model", "n", "ln_st", "st_constant", "seed"};
const std::vector<std::string> kFitColumns{"x", "y", "slope", "intercept_ln", "r_squared", "n_points"};

namespace {

Cell count_cell(std::size_t v) { return Cell(static_cast<std::int64_t>(v)); }

Cell u64_cell(std::uint64_t v) {
  // Seeds can exceed int64; keep their exact decimal form.
  return Cell(std::to_string(v));
}

}  // namespace

ResultRow analyze_row(const Graph& g, const std::string& label) {
  const DegreeStats stats = degree_stats(g);
  const bool connected = is_connected(g);
  const bool planar = is_planar(g, false).planar;
  const Graph lcc = connected ? g : largest_component(g);
  Cell ln_st;
  Cell st_constant;
  if (lcc.vertex_count() >= 1) {
    const SpanningProfile profile = spanning_profile(lcc);
    ln_st = profile.ln_count;
    st_constant = profile.st_constant;
  }
  return {{"graph", label},
          {"n", count_cell(g.vertex_count())},
          {"m", count_cell(g.edge_count())},
          {"avg_degree", stats.average},
          {"median_degree", stats.median},
          {"max_degree", stats.maximum},
          {"connected", connected},
          {"planar", planar},
          {"ln_st", ln_st},
          {"st_constant", st_constant}};
}

ResultRow split_row(const SplitEstimate& e) {
  return {{"graph", e.graph_label},
          {"n", count_cell(e.n)},
          {"k", Cell(static_cast<std::int64_t>(e.k))},
          {"successes", u64_cell(e.successes)},
          {"trials", u64_cell(e.trials)},
          {"p_hat", e.p_hat},
          {"seed", u64_cell(e.seed)},
          {"estimator", to_string(e.estimator)},
          {"p_hat_ratio", e.p_hat_ratio},
          {"p_hat_gbas", e.p_hat_gbas}};
}

ResultRow fit_row(const std::string& x, const std::string& y, const RegressionFit& fit) {
  return {{"x", x},
          {"y", y},
          {"slope", fit.slope},
          {"intercept_ln", fit.intercept},
          {"r_squared", fit.r_squared},
          {"n_points", count_cell(fit.n_points)}};
}

std::vector<std::pair<double, double>> csv_samples(const CsvTable& table, const std::string& x,
                                                   const std::string& y) {
  const std::size_t xi = table.column(x);
  const std::size_t yi = table.column(y);
  std::vector<std::pair<double, double>> out;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const std::string& xs = table.rows[r][xi];
    const std::string& ys = table.rows[r][yi];
    if (xs.empty() || ys.empty()) continue;
    double xv = 0.0;
    double yv = 0.0;
    auto rx = std::from_chars(xs.data(), xs.data() + xs.size(), xv);
    auto ry = std::from_chars(ys.data(), ys.data() + ys.size(), yv);
    if (rx.ec != std::errc() || rx.ptr != xs.data() + xs.size() || ry.ec != std::errc() ||
        ry.ptr != ys.data() + ys.size()) {
      throw InputError("CSV row " + std::to_string(r + 1) + ": non-numeric " + x + " or " + y);
    }
    out.emplace_back(xv, yv);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sweeps

namespace {

struct InstanceMetrics {
  bool ok = false;
  bool planar = false;
  bool connected = false;
  DegreeStats degrees;
  double st_constant = 0.0;
};

struct Cellref {
  std::size_t n;
  std::size_t index;
};

std::vector<Cellref> size_seed_cells(const SweepConfig& config) {
  std::vector<Cellref> cells;
  for (std::size_t n : config.sizes) {
    for (std::size_t s = 0; s < config.seeds_per_size; ++s) cells.push_back({n, s});
  }
  return cells;
}

}  // namespace

std::vector<ResultRow> model_sweep(const SweepConfig& config) {
  config.validate();
  std::vector<ModelSpec> specs;
  for (const std::string& m : config.model_list()) specs.push_back(resolve_model(m));
  const std::vector<Cellref> cells = size_seed_cells(config);

  std::vector<InstanceMetrics> metrics(specs.size() * cells.size());
  parallel_for(metrics.size(), worker_count(config.threads), [&](unsigned, std::size_t i) {
    const ModelSpec& spec = specs[i / cells.size()];
    const Cellref cell = cells[i % cells.size()];
    InstanceMetrics& out = metrics[i];
    try {
      const Graph g = build_model(spec, cell.n, instance_seed(config.master_seed, to_string(spec), cell.n, cell.index));
      out.degrees = degree_stats(g);
      out.connected = is_connected(g);
      out.planar = is_planar(g, false).planar;
      out.st_constant = spanning_tree_constant(out.connected ? g : largest_component(g));
      out.ok = true;
    } catch (const InputError&) {
      out.ok = false;
    } catch (const NumericalError&) {
      out.ok = false;
    }
  });

  std::vector<ResultRow> rows;
  for (std::size_t m = 0; m < specs.size(); ++m) {
    std::size_t ok = 0;
    double planar = 0.0, connected = 0.0, avg = 0.0, median = 0.0, max = 0.0, st = 0.0;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const InstanceMetrics& x = metrics[m * cells.size() + c];
      if (!x.ok) continue;
      ++ok;
      planar += x.planar ? 1.0 : 0.0;
      connected += x.connected ? 1.0 : 0.0;
      avg += x.degrees.average;
      median += x.degrees.median;
      max += x.degrees.maximum;
      st += x.st_constant;
    }
    auto mean = [ok](double total) { return ok == 0 ? Cell{} : Cell(total / static_cast<double>(ok)); };
    rows.push_back({{"model", to_string(specs[m])},
                    {"planar_rate", mean(planar)},
                    {"connected_rate", mean(connected)},
                    {"avg_degree", mean(avg)},
                    {"median_degree", mean(median)},
                    {"max_degree", mean(max)},
                    {"avg_st_constant", mean(st)},
                    {"instances", count_cell(cells.size())},
                    {"errors", count_cell(cells.size() - ok)}});
  }
  return rows;
}

std::vector<LabeledGraph> sweep_graphs(const SweepConfig& config) {
  config.validate();
  std::vector<LabeledGraph> out;
  if (config.data_dir) {
    std::vector<std::filesystem::path> files;
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(*config.data_dir, ec)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    }
    if (ec) throw InputError("cannot list " + config.data_dir->string() + ": " + ec.message());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) out.push_back({f.stem().string(), load_graph(f, GraphFormat::node_link)});
    return out;
  }
  std::vector<ModelSpec> specs;
  for (const std::string& m : config.model_list()) specs.push_back(resolve_model(m));
  const std::vector<Cellref> cells = size_seed_cells(config);
  out.resize(specs.size() * cells.size());
  parallel_for(out.size(), worker_count(config.threads), [&](unsigned, std::size_t i) {
    const ModelSpec& spec = specs[i / cells.size()];
    const Cellref cell = cells[i % cells.size()];
    out[i].label = spec.name + "/n=" + std::to_string(cell.n) + "/s=" + std::to_string(cell.index);
    out[i].graph = build_model(spec, cell.n, instance_seed(config.master_seed, to_string(spec), cell.n, cell.index));
  });
  return out;
}

SplitSweepResult splittability_sweep(const SweepConfig& config, const std::vector<LabeledGraph>& graphs) {
  config.validate();
  SplitSweepResult result;

  struct Task {
    std::size_t graph;
    int k;
  };
  std::vector<Task> tasks;
  std::vector<std::size_t> component_size(graphs.size());
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const Graph& g = graphs[gi].graph;
    const auto comps = connected_components(g);
    component_size[gi] = comps.components.empty() ? 0 : comps.components.front().size();
    for (int k : config.k_values) {
      if (component_size[gi] < 4 * static_cast<std::size_t>(k)) {
        result.excluded.emplace_back(graphs[gi].label, k);
      } else {
        tasks.push_back({gi, k});
      }
    }
  }

  struct Outcome {
    SplitEstimate estimate;
    bool exhausted = false;
  };
  std::vector<Outcome> outcomes(tasks.size());
  GbasOptions options;
  options.target_successes = config.target_successes;
  options.trial_cap = config.trial_cap;
  options.estimator = config.estimator;
  options.threads = 1;
  parallel_for(tasks.size(), worker_count(config.threads), [&](unsigned, std::size_t i) {
    const Task& t = tasks[i];
    const LabeledGraph& lg = graphs[t.graph];
    const std::uint64_t seed = derive_seed(config.master_seed, {fnv1a(lg.label), static_cast<std::uint64_t>(t.k)});
    try {
      outcomes[i].estimate = estimate_splittability(lg.graph, t.k, config.mode, options, seed, lg.label);
    } catch (const TrialCapExceeded& e) {
      SplitEstimate& est = outcomes[i].estimate;
      est.graph_label = lg.label;
      est.n = component_size[t.graph];
      est.k = t.k;
      est.successes = e.successes();
      est.trials = e.trials();
      est.seed = seed;
      est.estimator = config.estimator;
      outcomes[i].exhausted = true;
    }
  });

  std::map<int, std::vector<std::pair<double, double>>> samples;
  for (const Outcome& o : outcomes) {
    ResultRow row = split_row(o.estimate);
    if (o.exhausted) {
      ++result.cap_exhausted;
      for (auto& [name, cell] : row) {
        if (name == "p_hat" || name == "p_hat_ratio" || name == "p_hat_gbas") cell = Cell{};
      }
    } else if (o.estimate.p_hat > 0.0) {
      samples[o.estimate.k].emplace_back(static_cast<double>(o.estimate.n), o.estimate.p_hat);
    }
    result.rows.push_back(std::move(row));
  }
  for (int k : config.k_values) {
    auto& pts = samples[k];
    std::optional<RegressionFit> fit;
    try {
      if (pts.size() >= 2) fit = loglog_fit(pts);
    } catch (const InputError&) {
      fit.reset();
    }
    result.fits[k] = fit;
  }
  return result;
}

std::vector<ResultRow> spanning_constant_sweep(const SweepConfig& config) {
  config.validate();
  std::vector<ModelSpec> specs;
  for (const std::string& m : config.model_list()) specs.push_back(resolve_model(m));
  const std::vector<Cellref> cells = size_seed_cells(config);
  std::vector<ResultRow> rows(specs.size() * cells.size());
  parallel_for(rows.size(), worker_count(config.threads), [&](unsigned, std::size_t i) {
    const ModelSpec& spec = specs[i / cells.size()];
    const Cellref cell = cells[i % cells.size()];
    const std::string text = to_string(spec);
    const std::uint64_t seed = instance_seed(config.master_seed, text, cell.n, cell.index);
    const Graph g = build_model(spec, cell.n, seed);
    const Graph lcc = is_connected(g) ? g : largest_component(g);
    const SpanningProfile profile = spanning_profile(lcc);
    rows[i] = {{"model", text},
               {"n", count_cell(lcc.vertex_count())},
               {"ln_st", profile.ln_count},
               {"st_constant", profile.st_constant},
               {"seed", u64_cell(seed)}};
  });
  return rows;
}

}  // namespace dualgraph
