#include "dualgraph/models.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <tuple>

#include "dualgraph/error.hpp"
#include "dualgraph/geometry.hpp"
#include "dualgraph/rng.hpp"

namespace dualgraph {

namespace {

Point lattice_point(std::size_t r, std::size_t c, std::size_t rows, std::size_t cols) {
  const double scale = static_cast<double>(std::max<std::size_t>({rows - 1, cols - 1, 1}));
  return {static_cast<double>(c) / scale, static_cast<double>(r) / scale};
}

struct Lattice {
  std::vector<Edge> edges;
  std::vector<Point> coords;
};

Lattice square_lattice(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw InputError("grid dimensions must be positive");
  Lattice lat;
  lat.coords.reserve(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      lat.coords.push_back(lattice_point(r, c, rows, cols));
      const auto v = static_cast<std::uint32_t>(r * cols + c);
      if (c + 1 < cols) lat.edges.push_back({v, v + 1});
      if (r + 1 < rows) lat.edges.push_back({v, static_cast<std::uint32_t>(v + cols)});
    }
  }
  return lat;
}

}  // namespace

Graph square_grid(std::size_t rows, std::size_t cols) {
  Lattice lat = square_lattice(rows, cols);
  return Graph::from_indices(rows * cols, std::move(lat.edges), std::move(lat.coords));
}

Graph triangular_grid(std::size_t rows, std::size_t cols) {
  if (rows < 2 || cols < 2) throw InputError("triangular grid needs at least 2 rows and 2 columns");
  Lattice lat = square_lattice(rows, cols);
  for (std::size_t r = 0; r + 1 < rows; ++r) {
    for (std::size_t c = 0; c + 1 < cols; ++c) {
      const auto v = static_cast<std::uint32_t>(r * cols + c);
      lat.edges.push_back({v, static_cast<std::uint32_t>(v + cols + 1)});
    }
  }
  return Graph::from_indices(rows * cols, std::move(lat.edges), std::move(lat.coords));
}

Graph perturbed_grid(std::size_t rows, std::size_t cols, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("diagonal probability must lie in [0, 1]");
  Lattice lat = square_lattice(rows, cols);
  SplitMix64 rng(seed);
  for (std::size_t r = 0; r + 1 < rows; ++r) {
    for (std::size_t c = 0; c + 1 < cols; ++c) {
      // Both draws happen for every cell so the stream layout does not depend on p.
      const bool add = rng.bernoulli(p);
      const bool rising = rng.bernoulli(0.5);
      if (!add) continue;
      const auto v = static_cast<std::uint32_t>(r * cols + c);
      const auto cols32 = static_cast<std::uint32_t>(cols);
      if (rising) {
        lat.edges.push_back({v, v + cols32 + 1});
      } else {
        lat.edges.push_back({v + 1, v + cols32});
      }
    }
  }
  return Graph::from_indices(rows * cols, std::move(lat.edges), std::move(lat.coords));
}

namespace {

std::size_t count_rule(double factor, std::size_t n) {
  return static_cast<std::size_t>(std::floor(factor * static_cast<double>(n) + 1e-9));
}

double squared_distance(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Mutable edge set over a fixed vertex set, backed by a dense bit matrix.
class WorkGraph {
 public:
  WorkGraph(std::size_t n, std::optional<std::vector<Point>> coords)
      : n_(n), words_per_row_((n + 63) / 64), bits_(n * words_per_row_, 0), coords_(std::move(coords)) {}

  std::size_t size() const noexcept { return n_; }

  bool has(std::uint32_t a, std::uint32_t b) const noexcept {
    return (bits_[a * words_per_row_ + b / 64] >> (b % 64)) & 1U;
  }
  void set(std::uint32_t a, std::uint32_t b, bool on) noexcept {
    auto flip = [&](std::uint32_t x, std::uint32_t y) {
      auto& w = bits_[x * words_per_row_ + y / 64];
      const std::uint64_t mask = std::uint64_t{1} << (y % 64);
      w = on ? (w | mask) : (w & ~mask);
    };
    flip(a, b);
    flip(b, a);
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (std::uint32_t u = 0; u < n_; ++u) {
      for (std::uint32_t v = u + 1; v < n_; ++v) {
        if (has(u, v)) out.push_back({u, v});
      }
    }
    return out;
  }

  const std::vector<Point>& coords(const char* stage_name) const {
    if (!coords_) {
      throw InputError(std::string("stage ") + stage_name + " needs vertex coordinates");
    }
    return *coords_;
  }

  const std::optional<std::vector<Point>>& maybe_coords() const noexcept { return coords_; }

 private:
  std::size_t n_;
  std::size_t words_per_row_;
  std::vector<std::uint64_t> bits_;
  std::optional<std::vector<Point>> coords_;
};

void run_stage(WorkGraph& g, const stage::Delaunay&, SplitMix64&) {
  const auto& pts = g.coords("delaunay");
  Triangulation tri = delaunay(pts);
  for (const Edge& e : tri.graph.edges()) g.set(e.u, e.v, true);
}

void run_stage(WorkGraph& g, const stage::AddShortest& s, SplitMix64&) {
  const auto& pts = g.coords("add_shortest");
  const std::size_t n = g.size();
  const std::size_t budget = count_rule(s.factor, n);
  if (budget == 0) return;
  std::vector<std::tuple<double, std::uint32_t, std::uint32_t>> absent;
  absent.reserve(n * (n - 1) / 2);
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = u + 1; v < n; ++v) {
      if (!g.has(u, v)) absent.emplace_back(squared_distance(pts[u], pts[v]), u, v);
    }
  }
  if (budget < absent.size()) {
    std::nth_element(absent.begin(), absent.begin() + static_cast<std::ptrdiff_t>(budget), absent.end());
    absent.resize(budget);
  }
  for (const auto& [d, u, v] : absent) g.set(u, v, true);
}

void run_stage(WorkGraph& g, const stage::RemoveLongest& s, SplitMix64&) {
  const auto& pts = g.coords("remove_longest");
  const std::size_t budget = count_rule(s.factor, g.size());
  if (budget == 0) return;
  std::vector<std::tuple<double, std::uint32_t, std::uint32_t>> present;
  for (const Edge& e : g.edges()) present.emplace_back(-squared_distance(pts[e.u], pts[e.v]), e.u, e.v);
  if (budget < present.size()) {
    std::nth_element(present.begin(), present.begin() + static_cast<std::ptrdiff_t>(budget), present.end());
    present.resize(budget);
  }
  for (const auto& [d, u, v] : present) g.set(u, v, false);
}

void run_stage(WorkGraph& g, const stage::RemoveRandom& s, SplitMix64& rng) {
  for (const Edge& e : g.edges()) {
    if (rng.bernoulli(s.prob)) g.set(e.u, e.v, false);
  }
}

void run_stage(WorkGraph& g, const stage::AddRandom& s, SplitMix64& rng) {
  const std::size_t n = g.size();
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = u + 1; v < n; ++v) {
      if (!g.has(u, v) && rng.bernoulli(s.prob)) g.set(u, v, true);
    }
  }
}

void run_stage(WorkGraph& g, const stage::AddDistanceProb& s, SplitMix64& rng) {
  const auto& pts = g.coords("add_distance_prob");
  const double base = s.base ? *s.base : tune_distance_base(pts, s.target_degree);
  const double log_base = std::log(base);
  const std::size_t n = g.size();
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = u + 1; v < n; ++v) {
      if (g.has(u, v)) continue;
      const double p = std::exp(-log_base * std::sqrt(squared_distance(pts[u], pts[v])));
      if (rng.bernoulli(p)) g.set(u, v, true);
    }
  }
}

void run_stage(WorkGraph& g, const stage::AddPreferential& s, SplitMix64& rng) {
  const std::size_t budget = count_rule(s.scale, g.size());
  // One entry per edge endpoint: a uniform pick is a degree-proportional pick.
  std::vector<std::uint32_t> endpoints;
  for (const Edge& e : g.edges()) {
    endpoints.push_back(e.u);
    endpoints.push_back(e.v);
  }
  if (endpoints.empty()) return;
  constexpr int kAttempts = 100;
  for (std::size_t i = 0; i < budget; ++i) {
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
      const auto a = endpoints[rng.below(endpoints.size())];
      const auto b = endpoints[rng.below(endpoints.size())];
      if (a == b || g.has(a, b)) continue;
      g.set(a, b, true);
      endpoints.push_back(a);
      endpoints.push_back(b);
      break;
    }
  }
}

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError(std::string(what) + " must lie in [0, 1]");
}

void check_nonnegative(double v, const char* what) {
  if (!(v >= 0.0) || !std::isfinite(v)) throw InputError(std::string(what) + " must be nonnegative");
}

void validate_stage(const Stage& st) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, stage::AddShortest>) check_nonnegative(s.factor, "add_shortest factor");
        if constexpr (std::is_same_v<T, stage::RemoveLongest>) check_nonnegative(s.factor, "remove_longest factor");
        if constexpr (std::is_same_v<T, stage::RemoveRandom>) check_probability(s.prob, "remove_random probability");
        if constexpr (std::is_same_v<T, stage::AddRandom>) check_probability(s.prob, "add_random probability");
        if constexpr (std::is_same_v<T, stage::AddPreferential>) check_nonnegative(s.scale, "add_preferential scale");
        if constexpr (std::is_same_v<T, stage::AddDistanceProb>) {
          if (s.base && !(*s.base > 1.0)) throw InputError("add_distance_prob base must exceed 1");
          if (!(s.target_degree > 0.0)) throw InputError("add_distance_prob target degree must be positive");
        }
      },
      st);
}

Graph finish(WorkGraph& work, Postprocess post) {
  Graph g = Graph::from_indices(work.size(), work.edges(), work.maybe_coords());
  if (post == Postprocess::largest_component && !g.empty()) return largest_component(g);
  return g;
}

void run_stages(WorkGraph& work, const std::vector<Stage>& stages, std::uint64_t seed) {
  for (std::size_t i = 0; i < stages.size(); ++i) {
    SplitMix64 rng(derive_seed(seed, {0x5747, i}));
    std::visit([&](const auto& s) { run_stage(work, s, rng); }, stages[i]);
  }
}

}  // namespace

void ModelSpec::validate() const {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, source::PerturbedGrid>) check_probability(s.diag_prob, "diagonal probability");
        if constexpr (!std::is_same_v<T, source::PointCloud>) {
          if ((s.rows == 0) != (s.cols == 0)) throw InputError("grid needs both rows and cols");
        }
      },
      source);
  for (const Stage& st : stages) validate_stage(st);
}

Graph apply_stages(const Graph& g, const std::vector<Stage>& stages, std::uint64_t seed) {
  for (const Stage& st : stages) validate_stage(st);
  std::optional<std::vector<Point>> coords;
  if (g.has_coords()) coords.emplace(g.coords().begin(), g.coords().end());
  WorkGraph work(g.vertex_count(), std::move(coords));
  for (const Edge& e : g.edges()) work.set(e.u, e.v, true);
  run_stages(work, stages, seed);
  return g.with_edges(work.edges());
}

Graph build_model(const ModelSpec& spec, std::size_t n, std::uint64_t seed) {
  spec.validate();
  auto grid_dims = [n](std::size_t rows, std::size_t cols, std::size_t min_side) {
    if (rows == 0) {
      rows = cols = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n)) + 1e-9));
    }
    if (rows < min_side || cols < min_side) throw InputError("grid is too small");
    return std::pair(rows, cols);
  };
  Graph base = std::visit(
      [&](const auto& s) -> Graph {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, source::Grid>) {
          auto [r, c] = grid_dims(s.rows, s.cols, 1);
          return square_grid(r, c);
        } else if constexpr (std::is_same_v<T, source::TriangularGrid>) {
          auto [r, c] = grid_dims(s.rows, s.cols, 2);
          return triangular_grid(r, c);
        } else if constexpr (std::is_same_v<T, source::PerturbedGrid>) {
          auto [r, c] = grid_dims(s.rows, s.cols, 1);
          return perturbed_grid(r, c, s.diag_prob, seed);
        } else {
          if (n == 0) throw InputError("point cloud needs at least one point");
          return Graph::from_indices(n, {}, random_point_cloud(n, seed).points);
        }
      },
      spec.source);
  if (spec.stages.empty()) {
    if (spec.postprocess == Postprocess::largest_component) return largest_component(base);
    return base;
  }
  std::optional<std::vector<Point>> coords(std::vector<Point>(base.coords().begin(), base.coords().end()));
  WorkGraph work(base.vertex_count(), std::move(coords));
  for (const Edge& e : base.edges()) work.set(e.u, e.v, true);
  run_stages(work, spec.stages, seed);
  return finish(work, spec.postprocess);
}

// ---------------------------------------------------------------------------
// Textual form

namespace {

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_number(const std::string& text, const std::string& context) {
  double v = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    throw InputError("bad number '" + text + "' in " + context);
  }
  return v;
}

std::size_t parse_count(const std::string& text, const std::string& context) {
  std::size_t v = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw InputError("bad integer '" + text + "' in " + context);
  }
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

// "name(a,b)" -> ("name", {"a", "b"}); "name" -> ("name", {}).
std::pair<std::string, std::vector<std::string>> parse_call(const std::string& token) {
  const auto open = token.find('(');
  if (open == std::string::npos) return {trim(token), {}};
  if (token.back() != ')') throw InputError("unbalanced parentheses in '" + token + "'");
  const std::string inner = trim(token.substr(open + 1, token.size() - open - 2));
  std::vector<std::string> args;
  if (!inner.empty()) args = split(inner, ',');
  return {trim(token.substr(0, open)), args};
}

void expect_args(const std::string& name, const std::vector<std::string>& args, std::size_t lo,
                 std::size_t hi) {
  if (args.size() < lo || args.size() > hi) {
    throw InputError("wrong number of arguments to " + name);
  }
}

Source parse_source(const std::string& token) {
  auto [name, args] = parse_call(token);
  if (name == "point_cloud") {
    expect_args(name, args, 0, 0);
    return source::PointCloud{};
  }
  if (name == "grid" || name == "triangular_grid") {
    if (args.size() != 0 && args.size() != 2) throw InputError("wrong number of arguments to " + name);
    std::size_t r = 0, c = 0;
    if (args.size() == 2) {
      r = parse_count(args[0], name);
      c = parse_count(args[1], name);
      if (r == 0 || c == 0) throw InputError(name + " dimensions must be positive");
    }
    if (name == "grid") return source::Grid{r, c};
    return source::TriangularGrid{r, c};
  }
  if (name == "perturbed_grid") {
    source::PerturbedGrid g;
    if (args.size() == 1) {
      g.diag_prob = parse_number(args[0], name);
    } else if (args.size() == 3) {
      g.rows = parse_count(args[0], name);
      g.cols = parse_count(args[1], name);
      g.diag_prob = parse_number(args[2], name);
      if (g.rows == 0 || g.cols == 0) throw InputError(name + " dimensions must be positive");
    } else if (!args.empty()) {
      throw InputError("wrong number of arguments to " + name);
    }
    return g;
  }
  throw InputError("unknown model source '" + name + "'");
}

Stage parse_stage(const std::string& token) {
  auto [name, args] = parse_call(token);
  auto one = [&]() {
    expect_args(name, args, 1, 1);
    return parse_number(args[0], name);
  };
  if (name == "delaunay") {
    expect_args(name, args, 0, 0);
    return stage::Delaunay{};
  }
  if (name == "add_shortest") return stage::AddShortest{one()};
  if (name == "remove_longest") return stage::RemoveLongest{one()};
  if (name == "remove_random") return stage::RemoveRandom{one()};
  if (name == "add_random") return stage::AddRandom{one()};
  if (name == "add_preferential") return stage::AddPreferential{one()};
  if (name == "add_distance_prob") {
    expect_args(name, args, 0, 1);
    stage::AddDistanceProb s;
    if (!args.empty()) {
      const std::string& a = args[0];
      if (a == "auto") {
        // tuned to the default target
      } else if (a.rfind("auto:", 0) == 0) {
        s.target_degree = parse_number(a.substr(5), name);
      } else {
        s.base = parse_number(a, name);
      }
    }
    return s;
  }
  throw InputError("unknown model stage '" + name + "'");
}

std::string source_text(const Source& src) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, source::PointCloud>) {
          return "point_cloud";
        } else if constexpr (std::is_same_v<T, source::PerturbedGrid>) {
          if (s.rows == 0) return "perturbed_grid(" + format_number(s.diag_prob) + ")";
          return "perturbed_grid(" + std::to_string(s.rows) + "," + std::to_string(s.cols) + "," +
                 format_number(s.diag_prob) + ")";
        } else {
          const std::string name = std::is_same_v<T, source::Grid> ? "grid" : "triangular_grid";
          if (s.rows == 0) return name;
          return name + "(" + std::to_string(s.rows) + "," + std::to_string(s.cols) + ")";
        }
      },
      src);
}

std::string stage_text(const Stage& st) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, stage::Delaunay>) return "delaunay";
        if constexpr (std::is_same_v<T, stage::AddShortest>) return "add_shortest(" + format_number(s.factor) + ")";
        if constexpr (std::is_same_v<T, stage::RemoveLongest>) return "remove_longest(" + format_number(s.factor) + ")";
        if constexpr (std::is_same_v<T, stage::RemoveRandom>) return "remove_random(" + format_number(s.prob) + ")";
        if constexpr (std::is_same_v<T, stage::AddRandom>) return "add_random(" + format_number(s.prob) + ")";
        if constexpr (std::is_same_v<T, stage::AddPreferential>) return "add_preferential(" + format_number(s.scale) + ")";
        if constexpr (std::is_same_v<T, stage::AddDistanceProb>) {
          if (s.base) return "add_distance_prob(" + format_number(*s.base) + ")";
          return "add_distance_prob(auto:" + format_number(s.target_degree) + ")";
        }
        return "";
      },
      st);
}

}  // namespace

std::string to_string(const ModelSpec& spec) {
  std::string out = spec.name + ":" + source_text(spec.source);
  for (const Stage& st : spec.stages) out += "|" + stage_text(st);
  out += spec.postprocess == Postprocess::largest_component ? "|largest_component" : "|none";
  return out;
}

ModelSpec parse_model_spec(const std::string& text) {
  std::string body = trim(text);
  ModelSpec spec;
  spec.name = "custom";
  const auto colon = body.find(':');
  const auto paren = body.find('(');
  const auto bar = body.find('|');
  if (colon != std::string::npos && (paren == std::string::npos || colon < paren) &&
      (bar == std::string::npos || colon < bar)) {
    spec.name = trim(body.substr(0, colon));
    body = body.substr(colon + 1);
    if (spec.name.empty()) throw InputError("empty model name");
  }
  auto tokens = split(body, '|');
  if (tokens.empty() || tokens.front().empty()) throw InputError("model spec has no source");
  spec.source = parse_source(tokens.front());
  std::size_t last = tokens.size();
  if (tokens.size() > 1) {
    if (tokens.back() == "none") {
      --last;
    } else if (tokens.back() == "largest_component") {
      spec.postprocess = Postprocess::largest_component;
      --last;
    }
  }
  for (std::size_t i = 1; i < last; ++i) {
    if (tokens[i].empty()) throw InputError("empty stage in model spec");
    spec.stages.push_back(parse_stage(tokens[i]));
  }
  spec.validate();
  return spec;
}

const std::vector<ModelSpec>& model_catalog() {
  static const std::vector<ModelSpec> catalog = [] {
    const char* texts[] = {
        "1:point_cloud|add_distance_prob(auto:5.4)|none",
        "2:point_cloud|add_shortest(2.7)|largest_component",
        "3:point_cloud|delaunay|none",
        "4:point_cloud|delaunay|remove_random(0.2)|largest_component",
        "4b:point_cloud|delaunay|remove_random(0.4)|largest_component",
        "5:point_cloud|delaunay|remove_random(0.2)|add_random(0.05)|largest_component",
        "5b:point_cloud|delaunay|remove_random(0.4)|add_random(0.05)|largest_component",
        "6:point_cloud|delaunay|add_shortest(1)|largest_component",
        "7:point_cloud|delaunay|add_shortest(1)|remove_longest(1)|largest_component",
        "8:point_cloud|delaunay|remove_random(0.05)|add_preferential(0.3)|largest_component",
        "9:point_cloud|delaunay|remove_random(0.2)|add_shortest(1)|largest_component",
        "9b:point_cloud|delaunay|remove_random(0.4)|add_shortest(1)|largest_component",
        "10:point_cloud|delaunay|add_shortest(1)|remove_random(0.2)|largest_component",
        "10b:point_cloud|delaunay|add_shortest(1)|remove_random(0.4)|largest_component",
        "11:point_cloud|add_shortest(3.4)|remove_random(0.2)|largest_component",
        "11b:point_cloud|add_shortest(4.5)|remove_random(0.4)|largest_component",
        "11c:point_cloud|add_shortest(7)|remove_random(0.6)|largest_component",
        "12:point_cloud|delaunay|add_preferential(0.5)|remove_random(0.14)|largest_component",
    };
    std::vector<ModelSpec> out;
    for (const char* t : texts) out.push_back(parse_model_spec(t));
    return out;
  }();
  return catalog;
}

std::optional<ModelSpec> find_preset(const std::string& name) {
  for (const ModelSpec& spec : model_catalog()) {
    if (spec.name == name) return spec;
  }
  return std::nullopt;
}

ModelSpec resolve_model(const std::string& preset_or_spec) {
  if (auto preset = find_preset(trim(preset_or_spec))) return *preset;
  return parse_model_spec(preset_or_spec);
}

// ---------------------------------------------------------------------------
// Distance-probability tuning

namespace {

double expected_degree_from_distances(const std::vector<double>& distances, std::size_t n,
                                      double log_base) {
  double sum = 0.0;
  for (double d : distances) sum += std::exp(-log_base * d);
  return 2.0 * sum / static_cast<double>(n);
}

}  // namespace

double expected_average_degree(const std::vector<Point>& points, double base) {
  const std::size_t n = points.size();
  if (n == 0) return 0.0;
  const double log_base = std::log(base);
  double sum = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      sum += std::exp(-log_base * std::sqrt(squared_distance(points[u], points[v])));
    }
  }
  return 2.0 * sum / static_cast<double>(n);
}

double tune_distance_base(const std::vector<Point>& points, double target) {
  const std::size_t n = points.size();
  if (!(target > 0.0) || !(target < static_cast<double>(n) - 1.0)) {
    throw InputError("target average degree must lie in (0, n - 1)");
  }
  std::vector<double> distances;
  distances.reserve(n * (n - 1) / 2);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      distances.push_back(std::sqrt(squared_distance(points[u], points[v])));
    }
  }
  // The expected degree decreases in the base; search over ln(base).
  constexpr double kMaxLogBase = 700.0;
  double lo = 0.0;
  double hi = kMaxLogBase;
  if (expected_degree_from_distances(distances, n, hi) > target) {
    throw NumericalError("no distance base up to e^700 brings the expected degree down to target");
  }
  constexpr double kTolerance = 0.05;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double f = expected_degree_from_distances(distances, n, mid);
    if (std::abs(f - target) <= kTolerance) return std::exp(mid);
    (f > target ? lo : hi) = mid;
  }
  throw NumericalError("distance base bisection did not converge");
}

double tune_model1_base(std::size_t n, double target_avg_degree, std::uint64_t seed) {
  if (n < 2) throw InputError("tuning needs at least two points");
  return tune_distance_base(random_point_cloud(n, seed).points, target_avg_degree);
}

}  // namespace dualgraph
