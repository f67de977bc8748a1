#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dualgraph/error.hpp"
#include "dualgraph/experiments.hpp"
#include "dualgraph/io.hpp"
#include "dualgraph/models.hpp"
#include "dualgraph/planarity.hpp"
#include "dualgraph/spanning.hpp"
#include "dualgraph/splitting.hpp"

namespace py = pybind11;
using namespace dualgraph;

namespace {

py::object id_to_py(const VertexId& id) {
  if (id.is_int()) return py::int_(id.as_int());
  return py::str(id.as_string());
}

VertexId id_from_py(const py::handle& h) {
  if (py::isinstance<py::bool_>(h)) throw InputError("vertex ids must be int or str");
  if (py::isinstance<py::int_>(h)) return VertexId(h.cast<std::int64_t>());
  if (py::isinstance<py::str>(h)) return VertexId(h.cast<std::string>());
  throw InputError("vertex ids must be int or str");
}

py::object cell_to_py(const Cell& c) {
  return std::visit(
      [](const auto& v) -> py::object {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) return py::none();
        else return py::cast(v);
      },
      c);
}

py::dict row_to_dict(const ResultRow& row) {
  py::dict d;
  for (const auto& [key, value] : row) d[py::str(key)] = cell_to_py(value);
  return d;
}

GraphFormat format_arg(const std::optional<std::string>& format, const std::string& path) {
  return format ? parse_graph_format(*format) : guess_graph_format(path);
}

}  // namespace

PYBIND11_MODULE(_dualgraph, m) {
  m.doc() = "Dual-graph statistics: models, spanning trees, planarity, splittability";

  auto input_error = py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  auto numerical_error = py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);
  py::register_exception<TrialCapExceeded>(m, "TrialCapExceeded", numerical_error.ptr());
  (void)input_error;

  py::class_<Graph>(m, "Graph")
      .def(py::init([](py::iterable ids, py::iterable edges, std::optional<std::vector<std::pair<double, double>>> coords) {
             std::vector<VertexId> vs;
             for (auto h : ids) vs.push_back(id_from_py(h));
             std::vector<std::pair<VertexId, VertexId>> es;
             for (auto h : edges) {
               auto pair = h.cast<py::tuple>();
               if (pair.size() != 2) throw InputError("edges must be pairs");
               es.emplace_back(id_from_py(pair[0]), id_from_py(pair[1]));
             }
             std::optional<std::vector<Point>> pts;
             if (coords) {
               pts.emplace();
               for (const auto& [x, y] : *coords) pts->push_back({x, y});
             }
             return Graph::from_ids(std::move(vs), es, std::move(pts));
           }),
           py::arg("ids"), py::arg("edges"), py::arg("coords") = py::none())
      .def_property_readonly("vertex_count", &Graph::vertex_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def_property_readonly("ids", [](const Graph& g) {
        py::list out;
        for (const VertexId& id : g.ids()) out.append(id_to_py(id));
        return out;
      })
      .def_property_readonly("edges", [](const Graph& g) {
        py::list out;
        for (const Edge& e : g.edges()) out.append(py::make_tuple(id_to_py(g.id(e.u)), id_to_py(g.id(e.v))));
        return out;
      })
      .def_property_readonly("coords", [](const Graph& g) -> py::object {
        if (!g.has_coords()) return py::none();
        py::list out;
        for (const Point& p : g.coords()) out.append(py::make_tuple(p.x, p.y));
        return out;
      })
      .def("degree", [](const Graph& g, const py::handle& id) {
        const auto v = g.index_of(id_from_py(id));
        if (!v) throw InputError("unknown vertex");
        return g.degree(*v);
      })
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
      .def("__repr__", [](const Graph& g) {
        return "<Graph vertices=" + std::to_string(g.vertex_count()) + " edges=" + std::to_string(g.edge_count()) + ">";
      });

  m.def("load_graph", [](const std::string& path, std::optional<std::string> format) {
    return load_graph(path, format_arg(format, path));
  }, py::arg("path"), py::arg("format") = py::none());
  m.def("save_graph", [](const Graph& g, const std::string& path, std::optional<std::string> format) {
    save_graph(g, path, format_arg(format, path));
  }, py::arg("graph"), py::arg("path"), py::arg("format") = py::none());
  m.def("parse_node_link", [](const std::string& text) { return parse_node_link(text); });
  m.def("format_node_link", &format_node_link);

  m.def("square_grid", &square_grid, py::arg("rows"), py::arg("cols"));
  m.def("triangular_grid", &triangular_grid, py::arg("rows"), py::arg("cols"));
  m.def("perturbed_grid", &perturbed_grid, py::arg("rows"), py::arg("cols"), py::arg("p"), py::arg("seed"));
  m.def("generate", [](const std::string& model, std::size_t n, std::uint64_t seed) {
    return build_model(resolve_model(model), n, seed);
  }, py::arg("model"), py::arg("n"), py::arg("seed"));
  m.def("model_catalog", [] {
    std::vector<std::string> out;
    for (const ModelSpec& spec : model_catalog()) out.push_back(to_string(spec));
    return out;
  });
  m.def("largest_component", &largest_component);
  m.def("is_connected", &is_connected);

  m.def("log_spanning_tree_count", &log_spanning_tree_count);
  m.def("spanning_tree_constant", &spanning_tree_constant);
  m.def("is_planar", [](const Graph& g) { return is_planar(g, false).planar; });
  m.def("analyze", [](const Graph& g, const std::string& label) { return row_to_dict(analyze_row(g, label)); },
        py::arg("graph"), py::arg("label") = "");

  m.def("estimate_splittability",
        [](const Graph& g, int k, std::uint64_t seed, std::uint64_t target_successes, std::optional<std::string> mode,
           const std::string& estimator, std::uint64_t trial_cap, unsigned threads) {
          GbasOptions options;
          options.target_successes = target_successes;
          options.trial_cap = trial_cap;
          options.estimator = parse_estimator(estimator);
          options.threads = threads;
          std::optional<BalanceMode> m;
          if (mode) m = parse_balance_mode(*mode);
          SplitEstimate e;
          {
            py::gil_scoped_release release;
            e = estimate_splittability(g, k, m, options, seed);
          }
          return row_to_dict(split_row(e));
        },
        py::arg("graph"), py::arg("k"), py::arg("seed"), py::arg("target_successes") = kDefaultTargetSuccesses,
        py::arg("mode") = py::none(), py::arg("estimator") = "both", py::arg("trial_cap") = 100'000'000,
        py::arg("threads") = 0);
  m.def("splittable_fraction_exact", [](const Graph& g, int k, const std::string& mode) {
    const Fraction f = splittable_fraction_exact(g, BalanceRule{k, parse_balance_mode(mode)});
    return py::make_tuple(f.numerator, f.denominator);
  }, py::arg("graph"), py::arg("k"), py::arg("mode") = "exact");

  m.def("loglog_fit", [](const std::vector<std::pair<double, double>>& samples) {
    const RegressionFit f = loglog_fit(samples);
    py::dict d;
    d["slope"] = f.slope;
    d["intercept_ln"] = f.intercept;
    d["r_squared"] = f.r_squared;
    d["n_points"] = f.n_points;
    return d;
  });
}
