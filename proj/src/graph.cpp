#include "dualgraph/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "dualgraph/error.hpp"

namespace dualgraph {

std::string VertexId::to_string() const {
  if (is_int()) return std::to_string(as_int());
  return as_string();
}

std::strong_ordering operator<=>(const VertexId& a, const VertexId& b) {
  if (a.is_int() != b.is_int()) {
    return a.is_int() ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (a.is_int()) return a.as_int() <=> b.as_int();
  return a.as_string().compare(b.as_string()) <=> 0;
}

namespace {

void normalize_edges(std::vector<Edge>& edges, std::size_t n) {
  for (Edge& e : edges) {
    if (e.u == e.v) {
      throw InputError("self-loop at vertex index " + std::to_string(e.u));
    }
    if (e.u >= n || e.v >= n) {
      throw InputError("edge endpoint out of range");
    }
    e = make_edge(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

}  // namespace

Graph Graph::from_indices(std::size_t n, std::vector<Edge> edges,
                          std::optional<std::vector<Point>> coords) {
  if (coords && coords->size() != n) {
    throw InputError("coordinate count does not match vertex count");
  }
  Graph g;
  g.ids_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) g.ids_.emplace_back(static_cast<std::int64_t>(i));
  normalize_edges(edges, n);
  g.edges_ = std::move(edges);
  g.coords_ = std::move(coords);
  g.build_adjacency();
  return g;
}

Graph Graph::from_ids(std::vector<VertexId> ids,
                      const std::vector<std::pair<VertexId, VertexId>>& edges,
                      std::optional<std::vector<Point>> coords) {
  if (coords && coords->size() != ids.size()) {
    throw InputError("coordinate count does not match vertex count");
  }
  std::vector<std::uint32_t> order(ids.size());
  std::iota(order.begin(), order.end(), 0U);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return ids[a] < ids[b]; });

  Graph g;
  g.ids_.reserve(ids.size());
  std::optional<std::vector<Point>> sorted_coords;
  if (coords) sorted_coords.emplace().reserve(ids.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0 && ids[order[i]] == ids[order[i - 1]]) {
      throw InputError("duplicate vertex id " + ids[order[i]].to_string());
    }
    g.ids_.push_back(ids[order[i]]);
    if (coords) sorted_coords->push_back((*coords)[order[i]]);
  }

  std::vector<Edge> indexed;
  indexed.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    auto ia = g.index_of(a);
    if (!ia) throw InputError("edge references unknown vertex id " + a.to_string());
    auto ib = g.index_of(b);
    if (!ib) throw InputError("edge references unknown vertex id " + b.to_string());
    if (*ia == *ib) throw InputError("self-loop at vertex id " + a.to_string());
    indexed.push_back(make_edge(*ia, *ib));
  }
  normalize_edges(indexed, g.ids_.size());
  g.edges_ = std::move(indexed);
  g.coords_ = std::move(sorted_coords);
  g.build_adjacency();
  return g;
}

void Graph::build_adjacency() {
  const std::size_t n = ids_.size();
  offsets_.assign(n + 1, 0);
  for (const Edge& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  adjacency_.assign(2 * edges_.size(), 0);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  // Edges are sorted by (u, v), so each list fills in ascending order except
  // for the back-references, which are also ascending in u.
  for (const Edge& e : edges_) adjacency_[cursor[e.v]++] = e.u;
  for (const Edge& e : edges_) adjacency_[cursor[e.u]++] = e.v;
}

bool Graph::has_edge(std::uint32_t a, std::uint32_t b) const noexcept {
  auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::optional<std::uint32_t> Graph::index_of(const VertexId& id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || !(*it == id)) return std::nullopt;
  return static_cast<std::uint32_t>(it - ids_.begin());
}

std::span<const Point> Graph::coords() const {
  if (!coords_) throw InputError("graph has no vertex coordinates");
  return *coords_;
}

Graph Graph::induced(std::span<const std::uint32_t> vertices) const {
  std::vector<std::uint32_t> sorted(vertices.begin(), vertices.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::int64_t> remap(ids_.size(), -1);
  for (std::size_t i = 0; i < sorted.size(); ++i) remap[sorted[i]] = static_cast<std::int64_t>(i);

  Graph g;
  g.ids_.reserve(sorted.size());
  if (coords_) g.coords_.emplace().reserve(sorted.size());
  for (auto v : sorted) {
    g.ids_.push_back(ids_[v]);
    if (coords_) g.coords_->push_back((*coords_)[v]);
  }
  for (const Edge& e : edges_) {
    if (remap[e.u] >= 0 && remap[e.v] >= 0) {
      g.edges_.push_back({static_cast<std::uint32_t>(remap[e.u]), static_cast<std::uint32_t>(remap[e.v])});
    }
  }
  g.build_adjacency();
  return g;
}

Graph Graph::with_edges(std::vector<Edge> edges) const {
  Graph g;
  g.ids_ = ids_;
  g.coords_ = coords_;
  normalize_edges(edges, ids_.size());
  g.edges_ = std::move(edges);
  g.build_adjacency();
  return g;
}

DegreeStats degree_stats(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) throw InputError("empty graph");
  std::vector<std::size_t> degrees(n);
  for (std::uint32_t v = 0; v < n; ++v) degrees[v] = g.degree(v);
  std::sort(degrees.begin(), degrees.end());
  DegreeStats s;
  s.average = 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(n);
  s.median = n % 2 == 1 ? static_cast<double>(degrees[n / 2])
                        : 0.5 * static_cast<double>(degrees[n / 2 - 1] + degrees[n / 2]);
  s.maximum = static_cast<double>(degrees.back());
  return s;
}

std::vector<std::size_t> ComponentDecomposition::sizes() const {
  std::vector<std::size_t> out;
  out.reserve(components.size());
  for (const auto& c : components) out.push_back(c.size());
  return out;
}

ComponentDecomposition connected_components(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<bool> seen(n, false);
  ComponentDecomposition result;
  std::vector<std::uint32_t> stack;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::uint32_t> comp;
    seen[s] = true;
    stack.push_back(s);
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (auto w : g.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    result.components.push_back(std::move(comp));
  }
  // Components were discovered in order of their smallest index, so a stable
  // sort by size gives the smallest-id tie-break.
  std::stable_sort(result.components.begin(), result.components.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  return result;
}

bool is_connected(const Graph& g) {
  return g.vertex_count() > 0 && connected_components(g).connected();
}

Graph largest_component(const Graph& g) {
  if (g.empty()) throw InputError("empty graph");
  auto comps = connected_components(g);
  if (comps.components.front().size() == g.vertex_count()) return g;
  return g.induced(comps.components.front());
}

}  // namespace dualgraph
