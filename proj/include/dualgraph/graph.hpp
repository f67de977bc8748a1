#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace dualgraph {

/// Opaque, totally ordered vertex identifier. Integers sort numerically and
/// before all strings; strings sort lexicographically.
class VertexId {
 public:
  VertexId() = default;
  VertexId(std::int64_t v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  VertexId(int v) : value_(static_cast<std::int64_t>(v)) {}  // NOLINT
  VertexId(std::string v) : value_(std::move(v)) {}  // NOLINT
  VertexId(const char* v) : value_(std::string(v)) {}  // NOLINT

  bool is_int() const noexcept { return std::holds_alternative<std::int64_t>(value_); }
  std::int64_t as_int() const { return std::get<std::int64_t>(value_); }
  const std::string& as_string() const { return std::get<std::string>(value_); }
  std::string to_string() const;

  friend bool operator==(const VertexId&, const VertexId&) = default;
  friend std::strong_ordering operator<=>(const VertexId& a, const VertexId& b);

 private:
  std::variant<std::int64_t, std::string> value_{std::int64_t{0}};
};

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

/// Undirected edge between two vertex indices, normalized so that u < v.
struct Edge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(std::uint32_t a, std::uint32_t b) noexcept {
  return a < b ? Edge{a, b} : Edge{b, a};
}

/// Immutable simple undirected graph.
///
/// Vertices are stored in ascending id order and addressed by their dense
/// index in that order, so index order and id order coincide. Adjacency lists
/// are sorted, and the edge list is sorted lexicographically by (u, v). Every
/// traversal in the library therefore follows id order, which is what makes
/// the seeded random processes reproducible.
class Graph {
 public:
  Graph() = default;

  /// Vertices 0..n-1 with integer ids equal to their index. Duplicate edges
  /// are collapsed; self-loops and out-of-range endpoints throw InputError.
  static Graph from_indices(std::size_t n, std::vector<Edge> edges,
                            std::optional<std::vector<Point>> coords = std::nullopt);

  /// General construction from arbitrary ids. `coords`, when present, is
  /// parallel to `ids`. Duplicate ids, self-loops, and dangling endpoints throw.
  static Graph from_ids(std::vector<VertexId> ids,
                        const std::vector<std::pair<VertexId, VertexId>>& edges,
                        std::optional<std::vector<Point>> coords = std::nullopt);

  std::size_t vertex_count() const noexcept { return ids_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return ids_.empty(); }

  std::span<const std::uint32_t> neighbors(std::uint32_t v) const noexcept {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(std::uint32_t v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(std::uint32_t a, std::uint32_t b) const noexcept;

  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const VertexId> ids() const noexcept { return ids_; }
  const VertexId& id(std::uint32_t v) const noexcept { return ids_[v]; }
  std::optional<std::uint32_t> index_of(const VertexId& id) const;

  bool has_coords() const noexcept { return coords_.has_value(); }
  /// Throws InputError when the graph carries no coordinates.
  std::span<const Point> coords() const;

  /// Subgraph induced by the given vertex indices (any order, no duplicates).
  /// Ids and coordinates are carried over.
  Graph induced(std::span<const std::uint32_t> vertices) const;

  /// Same vertex set and coordinates, different edge set.
  Graph with_edges(std::vector<Edge> edges) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void build_adjacency();

  std::vector<VertexId> ids_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::uint32_t> adjacency_;
  std::optional<std::vector<Point>> coords_;
};

struct DegreeStats {
  double average = 0.0;
  double median = 0.0;
  double maximum = 0.0;
};

/// Average, median (mean of the two middle values for even |V|), and maximum
/// degree. Throws InputError("empty graph") on a graph without vertices.
DegreeStats degree_stats(const Graph& g);

/// Components as vertex-index lists (each sorted ascending), ordered by size
/// descending with ties broken by smallest contained id.
struct ComponentDecomposition {
  std::vector<std::vector<std::uint32_t>> components;

  bool connected() const noexcept { return components.size() == 1; }
  std::vector<std::size_t> sizes() const;
};

ComponentDecomposition connected_components(const Graph& g);

bool is_connected(const Graph& g);

/// Induced subgraph on the first component of connected_components(g).
Graph largest_component(const Graph& g);

}  // namespace dualgraph
