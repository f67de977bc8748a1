#pragma once

#include <cstdint>
#include <vector>

#include "dualgraph/graph.hpp"

namespace dualgraph {

/// Spanning tree of a host graph, stored as a rooted parent array over the
/// host's vertex indices. parent[root] == root.
struct SpanningTree {
  std::uint32_t root = 0;
  std::vector<std::uint32_t> parent;
  /// Vertices ordered so that every parent precedes its children.
  std::vector<std::uint32_t> order;

  std::size_t vertex_count() const noexcept { return parent.size(); }
  /// The n-1 tree edges, sorted.
  std::vector<Edge> edges() const;

  /// Builds the rooted form from an unordered edge list. Throws InputError if
  /// the edges do not form a spanning tree on `n` vertices.
  static SpanningTree from_edges(std::size_t n, const std::vector<Edge>& edges,
                                 std::uint32_t root = 0);
};

/// True when `tree` has |V|-1 edges, all present in `host`, and connects every
/// host vertex.
bool is_spanning_tree_of(const Graph& host, const SpanningTree& tree);

/// Natural log of the number of spanning trees (matrix-tree theorem). The
/// reduced Laplacian drops vertex index 0 and is factored symmetrically with
/// pivots accumulated in log space; small graphs use a dense Cholesky, larger
/// ones a sparse LDL^T with a fill-reducing ordering.
///
/// Throws InputError("no spanning trees") for disconnected or empty graphs and
/// NumericalError("graph numerically disconnected") on a non-positive pivot.
double log_spanning_tree_count(const Graph& g);

/// log_spanning_tree_count(g) / |V(g)|.
double spanning_tree_constant(const Graph& g);

struct SpanningProfile {
  double ln_count = 0.0;
  double st_constant = 0.0;
};

SpanningProfile spanning_profile(const Graph& g);

/// Vertex count at or below which the dense factorization is used.
inline constexpr std::size_t kDenseLogDetLimit = 300;

/// Dense-path and sparse-path entry points, exposed so tests can check that
/// both routes agree.
double log_det_reduced_laplacian_dense(const Graph& g);
double log_det_reduced_laplacian_sparse(const Graph& g);

/// Uniform spanning tree by Wilson's algorithm (loop-erased random walks to a
/// growing tree rooted at `root`). Walks start from vertices in index order;
/// walk j draws its steps from a generator keyed by (seed, j).
/// Throws InputError if g is disconnected or empty.
SpanningTree wilson_ust(const Graph& g, std::uint64_t seed, std::uint32_t root = 0);

/// Scratch-reusing sampler for hot loops. Same output as wilson_ust for the
/// same (graph, seed, root); the graph must outlive the sampler.
class WilsonSampler {
 public:
  explicit WilsonSampler(const Graph& g);

  const SpanningTree& sample(std::uint64_t seed, std::uint32_t root = 0);

 private:
  const Graph* graph_;
  SpanningTree tree_;
  std::vector<std::uint32_t> next_;
  std::vector<char> in_tree_;
  std::vector<std::uint32_t> path_;
};

}  // namespace dualgraph
