#include "dualgraph/spanning.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <limits>

#include "dualgraph/error.hpp"
#include "dualgraph/rng.hpp"

namespace dualgraph {

std::vector<Edge> SpanningTree::edges() const {
  std::vector<Edge> out;
  out.reserve(parent.empty() ? 0 : parent.size() - 1);
  for (std::uint32_t v = 0; v < parent.size(); ++v) {
    if (v != root) out.push_back(make_edge(v, parent[v]));
  }
  std::sort(out.begin(), out.end());
  return out;
}

SpanningTree SpanningTree::from_edges(std::size_t n, const std::vector<Edge>& edges,
                                      std::uint32_t root) {
  if (n == 0 || root >= n) throw InputError("invalid tree root");
  if (edges.size() + 1 != n) throw InputError("a spanning tree on n vertices has n-1 edges");
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n || e.u == e.v) throw InputError("invalid tree edge");
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  SpanningTree t;
  t.root = root;
  t.parent.assign(n, std::numeric_limits<std::uint32_t>::max());
  t.parent[root] = root;
  t.order.reserve(n);
  t.order.push_back(root);
  for (std::size_t head = 0; head < t.order.size(); ++head) {
    auto v = t.order[head];
    for (auto w : adj[v]) {
      if (t.parent[w] == std::numeric_limits<std::uint32_t>::max()) {
        t.parent[w] = v;
        t.order.push_back(w);
      }
    }
  }
  if (t.order.size() != n) throw InputError("edges do not connect all vertices");
  return t;
}

bool is_spanning_tree_of(const Graph& host, const SpanningTree& tree) {
  const std::size_t n = host.vertex_count();
  if (n == 0 || tree.parent.size() != n || tree.order.size() != n) return false;
  if (tree.root >= n || tree.parent[tree.root] != tree.root) return false;
  // Every vertex must reach the root through host edges without revisiting.
  std::vector<char> position_seen(n, 0);
  std::vector<std::size_t> rank(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    auto v = tree.order[i];
    if (v >= n || position_seen[v]) return false;
    position_seen[v] = 1;
    rank[v] = i;
  }
  if (tree.order.front() != tree.root) return false;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (v == tree.root) continue;
    auto p = tree.parent[v];
    if (p >= n || !host.has_edge(v, p)) return false;
    if (rank[p] >= rank[v]) return false;  // parents precede children => acyclic
  }
  return true;
}

namespace {

void require_connected(const Graph& g) {
  if (!is_connected(g)) throw InputError("no spanning trees");
}

[[noreturn]] void singular() { throw NumericalError("graph numerically disconnected"); }

}  // namespace

double log_det_reduced_laplacian_dense(const Graph& g) {
  require_connected(g);
  const std::size_t n = g.vertex_count();
  if (n == 1) return 0.0;
  const std::size_t m = n - 1;
  // Row-major lower-triangular work array for the reduced Laplacian on
  // vertices 1..n-1; entry (i, j) with i >= j.
  std::vector<double> a(m * m, 0.0);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * m + j]; };
  double max_diag = 0.0;
  for (std::uint32_t v = 1; v < n; ++v) {
    at(v - 1, v - 1) = static_cast<double>(g.degree(v));
    max_diag = std::max(max_diag, static_cast<double>(g.degree(v)));
  }
  for (const Edge& e : g.edges()) {
    if (e.u == 0) continue;
    at(e.v - 1, e.u - 1) = -1.0;
  }
  const double tiny = max_diag * 1e-13;
  double log_det = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    double d = at(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= at(j, k) * at(j, k);
    if (!(d > tiny)) singular();
    const double root = std::sqrt(d);
    at(j, j) = root;
    log_det += std::log(d);
    for (std::size_t i = j + 1; i < m; ++i) {
      double s = at(i, j);
      const double* ri = &a[i * m];
      const double* rj = &a[j * m];
      for (std::size_t k = 0; k < j; ++k) s -= ri[k] * rj[k];
      at(i, j) = s / root;
    }
  }
  return log_det;
}

double log_det_reduced_laplacian_sparse(const Graph& g) {
  require_connected(g);
  const std::size_t n = g.vertex_count();
  if (n == 1) return 0.0;
  const auto m = static_cast<Eigen::Index>(n - 1);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(n + 2 * g.edge_count());
  double max_diag = 0.0;
  for (std::uint32_t v = 1; v < n; ++v) {
    triplets.emplace_back(v - 1, v - 1, static_cast<double>(g.degree(v)));
    max_diag = std::max(max_diag, static_cast<double>(g.degree(v)));
  }
  for (const Edge& e : g.edges()) {
    if (e.u == 0) continue;
    triplets.emplace_back(e.v - 1, e.u - 1, -1.0);
    triplets.emplace_back(e.u - 1, e.v - 1, -1.0);
  }
  Eigen::SparseMatrix<double> lap(m, m);
  lap.setFromTriplets(triplets.begin(), triplets.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt(lap);
  if (ldlt.info() != Eigen::Success) singular();
  const double tiny = max_diag * 1e-13;
  double log_det = 0.0;
  const auto& d = ldlt.vectorD();
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (!(d[i] > tiny)) singular();
    log_det += std::log(d[i]);
  }
  return log_det;
}

double log_spanning_tree_count(const Graph& g) {
  if (g.vertex_count() <= kDenseLogDetLimit) return log_det_reduced_laplacian_dense(g);
  return log_det_reduced_laplacian_sparse(g);
}

double spanning_tree_constant(const Graph& g) {
  return log_spanning_tree_count(g) / static_cast<double>(g.vertex_count());
}

SpanningProfile spanning_profile(const Graph& g) {
  SpanningProfile p;
  p.ln_count = log_spanning_tree_count(g);
  p.st_constant = p.ln_count / static_cast<double>(g.vertex_count());
  return p;
}

WilsonSampler::WilsonSampler(const Graph& g) : graph_(&g) {
  require_connected(g);
  const std::size_t n = g.vertex_count();
  tree_.parent.resize(n);
  tree_.order.reserve(n);
  next_.resize(n);
  in_tree_.resize(n);
}

const SpanningTree& WilsonSampler::sample(std::uint64_t seed, std::uint32_t root) {
  const Graph& g = *graph_;
  const auto n = static_cast<std::uint32_t>(g.vertex_count());
  if (root >= n) throw InputError("root out of range");
  std::fill(in_tree_.begin(), in_tree_.end(), 0);
  tree_.root = root;
  tree_.order.clear();
  tree_.order.push_back(root);
  tree_.parent[root] = root;
  in_tree_[root] = 1;

  for (std::uint32_t start = 0; start < n; ++start) {
    if (in_tree_[start]) continue;
    SplitMix64 rng(derive_seed(seed, {start}));
    // Random walk until the tree is hit; next_ keeps only the last exit from
    // each vertex, which is exactly the loop-erased path.
    std::uint32_t u = start;
    while (!in_tree_[u]) {
      auto nb = g.neighbors(u);
      next_[u] = nb[rng.below(nb.size())];
      u = next_[u];
    }
    path_.clear();
    for (u = start; !in_tree_[u]; u = next_[u]) {
      in_tree_[u] = 1;
      tree_.parent[u] = next_[u];
      path_.push_back(u);
    }
    tree_.order.insert(tree_.order.end(), path_.rbegin(), path_.rend());
  }
  return tree_;
}

SpanningTree wilson_ust(const Graph& g, std::uint64_t seed, std::uint32_t root) {
  WilsonSampler sampler(g);
  return sampler.sample(seed, root);
}

}  // namespace dualgraph
