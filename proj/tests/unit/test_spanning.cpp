#include "doctest.h"

#include <cmath>
#include <map>
#include <random>

#include <boost/math/distributions/chi_squared.hpp>

#include "dualgraph/error.hpp"
#include "dualgraph/models.hpp"
#include "dualgraph/rng.hpp"
#include "dualgraph/spanning.hpp"
#include "oracles.hpp"

using namespace dualgraph;

namespace {

double ln_big(const oracle::BigInt& v) {
  // ln of an arbitrary-size positive integer from its leading 60 bits.
  const std::size_t bits = boost::multiprecision::msb(v) + 1;
  if (bits <= 60) return std::log(static_cast<double>(v.convert_to<unsigned long long>()));
  const std::size_t shift = bits - 60;
  const oracle::BigInt top = v >> shift;
  return std::log(static_cast<double>(top.convert_to<unsigned long long>())) +
         static_cast<double>(shift) * std::log(2.0);
}

void check_rel(double got, double want, double tol = 1e-9) {
  if (want == 0.0) {
    CHECK(std::abs(got) <= tol);
  } else {
    CHECK(std::abs(got - want) <= tol * std::abs(want));
  }
}

double chi_square_critical(double dof, double alpha) {
  return boost::math::quantile(boost::math::complement(boost::math::chi_squared(dof), alpha));
}

}  // namespace

TEST_CASE("exact counts on named graphs") {
  check_rel(log_spanning_tree_count(square_grid(3, 3)), std::log(192.0));
  check_rel(log_spanning_tree_count(oracle::complete_graph(4)), std::log(16.0));
  for (std::size_t n = 3; n <= 10; ++n) check_rel(log_spanning_tree_count(oracle::cycle_graph(n)), std::log(double(n)));
  // Cayley: K_n has n^(n-2) spanning trees.
  for (std::size_t n = 2; n <= 12; ++n) {
    check_rel(log_spanning_tree_count(oracle::complete_graph(n)), double(n - 2) * std::log(double(n)));
  }
  // K_{p,q}: p^(q-1) q^(p-1)
  check_rel(log_spanning_tree_count(oracle::complete_bipartite(3, 4)), 3 * std::log(3.0) + 2 * std::log(4.0));
  CHECK(log_spanning_tree_count(Graph::from_indices(1, {})) == 0.0);
}

TEST_CASE("trees have exactly one spanning tree") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 20; ++i) {
    const Graph t = oracle::random_tree(5 + i * 20, rng);
    CHECK(std::abs(log_spanning_tree_count(t)) <= 1e-9);
    CHECK(std::abs(spanning_tree_constant(t)) <= 1e-9);
  }
}

TEST_CASE("agrees with brute-force enumeration on the small corpus") {
  int checked = 0;
  for (const Graph& g : oracle::small_corpus()) {
    if (!is_connected(g)) {
      CHECK_THROWS_AS(log_spanning_tree_count(g), InputError);
      continue;
    }
    const auto count = oracle::brute_force_tree_count(g);
    REQUIRE(count > 0);
    check_rel(log_spanning_tree_count(g), std::log(double(count)));
    CHECK(oracle::spanning_tree_count(g) == count);
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("agrees with exact Bareiss determinants on medium graphs") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 15; ++i) {
    const Graph g = largest_component(oracle::random_graph(20 + 3 * i, 0.15, rng));
    if (g.vertex_count() < 2) continue;
    check_rel(log_spanning_tree_count(g), ln_big(oracle::spanning_tree_count(g)), 1e-10);
  }
  const Graph grid = square_grid(8, 8);
  check_rel(log_spanning_tree_count(grid), ln_big(oracle::spanning_tree_count(grid)), 1e-10);
}

TEST_CASE("dense and sparse factorizations agree") {
  std::mt19937_64 rng(17);
  for (std::size_t n : {30, 120, 290, 310, 500}) {
    const Graph g = largest_component(oracle::random_graph(n, 8.0 / n, rng));
    check_rel(log_det_reduced_laplacian_dense(g), log_det_reduced_laplacian_sparse(g), 1e-10);
  }
  const Graph tri = triangular_grid(20, 20);
  check_rel(log_det_reduced_laplacian_dense(tri), log_det_reduced_laplacian_sparse(tri), 1e-10);
}

TEST_CASE("errors") {
  CHECK_THROWS_WITH_AS(log_spanning_tree_count(Graph::from_indices(3, {Edge{0, 1}})), "no spanning trees", InputError);
  CHECK_THROWS_AS(log_spanning_tree_count(Graph{}), InputError);
  CHECK_THROWS_AS(log_det_reduced_laplacian_sparse(Graph::from_indices(400, {Edge{0, 1}})), InputError);
  CHECK_THROWS_AS(wilson_ust(Graph::from_indices(3, {Edge{0, 1}}), 1), InputError);
  CHECK_THROWS_AS(SpanningTree::from_edges(3, {Edge{0, 1}}), InputError);
  CHECK_THROWS_AS(SpanningTree::from_edges(3, {Edge{0, 1}, Edge{0, 1}}), InputError);
}

TEST_CASE("grid constants grow towards the square-lattice value") {
  double prev = 0.0;
  for (std::size_t side : {5, 10, 20, 30}) {
    const double c = spanning_tree_constant(square_grid(side, side));
    CHECK(c > prev);
    CHECK(c < 1.1662);
    prev = c;
  }
}

TEST_CASE("Wilson samples are spanning trees and reproducible") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 20; ++i) {
    const Graph g = largest_component(oracle::random_graph(60, 0.08, rng));
    const SpanningTree a = wilson_ust(g, 1234 + i);
    CHECK(is_spanning_tree_of(g, a));
    const SpanningTree b = wilson_ust(g, 1234 + i);
    CHECK(a.parent == b.parent);
    WilsonSampler sampler(g);
    CHECK(sampler.sample(1234 + i).parent == a.parent);
    // order lists parents first
    std::vector<char> seen(g.vertex_count(), 0);
    for (auto v : a.order) {
      CHECK((v == a.root || seen[a.parent[v]]));
      seen[v] = 1;
    }
    const SpanningTree rooted = wilson_ust(g, 77, static_cast<std::uint32_t>(g.vertex_count() - 1));
    CHECK(rooted.root == g.vertex_count() - 1);
    CHECK(is_spanning_tree_of(g, rooted));
  }
}

TEST_CASE("Wilson is uniform on C4 and K4") {
  for (const auto& [g, samples] : {std::pair{oracle::cycle_graph(4), 40000}, std::pair{oracle::complete_graph(4), 64000}}) {
    std::map<std::vector<Edge>, int> index;
    oracle::brute_force_trees(g, [&](const std::vector<Edge>& t) { index.emplace(t, int(index.size())); });
    std::vector<double> counts(index.size(), 0.0);
    WilsonSampler sampler(g);
    for (int s = 0; s < samples; ++s) {
      const auto edges = sampler.sample(derive_seed(2024, {static_cast<std::uint64_t>(s)})).edges();
      auto it = index.find(edges);
      REQUIRE(it != index.end());
      counts[it->second] += 1;
    }
    const double expected = double(samples) / double(counts.size());
    double stat = 0.0;
    for (double c : counts) stat += (c - expected) * (c - expected) / expected;
    CHECK(stat < chi_square_critical(double(counts.size() - 1), 0.001));
  }
}
