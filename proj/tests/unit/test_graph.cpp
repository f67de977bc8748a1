#include "doctest.h"

#include <random>

#include "dualgraph/error.hpp"
#include "dualgraph/graph.hpp"
#include "oracles.hpp"

using namespace dualgraph;

TEST_CASE("vertex ids order integers before strings") {
  CHECK(VertexId(3) < VertexId(10));
  CHECK(VertexId(-5) < VertexId(0));
  CHECK(VertexId(999999) < VertexId("a"));
  CHECK(VertexId("abc") < VertexId("abd"));
  CHECK(VertexId("10") == VertexId(std::string("10")));
  CHECK(VertexId("10") != VertexId(10));
  CHECK(VertexId(42).to_string() == "42");
  CHECK(VertexId("tract-7").to_string() == "tract-7");
}

TEST_CASE("from_ids sorts ids and maps edges to dense indices") {
  Graph g = Graph::from_ids({"c", 2, "a", 1}, {{"c", 1}, {2, "a"}, {1, "c"}});
  REQUIRE(g.vertex_count() == 4);
  CHECK(g.id(0) == VertexId(1));
  CHECK(g.id(1) == VertexId(2));
  CHECK(g.id(2) == VertexId("a"));
  CHECK(g.id(3) == VertexId("c"));
  CHECK(g.edge_count() == 2);
  CHECK(g.has_edge(0, 3));
  CHECK(g.has_edge(3, 0));
  CHECK(g.has_edge(1, 2));
  CHECK_FALSE(g.has_edge(0, 1));
  CHECK(g.index_of("a") == 2U);
  CHECK_FALSE(g.index_of("zzz").has_value());
}

TEST_CASE("from_ids rejects bad input") {
  CHECK_THROWS_AS(Graph::from_ids({1, 1}, {}), InputError);
  CHECK_THROWS_AS(Graph::from_ids({1, 2}, {{1, 3}}), InputError);
  CHECK_THROWS_AS(Graph::from_ids({1, 2}, {{2, 2}}), InputError);
  CHECK_THROWS_AS(Graph::from_indices(2, {Edge{0, 2}}), InputError);
  CHECK_THROWS_WITH_AS(Graph::from_ids({1, 2}, {{1, 7}}), doctest::Contains("7"), InputError);
}

TEST_CASE("adjacency is sorted and edges are normalized") {
  Graph g = Graph::from_indices(5, {Edge{3, 4}, Edge{0, 4}, Edge{0, 2}, Edge{0, 1}, Edge{0, 1}});
  CHECK(g.edge_count() == 4);
  auto nb = g.neighbors(0);
  CHECK(std::vector<std::uint32_t>(nb.begin(), nb.end()) == std::vector<std::uint32_t>{1, 2, 4});
  CHECK(g.degree(4) == 2);
  for (const Edge& e : g.edges()) CHECK(e.u < e.v);
  CHECK(std::is_sorted(g.edges().begin(), g.edges().end()));
}

TEST_CASE("coordinates are optional and checked on access") {
  Graph bare = Graph::from_indices(2, {Edge{0, 1}});
  CHECK_FALSE(bare.has_coords());
  CHECK_THROWS_AS(bare.coords(), InputError);
  Graph placed = Graph::from_indices(2, {Edge{0, 1}}, std::vector<Point>{{0, 0}, {1, 1}});
  CHECK(placed.coords()[1] == Point{1, 1});
  CHECK_THROWS_AS(Graph::from_indices(3, {}, std::vector<Point>{{0, 0}}), InputError);
}

TEST_CASE("degree statistics") {
  // path 0-1-2-3: degrees 1, 2, 2, 1
  Graph path = Graph::from_indices(4, {Edge{0, 1}, Edge{1, 2}, Edge{2, 3}});
  DegreeStats s = degree_stats(path);
  CHECK(s.average == doctest::Approx(1.5));
  CHECK(s.median == doctest::Approx(1.5));
  CHECK(s.maximum == 2);

  // star with 4 leaves: degrees 4,1,1,1,1 -> median 1
  Graph star = Graph::from_indices(5, {Edge{0, 1}, Edge{0, 2}, Edge{0, 3}, Edge{0, 4}});
  s = degree_stats(star);
  CHECK(s.average == doctest::Approx(1.6));
  CHECK(s.median == 1);
  CHECK(s.maximum == 4);

  // degrees 3,2,3,2: the two middle values differ
  Graph diamond = Graph::from_indices(4, {Edge{0, 1}, Edge{0, 2}, Edge{0, 3}, Edge{1, 2}, Edge{2, 3}});
  CHECK(degree_stats(diamond).median == doctest::Approx(2.5));
  // degrees 2,2,2,0
  Graph triangle_plus = Graph::from_indices(4, {Edge{0, 1}, Edge{0, 2}, Edge{1, 2}});
  CHECK(degree_stats(triangle_plus).median == 2);
  CHECK(degree_stats(triangle_plus).average == doctest::Approx(1.5));
  CHECK(degree_stats(Graph::from_indices(3, {})).maximum == 0);

  CHECK_THROWS_WITH_AS(degree_stats(Graph{}), "empty graph", InputError);
}

TEST_CASE("components are ordered by size then smallest id") {
  // {0,1}, {2}, {3,4,5}, {6,7}
  Graph g = Graph::from_indices(8, {Edge{0, 1}, Edge{3, 4}, Edge{4, 5}, Edge{6, 7}});
  auto comps = connected_components(g);
  REQUIRE(comps.components.size() == 4);
  CHECK(comps.sizes() == std::vector<std::size_t>{3, 2, 2, 1});
  CHECK(comps.components[0] == std::vector<std::uint32_t>{3, 4, 5});
  CHECK(comps.components[1] == std::vector<std::uint32_t>{0, 1});
  CHECK(comps.components[2] == std::vector<std::uint32_t>{6, 7});
  CHECK_FALSE(comps.connected());
  CHECK_FALSE(is_connected(g));

  Graph lcc = largest_component(g);
  CHECK(lcc.vertex_count() == 3);
  CHECK(lcc.edge_count() == 2);
  CHECK(lcc.id(0) == VertexId(3));
  CHECK(is_connected(lcc));
}

TEST_CASE("component sizes sum to n on random graphs") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    Graph g = oracle::random_graph(30, 0.05, rng);
    auto comps = connected_components(g);
    const auto sizes = comps.sizes();
    std::size_t total = 0;
    for (auto s : sizes) total += s;
    CHECK(total == 30);
    CHECK(std::is_sorted(sizes.rbegin(), sizes.rend()));
    // No edge crosses two components.
    std::vector<std::size_t> which(30);
    for (std::size_t c = 0; c < comps.components.size(); ++c) {
      for (auto v : comps.components[c]) which[v] = c;
    }
    for (const Edge& e : g.edges()) CHECK(which[e.u] == which[e.v]);
  }
}

TEST_CASE("induced subgraph keeps ids and coordinates") {
  Graph g = Graph::from_ids({10, 20, 30, 40}, {{10, 20}, {20, 30}, {30, 40}, {10, 40}},
                            std::vector<Point>{{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  std::vector<std::uint32_t> keep{3, 1, 2};
  Graph sub = g.induced(keep);
  CHECK(sub.vertex_count() == 3);
  CHECK(sub.id(0) == VertexId(20));
  CHECK(sub.id(2) == VertexId(40));
  CHECK(sub.edge_count() == 2);
  CHECK(sub.coords()[2] == Point{0, 1});
}
