#include "dualgraph/planarity.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <set>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/property_map/property_map.hpp>

#include "dualgraph/error.hpp"

namespace dualgraph {

namespace {

using BoostGraph =
    boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                          boost::property<boost::vertex_index_t, int>,
                          boost::property<boost::edge_index_t, int>>;
using BoostEdge = boost::graph_traits<BoostGraph>::edge_descriptor;

BoostGraph to_boost(const Graph& g) {
  BoostGraph bg(g.vertex_count());
  int index = 0;
  for (const Edge& e : g.edges()) {
    boost::add_edge(e.u, e.v, boost::property<boost::edge_index_t, int>(index++), bg);
  }
  return bg;
}

std::size_t non_isolated(const Graph& g) {
  std::size_t count = 0;
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) count += g.degree(v) > 0 ? 1 : 0;
  return count;
}

bool exceeds_edge_bound(const Graph& g) {
  const std::size_t v = non_isolated(g);
  return v >= 3 && g.edge_count() > 3 * v - 6;
}

bool planar_edge_set(const std::vector<Edge>& edges, std::size_t skip) {
  std::vector<std::uint32_t> vertices;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i == skip) continue;
    vertices.push_back(edges[i].u);
    vertices.push_back(edges[i].v);
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  auto local = [&](std::uint32_t v) {
    return static_cast<std::size_t>(std::lower_bound(vertices.begin(), vertices.end(), v) - vertices.begin());
  };
  BoostGraph bg(vertices.size());
  int index = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i == skip) continue;
    boost::add_edge(local(edges[i].u), local(edges[i].v), boost::property<boost::edge_index_t, int>(index++), bg);
  }
  return boost::boyer_myrvold_planarity_test(bg);
}

// The Kuratowski subgraph reported by Boost can carry stray edges. Dropping
// every edge whose removal keeps the rest non-planar leaves an edge-minimal
// non-planar graph, which is a subdivision of K5 or K3,3.
std::vector<Edge> minimize_witness(std::vector<Edge> edges) {
  for (std::size_t i = 0; i < edges.size();) {
    if (!planar_edge_set(edges, i)) {
      edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  return edges;
}

}  // namespace

PlanarityVerdict is_planar(const Graph& g, bool want_witness) {
  PlanarityVerdict verdict;
  if (!want_witness && exceeds_edge_bound(g)) return verdict;

  BoostGraph bg = to_boost(g);
  if (!want_witness) {
    verdict.planar = boost::boyer_myrvold_planarity_test(bg);
    return verdict;
  }

  std::vector<std::vector<BoostEdge>> embedding(g.vertex_count());
  std::vector<BoostEdge> kuratowski;
  verdict.planar = boost::boyer_myrvold_planarity_test(
      boost::boyer_myrvold_params::graph = bg,
      boost::boyer_myrvold_params::embedding =
          boost::make_iterator_property_map(embedding.begin(), boost::get(boost::vertex_index, bg)),
      boost::boyer_myrvold_params::kuratowski_subgraph = std::back_inserter(kuratowski));

  if (verdict.planar) {
    RotationSystem rotation(g.vertex_count());
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
      rotation[v].reserve(embedding[v].size());
      for (const BoostEdge& e : embedding[v]) {
        const auto s = static_cast<std::uint32_t>(boost::source(e, bg));
        const auto t = static_cast<std::uint32_t>(boost::target(e, bg));
        rotation[v].push_back(s == v ? t : s);
      }
    }
    verdict.embedding = std::move(rotation);
  } else {
    std::vector<Edge> edges;
    edges.reserve(kuratowski.size());
    for (const BoostEdge& e : kuratowski) {
      edges.push_back(make_edge(static_cast<std::uint32_t>(boost::source(e, bg)),
                                static_cast<std::uint32_t>(boost::target(e, bg))));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    verdict.kuratowski = minimize_witness(std::move(edges));
  }
  return verdict;
}

std::size_t count_faces(const Graph& g, const RotationSystem& rotation) {
  const std::size_t n = g.vertex_count();
  if (rotation.size() != n) throw InputError("rotation system has the wrong vertex count");
  // Dart (v, i) leaves v towards rotation[v][i]. offset[v] + i numbers it.
  std::vector<std::size_t> offset(n + 1, 0);
  // position[v] holds (neighbor, index in rotation[v]) sorted by neighbor.
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> position(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    std::vector<std::uint32_t> sorted = rotation[v];
    std::sort(sorted.begin(), sorted.end());
    const auto nb = g.neighbors(v);
    if (!std::equal(sorted.begin(), sorted.end(), nb.begin(), nb.end())) {
      throw InputError("rotation at vertex " + std::to_string(v) + " is not a permutation of its neighbors");
    }
    offset[v + 1] = offset[v] + rotation[v].size();
    for (std::uint32_t i = 0; i < rotation[v].size(); ++i) position[v].emplace_back(rotation[v][i], i);
    std::sort(position[v].begin(), position[v].end());
  }
  auto index_in = [&](std::uint32_t v, std::uint32_t neighbor) {
    auto it = std::lower_bound(position[v].begin(), position[v].end(), std::pair(neighbor, 0U));
    return it->second;
  };

  std::vector<char> seen(offset[n], 0);
  std::size_t faces = 0;
  for (std::uint32_t v = 0; v < n; ++v) {
    for (std::uint32_t i = 0; i < rotation[v].size(); ++i) {
      if (seen[offset[v] + i]) continue;
      ++faces;
      std::uint32_t a = v;
      std::uint32_t ai = i;
      while (!seen[offset[a] + ai]) {
        seen[offset[a] + ai] = 1;
        const std::uint32_t b = rotation[a][ai];
        const std::uint32_t back = index_in(b, a);
        ai = static_cast<std::uint32_t>((back + 1) % rotation[b].size());
        a = b;
      }
    }
  }
  return faces;
}

bool verify_embedding(const Graph& g, const RotationSystem& rotation) {
  std::size_t faces = 0;
  try {
    faces = count_faces(g, rotation);
  } catch (const InputError&) {
    return false;
  }
  std::size_t components = 0;
  for (const auto& comp : connected_components(g).components) {
    if (comp.size() > 1) ++components;
  }
  if (components == 0) return true;
  // Tracing finds one outer face per component; the plane has just one.
  const auto v = static_cast<long long>(non_isolated(g));
  const auto e = static_cast<long long>(g.edge_count());
  const auto f = static_cast<long long>(faces) - static_cast<long long>(components) + 1;
  return v - e + f == 1 + static_cast<long long>(components);
}

bool is_kuratowski_subdivision(const Graph& g, const std::vector<Edge>& edges) {
  std::map<std::uint32_t, std::vector<std::uint32_t>> adj;
  std::set<Edge> unique;
  for (const Edge& raw : edges) {
    const Edge e = make_edge(raw.u, raw.v);
    if (e.u == e.v || e.v >= g.vertex_count() || !g.has_edge(e.u, e.v)) return false;
    if (!unique.insert(e).second) return false;
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }

  std::vector<std::uint32_t> branches;
  for (const auto& [v, nb] : adj) {
    if (nb.size() < 2) return false;
    if (nb.size() >= 3) branches.push_back(v);
  }
  bool k5 = branches.size() == 5;
  bool k33 = branches.size() == 6;
  for (std::uint32_t b : branches) {
    k5 = k5 && adj[b].size() == 4;
    k33 = k33 && adj[b].size() == 3;
  }
  if (!k5 && !k33) return false;

  // Walk every branch-to-branch path through degree-2 vertices.
  std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::size_t walked = 0;
  for (std::uint32_t b : branches) {
    for (std::uint32_t start : adj[b]) {
      std::uint32_t prev = b;
      std::uint32_t cur = start;
      ++walked;
      while (adj[cur].size() == 2) {
        const std::uint32_t next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
        prev = cur;
        cur = next;
        ++walked;
        if (walked > 2 * unique.size()) return false;
      }
      if (cur == b) return false;
      if (b < cur && !pairs.emplace(b, cur).second) return false;
    }
  }
  // Each edge is walked once from either end; leftovers are stray cycles.
  if (walked != 2 * unique.size()) return false;

  if (k5) return pairs.size() == 10;
  if (pairs.size() != 9) return false;
  std::map<std::uint32_t, int> side;
  side[branches[0]] = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [a, c] : pairs) {
      const bool ha = side.count(a) > 0;
      const bool hc = side.count(c) > 0;
      if (ha && hc) {
        if (side[a] == side[c]) return false;
      } else if (ha || hc) {
        if (ha) side[c] = 1 - side[a];
        else side[a] = 1 - side[c];
        changed = true;
      }
    }
  }
  if (side.size() != 6) return false;
  int left = 0;
  for (const auto& [v, s] : side) left += s == 0 ? 1 : 0;
  return left == 3;
}

}  // namespace dualgraph
