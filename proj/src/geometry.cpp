#include "dualgraph/geometry.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "dualgraph/error.hpp"
#include "dualgraph/rng.hpp"

namespace dualgraph {

PointCloud random_point_cloud(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InputError("point cloud needs at least one point");
  PointCloud cloud;
  cloud.seed = seed;
  cloud.points.reserve(n);
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = rng.uniform();
    const double y = rng.uniform();
    cloud.points.push_back({x, y});
  }
  return cloud;
}

namespace {

using Rational = boost::multiprecision::cpp_rational;

constexpr double kEpsilon = std::numeric_limits<double>::epsilon() / 2;  // 2^-53
constexpr double kOrientBound = (3.0 + 16.0 * kEpsilon) * kEpsilon;
constexpr double kInCircleBound = (10.0 + 96.0 * kEpsilon) * kEpsilon;

template <typename T>
int sign_of(const T& v) {
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

int orientation_exact(Point a, Point b, Point c) {
  const Rational ax(a.x), ay(a.y), bx(b.x), by(b.y), cx(c.x), cy(c.y);
  return sign_of((ax - cx) * (by - cy) - (ay - cy) * (bx - cx));
}

// Positive when d is inside the circle through counterclockwise (a, b, c).
int incircle_exact(Point a, Point b, Point c, Point d) {
  const Rational dx(d.x), dy(d.y);
  const Rational adx = Rational(a.x) - dx, ady = Rational(a.y) - dy;
  const Rational bdx = Rational(b.x) - dx, bdy = Rational(b.y) - dy;
  const Rational cdx = Rational(c.x) - dx, cdy = Rational(c.y) - dy;
  const Rational alift = adx * adx + ady * ady;
  const Rational blift = bdx * bdx + bdy * bdy;
  const Rational clift = cdx * cdx + cdy * cdy;
  return sign_of(alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) +
                 clift * (adx * bdy - bdx * ady));
}

int incircle_sign(Point a, Point b, Point c, Point d) {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;
  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;
  const double alift = adx * adx + ady * ady;
  const double blift = bdx * bdx + bdy * bdy;
  const double clift = cdx * cdx + cdy * cdy;
  const double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
  const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
                           (std::abs(cdxady) + std::abs(adxcdy)) * blift +
                           (std::abs(adxbdy) + std::abs(bdxady)) * clift;
  const double bound = kInCircleBound * permanent;
  if (det > bound || -det > bound) return sign_of(det);
  return incircle_exact(a, b, c, d);
}

}  // namespace

int orientation(Point a, Point b, Point c) {
  const double left = (a.x - c.x) * (b.y - c.y);
  const double right = (a.y - c.y) * (b.x - c.x);
  const double det = left - right;
  const double bound = kOrientBound * (std::abs(left) + std::abs(right));
  if (det > bound || -det > bound) return sign_of(det);
  return orientation_exact(a, b, c);
}

CircleSide in_circumcircle(Point a, Point b, Point c, Point d) {
  const int o = orientation(a, b, c);
  if (o == 0) throw InputError("circumcircle of collinear points is undefined");
  if (o < 0) std::swap(b, c);
  const int s = incircle_sign(a, b, c, d);
  return s > 0 ? CircleSide::inside : (s == 0 ? CircleSide::on : CircleSide::outside);
}

namespace {

constexpr std::uint32_t kGhost = std::numeric_limits<std::uint32_t>::max();
constexpr std::int32_t kNone = -1;

struct Triangle {
  // Counterclockwise; a ghost triangle keeps kGhost in slot 2 and its real
  // vertices (x, y) are ordered so the unbounded side lies left of x -> y.
  std::array<std::uint32_t, 3> v{};
  // nb[i] is the triangle across the edge opposite v[i].
  std::array<std::int32_t, 3> nb{kNone, kNone, kNone};
  bool alive = true;

  bool ghost() const noexcept { return v[2] == kGhost; }
};

class BowyerWatson {
 public:
  explicit BowyerWatson(std::span<const Point> pts) : pts_(pts) {}

  void run() {
    const std::size_t n = pts_.size();
    check_input();
    std::size_t third = 2;
    while (third < n && orientation(pts_[0], pts_[1], pts_[third]) == 0) ++third;
    if (third == n) throw InputError("all points are collinear");
    seed_triangle(0, 1, static_cast<std::uint32_t>(third));
    for (std::uint32_t i = 2; i < n; ++i) {
      if (i != third) insert(i);
    }
  }

  Triangulation result() const {
    Triangulation out;
    std::vector<Edge> edges;
    for (const Triangle& t : tris_) {
      if (!t.alive || t.ghost()) continue;
      out.triangles.push_back(t.v);
      edges.push_back(make_edge(t.v[0], t.v[1]));
      edges.push_back(make_edge(t.v[1], t.v[2]));
      edges.push_back(make_edge(t.v[2], t.v[0]));
    }
    std::sort(out.triangles.begin(), out.triangles.end());
    out.graph = Graph::from_indices(pts_.size(), std::move(edges),
                                    std::vector<Point>(pts_.begin(), pts_.end()));
    return out;
  }

 private:
  void check_input() const {
    const std::size_t n = pts_.size();
    if (n < 3) throw InputError("Delaunay triangulation needs at least 3 points");
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0U);
    auto key = [&](std::uint32_t i) { return std::pair(pts_[i].x, pts_[i].y); };
    std::sort(order.begin(), order.end(), [&](auto a, auto b) {
      return key(a) != key(b) ? key(a) < key(b) : a < b;
    });
    for (std::size_t i = 1; i < n; ++i) {
      if (pts_[order[i]] == pts_[order[i - 1]]) {
        throw InputError("duplicate points at indices " + std::to_string(order[i - 1]) + " and " +
                         std::to_string(order[i]));
      }
      if (!std::isfinite(pts_[order[i]].x) || !std::isfinite(pts_[order[i]].y)) {
        throw InputError("non-finite coordinate at index " + std::to_string(order[i]));
      }
    }
  }

  std::int32_t make_triangle(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    // Rotate ghosts so the ghost vertex sits in slot 2.
    if (a == kGhost) {
      a = b;
      b = c;
      c = kGhost;
    } else if (b == kGhost) {
      b = a;
      a = c;
      c = kGhost;
    }
    Triangle t;
    t.v = {a, b, c};
    std::int32_t id;
    if (!free_.empty()) {
      id = free_.back();
      free_.pop_back();
      tris_[id] = t;
    } else {
      id = static_cast<std::int32_t>(tris_.size());
      tris_.push_back(t);
    }
    return id;
  }

  // Index i in triangle t whose opposite edge is the directed edge (a, b).
  int slot_of_edge(std::int32_t t, std::uint32_t a, std::uint32_t b) const {
    const auto& v = tris_[t].v;
    for (int i = 0; i < 3; ++i) {
      if (v[(i + 1) % 3] == a && v[(i + 2) % 3] == b) return i;
    }
    return -1;
  }

  static std::uint64_t edge_key(std::uint32_t a, std::uint32_t b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
  }

  // Pairs up the shared edges among a batch of new triangles.
  void link_batch(const std::vector<std::int32_t>& batch) {
    edge_slots_.clear();
    for (auto t : batch) {
      const auto& v = tris_[t].v;
      for (int i = 0; i < 3; ++i) edge_slots_[edge_key(v[(i + 1) % 3], v[(i + 2) % 3])] = t;
    }
    for (auto t : batch) {
      auto& tri = tris_[t];
      for (int i = 0; i < 3; ++i) {
        auto it = edge_slots_.find(edge_key(tri.v[(i + 2) % 3], tri.v[(i + 1) % 3]));
        if (it != edge_slots_.end()) tri.nb[i] = it->second;
      }
    }
  }

  void seed_triangle(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    if (orientation(pts_[a], pts_[b], pts_[c]) < 0) std::swap(b, c);
    std::vector<std::int32_t> batch{make_triangle(a, b, c), make_triangle(b, a, kGhost),
                                    make_triangle(c, b, kGhost), make_triangle(a, c, kGhost)};
    link_batch(batch);
    last_ = batch[0];
  }

  // Whether p lies strictly inside the (possibly degenerate) circumcircle of t.
  bool conflicts(std::int32_t id, std::uint32_t p) const {
    const Triangle& t = tris_[id];
    const Point& q = pts_[p];
    if (!t.ghost()) {
      return incircle_sign(pts_[t.v[0]], pts_[t.v[1]], pts_[t.v[2]], q) > 0;
    }
    const Point& x = pts_[t.v[0]];
    const Point& y = pts_[t.v[1]];
    const int o = orientation(x, y, q);
    if (o != 0) return o > 0;
    // Collinear with the hull edge: conflicts only on the open segment, which
    // for collinear points is an exact comparison along any axis the edge spans.
    const bool use_x = x.x != y.x;
    const double lo = use_x ? std::min(x.x, y.x) : std::min(x.y, y.y);
    const double hi = use_x ? std::max(x.x, y.x) : std::max(x.y, y.y);
    const double c = use_x ? q.x : q.y;
    return c > lo && c < hi;
  }

  std::int32_t locate(std::uint32_t p) const {
    std::int32_t t = last_;
    if (!tris_[t].alive) t = first_alive();
    if (tris_[t].ghost()) t = tris_[t].nb[2];
    const Point& q = pts_[p];
    for (std::size_t steps = 0;; ++steps) {
      const Triangle& tri = tris_[t];
      bool moved = false;
      for (int k = 0; k < 3; ++k) {
        const int i = static_cast<int>((k + steps) % 3);
        const Point& a = pts_[tri.v[(i + 1) % 3]];
        const Point& b = pts_[tri.v[(i + 2) % 3]];
        if (orientation(a, b, q) < 0) {
          t = tri.nb[i];
          moved = true;
          break;
        }
      }
      if (!moved || tris_[t].ghost()) return t;
    }
  }

  std::int32_t first_alive() const {
    for (std::size_t i = 0; i < tris_.size(); ++i) {
      if (tris_[i].alive && !tris_[i].ghost()) return static_cast<std::int32_t>(i);
    }
    return 0;
  }

  void insert(std::uint32_t p) {
    const std::int32_t start = locate(p);
    cavity_.clear();
    boundary_.clear();
    stack_.clear();
    tris_[start].alive = false;
    stack_.push_back(start);
    while (!stack_.empty()) {
      const auto t = stack_.back();
      stack_.pop_back();
      cavity_.push_back(t);
      for (int i = 0; i < 3; ++i) {
        const auto o = tris_[t].nb[i];
        if (!tris_[o].alive) continue;  // already in the cavity
        if (conflicts(o, p)) {
          tris_[o].alive = false;
          stack_.push_back(o);
        } else {
          boundary_.push_back({tris_[t].v[(i + 1) % 3], tris_[t].v[(i + 2) % 3], o});
        }
      }
    }
    std::vector<std::int32_t> batch;
    batch.reserve(boundary_.size());
    for (auto t : cavity_) free_.push_back(t);
    for (const auto& b : boundary_) {
      const auto t = make_triangle(b.a, b.b, p);
      batch.push_back(t);
    }
    link_batch(batch);
    for (std::size_t i = 0; i < boundary_.size(); ++i) {
      const auto& b = boundary_[i];
      const auto t = batch[i];
      tris_[t].nb[slot_of_edge(t, b.a, b.b)] = b.outside;
      tris_[b.outside].nb[slot_of_edge(b.outside, b.b, b.a)] = t;
    }
    for (auto t : batch) {
      if (!tris_[t].ghost()) {
        last_ = t;
        break;
      }
    }
  }

  struct BoundaryEdge {
    std::uint32_t a;
    std::uint32_t b;
    std::int32_t outside;
  };

  std::span<const Point> pts_;
  std::vector<Triangle> tris_;
  std::vector<std::int32_t> free_;
  std::vector<std::int32_t> cavity_;
  std::vector<std::int32_t> stack_;
  std::vector<BoundaryEdge> boundary_;
  std::unordered_map<std::uint64_t, std::int32_t> edge_slots_;
  std::int32_t last_ = 0;
};

}  // namespace

Triangulation delaunay(std::span<const Point> points) {
  BowyerWatson bw(points);
  bw.run();
  return bw.result();
}

}  // namespace dualgraph
