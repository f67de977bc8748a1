#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

#include "dualgraph/error.hpp"
#include "dualgraph/geometry.hpp"

using namespace dualgraph;
using Rational = boost::multiprecision::cpp_rational;

namespace {

int sign(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

int exact_orientation(Point a, Point b, Point c) {
  const Rational ax(a.x), ay(a.y), bx(b.x), by(b.y), cx(c.x), cy(c.y);
  return sign((bx - ax) * (cy - ay) - (by - ay) * (cx - ax));
}

// Sign of the lifted determinant, flipped for clockwise triples. A plain
// double evaluation settles clear cases for coordinates of order one.
CircleSide exact_circle(Point a, Point b, Point c, Point d) {
  {
    const double adx = a.x - d.x, ady = a.y - d.y, bdx = b.x - d.x, bdy = b.y - d.y, cdx = c.x - d.x,
                 cdy = c.y - d.y;
    const double det = (adx * adx + ady * ady) * (bdx * cdy - cdx * bdy) -
                       (bdx * bdx + bdy * bdy) * (adx * cdy - cdx * ady) +
                       (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady);
    const double orient = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    if (std::abs(det) > 1e-9 && std::abs(orient) > 1e-9 && std::max({std::abs(adx), std::abs(bdx), std::abs(cdx),
                                                                      std::abs(ady), std::abs(bdy), std::abs(cdy)}) < 4) {
      return (det > 0) == (orient > 0) ? CircleSide::inside : CircleSide::outside;
    }
  }
  const Rational dx(d.x), dy(d.y);
  const Rational adx = Rational(a.x) - dx, ady = Rational(a.y) - dy;
  const Rational bdx = Rational(b.x) - dx, bdy = Rational(b.y) - dy;
  const Rational cdx = Rational(c.x) - dx, cdy = Rational(c.y) - dy;
  const Rational det = (adx * adx + ady * ady) * (bdx * cdy - cdx * bdy) -
                       (bdx * bdx + bdy * bdy) * (adx * cdy - cdx * ady) +
                       (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady);
  const int s = sign(det) * exact_orientation(a, b, c);
  return s > 0 ? CircleSide::inside : (s < 0 ? CircleSide::outside : CircleSide::on);
}

void check_triangulation(const std::vector<Point>& pts, const Triangulation& t) {
  const std::size_t n = pts.size();
  CHECK(t.graph.vertex_count() == n);
  CHECK(is_connected(t.graph));
  CHECK(t.graph.edge_count() <= 3 * n - 6);
  std::set<Edge> from_triangles;
  for (const auto& tri : t.triangles) {
    CHECK(orientation(pts[tri[0]], pts[tri[1]], pts[tri[2]]) > 0);
    for (int i = 0; i < 3; ++i) from_triangles.insert(make_edge(tri[i], tri[(i + 1) % 3]));
    for (std::uint32_t v = 0; v < n; ++v) {
      if (v == tri[0] || v == tri[1] || v == tri[2]) continue;
      CHECK(exact_circle(pts[tri[0]], pts[tri[1]], pts[tri[2]], pts[v]) != CircleSide::inside);
    }
  }
  CHECK(std::equal(from_triangles.begin(), from_triangles.end(), t.graph.edges().begin(), t.graph.edges().end()));
  // Euler: with h hull vertices, T = 2n - 2 - h and E = 3n - 3 - h.
  const auto tri_count = static_cast<long long>(t.triangles.size());
  const auto h = 2 * static_cast<long long>(n) - 2 - tri_count;
  CHECK(static_cast<long long>(t.graph.edge_count()) == 3 * static_cast<long long>(n) - 3 - h);
}

}  // namespace

TEST_CASE("point clouds are reproducible and in the unit square") {
  const PointCloud a = random_point_cloud(500, 7);
  const PointCloud b = random_point_cloud(500, 7);
  CHECK(a.points == b.points);
  CHECK(a.points != random_point_cloud(500, 8).points);
  for (const Point& p : a.points) {
    CHECK(p.x >= 0.0);
    CHECK(p.x < 1.0);
    CHECK(p.y >= 0.0);
    CHECK(p.y < 1.0);
  }
  CHECK_THROWS_AS(random_point_cloud(0, 1), InputError);
}

TEST_CASE("orientation is exact") {
  CHECK(orientation({0, 0}, {1, 0}, {0, 1}) == 1);
  CHECK(orientation({0, 0}, {0, 1}, {1, 0}) == -1);
  CHECK(orientation({0.5, 0.5}, {12, 12}, {24, 24}) == 0);
  // Nudging one coordinate by an ulp near a collinear triple.
  std::mt19937_64 rng(1);
  for (int i = 0; i < 2000; ++i) {
    Point a{0.5, 0.5};
    Point c{24, 24};
    Point b{0.5 + (i % 64) * 0x1p-50, 0.5};
    b.y = std::nextafter(b.x, rng() & 1 ? 2.0 : 0.0);
    CHECK(orientation(a, b, c) == exact_orientation(a, b, c));
  }
}

TEST_CASE("in-circle test is exact") {
  // Corners of a square are co-circular.
  CHECK(in_circumcircle({0, 0}, {1, 0}, {1, 1}, {0, 1}) == CircleSide::on);
  CHECK(in_circumcircle({0, 0}, {1, 0}, {1, 1}, {0.5, 0.5}) == CircleSide::inside);
  CHECK(in_circumcircle({0, 0}, {1, 1}, {1, 0}, {0.5, 0.5}) == CircleSide::inside);
  CHECK(in_circumcircle({0, 0}, {1, 0}, {1, 1}, {3, 3}) == CircleSide::outside);
  CHECK_THROWS_AS(in_circumcircle({0, 0}, {1, 1}, {2, 2}, {0, 1}), InputError);

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 3000; ++i) {
    Point a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
    if (exact_orientation(a, b, c) == 0) continue;
    // Near-degenerate: d is a square corner perturbed by a few ulps.
    Point d = i % 2 ? Point{u(rng), u(rng)} : Point{std::nextafter(1.0, 0.0), 1.0};
    if (i % 2 == 0) {
      a = {0, 0};
      b = {1, 0};
      c = {std::nextafter(1.0, double(i % 3)), 1};
    }
    CHECK(in_circumcircle(a, b, c, d) == exact_circle(a, b, c, d));
  }
}

TEST_CASE("Delaunay triangulations of random clouds") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const PointCloud cloud = random_point_cloud(40 + 10 * seed, seed);
    const Triangulation t = delaunay(cloud);
    check_triangulation(cloud.points, t);
    CHECK(std::equal(t.graph.coords().begin(), t.graph.coords().end(), cloud.points.begin(), cloud.points.end()));
  }
}

TEST_CASE("co-circular lattice points still triangulate") {
  std::vector<Point> pts;
  for (int r = 0; r < 5; ++r) {
    for (int c = 0; c < 5; ++c) pts.push_back({double(c), double(r)});
  }
  const Triangulation t = delaunay(pts);
  check_triangulation(pts, t);
  CHECK(t.triangles.size() == 32);
  CHECK(t.graph.edge_count() == 56);
}

TEST_CASE("small and degenerate inputs") {
  const Triangulation tri = delaunay(std::vector<Point>{{0, 0}, {1, 0}, {0, 1}});
  CHECK(tri.triangles.size() == 1);
  CHECK(tri.graph.edge_count() == 3);

  const std::vector<Point> with_collinear_start{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {1, 1}};
  check_triangulation(with_collinear_start, delaunay(with_collinear_start));

  CHECK_THROWS_AS(delaunay(std::vector<Point>{{0, 0}, {1, 1}}), InputError);
  CHECK_THROWS_AS(delaunay(std::vector<Point>{{0, 0}, {1, 1}, {2, 2}, {3, 3}}), InputError);
  CHECK_THROWS_WITH_AS(delaunay(std::vector<Point>{{0, 0}, {1, 0}, {0.5, 1}, {1, 0}}),
                       doctest::Contains("3"), InputError);
}
