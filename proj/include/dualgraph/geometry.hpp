#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "dualgraph/graph.hpp"

namespace dualgraph {

/// Points in the unit square, in generation order (index = vertex id).
struct PointCloud {
  std::vector<Point> points;
  std::uint64_t seed = 0;
};

/// n independent uniform points in [0,1)^2. Throws InputError for n == 0.
PointCloud random_point_cloud(std::size_t n, std::uint64_t seed);

/// Exact sign of the orientation determinant: +1 when (a, b, c) turn
/// counterclockwise, -1 clockwise, 0 collinear.
int orientation(Point a, Point b, Point c);

enum class CircleSide { inside, on, outside };

/// Where d lies relative to the circle through a, b, c (any orientation).
/// Exact for all finite double inputs. Throws InputError if a, b, c are collinear.
CircleSide in_circumcircle(Point a, Point b, Point c, Point d);

struct Triangulation {
  Graph graph;
  /// Counterclockwise vertex-index triples.
  std::vector<std::array<std::uint32_t, 3>> triangles;
};

/// Delaunay triangulation by incremental Bowyer-Watson insertion in
/// generation order. The unbounded side is handled with ghost triangles
/// hanging off every hull edge, removed at the end. Co-circular ties resolve
/// as "on the circle counts as outside".
///
/// Throws InputError for fewer than three points, duplicate points (naming
/// both indices), or an all-collinear input.
Triangulation delaunay(std::span<const Point> points);
inline Triangulation delaunay(const PointCloud& cloud) { return delaunay(cloud.points); }

}  // namespace dualgraph
