// Small 2D geometric primitives shared by the mesh and quadrature layers.

#ifndef HHO_GEOMETRY_HPP
#define HHO_GEOMETRY_HPP

#include <Eigen/Dense>
#include <vector>

namespace hho {

using Vec2 = Eigen::Vector2d;

/// Signed area of a polygon given as an ordered vertex loop (positive = counterclockwise).
double signed_area(const std::vector<Vec2>& loop);

/// Area centroid of a simple polygon.
Vec2 polygon_centroid(const std::vector<Vec2>& loop);

/// Maximum pairwise vertex distance.
double polygon_diameter(const std::vector<Vec2>& loop);

/// Strict point-in-polygon test (crossing number). Points on the boundary are unreliable.
bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& loop);

/// True if the polygon is simple (no two non-adjacent edges intersect).
bool polygon_is_simple(const std::vector<Vec2>& loop);

/// Proper intersection test for segments [a,b] and [c,d]; shared endpoints do not count.
bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d);

} // namespace hho

#endif
