// Quadrature over segments, triangles and star-shaped polygons. Polygon rules
// fan the cell into triangles from the barycenter; triangle rules collapse a
// tensor Gauss-Legendre grid, so all weights are positive at any order.

#ifndef HHO_QUADRATURE_HPP
#define HHO_QUADRATURE_HPP

#include <Eigen/Dense>

#include "hho/mesh.hpp"

namespace hho {

struct QuadratureRule {
  Eigen::Matrix<double, Eigen::Dynamic, 2> points;
  Eigen::VectorXd weights;
  int exactness = 0;

  int size() const { return static_cast<int>(weights.size()); }
  Vec2 point(int q) const { return points.row(q).transpose(); }

  /// Integrate a scalar callback.
  template <typename F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (int q = 0; q < size(); ++q) s += weights[q] * f(point(q));
    return s;
  }
};

/// Gauss-Legendre nodes and weights on [-1,1], exact for degree 2n-1.
void gauss_legendre(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights);

/// Rule on the triangle (a,b,c), exact for total degree `exactness`.
QuadratureRule triangle_rule(const Vec2& a, const Vec2& b, const Vec2& c, int exactness);

/// Rule on a star-shaped-about-barycenter polygon via the barycenter fan.
QuadratureRule polygon_rule(const std::vector<Vec2>& loop, int exactness);

/// Rule on the segment [a,b].
QuadratureRule segment_rule(const Vec2& a, const Vec2& b, int exactness);

/// Rule over cell T of the mesh.
QuadratureRule cell_quadrature(const PolygonalMesh& mesh, int t, int exactness);

/// Rule over face F of the mesh.
QuadratureRule face_quadrature(const PolygonalMesh& mesh, int f, int exactness);

} // namespace hho

#endif
