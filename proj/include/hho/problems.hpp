// Benchmark problem definitions: two smooth manufactured solutions on the unit
// square, the singular reentrant-corner solution on the L-shape, and the
// cylinder-in-channel flow driven by identical inflow/outflow profiles.

#ifndef HHO_PROBLEMS_HPP
#define HHO_PROBLEMS_HPP

#include <string>

#include "hho/system.hpp"

namespace hho {

struct ProblemSpec {
  std::string name;
  Domain domain;
  double nu = 1.0;
  VectorField f;        ///< body force (null = zero)
  VectorField g;        ///< Dirichlet datum (null = homogeneous)
  VectorField u;        ///< exact velocity, when available
  MatrixField grad_u;   ///< exact velocity gradient (row i = grad u_i)
  ScalarField p;        ///< exact zero-mean pressure, when available
  bool has_singularity = false;
  Vec2 singular_point = Vec2::Zero();

  bool has_exact() const { return static_cast<bool>(u); }

  /// +6 exactness on elements touching the singular point, else 0.
  std::function<int(int)> cell_quadrature_bump(const PolygonalMesh& mesh) const;
  std::function<int(int)> face_quadrature_bump(const PolygonalMesh& mesh) const;
};

/// Smooth exponential/trigonometric pair on the unit square; the body force
/// vanishes for nu = 1.
ProblemSpec example1(double nu = 1.0);
/// Trigonometric velocity with pressure x^6 - y^6 on the unit square.
ProblemSpec example2(double nu = 1.0);
/// Singular r^lambda corner flow on the L-shape, f = 0, nu = 1.
ProblemSpec example3();
/// Channel flow around a polygonal cylinder, all-Dirichlet data.
ProblemSpec example4();

/// Spot-check -nu*Lap(u) + grad(p) = f at random interior points with a finite
/// difference oracle; returns the largest relative residual found.
double check_problem_consistency(const ProblemSpec& prob, int n_samples = 20, unsigned seed = 7u);

} // namespace hho

#endif
