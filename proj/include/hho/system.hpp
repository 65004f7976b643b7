// Global saddle-point system: assembly of the viscous and coupling blocks,
// Dirichlet treatment by lifting (nonhomogeneous data projected face-wise),
// sparse direct solve with a single zero-mean multiplier row, and energy /
// pressure error norms against closed-form exact fields.

#ifndef HHO_SYSTEM_HPP
#define HHO_SYSTEM_HPP

#include <Eigen/Sparse>
#include <memory>

#include "hho/dof_map.hpp"
#include "hho/local_ops.hpp"

namespace hho {

/// Gradient of a vector field; row i holds the gradient of component i.
using MatrixField = std::function<Eigen::Matrix2d(const Vec2&)>;

struct SaddleSystem {
  SaddleSystem(const PolygonalMesh& mesh, int k_, double nu_) : k(k_), nu(nu_), dofs(mesh, k_) {}

  int k = 0;
  double nu = 1.0;
  DofMap dofs;
  Eigen::SparseMatrix<double> A; ///< nu * a_h on velocity dofs (symmetric)
  Eigen::SparseMatrix<double> B; ///< coupling: b_h(v, q) = q^T B v
  Eigen::VectorXd m;             ///< pressure-integral (zero-mean constraint) row
  Eigen::VectorXd rhs_velocity;  ///< (f, v_h) moments; face entries are zero

  bool reduced = false;          ///< Dirichlet data attached
  Eigen::VectorXd lifting;       ///< u_{h,D}: boundary face blocks only
  double boundary_flux = 0.0;    ///< |∮ g.n| measured during apply_dirichlet
};

struct DiscreteSolution {
  Eigen::VectorXd velocity;      ///< full hybrid vector, boundary blocks included
  Eigen::VectorXd pressure;
  double multiplier = 0.0;
  double residual = 0.0;         ///< relative residual of the reduced solve
  double pressure_mean = 0.0;
  int dof_velocity = 0;          ///< unknowns actually solved (cells + interior faces)
  int dof_pressure = 0;
};

SaddleSystem assemble(const PolygonalMesh& mesh,
                      const std::vector<std::unique_ptr<ElementOps>>& ops, int k, double nu,
                      const VectorField& f);

/// Attach Dirichlet data. Passing a null callback means homogeneous data. The
/// compatibility integral of g.n over the boundary is measured and a warning is
/// printed when it exceeds 1e-8 times the perimeter.
/// `face_extra_exactness` can bump the projection quadrature per face.
void apply_dirichlet(SaddleSystem& sys, const PolygonalMesh& mesh, const VectorField& g,
                     const std::function<int(int)>& face_extra_exactness = {});

/// Direct sparse solve of the reduced system. Throws on breakdown.
DiscreteSolution solve(const SaddleSystem& sys, const PolygonalMesh& mesh);

/// Local hybrid velocity coefficients of element t out of the global vector.
Eigen::VectorXd gather_local_velocity(const PolygonalMesh& mesh, const DofMap& dofs,
                                      const Eigen::VectorXd& velocity, int t);
/// Pressure coefficients of element t.
Eigen::VectorXd gather_local_pressure(const DofMap& dofs, const Eigen::VectorXd& pressure, int t);

/// Residual of the divergence constraint rows, max over pressure tests.
double mass_conservation_defect(const SaddleSystem& sys, const DiscreteSolution& sol);

struct ErrorReport {
  double e_u = 0.0, e_p = 0.0;
  std::vector<double> e_u_T, e_p_T;
};

struct ErrorOptions {
  /// Extra quadrature exactness for selected elements (singular corners).
  std::function<int(int)> extra_exactness;
};

ErrorReport compute_errors(const PolygonalMesh& mesh,
                           const std::vector<std::unique_ptr<ElementOps>>& ops,
                           const DofMap& dofs, double nu, const DiscreteSolution& sol,
                           const VectorField& exact_u, const MatrixField& exact_grad_u,
                           const ScalarField& exact_p, const ErrorOptions& options = {});

} // namespace hho

#endif
