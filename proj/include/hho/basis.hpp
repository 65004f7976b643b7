// Polynomial bases on cells and faces, and the L2-orthogonal and elliptic
// projectors. Bases start from scaled monomials ((x-x_T)/h_T)^a about the
// barycenter and are orthonormalized internally through the Cholesky factor of
// the monomial mass matrix, which keeps local solves well conditioned for all
// degrees used here.

#ifndef HHO_BASIS_HPP
#define HHO_BASIS_HPP

#include <Eigen/Dense>
#include <functional>

#include "hho/mesh.hpp"
#include "hho/quadrature.hpp"

namespace hho {

using ScalarField = std::function<double(const Vec2&)>;
using VectorField = std::function<Vec2(const Vec2&)>;

/// Default scheme quadrature orders for polynomial degree k.
struct QuadDefaults {
  static int cell(int k) { return 2 * (k + 2); }
  static int face(int k) { return 2 * k + 3; }
  static int error(int k) { return 2 * (k + 2) + 4; }
};

inline int poly_dim_2d(int degree) { return (degree + 1) * (degree + 2) / 2; }

/// Orthonormal basis of P^l(T). Graded monomial ordering makes the bases
/// nested: the first dim(P^m) functions span P^m for every m <= l.
class CellBasis {
public:
  CellBasis(const PolygonalMesh& mesh, int t, int degree);

  int degree() const { return degree_; }
  int dimension() const { return static_cast<int>(powers_.size()); }
  const Vec2& center() const { return center_; }
  double scale() const { return scale_; }

  /// Values of all basis functions at a point.
  Eigen::VectorXd values(const Vec2& p) const;
  /// Gradients of all basis functions at a point (rows = functions).
  Eigen::Matrix<double, Eigen::Dynamic, 2> gradients(const Vec2& p) const;

  /// Mass matrix of the basis (identity to roundoff; kept for audits).
  const Eigen::MatrixXd& mass() const { return mass_; }
  /// Stiffness (gradient-gradient) Gram matrix.
  const Eigen::MatrixXd& stiffness() const { return stiffness_; }
  /// Condition number of the raw scaled-monomial mass matrix.
  double monomial_condition() const { return monomial_condition_; }

  /// Basis-change of coefficients to the scaled-monomial representation.
  Eigen::VectorXd to_monomial(const Eigen::VectorXd& coeffs) const;
  const std::vector<std::array<int, 2>>& powers() const { return powers_; }

  double evaluate(const Eigen::VectorXd& coeffs, const Vec2& p) const {
    return coeffs.dot(values(p));
  }
  Vec2 evaluate_gradient(const Eigen::VectorXd& coeffs, const Vec2& p) const {
    return gradients(p).transpose() * coeffs;
  }

private:
  int degree_;
  Vec2 center_;
  double scale_;
  std::vector<std::array<int, 2>> powers_;
  Eigen::MatrixXd change_;    // orthonormal = change_ * monomial
  Eigen::MatrixXd mass_, stiffness_;
  double monomial_condition_ = 0.0;

  Eigen::VectorXd monomial_values(const Vec2& p) const;
};

/// Orthonormal basis of P^l(F) in the arclength coordinate centered at the face
/// midpoint and scaled by h_F.
class FaceBasis {
public:
  FaceBasis(const PolygonalMesh& mesh, int f, int degree);

  int degree() const { return degree_; }
  int dimension() const { return degree_ + 1; }
  const Vec2& midpoint() const { return midpoint_; }
  const Vec2& tangent() const { return tangent_; }
  double length() const { return length_; }

  Eigen::VectorXd values(const Vec2& p) const;
  const Eigen::MatrixXd& mass() const { return mass_; }
  Eigen::VectorXd to_monomial(const Eigen::VectorXd& coeffs) const;

  double evaluate(const Eigen::VectorXd& coeffs, const Vec2& p) const {
    return coeffs.dot(values(p));
  }

private:
  int degree_;
  Vec2 midpoint_, tangent_;
  double length_;
  Eigen::MatrixXd change_;
  Eigen::MatrixXd mass_;
};

/// Values of all basis functions at the quadrature points (rows = points).
Eigen::MatrixXd evaluate_all(const CellBasis& basis, const QuadratureRule& rule);
Eigen::MatrixXd evaluate_all(const FaceBasis& basis, const QuadratureRule& rule);
/// x- and y-derivatives of all basis functions at the quadrature points.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> evaluate_gradients(const CellBasis& basis,
                                                               const QuadratureRule& rule);

/// L2-orthogonal projection onto the basis span; rule must integrate
/// basis x basis and basis x f accurately enough for the use at hand.
Eigen::VectorXd l2_project(const CellBasis& basis, const QuadratureRule& rule, const ScalarField& f);
Eigen::VectorXd l2_project(const FaceBasis& basis, const QuadratureRule& rule, const ScalarField& f);

/// Elliptic projection: gradients matched against all basis gradients, mean
/// fixed to the mean of f.
Eigen::VectorXd elliptic_project(const CellBasis& basis, const QuadratureRule& rule,
                                 const ScalarField& f, const VectorField& grad_f);

// Convenience wrappers building basis and default-order rule per call.
Eigen::VectorXd l2_project_cell(const PolygonalMesh& mesh, int t, int l, const ScalarField& f,
                                int exactness = -1);
Eigen::VectorXd l2_project_face(const PolygonalMesh& mesh, int f, int l, const ScalarField& g,
                                int exactness = -1);
Eigen::VectorXd elliptic_project_cell(const PolygonalMesh& mesh, int t, int l, const ScalarField& f,
                                      const VectorField& grad_f, int exactness = -1);

} // namespace hho

#endif
