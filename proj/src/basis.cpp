#include "hho/basis.hpp"

#include <cmath>
#include <stdexcept>

namespace hho {

namespace {

Eigen::MatrixXd gram(const Eigen::MatrixXd& vals_a, const Eigen::MatrixXd& vals_b,
                     const Eigen::VectorXd& w) {
  return vals_a.transpose() * w.asDiagonal() * vals_b;
}

// Cholesky-based orthonormalization change-of-basis: given the SPD monomial
// Gram M = L L^T, the family L^{-1} m is orthonormal.
Eigen::MatrixXd orthonormal_change(const Eigen::MatrixXd& mono_mass, const char* what) {
  Eigen::LLT<Eigen::MatrixXd> llt(mono_mass);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error(std::string("singular mass matrix (") + what + ")");
  const int n = static_cast<int>(mono_mass.rows());
  return llt.matrixL().solve(Eigen::MatrixXd::Identity(n, n));
}

double spd_condition(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  const auto& ev = eig.eigenvalues();
  return ev[ev.size() - 1] / std::max(ev[0], 1e-300);
}

} // namespace

CellBasis::CellBasis(const PolygonalMesh& mesh, int t, int degree)
    : degree_(degree),
      center_(mesh.element(t).barycenter),
      scale_(mesh.element(t).diameter) {
  for (int l = 0; l <= degree; ++l)
    for (int i = 0; i <= l; ++i) powers_.push_back({l - i, i});

  const QuadratureRule rule = cell_quadrature(mesh, t, 2 * std::max(degree, 1));
  const int dim = dimension();
  Eigen::MatrixXd vals(rule.size(), dim);
  Eigen::MatrixXd dx(rule.size(), dim), dy(rule.size(), dim);
  for (int q = 0; q < rule.size(); ++q) {
    const Vec2 z = (rule.point(q) - center_) / scale_;
    for (int j = 0; j < dim; ++j) {
      const auto [a, b] = powers_[j];
      const double xa = std::pow(z.x(), a), yb = std::pow(z.y(), b);
      vals(q, j) = xa * yb;
      dx(q, j) = a == 0 ? 0.0 : a * std::pow(z.x(), a - 1) * yb / scale_;
      dy(q, j) = b == 0 ? 0.0 : b * xa * std::pow(z.y(), b - 1) / scale_;
    }
  }
  const Eigen::MatrixXd mono_mass = gram(vals, vals, rule.weights);
  monomial_condition_ = spd_condition(mono_mass);
  change_ = orthonormal_change(mono_mass, "cell basis");
  mass_ = change_ * mono_mass * change_.transpose();
  stiffness_ = change_ * (gram(dx, dx, rule.weights) + gram(dy, dy, rule.weights)) * change_.transpose();
}

Eigen::VectorXd CellBasis::monomial_values(const Vec2& p) const {
  const Vec2 z = (p - center_) / scale_;
  Eigen::VectorXd vals(dimension());
  for (int j = 0; j < dimension(); ++j)
    vals[j] = std::pow(z.x(), powers_[j][0]) * std::pow(z.y(), powers_[j][1]);
  return vals;
}

Eigen::VectorXd CellBasis::values(const Vec2& p) const { return change_ * monomial_values(p); }

Eigen::Matrix<double, Eigen::Dynamic, 2> CellBasis::gradients(const Vec2& p) const {
  const Vec2 z = (p - center_) / scale_;
  Eigen::Matrix<double, Eigen::Dynamic, 2> g(dimension(), 2);
  for (int j = 0; j < dimension(); ++j) {
    const auto [a, b] = powers_[j];
    const double xa = std::pow(z.x(), a), yb = std::pow(z.y(), b);
    g(j, 0) = a == 0 ? 0.0 : a * std::pow(z.x(), a - 1) * yb / scale_;
    g(j, 1) = b == 0 ? 0.0 : b * xa * std::pow(z.y(), b - 1) / scale_;
  }
  return change_ * g;
}

Eigen::VectorXd CellBasis::to_monomial(const Eigen::VectorXd& coeffs) const {
  return change_.transpose() * coeffs;
}

FaceBasis::FaceBasis(const PolygonalMesh& mesh, int f, int degree) : degree_(degree) {
  const Face& face = mesh.face(f);
  midpoint_ = face.midpoint;
  length_ = face.length;
  tangent_ = (mesh.vertex(face.v1) - mesh.vertex(face.v0)) / length_;

  const QuadratureRule rule = face_quadrature(mesh, f, 2 * std::max(degree, 1));
  Eigen::MatrixXd vals(rule.size(), dimension());
  for (int q = 0; q < rule.size(); ++q) {
    const double s = (rule.point(q) - midpoint_).dot(tangent_) / length_;
    double pw = 1.0;
    for (int j = 0; j <= degree_; ++j, pw *= s) vals(q, j) = pw;
  }
  const Eigen::MatrixXd mono_mass = gram(vals, vals, rule.weights);
  change_ = orthonormal_change(mono_mass, "face basis");
  mass_ = change_ * mono_mass * change_.transpose();
}

Eigen::VectorXd FaceBasis::values(const Vec2& p) const {
  const double s = (p - midpoint_).dot(tangent_) / length_;
  Eigen::VectorXd mono(dimension());
  double pw = 1.0;
  for (int j = 0; j <= degree_; ++j, pw *= s) mono[j] = pw;
  return change_ * mono;
}

Eigen::VectorXd FaceBasis::to_monomial(const Eigen::VectorXd& coeffs) const {
  return change_.transpose() * coeffs;
}

Eigen::MatrixXd evaluate_all(const CellBasis& basis, const QuadratureRule& rule) {
  Eigen::MatrixXd vals(rule.size(), basis.dimension());
  for (int q = 0; q < rule.size(); ++q) vals.row(q) = basis.values(rule.point(q)).transpose();
  return vals;
}

Eigen::MatrixXd evaluate_all(const FaceBasis& basis, const QuadratureRule& rule) {
  Eigen::MatrixXd vals(rule.size(), basis.dimension());
  for (int q = 0; q < rule.size(); ++q) vals.row(q) = basis.values(rule.point(q)).transpose();
  return vals;
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> evaluate_gradients(const CellBasis& basis,
                                                               const QuadratureRule& rule) {
  Eigen::MatrixXd dx(rule.size(), basis.dimension()), dy(rule.size(), basis.dimension());
  for (int q = 0; q < rule.size(); ++q) {
    const auto g = basis.gradients(rule.point(q));
    dx.row(q) = g.col(0).transpose();
    dy.row(q) = g.col(1).transpose();
  }
  return {dx, dy};
}

Eigen::VectorXd l2_project(const CellBasis& basis, const QuadratureRule& rule, const ScalarField& f) {
  const Eigen::MatrixXd vals = evaluate_all(basis, rule);
  Eigen::VectorXd fv(rule.size());
  for (int q = 0; q < rule.size(); ++q) fv[q] = f(rule.point(q));
  const Eigen::VectorXd rhs = vals.transpose() * rule.weights.cwiseProduct(fv);
  return basis.mass().ldlt().solve(rhs);
}

Eigen::VectorXd l2_project(const FaceBasis& basis, const QuadratureRule& rule, const ScalarField& f) {
  const Eigen::MatrixXd vals = evaluate_all(basis, rule);
  Eigen::VectorXd fv(rule.size());
  for (int q = 0; q < rule.size(); ++q) fv[q] = f(rule.point(q));
  const Eigen::VectorXd rhs = vals.transpose() * rule.weights.cwiseProduct(fv);
  return basis.mass().ldlt().solve(rhs);
}

Eigen::VectorXd elliptic_project(const CellBasis& basis, const QuadratureRule& rule,
                                 const ScalarField& f, const VectorField& grad_f) {
  const int dim = basis.dimension();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim);
  double f_mean = 0.0, area = 0.0, const_val = 0.0;
  for (int q = 0; q < rule.size(); ++q) {
    const Vec2 p = rule.point(q);
    const auto g = basis.gradients(p);
    const Vec2 gf = grad_f(p);
    rhs += rule.weights[q] * (g * gf);
    f_mean += rule.weights[q] * f(p);
    area += rule.weights[q];
    const_val = basis.values(p)[0]; // constant function value
  }
  // The first basis function is the constant mode; the remaining block of the
  // stiffness matrix is SPD.
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(dim);
  if (dim > 1) {
    const Eigen::MatrixXd K = basis.stiffness().bottomRightCorner(dim - 1, dim - 1);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(K);
    if (ldlt.info() != Eigen::Success)
      throw std::runtime_error("elliptic projector: singular stiffness system");
    coeffs.tail(dim - 1) = ldlt.solve(rhs.tail(dim - 1));
  }
  // mean condition: (pi f - f, 1)_T = 0; non-constant modes have zero mean
  coeffs[0] = f_mean / (area * const_val);
  return coeffs;
}

namespace {
QuadratureRule default_cell_rule(const PolygonalMesh& mesh, int t, int l, int exactness) {
  return cell_quadrature(mesh, t, exactness > 0 ? exactness : QuadDefaults::cell(l));
}
} // namespace

Eigen::VectorXd l2_project_cell(const PolygonalMesh& mesh, int t, int l, const ScalarField& f,
                                int exactness) {
  const CellBasis basis(mesh, t, l);
  return l2_project(basis, default_cell_rule(mesh, t, l, exactness), f);
}

Eigen::VectorXd l2_project_face(const PolygonalMesh& mesh, int f, int l, const ScalarField& g,
                                int exactness) {
  const FaceBasis basis(mesh, f, l);
  const QuadratureRule rule = face_quadrature(mesh, f, exactness > 0 ? exactness : QuadDefaults::face(l));
  return l2_project(basis, rule, g);
}

Eigen::VectorXd elliptic_project_cell(const PolygonalMesh& mesh, int t, int l, const ScalarField& f,
                                      const VectorField& grad_f, int exactness) {
  const CellBasis basis(mesh, t, l);
  return elliptic_project(basis, default_cell_rule(mesh, t, l, exactness), f, grad_f);
}

} // namespace hho
