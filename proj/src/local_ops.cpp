#include "hho/local_ops.hpp"

#include <stdexcept>

#include "hho/parallel.hpp"

namespace hho {

ElementOps::ElementOps(const PolygonalMesh& mesh, int t, int k, const SchemeConfig& config)
    : t_(t), h_T_(mesh.element(t).diameter), cell_basis_(mesh, t, k + 1) {
  const Element& el = mesh.element(t);
  const int n_faces = static_cast<int>(el.faces.size());
  const int Nr = cell_basis_.dimension();  // dim P^{k+1}
  const int Nc = poly_dim_2d(k);           // dim P^k (leading block, nested basis)
  const int Nf = k + 1;

  layout_.k = k;
  layout_.n_cell = Nc;
  layout_.n_face = Nf;
  layout_.face_offset.resize(n_faces);
  for (int lf = 0; lf < n_faces; ++lf) layout_.face_offset[lf] = Nc + lf * Nf;
  layout_.scalar_total = Nc + n_faces * Nf;
  const int ns = layout_.scalar_total;

  face_bases_.reserve(n_faces);
  for (int lf = 0; lf < n_faces; ++lf) face_bases_.emplace_back(mesh, el.faces[lf], k);

  // cell Grams
  const QuadratureRule cell_rule = cell_quadrature(mesh, t, QuadDefaults::cell(k));
  const Eigen::MatrixXd vals = evaluate_all(cell_basis_, cell_rule);
  const auto [dx, dy] = evaluate_gradients(cell_basis_, cell_rule);
  const Eigen::MatrixXd& K = cell_basis_.stiffness();
  const Eigen::MatrixXd Gx = vals.transpose() * cell_rule.weights.asDiagonal() * dx;
  const Eigen::MatrixXd Gy = vals.transpose() * cell_rule.weights.asDiagonal() * dy;

  // face Grams: traces of the cell basis, normal gradients, face basis
  std::vector<Eigen::MatrixXd> Mcf(n_faces), Mcc(n_faces), Bn(n_faces), Bc(n_faces);
  for (int lf = 0; lf < n_faces; ++lf) {
    const int f = el.faces[lf];
    const Vec2 n_TF = mesh.outward_normal(t, lf);
    const QuadratureRule rule = face_quadrature(mesh, f, QuadDefaults::face(k));
    const Eigen::MatrixXd vc = evaluate_all(cell_basis_, rule);
    const Eigen::MatrixXd vf = evaluate_all(face_bases_[lf], rule);
    Eigen::MatrixXd gn(rule.size(), Nr);
    for (int q = 0; q < rule.size(); ++q)
      gn.row(q) = (cell_basis_.gradients(rule.point(q)) * n_TF).transpose();
    const auto W = rule.weights.asDiagonal();
    Mcf[lf] = vc.transpose() * W * vf;
    Mcc[lf] = vc.transpose() * W * vc;
    Bn[lf] = gn.transpose() * W * vf;
    Bc[lf] = gn.transpose() * W * vc;
  }

  // velocity reconstruction: gradients tested against grad P^{k+1}; the
  // non-constant block of the stiffness matrix is SPD, the constant mode is
  // fixed by matching means (nested orthonormal basis: plain coefficient copy)
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(Nr - 1, ns);
  for (int i = 1; i < Nr; ++i) {
    for (int j = 0; j < Nc; ++j) {
      double v = K(i, j);
      for (int lf = 0; lf < n_faces; ++lf) v -= Bc[lf](i, j);
      B(i - 1, j) = v;
    }
    for (int lf = 0; lf < n_faces; ++lf)
      for (int l = 0; l < Nf; ++l) B(i - 1, layout_.face_offset[lf] + l) = Bn[lf](i, l);
  }
  R_ = Eigen::MatrixXd::Zero(Nr, ns);
  {
    Eigen::LDLT<Eigen::MatrixXd> ldlt(K.bottomRightCorner(Nr - 1, Nr - 1));
    if (ldlt.info() != Eigen::Success)
      throw std::runtime_error("velocity reconstruction: rank-deficient stiffness block");
    R_.bottomRows(Nr - 1) = ldlt.solve(B);
  }
  R_(0, 0) = 1.0;

  // divergence reconstruction (orthonormal cell basis: coefficients directly)
  Dv_ = Eigen::MatrixXd::Zero(Nc, 2 * ns);
  for (int comp = 0; comp < 2; ++comp) {
    const Eigen::MatrixXd& G = comp == 0 ? Gx : Gy;
    for (int i = 0; i < Nc; ++i) {
      for (int j = 0; j < Nc; ++j) {
        double v = G(i, j);
        for (int lf = 0; lf < n_faces; ++lf)
          v -= mesh.outward_normal(t, lf)[comp] * Mcc[lf](i, j);
        Dv_(i, comp * ns + j) = v;
      }
      for (int lf = 0; lf < n_faces; ++lf) {
        const double nc = mesh.outward_normal(t, lf)[comp];
        for (int l = 0; l < Nf; ++l) Dv_(i, comp * ns + layout_.face_offset[lf] + l) = nc * Mcf[lf](i, l);
      }
    }
  }

  // difference operators and stabilizer
  Eigen::MatrixXd delta_T = R_.topRows(Nc);
  delta_T.leftCols(Nc) -= Eigen::MatrixXd::Identity(Nc, Nc);
  S_ = (1.0 / (h_T_ * h_T_)) * delta_T.transpose() * delta_T;
  for (int lf = 0; lf < n_faces; ++lf) {
    Eigen::MatrixXd delta_F = Mcf[lf].transpose() * R_;
    delta_F.middleCols(layout_.face_offset[lf], Nf) -= Eigen::MatrixXd::Identity(Nf, Nf);
    const double w = config.stab_face_weight == SchemeConfig::StabFaceWeight::FaceDiameter
                         ? face_bases_[lf].length()
                         : h_T_;
    S_ += (1.0 / w) * delta_F.transpose() * delta_F;
  }

  A_ = R_.transpose() * K * R_ + S_;

  // Gram of the local seminorm (cell gradient + scaled face differences)
  N1_ = Eigen::MatrixXd::Zero(ns, ns);
  N1_.topLeftCorner(Nc, Nc) = K.topLeftCorner(Nc, Nc);
  for (int lf = 0; lf < n_faces; ++lf) {
    Eigen::MatrixXd T_F = Eigen::MatrixXd::Zero(Nf, ns);
    T_F.leftCols(Nc) = -Mcf[lf].topRows(Nc).transpose();
    T_F.middleCols(layout_.face_offset[lf], Nf) = Eigen::MatrixXd::Identity(Nf, Nf);
    N1_ += (1.0 / face_bases_[lf].length()) * T_F.transpose() * T_F;
  }
}

Eigen::VectorXd ElementOps::apply_reconstruction(const Eigen::VectorXd& v) const {
  const int ns = layout_.scalar_total;
  const int Nr = cell_basis_.dimension();
  Eigen::VectorXd out(2 * Nr);
  out.head(Nr) = R_ * v.head(ns);
  out.tail(Nr) = R_ * v.tail(ns);
  return out;
}

Eigen::VectorXd ElementOps::apply_divergence(const Eigen::VectorXd& v) const { return Dv_ * v; }

double ElementOps::stab_form(const Eigen::VectorXd& w, const Eigen::VectorXd& v) const {
  const int ns = layout_.scalar_total;
  return w.head(ns).dot(S_ * v.head(ns)) + w.tail(ns).dot(S_ * v.tail(ns));
}

double ElementOps::viscous_form(const Eigen::VectorXd& w, const Eigen::VectorXd& v) const {
  const int ns = layout_.scalar_total;
  return w.head(ns).dot(A_ * v.head(ns)) + w.tail(ns).dot(A_ * v.tail(ns));
}

double ElementOps::norm_1T(const Eigen::VectorXd& v) const {
  const int ns = layout_.scalar_total;
  const double sq = v.head(ns).dot(N1_ * v.head(ns)) + v.tail(ns).dot(N1_ * v.tail(ns));
  return std::sqrt(std::max(sq, 0.0));
}

Vec2 ElementOps::reconstruction_value(const Eigen::VectorXd& recon_coeffs, const Vec2& p) const {
  const int Nr = cell_basis_.dimension();
  const Eigen::VectorXd vals = cell_basis_.values(p);
  return Vec2(recon_coeffs.head(Nr).dot(vals), recon_coeffs.tail(Nr).dot(vals));
}

double ElementOps::reconstruction_divergence(const Eigen::VectorXd& recon_coeffs,
                                             const Vec2& p) const {
  const int Nr = cell_basis_.dimension();
  const auto g = cell_basis_.gradients(p);
  return recon_coeffs.head(Nr).dot(g.col(0)) + recon_coeffs.tail(Nr).dot(g.col(1));
}

Eigen::Matrix2d ElementOps::reconstruction_gradient(const Eigen::VectorXd& recon_coeffs,
                                                    const Vec2& p) const {
  const int Nr = cell_basis_.dimension();
  const auto g = cell_basis_.gradients(p);
  Eigen::Matrix2d out;
  out(0, 0) = recon_coeffs.head(Nr).dot(g.col(0));
  out(0, 1) = recon_coeffs.head(Nr).dot(g.col(1));
  out(1, 0) = recon_coeffs.tail(Nr).dot(g.col(0));
  out(1, 1) = recon_coeffs.tail(Nr).dot(g.col(1));
  return out;
}

std::vector<std::unique_ptr<ElementOps>> build_element_ops(const PolygonalMesh& mesh, int k,
                                                           const SchemeConfig& config) {
  std::vector<std::unique_ptr<ElementOps>> ops(mesh.n_elements());
  parallel_for(mesh.n_elements(),
               [&](int t) { ops[t] = std::make_unique<ElementOps>(mesh, t, k, config); });
  return ops;
}

Eigen::VectorXd interpolate_local(const PolygonalMesh& mesh, int t, int k, const VectorField& u) {
  const Element& el = mesh.element(t);
  const int n_faces = static_cast<int>(el.faces.size());
  const int Nc = poly_dim_2d(k);
  const int Nf = k + 1;
  const int ns = Nc + n_faces * Nf;
  Eigen::VectorXd out(2 * ns);

  const CellBasis cb(mesh, t, k + 1);
  const QuadratureRule cell_rule = cell_quadrature(mesh, t, QuadDefaults::cell(k));
  Eigen::MatrixXd moments = Eigen::MatrixXd::Zero(Nc, 2);
  for (int q = 0; q < cell_rule.size(); ++q) {
    const Vec2 p = cell_rule.point(q);
    const Eigen::VectorXd vals = cb.values(p).head(Nc);
    const Vec2 uq = u(p);
    moments.col(0) += cell_rule.weights[q] * uq.x() * vals;
    moments.col(1) += cell_rule.weights[q] * uq.y() * vals;
  }
  out.segment(0, Nc) = moments.col(0);
  out.segment(ns, Nc) = moments.col(1);

  for (int lf = 0; lf < n_faces; ++lf) {
    const FaceBasis fb(mesh, el.faces[lf], k);
    const QuadratureRule rule = face_quadrature(mesh, el.faces[lf], QuadDefaults::face(k));
    Eigen::MatrixXd fm = Eigen::MatrixXd::Zero(Nf, 2);
    for (int q = 0; q < rule.size(); ++q) {
      const Vec2 p = rule.point(q);
      const Eigen::VectorXd vals = fb.values(p);
      const Vec2 uq = u(p);
      fm.col(0) += rule.weights[q] * uq.x() * vals;
      fm.col(1) += rule.weights[q] * uq.y() * vals;
    }
    out.segment(Nc + lf * Nf, Nf) = fm.col(0);
    out.segment(ns + Nc + lf * Nf, Nf) = fm.col(1);
  }
  return out;
}

double stab_interpolation_seminorm(const PolygonalMesh& mesh, int k, const VectorField& u) {
  double sq = 0.0;
  for (int t = 0; t < mesh.n_elements(); ++t) {
    const ElementOps ops(mesh, t, k);
    const Eigen::VectorXd iu = interpolate_local(mesh, t, k, u);
    sq += ops.stab_form(iu, iu);
  }
  return std::sqrt(std::max(sq, 0.0));
}

} // namespace hho
