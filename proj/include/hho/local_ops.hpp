// Per-element HHO machinery: hybrid unknown layout, interpolator, velocity and
// divergence reconstructions, difference operators, stabilizer and the local
// viscous form. Vector-valued operators act componentwise, so everything is
// built once for scalars and applied to both velocity components.

#ifndef HHO_LOCAL_OPS_HPP
#define HHO_LOCAL_OPS_HPP

#include <memory>

#include "hho/basis.hpp"

namespace hho {

struct SchemeConfig {
  /// Face weight of the stabilizer: h_F^{-1} as in the defining formula, or
  /// h_T^{-1} as in the expanded form used by the stability proof. The two are
  /// equivalent up to the mesh regularity constant.
  enum class StabFaceWeight { FaceDiameter, CellDiameter };
  StabFaceWeight stab_face_weight = StabFaceWeight::FaceDiameter;
};

/// Index layout of the scalar hybrid unknown (cell block, then one block per
/// face in local order). Vector unknowns stack the two components: [x | y].
struct HybridLayout {
  int k = 0;
  int n_cell = 0;               ///< dim P^k(T)
  int n_face = 0;               ///< dim P^k(F) = k+1
  std::vector<int> face_offset; ///< scalar offset of each local face block
  int scalar_total = 0;
  int vector_total() const { return 2 * scalar_total; }
};

/// All local operators of one element. Immutable once constructed; elements
/// can be built and used concurrently.
class ElementOps {
public:
  ElementOps(const PolygonalMesh& mesh, int t, int k, const SchemeConfig& config = {});

  int t() const { return t_; }
  int k() const { return layout_.k; }
  const HybridLayout& layout() const { return layout_; }
  const CellBasis& cell_basis() const { return cell_basis_; }     ///< degree k+1, nested
  const FaceBasis& face_basis(int lf) const { return face_bases_[lf]; }
  double h_T() const { return h_T_; }

  /// Scalar velocity reconstruction matrix r_T^{k+1}: (dim P^{k+1}) x n_s.
  const Eigen::MatrixXd& reconstruction() const { return R_; }
  /// Divergence reconstruction D_T^k: (dim P^k) x (2 n_s), acting on [x|y].
  const Eigen::MatrixXd& divergence() const { return Dv_; }
  /// Scalar stabilizer Gram s_T.
  const Eigen::MatrixXd& stabilizer() const { return S_; }
  /// Scalar viscous Gram a_T = R^T K R + S.
  const Eigen::MatrixXd& viscous() const { return A_; }
  /// Scalar Gram of the local seminorm |||.|||_{1,T}.
  const Eigen::MatrixXd& norm_gram() const { return N1_; }

  /// Coefficients of r_T^{k+1} v in [P^{k+1}]^2 (stacked components).
  Eigen::VectorXd apply_reconstruction(const Eigen::VectorXd& v) const;
  /// Coefficients of D_T^k v in P^k(T).
  Eigen::VectorXd apply_divergence(const Eigen::VectorXd& v) const;

  double stab_form(const Eigen::VectorXd& w, const Eigen::VectorXd& v) const;
  double viscous_form(const Eigen::VectorXd& w, const Eigen::VectorXd& v) const;
  /// |||v|||_{1,T} = (||grad v_T||^2 + sum_F h_F^{-1} ||v_F - v_T||^2)^{1/2}.
  double norm_1T(const Eigen::VectorXd& v) const;

  /// Evaluate the vector reconstruction (coefficients from apply_reconstruction).
  Vec2 reconstruction_value(const Eigen::VectorXd& recon_coeffs, const Vec2& p) const;
  /// Divergence of the reconstruction at a point.
  double reconstruction_divergence(const Eigen::VectorXd& recon_coeffs, const Vec2& p) const;
  /// Gradient (2x2, rows = components) of the vector reconstruction at a point.
  Eigen::Matrix2d reconstruction_gradient(const Eigen::VectorXd& recon_coeffs, const Vec2& p) const;

private:
  int t_;
  double h_T_;
  HybridLayout layout_;
  CellBasis cell_basis_;
  std::vector<FaceBasis> face_bases_;
  Eigen::MatrixXd R_, Dv_, S_, A_, N1_;
};

/// Build the local pack for every element (parallelizes over elements).
std::vector<std::unique_ptr<ElementOps>> build_element_ops(const PolygonalMesh& mesh, int k,
                                                           const SchemeConfig& config = {});

/// I_T^k u as a standalone call.
Eigen::VectorXd interpolate_local(const PolygonalMesh& mesh, int t, int k, const VectorField& u);

/// Global interpolation-stabilizer seminorm s_h(I u, I u)^{1/2} on a mesh,
/// used to probe the consistency decay rate on refined mesh sequences.
double stab_interpolation_seminorm(const PolygonalMesh& mesh, int k, const VectorField& u);

} // namespace hho

#endif
