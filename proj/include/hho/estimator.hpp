// Residual-type a posteriori estimator: divergence, stabilization and
// reconstruction-jump contributions per element, body-force oscillation,
// effectivity index and the constant-free local lower-bound audit.

#ifndef HHO_ESTIMATOR_HPP
#define HHO_ESTIMATOR_HPP

#include "hho/system.hpp"

namespace hho {

struct EstimatorReport {
  std::vector<double> eta_d_T, eta_s_T, eta_J_T, osc_T;
  double eta_d = 0.0, eta_s = 0.0, eta_J = 0.0, eta_h = 0.0, osc = 0.0;

  double eta_T_sq(int t) const {
    return eta_d_T[t] * eta_d_T[t] + eta_s_T[t] * eta_s_T[t] + eta_J_T[t] * eta_J_T[t];
  }
};

struct EstimatorOptions {
  /// Extra quadrature exactness for selected elements / faces.
  std::function<int(int)> extra_cell_exactness;
  std::function<int(int)> extra_face_exactness;
};

/// Full estimator. `f` feeds the oscillation term (null = zero body force);
/// `g` is the Dirichlet datum used by boundary-face jumps (null = homogeneous).
EstimatorReport compute_estimator(const PolygonalMesh& mesh,
                                  const std::vector<std::unique_ptr<ElementOps>>& ops,
                                  const DofMap& dofs, double nu, const DiscreteSolution& sol,
                                  const VectorField& f, const VectorField& g,
                                  const EstimatorOptions& options = {});

/// eff = sqrt((e_u^2 + e_p^2) / eta_h^2). A zero estimator with nonzero error
/// is reported as an anomaly and yields +inf.
double effectivity(const ErrorReport& errors, const EstimatorReport& report);

struct LowerBoundCheck {
  std::vector<std::string> violations;
  /// realized constant of the jump bound: max_T eta_J_T^2 / sum_{N(T)} e_u^2
  double jump_bound_constant = 0.0;
};

/// Constant-free inequalities eta_d_T <= e_u_T and eta_s_T <= e_u_T (up to
/// `slack`), plus the realized constant of the neighborhood jump bound.
LowerBoundCheck check_local_lower_bounds(const PolygonalMesh& mesh, const ErrorReport& errors,
                                         const EstimatorReport& report, double slack = 1e-9);

/// Per-element CSV: id, h_T, eta_d, eta_s, eta_J, osc [, e_u when available].
void write_estimator_csv(const std::string& path, const PolygonalMesh& mesh,
                         const EstimatorReport& report, const ErrorReport* errors = nullptr);

} // namespace hho

#endif
