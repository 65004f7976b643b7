// Experiment drivers behind the CLI: manufactured-solution convergence tables
// with Dof-based orders, the adaptive singular/demo runs, and solution export.

#ifndef HHO_BENCH_HPP
#define HHO_BENCH_HPP

#include "hho/adaptivity.hpp"

namespace hho {

struct ConvergenceRow {
  int level = 0;
  int n = 0;                       ///< generator subdivision count
  int dof_velocity = 0, dof_pressure = 0;
  double eta_h = 0, order_eta = 0; ///< orders w.r.t. velocity Dof, 0 on the first row
  double e_u = 0, order_eu = 0;
  double e_p = 0, order_ep = 0;    ///< order w.r.t. pressure Dof
  double eff = 0, osc = 0;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
};

/// Uniform-refinement study: levels meshes with n = n0 * 2^level.
ConvergenceTable run_convergence(const ProblemSpec& prob, MeshKind kind, int k, int levels,
                                 int n0 = 4, const SchemeConfig& scheme = {});

void write_convergence_csv(const std::string& path, const ConvergenceTable& table);

struct AdaptiveRun {
  AdaptResult result;
  double slope = 0.0; ///< least-squares slope of log eta_h vs log Dof, final half
};

/// Adaptive study on the problem's domain; meshes/trace written into out_dir
/// when nonempty. initial_n controls the starting mesh resolution.
AdaptiveRun run_adaptive(const ProblemSpec& prob, const AdaptConfig& config, int initial_n,
                         const std::string& out_dir = "");

/// Least-squares slope of log(y) against log(x) over the last half of the
/// samples (at least two points).
double loglog_slope_final_half(const std::vector<double>& x, const std::vector<double>& y);

/// Lattice CSV sampling of the reconstructed velocity and the pressure;
/// returns the number of lattice points outside all elements (skipped).
int export_solution_lattice(const std::string& path, const PolygonalMesh& mesh,
                            const std::vector<std::unique_ptr<ElementOps>>& ops,
                            const DofMap& dofs, const DiscreteSolution& sol, int nx, int ny);

/// Plain-text coefficient dump (scaled-monomial representation per block).
void export_solution_coefficients(const std::string& path, const PolygonalMesh& mesh,
                                  const std::vector<std::unique_ptr<ElementOps>>& ops,
                                  const DofMap& dofs, const DiscreteSolution& sol, double nu);

} // namespace hho

#endif
