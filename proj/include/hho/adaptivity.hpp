// Dörfler bulk marking and the Solve -> Estimate -> Mark -> Refine loop.

#ifndef HHO_ADAPTIVITY_HPP
#define HHO_ADAPTIVITY_HPP

#include "hho/estimator.hpp"
#include "hho/problems.hpp"

namespace hho {

struct AdaptConfig {
  int k = 1;
  double theta = 0.3;            ///< bulk parameter in (0,1)
  double tol = 0.01;             ///< stop when eta_h < tol
  int max_iterations = 100;
  SchemeConfig scheme;
};

struct AdaptRecord {
  int iteration = 0;
  int n_elements = 0;
  int dof_velocity = 0, dof_pressure = 0;
  double eta_d = 0, eta_s = 0, eta_J = 0, eta_h = 0, osc = 0;
  double e_u = 0, e_p = 0, eff = 0;  ///< zero when no exact solution is known
  int marked = 0;
  double seconds = 0;
  double min_h = 0;
  int min_h_element = -1;
};

struct AdaptResult {
  std::vector<AdaptRecord> trace;
  PolygonalMesh mesh;            ///< final mesh
  DiscreteSolution solution;     ///< final solution
  bool reached_tol = false;
  bool aborted = false;
  std::string abort_reason;
};

/// Minimal-cardinality prefix of elements sorted by eta_T^2 (descending, ties
/// by ascending index) whose squared sum reaches theta * total. All-zero
/// estimators give an empty set.
MarkSet mark_dorfler(const EstimatorReport& report, double theta);

/// Adaptive driver. Writes per-iteration meshes as poly2d + VTK into `out_dir`
/// when nonempty. A solver failure aborts with the partial trace.
AdaptResult adapt_loop(const ProblemSpec& prob, const PolygonalMesh& initial,
                       const AdaptConfig& config, const std::string& out_dir = "");

/// Trace CSV: iteration, dofs, estimator components, errors, marked, seconds.
void write_trace_csv(const std::string& path, const std::vector<AdaptRecord>& trace);

} // namespace hho

#endif
