#include "hho/adaptivity.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace hho {

MarkSet mark_dorfler(const EstimatorReport& report, double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("theta must be in (0,1)");
  const int nt = static_cast<int>(report.eta_d_T.size());
  std::vector<double> eta2(nt);
  double total = 0.0;
  for (int t = 0; t < nt; ++t) {
    eta2[t] = report.eta_T_sq(t);
    total += eta2[t];
  }
  MarkSet marks;
  if (total <= 0.0) return marks;

  std::vector<int> order(nt);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&eta2](int a, int b) {
    if (eta2[a] != eta2[b]) return eta2[a] > eta2[b];
    return a < b;
  });
  double acc = 0.0;
  for (int t : order) {
    marks.elements.push_back(t);
    acc += eta2[t];
    if (acc >= theta * total) break;
  }
  return marks;
}

namespace {

AdaptRecord make_record(int iter, const PolygonalMesh& mesh, const DiscreteSolution& sol,
                        const EstimatorReport& est, const ErrorReport* err) {
  AdaptRecord rec;
  rec.iteration = iter;
  rec.n_elements = mesh.n_elements();
  rec.dof_velocity = sol.dof_velocity;
  rec.dof_pressure = sol.dof_pressure;
  rec.eta_d = est.eta_d;
  rec.eta_s = est.eta_s;
  rec.eta_J = est.eta_J;
  rec.eta_h = est.eta_h;
  rec.osc = est.osc;
  if (err) {
    rec.e_u = err->e_u;
    rec.e_p = err->e_p;
    ErrorReport tmp = *err;
    rec.eff = effectivity(tmp, est);
  }
  rec.min_h = mesh.min_diameter();
  for (int t = 0; t < mesh.n_elements(); ++t)
    if (mesh.element(t).diameter == rec.min_h) {
      rec.min_h_element = t;
      break;
    }
  return rec;
}

} // namespace

AdaptResult adapt_loop(const ProblemSpec& prob, const PolygonalMesh& initial,
                       const AdaptConfig& config, const std::string& out_dir) {
  if (config.max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  if (!(config.tol > 0.0)) throw std::invalid_argument("tol must be positive");

  AdaptResult result{.trace = {}, .mesh = initial, .solution = {}, .reached_tol = false};

  for (int iter = 1; iter <= config.max_iterations; ++iter) {
    const auto t0 = std::chrono::steady_clock::now();
    EstimatorReport est;
    try {
      const auto ops = build_element_ops(result.mesh, config.k, config.scheme);
      SaddleSystem sys = assemble(result.mesh, ops, config.k, prob.nu, prob.f);
      apply_dirichlet(sys, result.mesh, prob.g, prob.face_quadrature_bump(result.mesh));
      result.solution = solve(sys, result.mesh);

      EstimatorOptions eopt;
      eopt.extra_cell_exactness = prob.cell_quadrature_bump(result.mesh);
      eopt.extra_face_exactness = prob.face_quadrature_bump(result.mesh);
      est = compute_estimator(result.mesh, ops, sys.dofs, prob.nu, result.solution, prob.f,
                              prob.g, eopt);

      std::unique_ptr<ErrorReport> err;
      if (prob.has_exact()) {
        ErrorOptions err_opt;
        err_opt.extra_exactness = prob.cell_quadrature_bump(result.mesh);
        err = std::make_unique<ErrorReport>(compute_errors(result.mesh, ops, sys.dofs, prob.nu,
                                                           result.solution, prob.u, prob.grad_u,
                                                           prob.p, err_opt));
      }
      result.trace.push_back(make_record(iter, result.mesh, result.solution, est, err.get()));
    } catch (const std::exception& e) {
      result.aborted = true;
      result.abort_reason = e.what();
      return result;
    }
    const auto t1 = std::chrono::steady_clock::now();
    result.trace.back().seconds = std::chrono::duration<double>(t1 - t0).count();

    if (!out_dir.empty()) {
      const std::string stem = out_dir + "/" + prob.name + "_iter" + std::to_string(iter);
      write_poly2d_file(result.mesh, stem + ".poly2d");
      std::vector<double> eta(result.mesh.n_elements());
      for (int t = 0; t < result.mesh.n_elements(); ++t) eta[t] = std::sqrt(est.eta_T_sq(t));
      write_vtk(result.mesh, stem + ".vtk", eta, "eta");
    }

    if (est.eta_h < config.tol) {
      result.reached_tol = true;
      return result;
    }
    if (iter == config.max_iterations) break;

    const MarkSet marks = mark_dorfler(est, config.theta);
    if (marks.elements.empty()) break; // estimator identically zero
    result.trace.back().marked = static_cast<int>(marks.elements.size());
    result.mesh = refine(result.mesh, marks);
  }
  return result;
}

void write_trace_csv(const std::string& path, const std::vector<AdaptRecord>& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "iteration,dof_velocity,dof_pressure,eta_d,eta_s,eta_J,eta_h,e_u,e_p,eff,marked,"
         "seconds\n";
  out.precision(12);
  for (const AdaptRecord& r : trace)
    out << r.iteration << "," << r.dof_velocity << "," << r.dof_pressure << "," << r.eta_d << ","
        << r.eta_s << "," << r.eta_J << "," << r.eta_h << "," << r.e_u << "," << r.e_p << ","
        << r.eff << "," << r.marked << "," << r.seconds << "\n";
}

} // namespace hho
