#include "hho/estimator.hpp"

#include <cmath>
#include <fstream>
#include <iostream>

#include "hho/parallel.hpp"

namespace hho {

EstimatorReport compute_estimator(const PolygonalMesh& mesh,
                                  const std::vector<std::unique_ptr<ElementOps>>& ops,
                                  const DofMap& dofs, double nu, const DiscreteSolution& sol,
                                  const VectorField& f, const VectorField& g,
                                  const EstimatorOptions& options) {
  const int k = dofs.k();
  const int nt = mesh.n_elements();
  EstimatorReport rep;
  rep.eta_d_T.assign(nt, 0.0);
  rep.eta_s_T.assign(nt, 0.0);
  rep.eta_J_T.assign(nt, 0.0);
  rep.osc_T.assign(nt, 0.0);

  // reconstruction coefficients, needed across faces
  std::vector<Eigen::VectorXd> recon(nt);
  parallel_for(nt, [&](int t) {
    recon[t] = ops[t]->apply_reconstruction(gather_local_velocity(mesh, dofs, sol.velocity, t));
  });

  std::vector<double> d2(nt, 0.0), s2(nt, 0.0), o2(nt, 0.0);
  parallel_for(nt, [&](int t) {
    const ElementOps& op = *ops[t];
    int exactness = QuadDefaults::cell(k);
    if (options.extra_cell_exactness) exactness += options.extra_cell_exactness(t);
    const QuadratureRule rule = cell_quadrature(mesh, t, exactness);
    double div2 = 0.0;
    for (int q = 0; q < rule.size(); ++q) {
      const double dv = op.reconstruction_divergence(recon[t], rule.point(q));
      div2 += rule.weights[q] * dv * dv;
    }
    d2[t] = nu * div2;
    const Eigen::VectorXd u_loc = gather_local_velocity(mesh, dofs, sol.velocity, t);
    s2[t] = nu * op.stab_form(u_loc, u_loc);

    if (f) {
      int err_exact = QuadDefaults::error(k);
      if (options.extra_cell_exactness) err_exact += options.extra_cell_exactness(t);
      const QuadratureRule erule = cell_quadrature(mesh, t, err_exact);
      const int Nc = dofs.n_cell_block();
      // componentwise projection moments (orthonormal basis)
      Eigen::VectorXd cx = Eigen::VectorXd::Zero(Nc), cy = Eigen::VectorXd::Zero(Nc);
      for (int q = 0; q < erule.size(); ++q) {
        const Eigen::VectorXd vals = op.cell_basis().values(erule.point(q)).head(Nc);
        const Vec2 fq = f(erule.point(q));
        cx += erule.weights[q] * fq.x() * vals;
        cy += erule.weights[q] * fq.y() * vals;
      }
      double misfit = 0.0;
      for (int q = 0; q < erule.size(); ++q) {
        const Eigen::VectorXd vals = op.cell_basis().values(erule.point(q)).head(Nc);
        const Vec2 fq = f(erule.point(q));
        const Vec2 pf(cx.dot(vals), cy.dot(vals));
        misfit += erule.weights[q] * (fq - pf).squaredNorm();
      }
      const double hT = mesh.element(t).diameter;
      o2[t] = hT * hT * misfit / nu;
    }
  });

  // face jump integrals, each geometric face integrated once
  std::vector<double> jump2(mesh.n_faces(), 0.0);
  parallel_for(mesh.n_faces(), [&](int fi) {
    const Face& face = mesh.face(fi);
    int exactness = std::max(2 * (k + 1), QuadDefaults::face(k));
    if (options.extra_face_exactness) exactness += options.extra_face_exactness(fi);
    const QuadratureRule rule = face_quadrature(mesh, fi, exactness);
    double val = 0.0;
    for (int q = 0; q < rule.size(); ++q) {
      const Vec2 p = rule.point(q);
      Vec2 jump = ops[face.owner]->reconstruction_value(recon[face.owner], p);
      if (face.neighbor >= 0)
        jump -= ops[face.neighbor]->reconstruction_value(recon[face.neighbor], p);
      else if (g)
        jump -= g(p);
      val += rule.weights[q] * jump.squaredNorm();
    }
    jump2[fi] = val;
  });

  std::vector<double> j2(nt, 0.0);
  for (int t = 0; t < nt; ++t) {
    const Element& el = mesh.element(t);
    double acc = 0.0;
    for (int fl : el.faces) acc += jump2[fl] / mesh.face(fl).length;
    j2[t] = nu * acc;
  }

  double D = 0.0, S = 0.0, J = 0.0, O = 0.0;
  for (int t = 0; t < nt; ++t) {
    rep.eta_d_T[t] = std::sqrt(std::max(d2[t], 0.0));
    rep.eta_s_T[t] = std::sqrt(std::max(s2[t], 0.0));
    rep.eta_J_T[t] = std::sqrt(std::max(j2[t], 0.0));
    rep.osc_T[t] = std::sqrt(std::max(o2[t], 0.0));
    D += d2[t];
    S += s2[t];
    J += j2[t];
    O += o2[t];
  }
  rep.eta_d = std::sqrt(D);
  rep.eta_s = std::sqrt(S);
  rep.eta_J = std::sqrt(J);
  rep.eta_h = std::sqrt(D + S + J);
  rep.osc = std::sqrt(O);
  return rep;
}

double effectivity(const ErrorReport& errors, const EstimatorReport& report) {
  const double err2 = errors.e_u * errors.e_u + errors.e_p * errors.e_p;
  if (report.eta_h == 0.0) {
    if (err2 > 0.0) {
      std::cerr << "[hho] anomaly: zero estimator with nonzero error\n";
      return std::numeric_limits<double>::infinity();
    }
    return 0.0;
  }
  return std::sqrt(err2) / report.eta_h;
}

LowerBoundCheck check_local_lower_bounds(const PolygonalMesh& mesh, const ErrorReport& errors,
                                         const EstimatorReport& report, double slack) {
  LowerBoundCheck out;
  for (int t = 0; t < mesh.n_elements(); ++t) {
    if (report.eta_d_T[t] > errors.e_u_T[t] + slack)
      out.violations.push_back("element " + std::to_string(t) + ": eta_d exceeds local error");
    if (report.eta_s_T[t] > errors.e_u_T[t] + slack)
      out.violations.push_back("element " + std::to_string(t) + ": eta_s exceeds local error");
    double nbhd = 0.0;
    for (int n : mesh.neighbors_sharing_node(t)) nbhd += errors.e_u_T[n] * errors.e_u_T[n];
    if (nbhd > 0.0)
      out.jump_bound_constant =
          std::max(out.jump_bound_constant, report.eta_J_T[t] * report.eta_J_T[t] / nbhd);
  }
  return out;
}

void write_estimator_csv(const std::string& path, const PolygonalMesh& mesh,
                         const EstimatorReport& report, const ErrorReport* errors) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "element,h_T,eta_d,eta_s,eta_J,osc";
  if (errors) out << ",e_u";
  out << "\n";
  out.precision(12);
  for (int t = 0; t < mesh.n_elements(); ++t) {
    out << t << "," << mesh.element(t).diameter << "," << report.eta_d_T[t] << ","
        << report.eta_s_T[t] << "," << report.eta_J_T[t] << "," << report.osc_T[t];
    if (errors) out << "," << errors->e_u_T[t];
    out << "\n";
  }
}

} // namespace hho
