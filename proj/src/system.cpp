#include "hho/system.hpp"

#include <Eigen/SparseLU>
#include <iostream>
#include <stdexcept>

#include "hho/parallel.hpp"

namespace hho {

namespace {

using Triplet = Eigen::Triplet<double>;

// local scalar hybrid index -> global velocity dof
int global_velocity_index(const PolygonalMesh& mesh, const DofMap& dofs, int t, int comp,
                          int local, const HybridLayout& layout) {
  if (local < layout.n_cell) return dofs.cell_dof(t, comp) + local;
  const int lf = (local - layout.n_cell) / layout.n_face;
  const int l = (local - layout.n_cell) % layout.n_face;
  return dofs.face_dof(mesh.element(t).faces[lf], comp) + l;
}

} // namespace

SaddleSystem assemble(const PolygonalMesh& mesh,
                      const std::vector<std::unique_ptr<ElementOps>>& ops, int k, double nu,
                      const VectorField& f) {
  SaddleSystem sys(mesh, k, nu);
  const DofMap& dofs = sys.dofs;
  const int nv = dofs.n_velocity();
  const int np = dofs.n_pressure();

  const int nt = mesh.n_elements();
  std::vector<std::vector<Triplet>> a_trip(nt), b_trip(nt);
  std::vector<Eigen::VectorXd> rhs_parts(nt);
  std::vector<Eigen::VectorXd> m_parts(nt);

  parallel_for(nt, [&](int t) {
    const ElementOps& op = *ops[t];
    const HybridLayout& layout = op.layout();
    const int ns = layout.scalar_total;
    const int Nc = layout.n_cell;

    std::vector<int> gx(ns), gy(ns);
    for (int i = 0; i < ns; ++i) {
      gx[i] = global_velocity_index(mesh, dofs, t, 0, i, layout);
      gy[i] = global_velocity_index(mesh, dofs, t, 1, i, layout);
    }

    auto& at = a_trip[t];
    at.reserve(2 * ns * ns);
    const Eigen::MatrixXd& A = op.viscous();
    for (int i = 0; i < ns; ++i)
      for (int j = 0; j < ns; ++j) {
        const double v = nu * A(i, j);
        if (v != 0.0) {
          at.emplace_back(gx[i], gx[j], v);
          at.emplace_back(gy[i], gy[j], v);
        }
      }

    auto& bt = b_trip[t];
    bt.reserve(2 * Nc * ns);
    const Eigen::MatrixXd& Dv = op.divergence();
    const int p0 = dofs.pressure_dof(t);
    for (int i = 0; i < Nc; ++i)
      for (int j = 0; j < ns; ++j) {
        // b_h(v, q) = -sum_T (D_T v, q)_T
        const double vx = -Dv(i, j);
        const double vy = -Dv(i, ns + j);
        if (vx != 0.0) bt.emplace_back(p0 + i, gx[j], vx);
        if (vy != 0.0) bt.emplace_back(p0 + i, gy[j], vy);
      }

    // body-force moments against the cell block and pressure integrals
    const QuadratureRule rule = cell_quadrature(mesh, t, QuadDefaults::cell(k));
    Eigen::VectorXd mom = Eigen::VectorXd::Zero(2 * Nc);
    Eigen::VectorXd integrals = Eigen::VectorXd::Zero(Nc);
    for (int q = 0; q < rule.size(); ++q) {
      const Vec2 p = rule.point(q);
      const Eigen::VectorXd vals = op.cell_basis().values(p).head(Nc);
      const Vec2 fq = f ? f(p) : Vec2::Zero();
      mom.head(Nc) += rule.weights[q] * fq.x() * vals;
      mom.tail(Nc) += rule.weights[q] * fq.y() * vals;
      integrals += rule.weights[q] * vals;
    }
    rhs_parts[t] = mom;
    m_parts[t] = integrals;
  });

  std::vector<Triplet> a_all, b_all;
  for (int t = 0; t < nt; ++t) {
    a_all.insert(a_all.end(), a_trip[t].begin(), a_trip[t].end());
    b_all.insert(b_all.end(), b_trip[t].begin(), b_trip[t].end());
  }
  sys.A.resize(nv, nv);
  sys.A.setFromTriplets(a_all.begin(), a_all.end());
  sys.B.resize(np, nv);
  sys.B.setFromTriplets(b_all.begin(), b_all.end());

  sys.rhs_velocity = Eigen::VectorXd::Zero(nv);
  sys.m = Eigen::VectorXd::Zero(np);
  for (int t = 0; t < nt; ++t) {
    const int Nc = dofs.n_cell_block();
    sys.rhs_velocity.segment(dofs.cell_dof(t, 0), Nc) = rhs_parts[t].head(Nc);
    sys.rhs_velocity.segment(dofs.cell_dof(t, 1), Nc) = rhs_parts[t].tail(Nc);
    sys.m.segment(dofs.pressure_dof(t), Nc) = m_parts[t];
  }
  return sys;
}

void apply_dirichlet(SaddleSystem& sys, const PolygonalMesh& mesh, const VectorField& g,
                     const std::function<int(int)>& face_extra_exactness) {
  const DofMap& dofs = sys.dofs;
  sys.lifting = Eigen::VectorXd::Zero(dofs.n_velocity());
  sys.reduced = true;
  sys.boundary_flux = 0.0;
  if (!g) return;

  double flux = 0.0, perimeter = 0.0;
  for (int f = 0; f < mesh.n_faces(); ++f) {
    if (!dofs.is_boundary_face(f)) continue;
    const int Nf = dofs.n_face_block();
    const FaceBasis fb(mesh, f, sys.k);
    int exactness = QuadDefaults::face(sys.k) + 4;
    if (face_extra_exactness) exactness += face_extra_exactness(f);
    const QuadratureRule rule = face_quadrature(mesh, f, exactness);
    Eigen::VectorXd cx = Eigen::VectorXd::Zero(Nf), cy = Eigen::VectorXd::Zero(Nf);
    const Vec2 n = mesh.face(f).normal; // outward on the boundary
    for (int q = 0; q < rule.size(); ++q) {
      const Vec2 p = rule.point(q);
      const Eigen::VectorXd vals = fb.values(p);
      const Vec2 gq = g(p);
      cx += rule.weights[q] * gq.x() * vals;
      cy += rule.weights[q] * gq.y() * vals;
      flux += rule.weights[q] * gq.dot(n);
    }
    sys.lifting.segment(dofs.face_dof(f, 0), Nf) = cx;
    sys.lifting.segment(dofs.face_dof(f, 1), Nf) = cy;
    perimeter += mesh.face(f).length;
  }
  sys.boundary_flux = std::abs(flux);
  if (sys.boundary_flux > 1e-8 * perimeter)
    std::cerr << "[hho] warning: boundary datum violates the compatibility condition, "
              << "|portion of g.n over the boundary| = " << sys.boundary_flux << "\n";
}

DiscreteSolution solve(const SaddleSystem& sys, const PolygonalMesh& mesh) {
  if (!sys.reduced)
    throw std::logic_error("solve: apply_dirichlet must be called before solve");
  const DofMap& dofs = sys.dofs;
  const int nv = dofs.n_velocity();
  const int np = dofs.n_pressure();

  // reduced numbering: cells + interior faces, all pressures, the multiplier
  std::vector<int> red(nv, -1);
  int cursor = 0;
  for (int t = 0; t < mesh.n_elements(); ++t)
    for (int comp = 0; comp < 2; ++comp)
      for (int i = 0; i < dofs.n_cell_block(); ++i) red[dofs.cell_dof(t, comp) + i] = cursor++;
  for (int f = 0; f < mesh.n_faces(); ++f) {
    if (dofs.is_boundary_face(f)) continue;
    for (int comp = 0; comp < 2; ++comp)
      for (int i = 0; i < dofs.n_face_block(); ++i) red[dofs.face_dof(f, comp) + i] = cursor++;
  }
  const int nvr = cursor;
  const int n_red = nvr + np + 1;

  std::vector<Triplet> trip;
  trip.reserve(sys.A.nonZeros() + 2 * sys.B.nonZeros() + 2 * np);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n_red);
  for (int i = 0; i < nv; ++i)
    if (red[i] >= 0) rhs[red[i]] = sys.rhs_velocity[i];

  for (int col = 0; col < sys.A.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(sys.A, col); it; ++it) {
      const int ri = red[it.row()], rj = red[it.col()];
      if (ri >= 0 && rj >= 0)
        trip.emplace_back(ri, rj, it.value());
      else if (ri >= 0 && rj < 0)
        rhs[ri] -= it.value() * sys.lifting[it.col()];
    }
  for (int col = 0; col < sys.B.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(sys.B, col); it; ++it) {
      const int rp = nvr + static_cast<int>(it.row());
      const int rj = red[it.col()];
      if (rj >= 0) {
        trip.emplace_back(rp, rj, it.value());
        trip.emplace_back(rj, rp, it.value());
      } else {
        rhs[rp] -= it.value() * sys.lifting[it.col()];
      }
    }
  for (int i = 0; i < np; ++i) {
    if (sys.m[i] == 0.0) continue;
    trip.emplace_back(nvr + i, nvr + np, sys.m[i]);
    trip.emplace_back(nvr + np, nvr + i, sys.m[i]);
  }

  Eigen::SparseMatrix<double> K(n_red, n_red);
  K.setFromTriplets(trip.begin(), trip.end());
  K.makeCompressed();

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.analyzePattern(K);
  lu.factorize(K);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error(
        "solve: sparse factorization failed (singular saddle system; check the discrete inf-sup "
        "setting: polynomial degree, mesh connectivity)");
  const Eigen::VectorXd x = lu.solve(rhs);

  DiscreteSolution sol;
  const double bnorm = rhs.norm();
  sol.residual = (K * x - rhs).norm() / (bnorm > 0.0 ? bnorm : 1.0);
  sol.velocity = sys.lifting;
  for (int i = 0; i < nv; ++i)
    if (red[i] >= 0) sol.velocity[i] = x[red[i]];
  sol.pressure = x.segment(nvr, np);
  sol.multiplier = x[nvr + np];
  sol.pressure_mean = sys.m.dot(sol.pressure);
  sol.dof_velocity = nvr;
  sol.dof_pressure = np;
  return sol;
}

Eigen::VectorXd gather_local_velocity(const PolygonalMesh& mesh, const DofMap& dofs,
                                      const Eigen::VectorXd& velocity, int t) {
  const Element& el = mesh.element(t);
  const int n_faces = static_cast<int>(el.faces.size());
  const int Nc = dofs.n_cell_block();
  const int Nf = dofs.n_face_block();
  const int ns = Nc + n_faces * Nf;
  Eigen::VectorXd v(2 * ns);
  for (int comp = 0; comp < 2; ++comp) {
    v.segment(comp * ns, Nc) = velocity.segment(dofs.cell_dof(t, comp), Nc);
    for (int lf = 0; lf < n_faces; ++lf)
      v.segment(comp * ns + Nc + lf * Nf, Nf) =
          velocity.segment(dofs.face_dof(el.faces[lf], comp), Nf);
  }
  return v;
}

Eigen::VectorXd gather_local_pressure(const DofMap& dofs, const Eigen::VectorXd& pressure, int t) {
  return pressure.segment(dofs.pressure_dof(t), dofs.n_cell_block());
}

double mass_conservation_defect(const SaddleSystem& sys, const DiscreteSolution& sol) {
  const Eigen::VectorXd r = sys.B * sol.velocity;
  return r.cwiseAbs().maxCoeff();
}

ErrorReport compute_errors(const PolygonalMesh& mesh,
                           const std::vector<std::unique_ptr<ElementOps>>& ops,
                           const DofMap& dofs, double nu, const DiscreteSolution& sol,
                           const VectorField& exact_u, const MatrixField& exact_grad_u,
                           const ScalarField& exact_p, const ErrorOptions& options) {
  if (!exact_grad_u) throw std::invalid_argument("compute_errors: exact gradient required");
  const int k = dofs.k();
  const int nt = mesh.n_elements();
  ErrorReport rep;
  rep.e_u_T.assign(nt, 0.0);
  rep.e_p_T.assign(nt, 0.0);

  std::vector<double> eu2(nt, 0.0), ep2(nt, 0.0);
  parallel_for(nt, [&](int t) {
    const ElementOps& op = *ops[t];
    const Eigen::VectorXd u_loc = gather_local_velocity(mesh, dofs, sol.velocity, t);
    const Eigen::VectorXd recon = op.apply_reconstruction(u_loc);
    const Eigen::VectorXd p_loc = gather_local_pressure(dofs, sol.pressure, t);

    int exactness = QuadDefaults::error(k);
    if (options.extra_exactness) exactness += options.extra_exactness(t);
    const QuadratureRule rule = cell_quadrature(mesh, t, exactness);

    double grad_err = 0.0, p_err = 0.0;
    const int Nc = dofs.n_cell_block();
    for (int q = 0; q < rule.size(); ++q) {
      const Vec2 p = rule.point(q);
      const Eigen::Matrix2d diff = exact_grad_u(p) - op.reconstruction_gradient(recon, p);
      grad_err += rule.weights[q] * diff.squaredNorm();
      const double ph = p_loc.dot(op.cell_basis().values(p).head(Nc));
      const double dp = exact_p(p) - ph;
      p_err += rule.weights[q] * dp * dp;
    }
    eu2[t] = nu * grad_err + nu * op.stab_form(u_loc, u_loc);
    ep2[t] = p_err / nu;
  });

  double eu = 0.0, ep = 0.0;
  for (int t = 0; t < nt; ++t) {
    rep.e_u_T[t] = std::sqrt(std::max(eu2[t], 0.0));
    rep.e_p_T[t] = std::sqrt(std::max(ep2[t], 0.0));
    eu += eu2[t];
    ep += ep2[t];
  }
  rep.e_u = std::sqrt(eu);
  rep.e_p = std::sqrt(ep);
  (void)exact_u;
  return rep;
}

} // namespace hho
