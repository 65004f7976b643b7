#include "hho/problems.hpp"

#include <cmath>
#include <random>

#include "hho/quadrature.hpp"

namespace hho {

namespace {

constexpr double kPi = 3.14159265358979323846;

// ---- Example 3 angular profile -------------------------------------------
// psi and derivatives for the Stokes corner singularity with opening 3*pi/2.
struct CornerFlow {
  double lambda = 856399.0 / 1572564.0;
  double omega = 1.5 * kPi;
  double cl;      // cos(lambda * omega)

  CornerFlow() { cl = std::cos(lambda * omega); }

  double psi(double th) const {
    return std::sin((1 + lambda) * th) * cl / (1 + lambda) - std::cos((1 + lambda) * th) -
           std::sin((1 - lambda) * th) * cl / (1 - lambda) + std::cos((1 - lambda) * th);
  }
  double dpsi(double th) const {
    return std::cos((1 + lambda) * th) * cl + (1 + lambda) * std::sin((1 + lambda) * th) -
           std::cos((1 - lambda) * th) * cl - (1 - lambda) * std::sin((1 - lambda) * th);
  }
  double d2psi(double th) const {
    return -(1 + lambda) * std::sin((1 + lambda) * th) * cl +
           (1 + lambda) * (1 + lambda) * std::cos((1 + lambda) * th) +
           (1 - lambda) * std::sin((1 - lambda) * th) * cl -
           (1 - lambda) * (1 - lambda) * std::cos((1 - lambda) * th);
  }
  double d3psi(double th) const {
    return -(1 + lambda) * (1 + lambda) * std::cos((1 + lambda) * th) * cl -
           std::pow(1 + lambda, 3) * std::sin((1 + lambda) * th) +
           (1 - lambda) * (1 - lambda) * std::cos((1 - lambda) * th) * cl +
           std::pow(1 - lambda, 3) * std::sin((1 - lambda) * th);
  }

  static double angle(const Vec2& pt) {
    double th = std::atan2(pt.y(), pt.x());
    if (th < 0.0) th += 2.0 * kPi;
    return th;
  }

  Vec2 velocity(const Vec2& pt) const {
    const double r = pt.norm();
    if (r == 0.0) return Vec2::Zero();
    const double th = angle(pt);
    const double rl = std::pow(r, lambda);
    const double s = std::sin(th), c = std::cos(th);
    const double P = psi(th), dP = dpsi(th);
    return Vec2(rl * ((1 + lambda) * s * P + c * dP), rl * (s * dP - (1 + lambda) * c * P));
  }

  Eigen::Matrix2d gradient(const Vec2& pt) const {
    const double r = pt.norm();
    const double th = angle(pt);
    const double rl1 = std::pow(r, lambda - 1.0);
    const double s = std::sin(th), c = std::cos(th);
    const double P = psi(th), dP = dpsi(th), d2P = d2psi(th);
    const double phi1 = (1 + lambda) * s * P + c * dP;
    const double dphi1 = (1 + lambda) * c * P + lambda * s * dP + c * d2P;
    const double phi2 = s * dP - (1 + lambda) * c * P;
    const double dphi2 = s * d2P - lambda * c * dP + (1 + lambda) * s * P;
    Eigen::Matrix2d g;
    g(0, 0) = rl1 * (lambda * c * phi1 - s * dphi1);
    g(0, 1) = rl1 * (lambda * s * phi1 + c * dphi1);
    g(1, 0) = rl1 * (lambda * c * phi2 - s * dphi2);
    g(1, 1) = rl1 * (lambda * s * phi2 + c * dphi2);
    return g;
  }

  double pressure(const Vec2& pt) const {
    const double r = pt.norm();
    const double th = angle(pt);
    return -std::pow(r, lambda - 1.0) *
           ((1 + lambda) * (1 + lambda) * dpsi(th) + d3psi(th)) / (1 - lambda);
  }

  /// Mean of the pressure over the L-shape, by exact radial integration and a
  /// composite Gauss rule in the angle.
  double pressure_mean() const {
    Eigen::VectorXd xg, wg;
    gauss_legendre(24, xg, wg);
    double integral = 0.0;
    const int n_seg = 12;
    for (int s = 0; s < n_seg; ++s) {
      const double a = omega * s / n_seg, b = omega * (s + 1) / n_seg;
      for (int q = 0; q < xg.size(); ++q) {
        const double th = 0.5 * (a + b) + 0.5 * (b - a) * xg[q];
        // radial extent of the square from the corner
        const double R = 1.0 / std::max(std::abs(std::cos(th)), std::abs(std::sin(th)));
        const double Phi = -((1 + lambda) * (1 + lambda) * dpsi(th) + d3psi(th)) / (1 - lambda);
        integral += 0.5 * (b - a) * wg[q] * Phi * std::pow(R, lambda + 1.0) / (lambda + 1.0);
      }
    }
    return integral / 3.0; // |Omega| = 3
  }
};

std::function<int(int)> make_cell_bump(const PolygonalMesh& mesh, const Vec2& pt, double tol) {
  std::vector<char> flag(mesh.n_elements(), 0);
  for (int t = 0; t < mesh.n_elements(); ++t)
    for (int v : mesh.element(t).verts)
      if ((mesh.vertex(v) - pt).norm() < tol) flag[t] = 1;
  return [flag](int t) { return flag[t] ? 6 : 0; };
}

std::function<int(int)> make_face_bump(const PolygonalMesh& mesh, const Vec2& pt, double tol) {
  std::vector<char> flag(mesh.n_faces(), 0);
  for (int f = 0; f < mesh.n_faces(); ++f)
    if ((mesh.vertex(mesh.face(f).v0) - pt).norm() < tol ||
        (mesh.vertex(mesh.face(f).v1) - pt).norm() < tol)
      flag[f] = 1;
  return [flag](int f) { return flag[f] ? 6 : 0; };
}

} // namespace

std::function<int(int)> ProblemSpec::cell_quadrature_bump(const PolygonalMesh& mesh) const {
  if (!has_singularity) return {};
  return make_cell_bump(mesh, singular_point, 1e-12 * domain.diameter());
}

std::function<int(int)> ProblemSpec::face_quadrature_bump(const PolygonalMesh& mesh) const {
  if (!has_singularity) return {};
  return make_face_bump(mesh, singular_point, 1e-12 * domain.diameter());
}

ProblemSpec example1(double nu) {
  ProblemSpec prob;
  prob.name = "example1";
  prob.domain = Domain::unit_square();
  prob.nu = nu;
  prob.u = [](const Vec2& pt) {
    const double ex = std::exp(pt.x());
    return Vec2(-ex * (pt.y() * std::cos(pt.y()) + std::sin(pt.y())),
                ex * pt.y() * std::sin(pt.y()));
  };
  prob.grad_u = [](const Vec2& pt) {
    const double ex = std::exp(pt.x());
    const double s = std::sin(pt.y()), c = std::cos(pt.y());
    Eigen::Matrix2d g;
    g(0, 0) = -ex * (pt.y() * c + s);
    g(0, 1) = -ex * (2.0 * c - pt.y() * s);
    g(1, 0) = ex * pt.y() * s;
    g(1, 1) = ex * (s + pt.y() * c);
    return g;
  };
  prob.p = [](const Vec2& pt) {
    return 2.0 * std::exp(pt.x()) * std::sin(pt.y()) -
           2.0 * (1.0 - std::exp(1.0)) * (std::cos(1.0) - 1.0);
  };
  prob.f = [nu](const Vec2& pt) {
    const double ex = std::exp(pt.x());
    return Vec2(2.0 * (1.0 - nu) * ex * std::sin(pt.y()), 2.0 * (1.0 - nu) * ex * std::cos(pt.y()));
  };
  prob.g = prob.u;
  return prob;
}

ProblemSpec example2(double nu) {
  ProblemSpec prob;
  prob.name = "example2";
  prob.domain = Domain::unit_square();
  prob.nu = nu;
  prob.u = [](const Vec2& pt) {
    const double cx = std::cos(pt.x()), cy = std::cos(pt.y());
    return Vec2(-0.5 * cx * cx * cy * std::sin(pt.y()),
                0.5 * cy * cy * cx * std::sin(pt.x()));
  };
  prob.grad_u = [](const Vec2& pt) {
    const double x = pt.x(), y = pt.y();
    const double cx = std::cos(x), sx = std::sin(x), cy = std::cos(y), sy = std::sin(y);
    Eigen::Matrix2d g;
    g(0, 0) = cx * sx * cy * sy;
    g(0, 1) = -0.5 * cx * cx * std::cos(2.0 * y);
    g(1, 0) = 0.5 * cy * cy * std::cos(2.0 * x);
    g(1, 1) = -cy * sy * cx * sx;
    return g;
  };
  // x^6 - y^6 has zero mean on the unit square by antisymmetry about the diagonal
  prob.p = [](const Vec2& pt) { return std::pow(pt.x(), 6) - std::pow(pt.y(), 6); };
  prob.f = [nu](const Vec2& pt) {
    const double x = pt.x(), y = pt.y();
    const double lap1 = std::sin(2.0 * y) * (std::cos(2.0 * x) + 0.5);
    const double lap2 = -std::sin(2.0 * x) * (std::cos(2.0 * y) + 0.5);
    return Vec2(-nu * lap1 + 6.0 * std::pow(x, 5), -nu * lap2 - 6.0 * std::pow(y, 5));
  };
  prob.g = prob.u;
  return prob;
}

ProblemSpec example3() {
  ProblemSpec prob;
  prob.name = "example3";
  prob.domain = Domain::l_shape();
  prob.nu = 1.0;
  prob.has_singularity = true;
  prob.singular_point = Vec2::Zero();

  const CornerFlow flow;
  const double mean_p = flow.pressure_mean();
  prob.u = [flow](const Vec2& pt) { return flow.velocity(pt); };
  prob.grad_u = [flow](const Vec2& pt) { return flow.gradient(pt); };
  prob.p = [flow, mean_p](const Vec2& pt) { return flow.pressure(pt) - mean_p; };
  prob.f = {}; // zero body force
  prob.g = prob.u;
  return prob;
}

ProblemSpec example4() {
  ProblemSpec prob;
  prob.name = "example4";
  prob.domain = Domain::channel_with_hole();
  prob.nu = 1.0;
  const double H = 0.41;
  const double amp = 6.0 / (H * H) * std::sin(kPi / 8.0);
  prob.g = [H, amp](const Vec2& pt) {
    const double tol = 1e-12;
    if (std::abs(pt.x()) < tol || std::abs(pt.x() - 2.2) < tol)
      return Vec2(amp * pt.y() * (H - pt.y()), 0.0);
    return Vec2(0.0, 0.0); // walls and cylinder
  };
  return prob;
}

double check_problem_consistency(const ProblemSpec& prob, int n_samples, unsigned seed) {
  if (!prob.has_exact()) return 0.0;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> ux(prob.domain.x0, prob.domain.x1);
  std::uniform_real_distribution<double> uy(prob.domain.y0, prob.domain.y1);
  const double h = 1e-5 * prob.domain.diameter();
  double worst = 0.0;
  int found = 0;
  while (found < n_samples) {
    const Vec2 pt(ux(rng), uy(rng));
    // stay inside and away from the singular point
    if (prob.domain.kind == DomainKind::LShape && pt.x() > -0.05 && pt.y() < 0.05) continue;
    if (prob.domain.boundary_distance(pt) < 10 * h) continue;
    if (prob.has_singularity && (pt - prob.singular_point).norm() < 0.3) continue;
    ++found;

    Vec2 lap = Vec2::Zero();
    for (int c = 0; c < 2; ++c) {
      const Vec2 e = c == 0 ? Vec2(h, 0.0) : Vec2(0.0, h);
      lap += (prob.u(pt + e) - 2.0 * prob.u(pt) + prob.u(pt - e)) / (h * h);
    }
    const Vec2 grad_p((prob.p(pt + Vec2(h, 0)) - prob.p(pt - Vec2(h, 0))) / (2 * h),
                      (prob.p(pt + Vec2(0, h)) - prob.p(pt - Vec2(0, h))) / (2 * h));
    const Vec2 fval = prob.f ? prob.f(pt) : Vec2::Zero();
    const Vec2 resid = -prob.nu * lap + grad_p - fval;
    const double scale =
        std::max({1.0, fval.norm(), prob.nu * lap.norm(), grad_p.norm()});
    worst = std::max(worst, resid.norm() / scale);
  }
  return worst;
}

} // namespace hho
