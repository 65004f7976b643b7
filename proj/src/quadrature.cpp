#include "hho/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace hho {

namespace {

// Newton iteration on the Legendre recurrence; cached per order.
void compute_gauss_legendre(int n, Eigen::VectorXd& x, Eigen::VectorXd& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    double xi = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p0 = 0.0, p1 = 0.0;
    for (int it = 0; it < 100; ++it) {
      p0 = 1.0;
      p1 = xi;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * xi * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
      const double dx = p1 / dp;
      xi -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    x[n - 1 - i] = xi;
    const double dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
    w[n - 1 - i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
  }
}

const std::pair<Eigen::VectorXd, Eigen::VectorXd>& cached_gl(int n) {
  static std::map<int, std::pair<Eigen::VectorXd, Eigen::VectorXd>> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) {
    std::pair<Eigen::VectorXd, Eigen::VectorXd> nw;
    compute_gauss_legendre(n, nw.first, nw.second);
    it = cache.emplace(n, std::move(nw)).first;
  }
  return it->second;
}

} // namespace

void gauss_legendre(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1 required");
  const auto& nw = cached_gl(n);
  nodes = nw.first;
  weights = nw.second;
}

QuadratureRule triangle_rule(const Vec2& a, const Vec2& b, const Vec2& c, int exactness) {
  const int p = std::max(exactness, 0);
  // Collapsed square: x = u, y = v(1-u) on the reference triangle. A monomial of
  // total degree p becomes degree p+1 in u (Jacobian included) and p in v.
  const int nu = (p + 2 + 1) / 2;
  const int nv = (p + 1 + 1) / 2;
  Eigen::VectorXd xu, wu, xv, wv;
  gauss_legendre(nu, xu, wu);
  gauss_legendre(nv, xv, wv);

  const double jac = (b - a).x() * (c - a).y() - (b - a).y() * (c - a).x();
  if (!(jac > 0.0) && !(jac < 0.0)) throw std::invalid_argument("degenerate triangle");

  QuadratureRule rule;
  rule.exactness = p;
  rule.points.resize(nu * nv, 2);
  rule.weights.resize(nu * nv);
  int q = 0;
  for (int i = 0; i < nu; ++i) {
    const double u = 0.5 * (xu[i] + 1.0);
    for (int j = 0; j < nv; ++j, ++q) {
      const double v = 0.5 * (xv[j] + 1.0);
      const double xi = u, eta = v * (1.0 - u);
      const Vec2 pphys = a + xi * (b - a) + eta * (c - a);
      rule.points.row(q) = pphys.transpose();
      rule.weights[q] = 0.25 * wu[i] * wv[j] * (1.0 - u) * std::abs(jac);
    }
  }
  return rule;
}

QuadratureRule polygon_rule(const std::vector<Vec2>& loop, int exactness) {
  const Vec2 bc = polygon_centroid(loop);
  const std::size_t m = loop.size();
  std::vector<QuadratureRule> parts;
  int npts = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2& a = loop[i];
    const Vec2& b = loop[(i + 1) % m];
    const double tri_area = 0.5 * ((a - bc).x() * (b - bc).y() - (a - bc).y() * (b - bc).x());
    const double scale = signed_area(loop);
    if (tri_area < -1e-14 * scale)
      throw std::invalid_argument("polygon_rule: polygon is not star-shaped about its barycenter");
    if (tri_area <= 0.0) continue; // collinear fan triangle (hanging vertex)
    parts.push_back(triangle_rule(bc, a, b, exactness));
    npts += parts.back().size();
  }
  QuadratureRule rule;
  rule.exactness = exactness;
  rule.points.resize(npts, 2);
  rule.weights.resize(npts);
  int q = 0;
  for (const auto& part : parts) {
    rule.points.middleRows(q, part.size()) = part.points;
    rule.weights.segment(q, part.size()) = part.weights;
    q += part.size();
  }
  return rule;
}

QuadratureRule segment_rule(const Vec2& a, const Vec2& b, int exactness) {
  const int n = std::max(1, (exactness + 1 + 1) / 2);
  Eigen::VectorXd x, w;
  gauss_legendre(n, x, w);
  QuadratureRule rule;
  rule.exactness = exactness;
  rule.points.resize(n, 2);
  rule.weights.resize(n);
  const double len = (b - a).norm();
  for (int i = 0; i < n; ++i) {
    const double s = 0.5 * (x[i] + 1.0);
    rule.points.row(i) = (a + s * (b - a)).transpose();
    rule.weights[i] = 0.5 * w[i] * len;
  }
  return rule;
}

QuadratureRule cell_quadrature(const PolygonalMesh& mesh, int t, int exactness) {
  return polygon_rule(mesh.element_loop(t), exactness);
}

QuadratureRule face_quadrature(const PolygonalMesh& mesh, int f, int exactness) {
  const Face& face = mesh.face(f);
  return segment_rule(mesh.vertex(face.v0), mesh.vertex(face.v1), exactness);
}

} // namespace hho
