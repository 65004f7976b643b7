#include "hho/geometry.hpp"

#include <cmath>

namespace hho {

double signed_area(const std::vector<Vec2>& loop) {
  double a = 0.0;
  const std::size_t m = loop.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2& p = loop[i];
    const Vec2& q = loop[(i + 1) % m];
    a += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * a;
}

Vec2 polygon_centroid(const std::vector<Vec2>& loop) {
  double a = 0.0;
  Vec2 c = Vec2::Zero();
  const std::size_t m = loop.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2& p = loop[i];
    const Vec2& q = loop[(i + 1) % m];
    const double w = p.x() * q.y() - q.x() * p.y();
    a += w;
    c += w * (p + q);
  }
  return c / (3.0 * a);
}

double polygon_diameter(const std::vector<Vec2>& loop) {
  double d2 = 0.0;
  for (std::size_t i = 0; i < loop.size(); ++i)
    for (std::size_t j = i + 1; j < loop.size(); ++j)
      d2 = std::max(d2, (loop[i] - loop[j]).squaredNorm());
  return std::sqrt(d2);
}

bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& loop) {
  bool inside = false;
  const std::size_t m = loop.size();
  for (std::size_t i = 0, j = m - 1; i < m; j = i++) {
    const Vec2& a = loop[i];
    const Vec2& b = loop[j];
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const double x = a.x() + (p.y() - a.y()) / (b.y() - a.y()) * (b.x() - a.x());
      if (p.x() < x) inside = !inside;
    }
  }
  return inside;
}

namespace {
double orient(const Vec2& a, const Vec2& b, const Vec2& c) {
  return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}
} // namespace

bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const double d1 = orient(c, d, a);
  const double d2 = orient(c, d, b);
  const double d3 = orient(a, b, c);
  const double d4 = orient(a, b, d);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

bool polygon_is_simple(const std::vector<Vec2>& loop) {
  const std::size_t m = loop.size();
  if (m < 3) return false;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      // skip adjacent edges (they share a vertex)
      if (j == i || (j + 1) % m == i || (i + 1) % m == j) continue;
      if (segments_intersect(loop[i], loop[(i + 1) % m], loop[j], loop[(j + 1) % m])) return false;
    }
  }
  return true;
}

} // namespace hho
