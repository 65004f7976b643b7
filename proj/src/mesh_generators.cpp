// Structured mesh families: tensor quads, diagonal-split triangles, a stretched
// honeycomb (hexagons with half-cells along the boundary) and a truncated-square
// tiling (octagons + corner diamonds). The L-shape is a quad/triangle grid with
// one quadrant removed; the channel embeds a quad ring around a polygonal
// cylinder into a non-uniform background grid.

#include "hho/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace hho {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Vertex dedup helper keyed on rounded coordinates.
class VertexPool {
public:
  explicit VertexPool(double snap) : snap_(snap) {}
  int add(const Vec2& p) {
    const auto key = std::make_pair(std::llround(p.x() / snap_), std::llround(p.y() / snap_));
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    const int id = static_cast<int>(points_.size());
    points_.push_back(p);
    index_.emplace(key, id);
    return id;
  }
  std::vector<Vec2> take() { return std::move(points_); }

private:
  double snap_;
  std::vector<Vec2> points_;
  std::map<std::pair<long long, long long>, int> index_;
};

bool in_lshape_hole(double xc, double yc) { return xc > 0.0 && yc < 0.0; }

PolygonalMesh make_grid(MeshKind kind, int n, const Domain& dom) {
  // Cells are kept near-square: n subdivisions along the shorter side.
  const double lx = dom.x1 - dom.x0, ly = dom.y1 - dom.y0;
  int nx = n, ny = n;
  if (lx > ly)
    nx = std::max(1, static_cast<int>(std::lround(n * lx / ly)));
  else if (ly > lx)
    ny = std::max(1, static_cast<int>(std::lround(n * ly / lx)));
  if (dom.kind == DomainKind::LShape) nx = ny = 2 * n; // n per quadrant

  const double dx = lx / nx, dy = ly / ny;
  auto vid = [&](int i, int j) { return j * (nx + 1) + i; };
  std::vector<Vec2> verts((nx + 1) * (ny + 1));
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) verts[vid(i, j)] = Vec2(dom.x0 + i * dx, dom.y0 + j * dy);

  std::vector<std::vector<int>> loops;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      if (dom.kind == DomainKind::LShape &&
          in_lshape_hole(dom.x0 + (i + 0.5) * dx, dom.y0 + (j + 0.5) * dy))
        continue;
      const int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
      if (kind == MeshKind::Quad) {
        loops.push_back({a, b, c, d});
      } else {
        loops.push_back({a, b, c});
        loops.push_back({a, c, d});
      }
    }
  return PolygonalMesh::from_polygons(std::move(verts), std::move(loops));
}

// Stretched flat-top honeycomb: column pitch 1/n in x, hexagon half-width
// 2/(3n); boundary columns and rows degenerate to clean half-cells.
PolygonalMesh make_hex(int n, const Domain& dom) {
  const double lx = dom.x1 - dom.x0, ly = dom.y1 - dom.y0;
  const int ncol = std::max(2, n);
  const double pitch = lx / ncol;       // x distance between column centers
  const double a = 2.0 * pitch / 3.0;   // hexagon half-width
  const int nrow = std::max(1, static_cast<int>(std::lround(ly / (std::sqrt(3.0) * a))));
  const double H = ly / nrow; // vertical period

  VertexPool pool(std::min(a, H) * 1e-9);
  std::vector<std::vector<int>> loops;

  auto clip_x = [&](double x) { return std::clamp(x, dom.x0, dom.x1); };
  for (int j = 0; j <= ncol; ++j) {
    const double xc = dom.x0 + j * pitch;
    const bool odd = (j % 2 != 0);
    const int i_lo = 0;
    const int i_hi = odd ? nrow - 1 : nrow;
    for (int i = i_lo; i <= i_hi; ++i) {
      const double yc = dom.y0 + (odd ? (i + 0.5) * H : i * H);
      // flat-top hexagon, clipped by the rectangle
      std::vector<Vec2> hex = {Vec2(xc + a, yc),           Vec2(xc + a / 2, yc + H / 2),
                               Vec2(xc - a / 2, yc + H / 2), Vec2(xc - a, yc),
                               Vec2(xc - a / 2, yc - H / 2), Vec2(xc + a / 2, yc - H / 2)};
      std::vector<Vec2> poly;
      for (std::size_t v = 0; v < hex.size(); ++v) {
        Vec2 p = hex[v];
        p.x() = clip_x(p.x());
        p.y() = std::clamp(p.y(), dom.y0, dom.y1);
        if (poly.empty() || (poly.back() - p).norm() > 1e-12 * a) poly.push_back(p);
      }
      if (!poly.empty() && (poly.back() - poly.front()).norm() <= 1e-12 * a) poly.pop_back();
      if (poly.size() < 3 || signed_area(poly) < 1e-12 * a * H) continue;
      std::vector<int> loop;
      for (const Vec2& p : poly) loop.push_back(pool.add(p));
      loops.push_back(std::move(loop));
    }
  }
  return PolygonalMesh::from_polygons(pool.take(), std::move(loops));
}

// Truncated-square tiling: one octagon per grid cell (corners cut at 1/4 of the
// side), diamonds at interior grid vertices, triangles along the boundary.
PolygonalMesh make_poly(int n, const Domain& dom) {
  const double lx = dom.x1 - dom.x0, ly = dom.y1 - dom.y0;
  int nx = n, ny = n;
  if (lx > ly)
    nx = std::max(1, static_cast<int>(std::lround(n * lx / ly)));
  else if (ly > lx)
    ny = std::max(1, static_cast<int>(std::lround(n * ly / lx)));
  const double dx = lx / nx, dy = ly / ny;
  const double tx = dx / 4.0, ty = dy / 4.0;

  VertexPool pool(std::min(tx, ty) * 1e-9);
  std::vector<std::vector<int>> loops;

  auto P = [&](double x, double y) { return pool.add(Vec2(dom.x0 + x, dom.y0 + y)); };

  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double x0 = i * dx, y0 = j * dy, x1 = (i + 1) * dx, y1 = (j + 1) * dy;
      loops.push_back({P(x0 + tx, y0), P(x1 - tx, y0), P(x1, y0 + ty), P(x1, y1 - ty),
                       P(x1 - tx, y1), P(x0 + tx, y1), P(x0, y1 - ty), P(x0, y0 + ty)});
    }
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) {
      const double x = i * dx, y = j * dy;
      const bool left = i == 0, right = i == nx, bottom = j == 0, top = j == ny;
      if ((left || right) && (bottom || top)) {
        // domain corner: triangle closing the cut corner of the single cell
        const double sx = left ? tx : -tx, sy = bottom ? ty : -ty;
        loops.push_back({P(x, y), P(x + sx, y), P(x, y + sy)}); // orientation fixed below
      } else if (left || right) {
        const double sx = left ? tx : -tx;
        loops.push_back(left ? std::vector<int>{P(x, y - ty), P(x + sx, y), P(x, y + ty)}
                             : std::vector<int>{P(x, y + ty), P(x + sx, y), P(x, y - ty)});
      } else if (bottom || top) {
        const double sy = bottom ? ty : -ty;
        loops.push_back(bottom ? std::vector<int>{P(x + tx, y), P(x, y + sy), P(x - tx, y)}
                               : std::vector<int>{P(x - tx, y), P(x, y + sy), P(x + tx, y)});
      } else {
        loops.push_back({P(x + tx, y), P(x, y + ty), P(x - tx, y), P(x, y - ty)});
      }
    }
  // fix orientation of the corner triangles generically
  std::vector<Vec2> pts = pool.take();
  for (auto& loop : loops) {
    std::vector<Vec2> poly(loop.size());
    for (std::size_t v = 0; v < loop.size(); ++v) poly[v] = pts[loop[v]];
    if (signed_area(poly) < 0.0) std::reverse(loop.begin(), loop.end());
  }
  return PolygonalMesh::from_polygons(std::move(pts), std::move(loops));
}

// Channel with a polygonal cylinder: non-uniform background quads plus a ring
// of quads between the 32n-gon cylinder and the square frame [0.1,0.3]^2.
PolygonalMesh make_channel(int n) {
  const Vec2 center(0.2, 0.2);
  const double radius = 0.05;
  const double f0 = 0.1, f1 = 0.3; // frame box
  const int nseg = 32 * n;

  const double d = 0.05 / n;
  std::vector<double> xs, ys;
  for (int i = 0;; ++i) {
    const double x = i * d;
    xs.push_back(x);
    if (x >= f0 - 1e-14) break;
  }
  {
    const int m2 = static_cast<int>(std::lround((2.2 - f1) / d));
    for (int i = 0; i <= m2; ++i) xs.push_back(f1 + i * (2.2 - f1) / m2);
  }
  for (int i = 0;; ++i) {
    const double y = i * d;
    ys.push_back(y);
    if (y >= f0 - 1e-14) break;
  }
  {
    const int m2 = std::max(1, static_cast<int>(std::lround((0.41 - f1) / d)));
    for (int i = 0; i <= m2; ++i) ys.push_back(f1 + i * (0.41 - f1) / m2);
  }

  VertexPool pool(1e-9 * d);
  std::vector<std::vector<int>> loops;

  // ring nodes: cylinder polygon and matching ray intersections with the frame
  std::vector<int> circ(nseg), frame(nseg);
  std::vector<Vec2> frame_pts(nseg);
  for (int i = 0; i < nseg; ++i) {
    const double phi = 2.0 * kPi * i / nseg;
    const Vec2 dir(std::cos(phi), std::sin(phi));
    circ[i] = pool.add(center + radius * dir);
    const double half = 0.1; // frame half-width
    const double s = half / std::max(std::abs(dir.x()), std::abs(dir.y()));
    frame_pts[i] = center + s * dir;
    // snap onto the frame exactly
    if (std::abs(std::abs(frame_pts[i].x() - center.x()) - half) < 1e-12)
      frame_pts[i].x() = center.x() + (dir.x() > 0 ? half : -half);
    if (std::abs(std::abs(frame_pts[i].y() - center.y()) - half) < 1e-12)
      frame_pts[i].y() = center.y() + (dir.y() > 0 ? half : -half);
    frame[i] = pool.add(frame_pts[i]);
  }
  for (int i = 0; i < nseg; ++i) {
    const int j = (i + 1) % nseg;
    loops.push_back({circ[j], circ[i], frame[i], frame[j]}); // ccw: hole on the inside
  }

  // background quads; the one cell coinciding with the frame box is the ring's
  // footprint, and cells flush against the frame absorb its nodes
  auto frame_nodes_on = [&](int side) {
    // side: 0 bottom(y=f0), 1 right(x=f1), 2 top(y=f1), 3 left(x=f0); sorted along +x or +y
    std::vector<Vec2> sel;
    for (const Vec2& p : frame_pts) {
      if (side == 0 && std::abs(p.y() - f0) < 1e-13 && p.x() > f0 + 1e-13 && p.x() < f1 - 1e-13)
        sel.push_back(p);
      if (side == 1 && std::abs(p.x() - f1) < 1e-13 && p.y() > f0 + 1e-13 && p.y() < f1 - 1e-13)
        sel.push_back(p);
      if (side == 2 && std::abs(p.y() - f1) < 1e-13 && p.x() > f0 + 1e-13 && p.x() < f1 - 1e-13)
        sel.push_back(p);
      if (side == 3 && std::abs(p.x() - f0) < 1e-13 && p.y() > f0 + 1e-13 && p.y() < f1 - 1e-13)
        sel.push_back(p);
    }
    std::sort(sel.begin(), sel.end(), [side](const Vec2& a, const Vec2& b) {
      return (side == 0 || side == 2) ? a.x() < b.x() : a.y() < b.y();
    });
    return sel;
  };

  const double eps = 1e-13;
  for (std::size_t j = 0; j + 1 < ys.size(); ++j)
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      const double x0 = xs[i], x1c = xs[i + 1], y0 = ys[j], y1c = ys[j + 1];
      if (std::abs(x0 - f0) < eps && std::abs(x1c - f1) < eps && std::abs(y0 - f0) < eps &&
          std::abs(y1c - f1) < eps)
        continue; // ring footprint
      std::vector<int> loop = {pool.add(Vec2(x0, y0)), pool.add(Vec2(x1c, y0)),
                               pool.add(Vec2(x1c, y1c)), pool.add(Vec2(x0, y1c))};
      auto insert_after = [&](int pos, const std::vector<Vec2>& pts, bool reversed) {
        std::vector<int> ids;
        for (const Vec2& p : pts) ids.push_back(pool.add(p));
        if (reversed) std::reverse(ids.begin(), ids.end());
        loop.insert(loop.begin() + pos + 1, ids.begin(), ids.end());
      };
      // cell above the frame: bottom edge is the frame's top side, etc.
      if (std::abs(y0 - f1) < eps && std::abs(x0 - f0) < eps && std::abs(x1c - f1) < eps)
        insert_after(0, frame_nodes_on(2), false);
      else if (std::abs(y1c - f0) < eps && std::abs(x0 - f0) < eps && std::abs(x1c - f1) < eps)
        insert_after(2, frame_nodes_on(0), true);
      else if (std::abs(x0 - f1) < eps && std::abs(y0 - f0) < eps && std::abs(y1c - f1) < eps)
        insert_after(3, frame_nodes_on(1), true);
      else if (std::abs(x1c - f0) < eps && std::abs(y0 - f0) < eps && std::abs(y1c - f1) < eps)
        insert_after(1, frame_nodes_on(3), false);
      loops.push_back(std::move(loop));
    }

  return PolygonalMesh::from_polygons(pool.take(), std::move(loops));
}

} // namespace

PolygonalMesh generate_structured(MeshKind kind, int n, const Domain& domain) {
  if (n < 1) throw std::invalid_argument("subdivision count must be >= 1");
  PolygonalMesh mesh;
  switch (domain.kind) {
    case DomainKind::Rectangle:
      switch (kind) {
        case MeshKind::Quad:
        case MeshKind::Triangle: mesh = make_grid(kind, n, domain); break;
        case MeshKind::HexDual: mesh = make_hex(n, domain); break;
        case MeshKind::MixedPoly: mesh = make_poly(n, domain); break;
      }
      break;
    case DomainKind::LShape:
      if (kind != MeshKind::Quad && kind != MeshKind::Triangle)
        throw std::invalid_argument("L-shape domain supports quad and triangle meshes only");
      mesh = make_grid(kind, n, domain);
      break;
    case DomainKind::ChannelWithHole:
      if (kind != MeshKind::Quad)
        throw std::invalid_argument("channel-with-hole supports the quad template only");
      mesh = make_channel(n);
      break;
  }
  mesh.set_domain(domain);
  return mesh;
}

} // namespace hho
