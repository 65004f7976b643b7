#include "hho/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hho {

double Domain::area() const {
  switch (kind) {
    case DomainKind::Rectangle: return (x1 - x0) * (y1 - y0);
    case DomainKind::LShape: return 3.0; // (-1,1)^2 minus one quadrant
    case DomainKind::ChannelWithHole: {
      // The hole is the inscribed polygon, not the disk; its area depends on the
      // cylinder resolution, so the generator records the exact value itself.
      return -1.0;
    }
  }
  return -1.0;
}

double Domain::diameter() const {
  const double dx = x1 - x0, dy = y1 - y0;
  return std::sqrt(dx * dx + dy * dy);
}

double Domain::boundary_distance(const Vec2& p) const {
  double d = std::min({std::abs(p.x() - x0), std::abs(x1 - p.x()), std::abs(p.y() - y0), std::abs(y1 - p.y())});
  if (kind == DomainKind::LShape) {
    // the two reentrant legs x=0 (y<=0) and y=0 (x>=0)
    if (p.y() <= 1e-14) d = std::min(d, std::abs(p.x()));
    if (p.x() >= -1e-14) d = std::min(d, std::abs(p.y()));
  } else if (kind == DomainKind::ChannelWithHole) {
    const Vec2 c(0.2, 0.2);
    d = std::min(d, std::abs((p - c).norm() - 0.05));
  }
  return d;
}

PolygonalMesh PolygonalMesh::from_polygons(std::vector<Vec2> vertices,
                                           std::vector<std::vector<int>> loops,
                                           std::vector<int> generations) {
  PolygonalMesh mesh;
  mesh.vertices_ = std::move(vertices);
  const int ne = static_cast<int>(loops.size());
  mesh.elements_.resize(ne);

  std::map<std::pair<int, int>, int> face_of; // (min,max) vertex pair -> face id

  for (int t = 0; t < ne; ++t) {
    Element& el = mesh.elements_[t];
    el.verts = std::move(loops[t]);
    el.generation = generations.empty() ? 0 : generations[t];
    const int m = static_cast<int>(el.verts.size());
    if (m < 3) throw std::invalid_argument("element with fewer than 3 vertices");

    std::vector<Vec2> loop(m);
    for (int i = 0; i < m; ++i) loop[i] = mesh.vertices_[el.verts[i]];
    el.area = signed_area(loop);
    if (!(el.area > 0.0))
      throw std::invalid_argument("element " + std::to_string(t) + " is not counterclockwise");
    el.barycenter = polygon_centroid(loop);
    el.diameter = polygon_diameter(loop);

    el.faces.resize(m);
    el.face_sign.resize(m);
    for (int i = 0; i < m; ++i) {
      const int a = el.verts[i];
      const int b = el.verts[(i + 1) % m];
      const auto key = std::minmax(a, b);
      auto it = face_of.find(key);
      if (it == face_of.end()) {
        Face f;
        f.v0 = a;
        f.v1 = b;
        f.owner = t;
        const Vec2 pa = mesh.vertices_[a], pb = mesh.vertices_[b];
        f.length = (pb - pa).norm();
        if (!(f.length > 0.0)) throw std::invalid_argument("zero-length face");
        const Vec2 tang = (pb - pa) / f.length;
        f.normal = Vec2(tang.y(), -tang.x()); // outward for a ccw loop
        f.midpoint = 0.5 * (pa + pb);
        const int fid = static_cast<int>(mesh.faces_.size());
        mesh.faces_.push_back(f);
        face_of.emplace(key, fid);
        el.faces[i] = fid;
        el.face_sign[i] = 1.0;
      } else {
        Face& f = mesh.faces_[it->second];
        if (f.neighbor >= 0)
          throw std::invalid_argument("face shared by more than two elements");
        f.neighbor = t;
        el.faces[i] = it->second;
        el.face_sign[i] = -1.0; // traversed in the opposite direction
      }
    }
  }

  mesh.vertex_elements_.assign(mesh.vertices_.size(), {});
  for (int t = 0; t < ne; ++t)
    for (int v : mesh.elements_[t].verts) mesh.vertex_elements_[v].push_back(t);

  mesh.total_area_ = 0.0;
  mesh.max_h_ = 0.0;
  mesh.min_h_ = std::numeric_limits<double>::max();
  double reg = std::numeric_limits<double>::max();
  for (const Element& el : mesh.elements_) {
    mesh.total_area_ += el.area;
    mesh.max_h_ = std::max(mesh.max_h_, el.diameter);
    mesh.min_h_ = std::min(mesh.min_h_, el.diameter);
    for (int f : el.faces)
      reg = std::min(reg, std::sqrt(mesh.faces_[f].length / (2.0 * el.diameter)));
  }
  mesh.regularity_ = reg;
  mesh.n_boundary_faces_ = 0;
  for (const Face& f : mesh.faces_)
    if (f.is_boundary()) ++mesh.n_boundary_faces_;
  return mesh;
}

std::vector<Vec2> PolygonalMesh::element_loop(int t) const {
  const Element& el = elements_[t];
  std::vector<Vec2> loop(el.verts.size());
  for (std::size_t i = 0; i < el.verts.size(); ++i) loop[i] = vertices_[el.verts[i]];
  return loop;
}

std::vector<int> PolygonalMesh::neighbors_sharing_node(int t) const {
  if (t < 0 || t >= n_elements()) throw std::out_of_range("element index out of range");
  std::set<int> out;
  for (int v : elements_[t].verts)
    for (int e : vertex_elements_[v]) out.insert(e);
  return std::vector<int>(out.begin(), out.end());
}

PolygonalMesh refine(const PolygonalMesh& mesh, const MarkSet& marks) {
  if (marks.elements.empty()) {
    std::cerr << "[hho] refine: empty mark set, returning mesh unchanged\n";
    return mesh;
  }
  std::vector<char> marked(mesh.n_elements(), 0);
  for (int t : marks.elements) {
    if (t < 0 || t >= mesh.n_elements()) throw std::out_of_range("mark index out of range");
    marked[t] = 1;
  }
  for (int t = 0; t < mesh.n_elements(); ++t) {
    if (!marked[t]) continue;
    if (!point_in_polygon(mesh.element(t).barycenter, mesh.element_loop(t)))
      throw std::runtime_error("refine: barycenter of element " + std::to_string(t) +
                               " lies outside it; refusing to refine");
  }

  std::vector<Vec2> verts = mesh.vertices();
  std::vector<int> face_mid(mesh.n_faces(), -1);
  for (int f = 0; f < mesh.n_faces(); ++f) {
    const Face& face = mesh.face(f);
    if (marked[face.owner] || (face.neighbor >= 0 && marked[face.neighbor])) {
      face_mid[f] = static_cast<int>(verts.size());
      verts.push_back(face.midpoint);
    }
  }

  std::vector<std::vector<int>> loops;
  std::vector<int> gens;
  for (int t = 0; t < mesh.n_elements(); ++t) {
    const Element& el = mesh.element(t);
    const int m = static_cast<int>(el.verts.size());
    if (marked[t]) {
      const int bc = static_cast<int>(verts.size());
      verts.push_back(el.barycenter);
      // one quadrilateral per original vertex: (v_i, mid_i, barycenter, mid_{i-1})
      for (int i = 0; i < m; ++i) {
        const int mid_prev = face_mid[el.faces[(i + m - 1) % m]];
        const int mid_next = face_mid[el.faces[i]];
        loops.push_back({el.verts[i], mid_next, bc, mid_prev});
        gens.push_back(el.generation + 1);
      }
    } else {
      std::vector<int> loop;
      for (int i = 0; i < m; ++i) {
        loop.push_back(el.verts[i]);
        if (face_mid[el.faces[i]] >= 0) loop.push_back(face_mid[el.faces[i]]);
      }
      loops.push_back(std::move(loop));
      gens.push_back(el.generation);
    }
  }

  PolygonalMesh out = PolygonalMesh::from_polygons(std::move(verts), std::move(loops), std::move(gens));
  if (mesh.domain()) out.set_domain(*mesh.domain());
  return out;
}

MeshDiagnostics validate(const PolygonalMesh& mesh) {
  MeshDiagnostics diag;
  diag.regularity = mesh.regularity();
  diag.min_h = mesh.min_diameter();
  diag.max_h = mesh.max_diameter();
  auto report = [&diag](const std::string& msg) { diag.violations.push_back(msg); };

  for (int t = 0; t < mesh.n_elements(); ++t) {
    const auto loop = mesh.element_loop(t);
    const double a = signed_area(loop);
    if (!(a > 0.0)) report("element " + std::to_string(t) + ": not counterclockwise");
    if (!polygon_is_simple(loop)) report("element " + std::to_string(t) + ": not simple");
    const Element& el = mesh.element(t);
    for (std::size_t lf = 0; lf < el.faces.size(); ++lf) {
      const Face& f = mesh.face(el.faces[lf]);
      const Vec2 n = mesh.outward_normal(t, static_cast<int>(lf));
      if ((f.midpoint - el.barycenter).dot(n) <= 0.0)
        report("element " + std::to_string(t) + ", face " + std::to_string(el.faces[lf]) +
               ": normal does not point outward");
      if (f.length > el.diameter * (1.0 + 1e-12))
        report("face " + std::to_string(el.faces[lf]) + ": h_F exceeds h_T");
    }
  }

  // face/element incidence round-trip
  for (int f = 0; f < mesh.n_faces(); ++f) {
    const Face& face = mesh.face(f);
    int count = 0;
    for (int t : {face.owner, face.neighbor}) {
      if (t < 0) continue;
      const Element& el = mesh.element(t);
      bool found = false;
      for (std::size_t lf = 0; lf < el.faces.size(); ++lf)
        if (el.faces[lf] == f) {
          found = true;
          const int a = el.verts[lf];
          const int b = el.verts[(lf + 1) % el.verts.size()];
          if (std::minmax(a, b) != std::minmax(face.v0, face.v1))
            report("face " + std::to_string(f) + ": endpoint mismatch with element loop");
        }
      if (!found) report("face " + std::to_string(f) + ": incident element does not list it");
      ++count;
    }
    if (count < 1 || count > 2) report("face " + std::to_string(f) + ": bad incidence count");
    if (face.owner >= 0 && face.neighbor >= 0 && face.owner >= face.neighbor)
      report("face " + std::to_string(f) + ": owner is not the smaller element index");
  }

  if (mesh.domain()) {
    const Domain& dom = *mesh.domain();
    const double darea = dom.area();
    if (darea > 0.0 && std::abs(mesh.total_area() - darea) > 1e-12 * darea)
      report("total area " + std::to_string(mesh.total_area()) + " differs from domain area");
    const double tol = 1e-12 * dom.diameter();
    for (int f = 0; f < mesh.n_faces(); ++f) {
      const Face& face = mesh.face(f);
      if (!face.is_boundary()) continue;
      if (dom.boundary_distance(mesh.vertex(face.v0)) > tol ||
          dom.boundary_distance(mesh.vertex(face.v1)) > tol)
        report("boundary face " + std::to_string(f) + ": endpoint off the domain boundary");
    }
  }
  return diag;
}

} // namespace hho
