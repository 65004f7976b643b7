#include "hho/mesh.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace hho {

void write_poly2d(const PolygonalMesh& mesh, std::ostream& out) {
  out << "poly2d " << mesh.n_vertices() << " " << mesh.n_elements() << "\n";
  out << std::setprecision(17);
  for (int v = 0; v < mesh.n_vertices(); ++v)
    out << mesh.vertex(v).x() << " " << mesh.vertex(v).y() << "\n";
  for (int t = 0; t < mesh.n_elements(); ++t) {
    const Element& el = mesh.element(t);
    out << el.verts.size();
    for (int v : el.verts) out << " " << v;
    out << "\n";
  }
}

PolygonalMesh read_poly2d(std::istream& in) {
  std::string magic;
  int nv = 0, ne = 0;
  if (!(in >> magic >> nv >> ne) || magic != "poly2d")
    throw std::runtime_error("not a poly2d stream");
  std::vector<Vec2> verts(nv);
  for (int v = 0; v < nv; ++v)
    if (!(in >> verts[v].x() >> verts[v].y())) throw std::runtime_error("poly2d: bad vertex line");
  std::vector<std::vector<int>> loops(ne);
  for (int t = 0; t < ne; ++t) {
    int m = 0;
    if (!(in >> m) || m < 3) throw std::runtime_error("poly2d: bad element line");
    loops[t].resize(m);
    for (int i = 0; i < m; ++i)
      if (!(in >> loops[t][i])) throw std::runtime_error("poly2d: bad element line");
  }
  return PolygonalMesh::from_polygons(std::move(verts), std::move(loops));
}

void write_poly2d_file(const PolygonalMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  write_poly2d(mesh, out);
}

PolygonalMesh read_poly2d_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_poly2d(in);
}

void write_vtk(const PolygonalMesh& mesh, const std::string& path,
               const std::vector<double>& cell_scalar, const std::string& scalar_name) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "# vtk DataFile Version 3.0\npolygonal mesh\nASCII\nDATASET POLYDATA\n";
  out << std::setprecision(17);
  out << "POINTS " << mesh.n_vertices() << " double\n";
  for (int v = 0; v < mesh.n_vertices(); ++v)
    out << mesh.vertex(v).x() << " " << mesh.vertex(v).y() << " 0\n";
  int list_size = 0;
  for (int t = 0; t < mesh.n_elements(); ++t)
    list_size += 1 + static_cast<int>(mesh.element(t).verts.size());
  out << "POLYGONS " << mesh.n_elements() << " " << list_size << "\n";
  for (int t = 0; t < mesh.n_elements(); ++t) {
    const Element& el = mesh.element(t);
    out << el.verts.size();
    for (int v : el.verts) out << " " << v;
    out << "\n";
  }
  if (!cell_scalar.empty()) {
    out << "CELL_DATA " << mesh.n_elements() << "\n";
    out << "SCALARS " << scalar_name << " double 1\nLOOKUP_TABLE default\n";
    for (double s : cell_scalar) out << s << "\n";
  }
}

} // namespace hho
