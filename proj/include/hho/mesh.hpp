// Polygonal mesh: storage, structured generators, barycenter-to-edge-midpoint
// refinement with hanging nodes absorbed as polygon vertices, diagnostics and
// plain-text / VTK i/o.

#ifndef HHO_MESH_HPP
#define HHO_MESH_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hho/geometry.hpp"

namespace hho {

/// Straight mesh face (edge). The owner is always the incident element with the
/// smaller index and the stored unit normal points out of it, which fixes the
/// jump orientation once and for all.
struct Face {
  int v0 = -1, v1 = -1;     ///< endpoint vertex ids, in the owner's traversal order
  int owner = -1;           ///< T1
  int neighbor = -1;        ///< T2, or -1 for boundary faces
  Vec2 normal;              ///< unit normal n_F = n_{T1,F}
  Vec2 midpoint;
  double length = 0.0;      ///< h_F

  bool is_boundary() const { return neighbor < 0; }
};

struct Element {
  std::vector<int> verts;        ///< counterclockwise vertex loop
  std::vector<int> faces;        ///< face ids, faces[i] joins verts[i] -> verts[i+1]
  std::vector<double> face_sign; ///< sigma_TF in {+1,-1}: n_TF = sigma_TF * n_F
  double area = 0.0;
  double diameter = 0.0;         ///< h_T (max pairwise vertex distance)
  Vec2 barycenter;               ///< area centroid
  int generation = 0;            ///< refinement depth
};

/// Element indices selected for refinement.
struct MarkSet {
  std::vector<int> elements;
};

enum class MeshKind { Quad, Triangle, HexDual, MixedPoly };

enum class DomainKind { Rectangle, LShape, ChannelWithHole };

/// Computational domain. The L-shape is ((-1,1)x(-1,1)) \ ([0,1)x(-1,0]); the
/// channel is (0,2.2)x(0,0.41) minus a 32m-gon cylinder centered at (0.2,0.2)
/// with radius 0.05.
struct Domain {
  DomainKind kind = DomainKind::Rectangle;
  double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;

  static Domain unit_square() { return Domain{}; }
  static Domain rectangle(double x0, double y0, double x1, double y1) {
    return Domain{DomainKind::Rectangle, x0, y0, x1, y1};
  }
  static Domain l_shape() { return Domain{DomainKind::LShape, -1.0, -1.0, 1.0, 1.0}; }
  static Domain channel_with_hole() { return Domain{DomainKind::ChannelWithHole, 0.0, 0.0, 2.2, 0.41}; }

  double area() const;
  double diameter() const;
  /// Distance of a point to the domain boundary (cylinder hole included).
  double boundary_distance(const Vec2& p) const;
};

/// Immutable-after-construction polygonal mesh. Refinement returns a new mesh,
/// so concurrent read access is safe.
class PolygonalMesh {
public:
  /// Build a mesh from a vertex table and counterclockwise element loops; the
  /// face table, incidences, normals and metrics are derived here.
  static PolygonalMesh from_polygons(std::vector<Vec2> vertices,
                                     std::vector<std::vector<int>> loops,
                                     std::vector<int> generations = {});

  int n_vertices() const { return static_cast<int>(vertices_.size()); }
  int n_elements() const { return static_cast<int>(elements_.size()); }
  int n_faces() const { return static_cast<int>(faces_.size()); }
  int n_boundary_faces() const { return n_boundary_faces_; }

  const Vec2& vertex(int i) const { return vertices_[i]; }
  const Element& element(int t) const { return elements_[t]; }
  const Face& face(int f) const { return faces_[f]; }
  const std::vector<Vec2>& vertices() const { return vertices_; }

  /// Outward unit normal n_TF of local face `lf` of element `t`.
  Vec2 outward_normal(int t, int lf) const {
    const Element& el = elements_[t];
    return el.face_sign[lf] * faces_[el.faces[lf]].normal;
  }

  /// Vertex loop of an element as coordinates.
  std::vector<Vec2> element_loop(int t) const;

  double total_area() const { return total_area_; }
  double max_diameter() const { return max_h_; }
  double min_diameter() const { return min_h_; }
  /// Realized mesh-regularity parameter: min over (T,F) of sqrt(h_F/(2 h_T)).
  double regularity() const { return regularity_; }

  /// Elements sharing at least one node with t (includes t itself).
  std::vector<int> neighbors_sharing_node(int t) const;

  /// The domain this mesh discretizes, when known (set by the generators).
  const std::optional<Domain>& domain() const { return domain_; }
  void set_domain(const Domain& d) { domain_ = d; }

private:
  std::vector<Vec2> vertices_;
  std::vector<Element> elements_;
  std::vector<Face> faces_;
  std::vector<std::vector<int>> vertex_elements_; // incidence used by neighbor queries
  int n_boundary_faces_ = 0;
  double total_area_ = 0.0, max_h_ = 0.0, min_h_ = 0.0, regularity_ = 0.0;
  std::optional<Domain> domain_;
};

/// Deterministic structured generator. Throws std::invalid_argument on an
/// unsupported kind/domain combination or n < 1.
PolygonalMesh generate_structured(MeshKind kind, int n, const Domain& domain);

/// Barycenter-to-edge-midpoint refinement of the marked elements. Each marked
/// m-gon becomes m quadrilaterals; unmarked neighbors absorb the new edge
/// midpoints as ordinary polygon vertices. Throws on invalid indices or when a
/// marked element's barycenter lies outside it.
PolygonalMesh refine(const PolygonalMesh& mesh, const MarkSet& marks);

struct MeshDiagnostics {
  std::vector<std::string> violations;
  double regularity = 0.0;
  double min_h = 0.0, max_h = 0.0;
  bool ok() const { return violations.empty(); }
};

/// Invariant audit: orientation, simplicity, incidence round-trip, outward
/// normals, area sum and boundary placement (the last two when the domain is
/// known). Reports violations instead of failing.
MeshDiagnostics validate(const PolygonalMesh& mesh);

/// Plain-text mesh format: `poly2d <nv> <ne>`, vertices as `x y` with 17
/// significant digits, elements as `m v1 ... vm` (counterclockwise).
void write_poly2d(const PolygonalMesh& mesh, std::ostream& out);
PolygonalMesh read_poly2d(std::istream& in);
void write_poly2d_file(const PolygonalMesh& mesh, const std::string& path);
PolygonalMesh read_poly2d_file(const std::string& path);

/// Legacy-VTK polygon export with optional per-cell scalar field.
void write_vtk(const PolygonalMesh& mesh, const std::string& path,
               const std::vector<double>& cell_scalar = {},
               const std::string& scalar_name = "value");

} // namespace hho

#endif
