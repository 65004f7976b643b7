#include "hho/dof_map.hpp"

namespace hho {

DofMap::DofMap(const PolygonalMesh& mesh, int k)
    : k_(k), n_cell_(poly_dim_2d(k)), n_face_(k + 1) {
  const int ne = mesh.n_elements();
  const int nf = mesh.n_faces();
  face_base_ = ne * 2 * n_cell_;
  pressure_base_ = face_base_ + nf * 2 * n_face_;
  n_pressure_ = ne * n_cell_;
  multiplier_ = pressure_base_ + n_pressure_;

  boundary_face_.resize(nf);
  int nb = 0;
  for (int f = 0; f < nf; ++f) {
    boundary_face_[f] = mesh.face(f).is_boundary();
    if (boundary_face_[f]) ++nb;
  }
  n_velocity_solved_ = pressure_base_ - nb * 2 * n_face_;
}

} // namespace hho
