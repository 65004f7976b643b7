// Global degree-of-freedom layout: cell velocity blocks, face velocity blocks
// (shared between incident elements), cell pressure blocks and one Lagrange
// multiplier for the zero-mean pressure constraint.

#ifndef HHO_DOF_MAP_HPP
#define HHO_DOF_MAP_HPP

#include <vector>

#include "hho/mesh.hpp"
#include "hho/basis.hpp"

namespace hho {

class DofMap {
public:
  DofMap(const PolygonalMesh& mesh, int k);

  int k() const { return k_; }
  int n_cell_block() const { return n_cell_; }  ///< scalar dim of P^k(T)
  int n_face_block() const { return n_face_; }  ///< scalar dim of P^k(F)

  /// First global index of the velocity cell block of element t, component c.
  int cell_dof(int t, int comp) const { return t * 2 * n_cell_ + comp * n_cell_; }
  /// First global index of the velocity face block of face f, component c.
  int face_dof(int f, int comp) const { return face_base_ + f * 2 * n_face_ + comp * n_face_; }
  /// First global index of the pressure block of element t.
  int pressure_dof(int t) const { return pressure_base_ + t * n_cell_; }
  int multiplier_dof() const { return multiplier_; }

  int n_velocity() const { return pressure_base_; }
  int n_pressure() const { return n_pressure_; }
  int n_total() const { return multiplier_ + 1; }

  /// Velocity unknowns actually solved for (boundary face blocks eliminated).
  int n_velocity_solved() const { return n_velocity_solved_; }

  bool is_boundary_face(int f) const { return boundary_face_[f]; }

private:
  int k_, n_cell_, n_face_;
  int face_base_, pressure_base_, multiplier_;
  int n_pressure_, n_velocity_solved_;
  std::vector<char> boundary_face_;
};

} // namespace hho

#endif
