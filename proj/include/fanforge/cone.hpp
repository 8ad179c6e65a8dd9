#pragma once

#include <optional>
#include <vector>

#include "fanforge/exactlin.hpp"

namespace fanforge {

// A strictly convex rational cone together with its lattice N (the saturated
// lattice of its span). Vectors are given in ambient integer coordinates; the
// lattice is carried as a basis matrix in the same coordinates.
class Cone {
 public:
  Cone() = default;

  static Cone zero(Index ambient_dim);
  // lattice = (lattice spanned by ambient_lattice) intersected with span(gens)
  static Cone from_generators(const IntMatrix& gens, const IntMatrix& ambient_lattice);
  static Cone from_generators(const IntMatrix& gens);
  // explicit lattice; saturated to span(gens) when larger
  static Cone with_lattice(const IntMatrix& lattice_basis, const IntMatrix& gens);

  Index ambient_dim() const { return frame_.ambient_dim(); }
  Index dim() const { return frame_.rank(); }
  const LatticeFrame& frame() const { return frame_; }
  const IntMatrix& lattice_basis() const { return frame_.basis(); }

  // primitive extreme rays in ambient coordinates, lexicographically sorted
  const std::vector<IntVector>& vertices() const { return vertices_; }
  Index num_vertices() const { return static_cast<Index>(vertices_.size()); }
  IntMatrix vertex_matrix() const { return columns_of(vertices_, ambient_dim()); }
  // d x k, lattice coordinates of the vertices
  const IntMatrix& vertex_coords() const { return vertex_coords_; }
  // rows: primitive inward facet normals in lattice coordinates
  const IntMatrix& facet_normals() const { return normals_; }
  const std::vector<std::vector<int>>& facet_vertices() const { return facet_vertices_; }

  bool is_simplicial() const { return num_vertices() == dim(); }
  bool contains(const IntVector& x) const;
  bool contains(const RatVector& x) const;
  bool in_relative_interior(const IntVector& x) const;
  bool in_lattice(const IntVector& x) const { return frame_.coords(x).has_value(); }
  // vertex indices spanning the smallest face containing x (x must lie in the cone)
  std::vector<int> carrier_vertices(const IntVector& x) const;

  // Simplicial only: x = sum_i num_i/den * vertex_i with den > 0.
  std::pair<IntVector, Integer> coefficients(const IntVector& x) const;
  std::vector<Rational> rational_coefficients(const IntVector& x) const;

  // integer functionals on ambient coordinates; x in span lies in the cone
  // iff all values are >= 0
  IntMatrix ambient_facet_functionals() const;

  bool same_as(const Cone& other) const;

 private:
  void build(IntMatrix lattice_basis, const IntMatrix& gens);

  LatticeFrame frame_;
  std::vector<IntVector> vertices_;
  IntMatrix vertex_coords_;
  IntMatrix normals_;
  std::vector<std::vector<int>> facet_vertices_;
  // simplicial data: vertex_coords^{-1} = inv_adj_ / inv_det_
  IntMatrix inv_adj_;
  Integer inv_det_ = 1;
};

struct ConeFace {
  std::vector<int> vertex_ids;  // indices into the parent's vertex list
  Cone cone;
};

struct SingRegSplit {
  Cone sing_part;
  Cone reg_part;
  std::vector<int> sing_vertex_ids;
  std::vector<int> reg_vertex_ids;
};

// One lattice point of a simplicial cone with its vertex coefficients num/den.
struct ConePoint {
  IntVector vector;
  IntVector coef_num;
  Integer den;
};

std::vector<IntVector> vertices(const Cone& c);
// all faces including {0} and c, ordered by dimension then vertex ids
std::vector<ConeFace> faces(const Cone& c);
// vertex subsets of all faces, same order as faces()
std::vector<std::vector<int>> face_vertex_sets(const Cone& c);
Cone face_cone(const Cone& c, const std::vector<int>& vertex_ids);
// vertex ids of the smallest face containing the given vertices
std::vector<int> minimal_face_over(const Cone& c, const std::vector<int>& vertex_ids);

bool is_regular(const Cone& c);
Integer det_simplicial(const Cone& c);
SingRegSplit sing_reg_split(const Cone& c);
bool is_irreducible(const Cone& c);

// nonzero points of the half-open fundamental parallelepiped
std::vector<ConePoint> small_points(const Cone& c);
std::vector<IntVector> small_vectors(const Cone& c);
std::vector<IntVector> minimal_vectors(const Cone& c);
std::vector<IntVector> minimal_internal_vectors(const Cone& c);
IntVector canonical_barycenter(const Cone& c);

void sort_lex(std::vector<IntVector>& vs);

}  // namespace fanforge
