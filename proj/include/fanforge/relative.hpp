#pragma once

#include <optional>
#include <vector>

#include "fanforge/resolve.hpp"

namespace fanforge {

struct RelativeComplex {
  ConicalComplex complex;
  std::vector<int> omega;  // cone ids of the subcomplex, sorted
  Marking omega_order;     // ranks of the rays of omega

  bool in_omega(int id) const;
  // true when omega has a cone of positive dimension
  bool nontrivial() const;
};

struct RelPairStatus {
  bool balanced = false;
  std::optional<int> max_omega_face;  // absent for the zero face when it is not listed
  long long omega_dim = 0;
  bool simplicial_pair = false;
  bool regular_pair = false;
  int sing_omega_face = -1;  // -1: the zero face when it is not listed
  bool relatively_irreducible = false;
  std::optional<Integer> rel_det;  // for simplicial pairs
};

// every cone whose rays all lie in omega belongs to omega
bool omega_saturated(const RelativeComplex& rk);
// vertex ids of the cone that lie on faces in omega
std::vector<int> omega_vertex_ids(const RelativeComplex& rk, int cone_id);

RelPairStatus pair_status(const RelativeComplex& rk, int cone_id);
std::vector<IntVector> relative_minimal_vectors(const RelativeComplex& rk, int cone_id);
std::vector<IntVector> relative_small_vectors(const RelativeComplex& rk, int cone_id);
IntVector relative_barycenter(const RelativeComplex& rk, int cone_id);

MuPolynomial mu_polynomial(const RelativeComplex& rk);
// same, skipping maximal cones that are not simplicial pairs
MuPolynomial mu_histogram(const RelativeComplex& rk);

struct RelativeResult {
  RelativeComplex complex;
  Marking marking;
  SubdivisionTrace trace;
};

RelativeResult resolve_relative(const RelativeComplex& rk, const ResolveOptions& opt = {});

}  // namespace fanforge
