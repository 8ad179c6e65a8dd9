#include "fanforge/relative.hpp"

#include <algorithm>
#include <set>

namespace fanforge {

bool RelativeComplex::in_omega(int id) const { return std::binary_search(omega.begin(), omega.end(), id); }

bool RelativeComplex::nontrivial() const {
  for (int id : omega)
    if (complex.dim(id) > 0) return true;
  return false;
}

namespace {

// omega cones among the faces of the cone (itself included)
std::vector<int> omega_faces(const RelativeComplex& rk, int cone_id) {
  std::vector<int> out;
  for (const auto& l : rk.complex.faces(cone_id))
    if (rk.in_omega(l.sub)) out.push_back(l.sub);
  if (rk.in_omega(cone_id)) out.push_back(cone_id);
  return out;
}

std::vector<int> sorted_union(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

IntVector sum_of(const std::vector<IntVector>& vs, Index n) {
  IntVector s = IntVector::Zero(n);
  for (const auto& v : vs) s += v;
  return s;
}

}  // namespace

bool omega_saturated(const RelativeComplex& rk) {
  std::set<int> omega_rays;
  for (int id : rk.omega)
    if (rk.complex.dim(id) == 1) omega_rays.insert(id);
  for (int id = 0; id < rk.complex.size(); ++id) {
    if (rk.in_omega(id) || rk.complex.dim(id) == 0) continue;
    bool all = true;
    for (int r : rk.complex.vertex_rays(id))
      if (!omega_rays.count(r)) all = false;
    if (all) return false;
  }
  return true;
}

std::vector<int> omega_vertex_ids(const RelativeComplex& rk, int cone_id) {
  std::vector<int> out;
  for (int f : omega_faces(rk, cone_id)) out = sorted_union(out, rk.complex.face_vertex_ids(f, cone_id));
  return out;
}

RelPairStatus pair_status(const RelativeComplex& rk, int cone_id) {
  const ConicalComplex& k = rk.complex;
  const Cone& c = k.cone(cone_id);
  RelPairStatus st;
  auto om = omega_faces(rk, cone_id);
  std::vector<int> maximal;
  for (int a : om) {
    bool covered = false;
    for (int b : om)
      if (a != b && k.is_face(a, b)) covered = true;
    if (!covered) maximal.push_back(a);
  }
  std::vector<int> omega_ids;
  if (maximal.size() <= 1) {
    st.balanced = true;
    if (maximal.size() == 1) {
      st.max_omega_face = maximal[0];
      st.omega_dim = k.dim(maximal[0]);
      omega_ids = k.face_vertex_ids(maximal[0], cone_id);
    }
  }
  auto split = sing_reg_split(c);
  const auto all_omega = omega_vertex_ids(rk, cone_id);
  auto over = minimal_face_over(c, sorted_union(split.sing_vertex_ids, all_omega));
  st.sing_omega_face = k.face_with_vertices(cone_id, over);
  st.relatively_irreducible = c.dim() > 0 && static_cast<Index>(over.size()) == c.num_vertices();
  if (!st.balanced) return st;
  st.regular_pair = std::includes(omega_ids.begin(), omega_ids.end(), split.sing_vertex_ids.begin(),
                                  split.sing_vertex_ids.end());
  std::vector<IntVector> free_verts, omega_verts;
  for (Index j = 0; j < c.num_vertices(); ++j) {
    if (std::binary_search(omega_ids.begin(), omega_ids.end(), static_cast<int>(j)))
      omega_verts.push_back(c.vertices()[j]);
    else
      free_verts.push_back(c.vertices()[j]);
  }
  const Index n = c.ambient_dim();
  const Index r_omega = omega_verts.empty() ? 0 : rank(columns_of(omega_verts, n));
  const Index r_all = c.num_vertices() == 0 ? 0 : rank(c.vertex_matrix());
  st.simplicial_pair = r_all == static_cast<Index>(free_verts.size()) + r_omega;
  if (st.simplicial_pair) {
    if (c.dim() == 0) {
      st.rel_det = Integer(1);
    } else {
      IntMatrix omega_lattice =
          omega_verts.empty() ? IntMatrix(n, 0) : saturate(columns_of(omega_verts, n), c.lattice_basis());
      IntMatrix gens(n, omega_lattice.cols() + static_cast<Index>(free_verts.size()));
      gens.leftCols(omega_lattice.cols()) = omega_lattice;
      for (size_t j = 0; j < free_verts.size(); ++j) gens.col(omega_lattice.cols() + j) = free_verts[j];
      auto idx = sublattice_index(gens, c.lattice_basis());
      if (idx.infinite) throw Error(ErrorCode::InvariantViolated, "relative determinant is infinite");
      st.rel_det = idx.value;
    }
  }
  return st;
}

std::vector<IntVector> relative_small_vectors(const RelativeComplex& rk, int cone_id) {
  const Cone& c = rk.complex.cone(cone_id);
  if (!c.is_simplicial()) throw Error(ErrorCode::NotSimplicial, "small vectors need a simplicial cone");
  auto st = pair_status(rk, cone_id);
  if (!st.balanced) throw Error(ErrorCode::NotBalanced, "cone " + std::to_string(cone_id) + " is not balanced");
  std::vector<int> omega_ids;
  if (st.max_omega_face) omega_ids = rk.complex.face_vertex_ids(*st.max_omega_face, cone_id);
  std::vector<IntVector> out;
  for (const auto& v : small_vectors(c)) {
    auto carrier = c.carrier_vertices(v);
    if (!std::includes(omega_ids.begin(), omega_ids.end(), carrier.begin(), carrier.end())) out.push_back(v);
  }
  return out;
}

std::vector<IntVector> relative_minimal_vectors(const RelativeComplex& rk, int cone_id) {
  auto st = pair_status(rk, cone_id);
  if (!st.balanced) throw Error(ErrorCode::NotBalanced, "cone " + std::to_string(cone_id) + " is not balanced");
  if (!st.simplicial_pair) throw Error(ErrorCode::NotSimplicialPair, "cone " + std::to_string(cone_id));
  const Cone& c = rk.complex.cone(cone_id);
  std::vector<int> omega_ids;
  if (st.max_omega_face) omega_ids = rk.complex.face_vertex_ids(*st.max_omega_face, cone_id);
  std::vector<IntVector> out;
  for (const auto& v : minimal_vectors(c)) {
    auto carrier = c.carrier_vertices(v);
    if (!std::includes(omega_ids.begin(), omega_ids.end(), carrier.begin(), carrier.end())) out.push_back(v);
  }
  return out;
}

IntVector relative_barycenter(const RelativeComplex& rk, int cone_id) {
  if (rk.in_omega(cone_id)) throw Error(ErrorCode::InOmega, "cone " + std::to_string(cone_id) + " lies in omega");
  if (!pair_status(rk, cone_id).relatively_irreducible)
    throw Error(ErrorCode::NotRelativelyIrreducible, "cone " + std::to_string(cone_id));
  const Cone& c = rk.complex.cone(cone_id);
  std::vector<IntVector> omega_verts;
  for (int j : omega_vertex_ids(rk, cone_id)) omega_verts.push_back(c.vertices()[j]);
  IntVector v = sum_of(omega_verts, c.ambient_dim()) + sum_of(minimal_internal_vectors(c), c.ambient_dim());
  if (v.isZero()) throw Error(ErrorCode::EmptyInterior, "cone " + std::to_string(cone_id));
  return primitivize(v, c.lattice_basis());
}

namespace {

MuPolynomial mu_impl(const RelativeComplex& rk, bool strict) {
  MuPolynomial p;
  for (int m : rk.complex.maximal_cones()) {
    auto st = pair_status(rk, m);
    if (!st.balanced) {
      if (strict) throw Error(ErrorCode::NotBalanced, "maximal cone " + std::to_string(m));
      continue;
    }
    if (!st.simplicial_pair) {
      if (strict) throw Error(ErrorCode::NotSimplicialPair, "maximal cone " + std::to_string(m));
      continue;
    }
    if (*st.rel_det > 1) ++p.coef[{st.omega_dim, *st.rel_det}];
  }
  return p;
}

Integer mu_weight(const MuPolynomial& p) {
  Integer w = 0;
  for (const auto& [key, n] : p.coef) w += (Integer(key.first) + key.second) * n;
  return w;
}

}  // namespace

MuPolynomial mu_polynomial(const RelativeComplex& rk) { return mu_impl(rk, true); }
MuPolynomial mu_histogram(const RelativeComplex& rk) { return mu_impl(rk, false); }

RelativeResult resolve_relative(const RelativeComplex& rk, const ResolveOptions& opt) {
  for (int w : rk.omega) {
    std::set<long long> ranks;
    for (int ray : rk.complex.vertex_rays(w)) {
      if (ray < 0 || !rk.omega_order.marked(ray))
        throw Error(ErrorCode::OrderNotTotal, "vertex of omega cone " + std::to_string(w) + " has no rank");
      if (!ranks.insert(rk.omega_order.rank.at(ray)).second)
        throw Error(ErrorCode::OrderNotTotal, "omega cone " + std::to_string(w) + " has tied vertices");
    }
  }
  RelativeResult r;
  r.complex = rk;
  r.marking = rk.omega_order;
  const bool with_mu = rk.nontrivial();
  auto run_batch = [&](const std::vector<StarCenter>& centers, const std::string& phase) {
    std::optional<MuPolynomial> pmu;
    if (with_mu) pmu = mu_histogram(r.complex);
    auto old_to_new = detail::apply_batch(r.complex.complex, r.marking, centers, phase, r.trace, opt, pmu);
    for (int& w : r.complex.omega) {
      w = old_to_new[w];
      if (w < 0) throw Error(ErrorCode::InvariantViolated, "a subdivision touched omega");
    }
    std::sort(r.complex.omega.begin(), r.complex.omega.end());
    return old_to_new;
  };

  const ConicalComplex& input = rk.complex;
  std::vector<int> current(input.size());
  for (int id = 0; id < input.size(); ++id) current[id] = id;
  for (int d = input.max_dim(); d >= 2; --d) {
    std::vector<StarCenter> centers;
    for (int id = 0; id < input.size(); ++id) {
      const int cur = current[id];
      if (cur < 0 || input.dim(id) != d || r.complex.in_omega(cur)) continue;
      if (!pair_status(r.complex, cur).relatively_irreducible) continue;
      centers.push_back({cur, relative_barycenter(r.complex, cur)});
    }
    if (centers.empty()) continue;
    auto old_to_new = run_batch(centers, "barycentric");
    for (int& c : current)
      if (c >= 0) c = old_to_new[c];
  }

  MuPolynomial p = mu_polynomial(r.complex);
  const long long guard = detail::iteration_guard(mu_weight(p), opt);
  long long iterations = 0;
  auto singular_maximal = [&]() {
    std::vector<int> out;
    for (int m : r.complex.complex.maximal_cones())
      if (!pair_status(r.complex, m).regular_pair) out.push_back(m);
    return out;
  };
  for (auto bad = singular_maximal(); !bad.empty(); bad = singular_maximal()) {
    if (++iterations > guard)
      throw Error(ErrorCode::NonTermination, "relative phase exceeded " + std::to_string(guard) + " batches");
    const ConicalComplex& k = r.complex.complex;
    std::map<int, StarCenter> candidate_of;
    for (int m : bad) {
      if (!k.cone(m).is_simplicial())
        throw Error(ErrorCode::NotSimplicial, "relatively singular maximal cone " + std::to_string(m) + " is not simplicial");
      IntVector v = minimal_in_order(k, r.marking, m, relative_small_vectors(r.complex, m));
      int carrier = detail::carrier_in(k, m, v);
      candidate_of[m] = {carrier, detail::pull_to_face(k, carrier, m, v)};
    }
    auto batch = detail::canonical_batch(k, candidate_of);
    if (batch.empty()) throw Error(ErrorCode::InvariantViolated, "no canonical centers in the relative phase");
    run_batch(batch, "minimal");
    MuPolynomial next = mu_polynomial(r.complex);
    if (!(next < p)) throw Error(ErrorCode::InvariantViolated, "relative invariant did not decrease");
    p = std::move(next);
  }
  return r;
}

}  // namespace fanforge
