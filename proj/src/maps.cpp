#include <algorithm>
#include <set>

#include "fanforge/complex.hpp"

namespace fanforge {

const char* map_kind_name(MapKind kind) {
  switch (kind) {
    case MapKind::local_isomorphism: return "local_isomorphism";
    case MapKind::regular_local_projection: return "regular_local_projection";
    case MapKind::general: return "general";
    case MapKind::invalid: return "invalid";
  }
  return "invalid";
}

namespace {

IntVector vertex_sum(const Cone& c) {
  IntVector s = IntVector::Zero(c.ambient_dim());
  for (const auto& v : c.vertices()) s += v;
  return s;
}

int find_vertex(const Cone& c, const IntVector& x) {
  for (Index j = 0; j < c.num_vertices(); ++j)
    if (same_vector(c.vertices()[j], x)) return static_cast<int>(j);
  return -1;
}

bool is_local_iso(const IntMatrix& l, const Cone& s, const Cone& t) {
  if (s.dim() != t.dim() || s.num_vertices() != t.num_vertices()) return false;
  std::set<int> hit;
  for (const auto& v : s.vertices()) {
    int j = find_vertex(t, l * v);
    if (j < 0) return false;
    hit.insert(j);
  }
  if (static_cast<Index>(hit.size()) != t.num_vertices()) return false;
  if (s.dim() == 0) return true;
  return sublattice_index(IntMatrix(l * s.lattice_basis()), t.lattice_basis()) == LatticeIndex{false, Integer(1)};
}

bool is_regular_projection(const IntMatrix& l, const Cone& s, const Cone& t) {
  std::vector<int> kernel_ids;
  std::vector<IntVector> others;
  std::set<int> hit;
  for (Index j = 0; j < s.num_vertices(); ++j) {
    IntVector img = l * s.vertices()[j];
    if (img.isZero()) {
      kernel_ids.push_back(static_cast<int>(j));
      continue;
    }
    int h = find_vertex(t, img);
    if (h < 0 || hit.count(h)) return false;
    hit.insert(h);
    others.push_back(s.vertices()[j]);
  }
  if (static_cast<Index>(hit.size()) != t.num_vertices()) return false;
  if (s.dim() == 0) return t.dim() == 0;
  if (minimal_face_over(s, kernel_ids) != kernel_ids) return false;
  Cone kernel = face_cone(s, kernel_ids);
  if (!is_regular(kernel)) return false;
  if (s.dim() != kernel.dim() + t.dim()) return false;
  if (rank(IntMatrix(l * s.lattice_basis())) != t.dim()) return false;
  if (t.dim() > 0 &&
      sublattice_index(IntMatrix(l * s.lattice_basis()), t.lattice_basis()) != LatticeIndex{false, Integer(1)})
    return false;
  if (others.empty()) return true;
  IntMatrix rest = saturate(columns_of(others, s.ambient_dim()), s.lattice_basis());
  IntMatrix both(s.ambient_dim(), kernel.dim() + rest.cols());
  if (kernel.dim() > 0) both.leftCols(kernel.dim()) = kernel.lattice_basis();
  both.rightCols(rest.cols()) = rest;
  return sublattice_index(both, s.lattice_basis()) == LatticeIndex{false, Integer(1)};
}

}  // namespace

MapReport check_map(const ComplexMap& f, const ConicalComplex& src, const ConicalComplex& dst) {
  MapReport rep;
  auto problem = [&](const std::string& s) { rep.problems.push_back(s); };
  if (static_cast<int>(f.image.size()) != src.size() || static_cast<int>(f.linear.size()) != src.size()) {
    problem("structure: map does not cover every source cone");
    rep.kind = MapKind::invalid;
    return rep;
  }
  for (int s = 0; s < src.size(); ++s) {
    const int t = f.image[s];
    const std::string tag = "cone " + std::to_string(s);
    if (t < 0 || t >= dst.size()) {
      problem("structure: " + tag + " has no image");
      continue;
    }
    const IntMatrix& l = f.linear[s];
    const Cone& sc = src.cone(s);
    const Cone& tc = dst.cone(t);
    if (l.rows() != tc.ambient_dim() || l.cols() != sc.ambient_dim()) {
      problem("structure: " + tag + " linear map has the wrong shape");
      continue;
    }
    IntMatrix img = l * sc.lattice_basis();
    for (Index j = 0; j < img.cols(); ++j)
      if (!tc.in_lattice(img.col(j))) {
        problem("lattice: " + tag + " lattice does not map into the target lattice");
        break;
      }
    bool inside = true;
    for (const auto& v : sc.vertices())
      if (!tc.contains(IntVector(l * v))) inside = false;
    if (!inside || !tc.in_relative_interior(IntVector(l * vertex_sum(sc))))
      problem("interior: " + tag + " interior does not map into the target interior");
    for (const auto& fl : src.faces(s)) {
      const int tt = f.image[fl.sub];
      if (tt < 0 || tt >= dst.size() || !dst.is_face(tt, t)) {
        problem("commutation: face " + std::to_string(fl.sub) + " of " + tag + " maps outside the image face");
        continue;
      }
      const IntMatrix& lt = f.linear[fl.sub];
      if (lt.cols() != src.cone(fl.sub).ambient_dim() || lt.rows() != dst.cone(tt).ambient_dim()) continue;
      const IntMatrix& b = src.cone(fl.sub).lattice_basis();
      if (IntMatrix(l * fl.map * b) != IntMatrix(dst.face_map(tt, t) * lt * b))
        problem("commutation: " + tag + " and face " + std::to_string(fl.sub) + " do not commute");
    }
  }
  if (!rep.problems.empty()) {
    rep.kind = MapKind::invalid;
    return rep;
  }
  bool iso = true, proj = true;
  for (int s = 0; s < src.size(); ++s) {
    const Cone& sc = src.cone(s);
    const Cone& tc = dst.cone(f.image[s]);
    if (!is_local_iso(f.linear[s], sc, tc)) iso = false;
    if (!is_regular_projection(f.linear[s], sc, tc)) proj = false;
  }
  if (iso) {
    rep.kind = MapKind::local_isomorphism;
  } else if (proj) {
    rep.kind = MapKind::regular_local_projection;
    // the singular faces must correspond one to one with isomorphic cones
    auto ss = sing_set(src).sing_faces;
    auto ts = sing_set(dst).sing_faces;
    std::set<int> images;
    for (int s : ss) {
      const int t = f.image[s];
      if (!std::binary_search(ts.begin(), ts.end(), t) || !is_local_iso(f.linear[s], src.cone(s), dst.cone(t)))
        problem("sing: singular face " + std::to_string(s) + " is not carried isomorphically");
      images.insert(t);
    }
    for (int t : ts) {
      bool reached = false;
      for (int s = 0; s < src.size(); ++s)
        if (f.image[s] == t) reached = true;
      if (reached && !images.count(t)) problem("sing: singular face " + std::to_string(t) + " has no singular preimage");
    }
    if (!rep.problems.empty()) rep.kind = MapKind::general;
  } else {
    rep.kind = MapKind::general;
  }
  return rep;
}

ComplexMap induced_fan_map(const ConicalComplex& src, const ConicalComplex& dst, const IntMatrix& f) {
  ComplexMap out;
  for (int s = 0; s < src.size(); ++s) {
    const Cone& sc = src.cone(s);
    if (f.cols() != sc.ambient_dim()) throw Error(ErrorCode::MapInvalid, "global map has the wrong shape");
    IntVector q = f * vertex_sum(sc);
    int hit = -1;
    for (int t = 0; t < dst.size() && hit < 0; ++t) {
      const Cone& tc = dst.cone(t);
      if (tc.ambient_dim() == q.size() && tc.in_relative_interior(q)) hit = t;
    }
    if (hit < 0) throw Error(ErrorCode::MapInvalid, "cone " + std::to_string(s) + " has no image cone");
    out.image.push_back(hit);
    out.linear.push_back(f);
  }
  return out;
}

}  // namespace fanforge
