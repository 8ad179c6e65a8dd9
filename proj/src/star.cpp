#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "fanforge/complex.hpp"

namespace fanforge {

namespace {

// pair (cone of the old star, face of it outside the star); face -1 is the
// zero cone when the complex does not list one
using NewKey = std::pair<int, int>;

std::vector<int> sorted_union(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

}  // namespace

Subdivision star_subdivide(const ConicalComplex& k, const std::vector<StarCenter>& centers) {
  for (const auto& c : centers) {
    const Cone& carrier = k.cone(c.carrier);
    if (c.vector.size() != carrier.ambient_dim()) throw Error(ErrorCode::NotInterior, "center has the wrong dimension");
    auto coords = carrier.frame().coords(c.vector);
    if (!coords || coords->isZero() || content(*coords) != 1)
      throw Error(ErrorCode::NotPrimitive, "center is not a primitive lattice vector of its carrier");
    if (!carrier.in_relative_interior(c.vector))
      throw Error(ErrorCode::NotInterior, "center is not in the relative interior of its carrier");
  }
  std::vector<int> order(centers.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return centers[a].carrier < centers[b].carrier; });

  std::vector<int> owner(k.size(), -1);  // center index whose star holds the cone
  for (int ci : order)
    for (int s : star(k, centers[ci].carrier)) {
      if (owner[s] >= 0)
        throw Error(ErrorCode::StarsNotDisjoint, "stars of carriers " + std::to_string(centers[owner[s]].carrier) + " and " +
                                                     std::to_string(centers[ci].carrier) + " overlap");
      owner[s] = ci;
    }

  bool has_zero = false;
  for (int id = 0; id < k.size(); ++id)
    if (k.dim(id) == 0) has_zero = true;

  auto face_ids = [&](int rho, int delta) -> std::vector<int> {
    if (rho < 0) return {};
    return k.face_vertex_ids(rho, delta);
  };
  auto outside_faces = [&](int delta, int tau) {
    std::vector<int> out;
    if (!has_zero) out.push_back(-1);
    for (const auto& l : k.faces(delta))
      if (!k.is_face(tau, l.sub)) out.push_back(l.sub);
    return out;
  };

  std::vector<NewKey> new_keys;
  std::vector<int> new_center;
  for (int ci : order) {
    const int tau = centers[ci].carrier;
    for (int delta : star(k, tau)) {
      const auto tau_ids = face_ids(tau, delta);
      const Index nv = k.cone(delta).num_vertices();
      for (int rho : outside_faces(delta, tau)) {
        auto over = minimal_face_over(k.cone(delta), sorted_union(tau_ids, face_ids(rho, delta)));
        if (static_cast<Index>(over.size()) != nv) continue;
        new_keys.push_back({delta, rho});
        new_center.push_back(ci);
      }
    }
  }

  Subdivision out;
  out.old_to_new.assign(k.size(), -1);
  int next = 0;
  for (int id = 0; id < k.size(); ++id)
    if (owner[id] < 0) out.old_to_new[id] = next++;
  std::map<NewKey, int> new_id;
  for (size_t i = 0; i < new_keys.size(); ++i) new_id[new_keys[i]] = next + static_cast<int>(i);

  std::vector<ComplexCone> cones;
  for (int id = 0; id < k.size(); ++id) {
    if (owner[id] >= 0) continue;
    ComplexCone cc;
    cc.cone = k.cone(id);
    cc.frame = k.frame(id);
    for (const auto& l : k.faces(id)) cc.faces.push_back({out.old_to_new[l.sub], l.map, l.vertex_map});
    cones.push_back(std::move(cc));
  }
  for (size_t i = 0; i < new_keys.size(); ++i) {
    const auto [delta, rho] = new_keys[i];
    const StarCenter& c = centers[new_center[i]];
    const int tau = c.carrier;
    const Cone& dcone = k.cone(delta);
    std::vector<IntVector> gens{IntVector(k.face_map(tau, delta) * c.vector)};
    for (int j : face_ids(rho, delta)) gens.push_back(dcone.vertices()[j]);
    ComplexCone cc;
    cc.cone = Cone::from_generators(columns_of(gens, dcone.ambient_dim()), dcone.lattice_basis());
    cc.frame = k.frame(delta);
    const auto tau_ids = face_ids(tau, delta);
    std::vector<int> sub_faces;
    if (rho >= 0) {
      cc.faces.push_back({out.old_to_new[rho], k.face_map(rho, delta), {}});
      for (const auto& l : k.faces(rho)) {
        cc.faces.push_back({out.old_to_new[l.sub], k.face_map(l.sub, delta), {}});
        sub_faces.push_back(l.sub);
      }
      if (!has_zero) sub_faces.push_back(-1);
    }
    for (int rp : sub_faces) {
      auto over = minimal_face_over(dcone, sorted_union(tau_ids, face_ids(rp, delta)));
      int dpp = k.face_with_vertices(delta, over);
      if (dpp < 0) throw Error(ErrorCode::InvariantViolated, "missing face while subdividing");
      auto it = new_id.find({dpp, rp});
      if (it == new_id.end()) throw Error(ErrorCode::InvariantViolated, "missing new face while subdividing");
      cc.faces.push_back({it->second, k.face_map(dpp, delta), {}});
    }
    cones.push_back(std::move(cc));
  }

  out.new_rays.assign(centers.size(), -1);
  for (size_t ci = 0; ci < centers.size(); ++ci) {
    int tau = centers[ci].carrier;
    int zero = -1;
    if (has_zero)
      for (const auto& l : k.faces(tau))
        if (k.dim(l.sub) == 0) zero = l.sub;
    auto it = new_id.find({tau, zero});
    if (it != new_id.end()) out.new_rays[ci] = it->second;
  }
  out.complex = ConicalComplex(std::move(cones));
  return out;
}

}  // namespace fanforge
