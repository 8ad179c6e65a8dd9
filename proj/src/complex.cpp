#include "fanforge/complex.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace fanforge {

namespace {

std::string cone_key(const Cone& c) {
  std::ostringstream os;
  os << c.ambient_dim() << '|';
  for (const auto& v : c.vertices()) {
    for (Index i = 0; i < v.size(); ++i) os << v(i) << ',';
    os << ';';
  }
  os << '|';
  const IntMatrix& b = c.lattice_basis();
  for (Index j = 0; j < b.cols(); ++j) {
    for (Index i = 0; i < b.rows(); ++i) os << b(i, j) << ',';
    os << ';';
  }
  return os.str();
}

// b is a positive multiple of a
bool same_ray(const IntVector& b, const IntVector& a) {
  if (a.size() != b.size()) return false;
  Index i = 0;
  while (i < a.size() && a(i) == 0) ++i;
  if (i == a.size() || b(i) == 0 || (b(i) > 0) != (a(i) > 0)) return false;
  return IntVector(b * a(i)) == IntVector(a * b(i));
}

bool same_on(const IntMatrix& a, const IntMatrix& b, const IntMatrix& basis) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return IntMatrix(a * basis) == IntMatrix(b * basis);
}

}  // namespace

ConicalComplex::ConicalComplex(std::vector<ComplexCone> cones) : cones_(std::move(cones)) { finalize(); }

const ComplexCone& ConicalComplex::at(int id) const {
  if (id < 0 || id >= size()) throw Error(ErrorCode::UnknownId, "no cone with id " + std::to_string(id));
  return cones_[id];
}

void ConicalComplex::finalize() {
  const int n = size();
  for (int id = 0; id < n; ++id) {
    auto& cc = cones_[id];
    if (cc.frame < 0) cc.frame = id;
    std::vector<FaceLink> clean;
    std::stable_sort(cc.faces.begin(), cc.faces.end(), [](const FaceLink& a, const FaceLink& b) { return a.sub < b.sub; });
    for (auto& l : cc.faces) {
      if (l.sub == id || l.sub < 0 || l.sub >= n) continue;
      if (!clean.empty() && clean.back().sub == l.sub) continue;
      clean.push_back(std::move(l));
    }
    cc.faces = std::move(clean);
  }
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return cones_[a].cone.dim() < cones_[b].cone.dim(); });
  for (int round = 0; round <= n; ++round) {
    bool changed = false;
    for (int id : order) {
      auto& cc = cones_[id];
      std::vector<FaceLink> extra;
      for (const auto& l : cc.faces) {
        for (const auto& l2 : cones_[l.sub].faces) {
          if (l2.sub == id) continue;
          auto present = [&](int s) {
            auto it = std::lower_bound(cc.faces.begin(), cc.faces.end(), s,
                                       [](const FaceLink& f, int v) { return f.sub < v; });
            if (it != cc.faces.end() && it->sub == s) return true;
            for (const auto& e : extra)
              if (e.sub == s) return true;
            return false;
          };
          if (present(l2.sub)) continue;
          if (l.map.cols() != l2.map.rows()) continue;
          extra.push_back({l2.sub, IntMatrix(l.map * l2.map), {}});
        }
      }
      if (!extra.empty()) {
        changed = true;
        for (auto& e : extra) cc.faces.push_back(std::move(e));
        std::sort(cc.faces.begin(), cc.faces.end(), [](const FaceLink& a, const FaceLink& b) { return a.sub < b.sub; });
      }
    }
    if (!changed) break;
  }
  for (int id = 0; id < n; ++id) {
    auto& cc = cones_[id];
    const auto& verts = cc.cone.vertices();
    for (auto& l : cc.faces) {
      const Cone& sub = cones_[l.sub].cone;
      // links copied from an earlier complex arrive with their map already known
      if (l.vertex_map.size() == static_cast<size_t>(sub.num_vertices())) continue;
      l.vertex_map.assign(sub.num_vertices(), -1);
      if (l.map.rows() != cc.cone.ambient_dim() || l.map.cols() != sub.ambient_dim()) continue;
      for (Index j = 0; j < sub.num_vertices(); ++j) {
        IntVector img = l.map * sub.vertices()[j];
        for (size_t t = 0; t < verts.size(); ++t)
          if (same_ray(img, verts[t])) {
            l.vertex_map[j] = static_cast<int>(t);
            break;
          }
      }
    }
  }
  supers_.assign(n, {});
  for (int id = 0; id < n; ++id)
    for (const auto& l : cones_[id].faces) supers_[l.sub].push_back(id);
  vertex_rays_.assign(n, {});
  for (int id = 0; id < n; ++id) {
    const auto& cc = cones_[id];
    auto& vr = vertex_rays_[id];
    vr.assign(cc.cone.num_vertices(), -1);
    if (cc.cone.dim() == 1 && cc.cone.num_vertices() == 1) {
      vr[0] = id;
      continue;
    }
    for (const auto& l : cc.faces) {
      if (cones_[l.sub].cone.dim() != 1 || l.vertex_map.size() != 1) continue;
      int j = l.vertex_map[0];
      if (j >= 0 && vr[j] < 0) vr[j] = l.sub;
    }
  }
}

const std::vector<int>& ConicalComplex::supers(int id) const {
  at(id);
  return supers_[id];
}

const std::vector<int>& ConicalComplex::vertex_rays(int id) const {
  at(id);
  return vertex_rays_[id];
}

const FaceLink* ConicalComplex::link(int sub, int super) const {
  const auto& fs = at(super).faces;
  auto it = std::lower_bound(fs.begin(), fs.end(), sub, [](const FaceLink& f, int v) { return f.sub < v; });
  if (it != fs.end() && it->sub == sub) return &*it;
  return nullptr;
}

IntMatrix ConicalComplex::face_map(int sub, int super) const {
  if (sub == super) return IntMatrix::Identity(cone(sub).ambient_dim(), cone(sub).ambient_dim());
  const FaceLink* l = link(sub, super);
  if (!l) throw Error(ErrorCode::UnknownId, "cone " + std::to_string(sub) + " is not a face of " + std::to_string(super));
  return l->map;
}

std::vector<int> ConicalComplex::face_vertex_ids(int sub, int super) const {
  if (sub == super) {
    std::vector<int> all(cone(super).num_vertices());
    for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    return all;
  }
  const FaceLink* l = link(sub, super);
  if (!l) throw Error(ErrorCode::UnknownId, "not a face");
  std::vector<int> out = l->vertex_map;
  std::sort(out.begin(), out.end());
  return out;
}

int ConicalComplex::face_with_vertices(int super, const std::vector<int>& vertex_ids) const {
  if (static_cast<Index>(vertex_ids.size()) == cone(super).num_vertices()) return super;
  for (const auto& l : faces(super)) {
    if (l.vertex_map.size() != vertex_ids.size()) continue;
    std::vector<int> s = l.vertex_map;
    std::sort(s.begin(), s.end());
    if (s == vertex_ids) return l.sub;
  }
  return -1;
}

std::vector<int> ConicalComplex::maximal_cones() const {
  std::vector<int> out;
  for (int id = 0; id < size(); ++id)
    if (supers_[id].empty()) out.push_back(id);
  return out;
}

std::vector<int> ConicalComplex::rays() const {
  std::vector<int> out;
  for (int id = 0; id < size(); ++id)
    if (cones_[id].cone.dim() == 1) out.push_back(id);
  return out;
}

int ConicalComplex::max_dim() const {
  int d = 0;
  for (const auto& c : cones_) d = std::max(d, static_cast<int>(c.cone.dim()));
  return d;
}

std::vector<Violation> validate(const ConicalComplex& k) {
  std::vector<Violation> out;
  for (int s = 0; s < k.size(); ++s) {
    const Cone& sigma = k.cone(s);
    auto face_sets = face_vertex_sets(sigma);
    std::set<std::vector<int>> face_set(face_sets.begin(), face_sets.end());
    std::map<std::vector<int>, std::vector<int>> covered;
    for (const auto& l : k.faces(s)) {
      const Cone& tau = k.cone(l.sub);
      const std::vector<int> ids{l.sub, s};
      if (tau.dim() >= sigma.dim()) {
        out.push_back({"order", ids, "face is not of smaller dimension"});
        continue;
      }
      if (l.map.rows() != sigma.ambient_dim() || l.map.cols() != tau.ambient_dim()) {
        out.push_back({"face", ids, "face map has the wrong shape"});
        continue;
      }
      IntMatrix img = l.map * tau.lattice_basis();
      bool in_lattice = true;
      for (Index j = 0; j < img.cols(); ++j)
        if (!sigma.in_lattice(img.col(j))) in_lattice = false;
      if (!in_lattice) {
        out.push_back({"lattice", ids, "face lattice does not map into the cone lattice"});
        continue;
      }
      if (rank(img) != tau.dim()) {
        out.push_back({"face", ids, "face map is not injective"});
        continue;
      }
      std::vector<int> vs = l.vertex_map;
      std::sort(vs.begin(), vs.end());
      bool ok = std::find(vs.begin(), vs.end(), -1) == vs.end() && std::adjacent_find(vs.begin(), vs.end()) == vs.end() &&
                face_set.count(vs);
      if (!ok) {
        out.push_back({"face", ids, "image is not a face"});
        continue;
      }
      covered[vs].push_back(l.sub);
      if (!is_saturated(img, sigma.lattice_basis()))
        out.push_back({"saturation", ids, "image lattice is not saturated"});
      for (const auto& l2 : k.faces(l.sub)) {
        const FaceLink* direct = k.link(l2.sub, s);
        if (!direct || l.map.cols() != l2.map.rows()) continue;
        if (!same_on(direct->map, IntMatrix(l.map * l2.map), k.cone(l2.sub).lattice_basis()))
          out.push_back({"composition", {l2.sub, l.sub, s}, "face maps do not compose"});
      }
    }
    const std::vector<int> full = face_sets.back().size() == static_cast<size_t>(sigma.num_vertices())
                                      ? face_sets.back()
                                      : std::vector<int>{};
    for (const auto& f : face_sets) {
      if (static_cast<Index>(f.size()) == sigma.num_vertices() && f.size() == full.size()) continue;
      auto it = covered.find(f);
      if (it == covered.end())
        out.push_back({"coverage", {s}, "a face has no cone in the complex"});
      else if (it->second.size() > 1) {
        std::vector<int> ids = it->second;
        ids.push_back(s);
        out.push_back({"coverage", ids, "a face is represented more than once"});
      }
    }
  }
  return out;
}

std::vector<int> star(const ConicalComplex& k, int tau) {
  std::vector<int> out = k.supers(tau);
  out.push_back(tau);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> closed_star(const ConicalComplex& k, int tau) {
  std::set<int> out;
  for (int s : star(k, tau)) {
    out.insert(s);
    for (const auto& l : k.faces(s)) out.insert(l.sub);
  }
  return {out.begin(), out.end()};
}

std::vector<int> link(const ConicalComplex& k, int tau) {
  auto cl = closed_star(k, tau);
  auto st = star(k, tau);
  std::vector<int> out;
  std::set_difference(cl.begin(), cl.end(), st.begin(), st.end(), std::back_inserter(out));
  return out;
}

bool is_subcomplex(const ConicalComplex& k, const std::vector<int>& ids) {
  std::set<int> in(ids.begin(), ids.end());
  for (int id : ids)
    for (const auto& l : k.faces(id))
      if (!in.count(l.sub)) return false;
  return true;
}

ConicalComplex subcomplex(const ConicalComplex& k, const std::vector<int>& ids, std::vector<int>* old_to_new) {
  if (!is_subcomplex(k, ids)) throw Error(ErrorCode::NotFaceClosed, "id set is not closed under faces");
  std::set<int> in(ids.begin(), ids.end());
  std::vector<int> remap(k.size(), -1);
  int next = 0;
  for (int id : in) remap[id] = next++;
  std::vector<ComplexCone> cones;
  for (int id : in) {
    ComplexCone cc;
    cc.cone = k.cone(id);
    for (const auto& l : k.faces(id)) cc.faces.push_back({remap[l.sub], l.map, {}});
    cones.push_back(std::move(cc));
  }
  if (old_to_new) *old_to_new = remap;
  return ConicalComplex(std::move(cones));
}

SingSet sing_set(const ConicalComplex& k) {
  SingSet out;
  std::set<int> closure;
  for (int id = 0; id < k.size(); ++id) {
    const Cone& c = k.cone(id);
    bool regular = is_regular(c);
    if (regular) out.reg_subcomplex.push_back(id);
    if (!regular && is_irreducible(c)) {
      out.sing_faces.push_back(id);
      closure.insert(id);
      for (const auto& l : k.faces(id)) closure.insert(l.sub);
    }
  }
  out.sing_subcomplex.assign(closure.begin(), closure.end());
  return out;
}

ConicalComplex fan_from_cones(const std::vector<Cone>& cones) {
  std::map<std::string, Cone> unique;
  for (const auto& c : cones)
    for (auto& f : faces(c)) unique.emplace(cone_key(f.cone), f.cone);
  std::vector<Cone> list;
  for (auto& kv : unique) list.push_back(kv.second);
  std::stable_sort(list.begin(), list.end(), [](const Cone& a, const Cone& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    const auto& va = a.vertices();
    const auto& vb = b.vertices();
    return std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end(),
                                        [](const IntVector& x, const IntVector& y) { return lex_less(x, y); });
  });
  std::map<std::string, int> ids;
  for (size_t i = 0; i < list.size(); ++i) ids[cone_key(list[i])] = static_cast<int>(i);
  std::vector<ComplexCone> out;
  for (const auto& c : list) {
    ComplexCone cc;
    cc.cone = c;
    const Index n = c.ambient_dim();
    for (auto& f : faces(c)) {
      if (f.vertex_ids.size() == static_cast<size_t>(c.num_vertices()) && f.cone.dim() == c.dim()) continue;
      cc.faces.push_back({ids.at(cone_key(f.cone)), IntMatrix::Identity(n, n), {}});
    }
    out.push_back(std::move(cc));
  }
  return ConicalComplex(std::move(out));
}

int locate(const ConicalComplex& k, int frame, const IntVector& x) {
  for (int id = 0; id < k.size(); ++id) {
    if (k.frame(id) != frame) continue;
    const Cone& c = k.cone(id);
    if (c.ambient_dim() != x.size()) continue;
    if (c.in_relative_interior(x)) return id;
  }
  return -1;
}

ConicalComplex transform_fan(const ConicalComplex& k, const IntMatrix& u) {
  std::vector<ComplexCone> out;
  for (int id = 0; id < k.size(); ++id) {
    const Cone& c = k.cone(id);
    ComplexCone cc;
    IntMatrix verts = u * c.vertex_matrix();
    cc.cone = Cone::with_lattice(IntMatrix(u * c.lattice_basis()), verts);
    cc.frame = k.frame(id);
    const Index m = u.rows();
    for (const auto& l : k.faces(id)) {
      if (l.map != IntMatrix::Identity(l.map.rows(), l.map.cols()))
        throw Error(ErrorCode::MapKindUnsupported, "transform_fan needs identity face maps");
      cc.faces.push_back({l.sub, IntMatrix::Identity(m, m), {}});
    }
    out.push_back(std::move(cc));
  }
  return ConicalComplex(std::move(out));
}

}  // namespace fanforge
