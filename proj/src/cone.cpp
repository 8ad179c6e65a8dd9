#include "fanforge/cone.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace fanforge {

namespace {

struct LexLess {
  bool operator()(const IntVector& a, const IntVector& b) const { return lex_less(a, b); }
};

IntVector primitive_part(const IntVector& v) {
  Integer g = content(v);
  IntVector out = v;
  if (g > 1)
    for (Index i = 0; i < out.size(); ++i) out(i) /= g;
  return out;
}

void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

struct BoxPoint {
  IntVector coords;  // lattice coordinates
  IntVector num;     // coefficients num/den on the columns of the basis
};

// Points of Z^d in the half-open parallelepiped spanned by the columns of v
// (nonsingular, d x d); den = |det v|.
std::vector<BoxPoint> half_open_box(const IntMatrix& v, Integer& den) {
  const Index d = v.rows();
  Integer det = determinant(v);
  IntMatrix adj = adjugate(v);
  if (det < 0) {
    det = -det;
    adj = -adj;
  }
  den = det;
  Hnf<Integer> f = hnf<Integer>(v.transpose());
  std::vector<Integer> bound(d);
  for (Index i = 0; i < d; ++i) bound[i] = f.h(i, i);
  std::vector<BoxPoint> out;
  IntVector x = IntVector::Zero(d);
  while (true) {
    IntVector num = adj * x;
    for (Index i = 0; i < d; ++i) num(i) = mod_floor(num(i), det);
    IntVector p = v * num;
    for (Index i = 0; i < d; ++i) p(i) /= det;
    out.push_back({p, num});
    Index i = 0;
    while (i < d) {
      x(i) += 1;
      if (x(i) < bound[i]) break;
      x(i) = 0;
      ++i;
    }
    if (i == d) break;
  }
  return out;
}

}  // namespace

Cone Cone::zero(Index ambient_dim) {
  Cone c = with_lattice(IntMatrix(ambient_dim, 0), IntMatrix(ambient_dim, 0));
  return c;
}

Cone Cone::from_generators(const IntMatrix& gens, const IntMatrix& ambient_lattice) {
  Cone c;
  c.build(saturate(gens, ambient_lattice), gens);
  return c;
}

Cone Cone::from_generators(const IntMatrix& gens) {
  return from_generators(gens, IntMatrix::Identity(gens.rows(), gens.rows()));
}

Cone Cone::with_lattice(const IntMatrix& lattice_basis, const IntMatrix& gens) {
  Cone c;
  c.build(lattice_basis, gens);
  return c;
}

void Cone::build(IntMatrix lattice_basis, const IntMatrix& gens) {
  const Index n = gens.rows();
  if (lattice_basis.rows() != n) throw std::invalid_argument("lattice and generator dimensions differ");
  IntMatrix basis = lattice_basis_of(lattice_basis);
  std::vector<IntVector> nonzero;
  for (Index j = 0; j < gens.cols(); ++j)
    if (!gens.col(j).isZero()) nonzero.push_back(gens.col(j));
  IntMatrix g = columns_of(nonzero, n);
  if (rank(g) < basis.cols()) basis = saturate(g, basis);
  frame_ = LatticeFrame(basis);
  const Index d = frame_.rank();

  std::vector<IntVector> dirs;
  {
    std::set<IntVector, LexLess> seen;
    for (const auto& v : nonzero) {
      auto c = frame_.coords(v);
      if (!c) throw Error(ErrorCode::NotInLattice, "generator not in the cone lattice");
      IntVector p = primitive_part(*c);
      if (seen.insert(p).second) dirs.push_back(p);
    }
    for (const auto& p : dirs)
      if (seen.count(IntVector(-p))) throw Error(ErrorCode::NotStrictlyConvex, "cone contains a line");
  }

  std::vector<IntVector> vert_coords;
  if (d == 0) {
    normals_ = IntMatrix(0, 0);
  } else if (d == 1) {
    vert_coords.push_back(dirs.front());
    normals_ = IntMatrix(1, 1);
    normals_(0, 0) = dirs.front()(0);
  } else {
    std::vector<IntVector> normals;
    const int k = static_cast<int>(dirs.size());
    if (k == d) {
      IntMatrix vm = columns_of(dirs, d);
      Integer det = determinant(vm);
      IntMatrix adj = adjugate(vm);
      if (det < 0) adj = -adj;
      for (Index i = 0; i < d; ++i) normals.push_back(primitive_part(adj.row(i).transpose()));
    } else {
      std::set<IntVector, LexLess> found;
      for_each_subset(k, static_cast<int>(d - 1), [&](const std::vector<int>& sub) {
        IntMatrix rows(d - 1, d);
        for (Index i = 0; i < d - 1; ++i) rows.row(i) = dirs[sub[i]].transpose();
        IntMatrix ker = integer_kernel<Integer>(rows);
        if (ker.cols() != 1) return;
        IntVector nv = primitive_part(ker.col(0));
        bool pos = false, neg = false;
        for (const auto& u : dirs) {
          Integer s = nv.dot(u);
          if (s > 0) pos = true;
          if (s < 0) neg = true;
        }
        if (pos && neg) return;
        if (neg) nv = -nv;
        found.insert(nv);
      });
      normals.assign(found.begin(), found.end());
      if (normals.empty() || rank(columns_of(normals, d)) < d)
        throw Error(ErrorCode::NotStrictlyConvex, "cone is not pointed");
    }
    IntMatrix nm(static_cast<Index>(normals.size()), d);
    for (size_t i = 0; i < normals.size(); ++i) nm.row(static_cast<Index>(i)) = normals[i].transpose();
    for (const auto& u : dirs) {
      std::vector<IntVector> tight;
      for (const auto& nv : normals)
        if (nv.dot(u) == 0) tight.push_back(nv);
      if (static_cast<Index>(tight.size()) >= d - 1 && rank(columns_of(tight, d)) == d - 1)
        vert_coords.push_back(u);
    }
    normals_ = nm;
  }

  std::vector<std::pair<IntVector, IntVector>> pairs;
  for (const auto& c : vert_coords) pairs.emplace_back(frame_.ambient(c), c);
  std::sort(pairs.begin(), pairs.end(),
            [](const auto& a, const auto& b) { return lex_less(a.first, b.first); });
  vertices_.clear();
  vertex_coords_ = IntMatrix(d, static_cast<Index>(pairs.size()));
  for (size_t j = 0; j < pairs.size(); ++j) {
    vertices_.push_back(pairs[j].first);
    vertex_coords_.col(static_cast<Index>(j)) = pairs[j].second;
  }

  // canonical normal order
  std::vector<IntVector> nrows;
  for (Index i = 0; i < normals_.rows(); ++i) nrows.push_back(normals_.row(i).transpose());
  std::sort(nrows.begin(), nrows.end(), LexLess());
  facet_vertices_.clear();
  for (size_t i = 0; i < nrows.size(); ++i) {
    normals_.row(static_cast<Index>(i)) = nrows[i].transpose();
    std::vector<int> on;
    for (Index j = 0; j < vertex_coords_.cols(); ++j)
      if (nrows[i].dot(vertex_coords_.col(j)) == 0) on.push_back(static_cast<int>(j));
    facet_vertices_.push_back(on);
  }

  if (is_simplicial() && d > 0) {
    inv_det_ = determinant(vertex_coords_);
    inv_adj_ = adjugate(vertex_coords_);
    if (inv_det_ < 0) {
      inv_det_ = -inv_det_;
      inv_adj_ = -inv_adj_;
    }
  } else {
    inv_det_ = 1;
    inv_adj_ = IntMatrix(0, 0);
  }
}

bool Cone::contains(const IntVector& x) const {
  if (dim() == 0) return x.isZero();
  auto sc = frame_.scaled_coords(x);
  if (!sc) return false;
  IntVector vals = normals_ * sc->first;
  for (Index i = 0; i < vals.size(); ++i)
    if (vals(i) < 0) return false;
  return true;
}

bool Cone::contains(const RatVector& x) const {
  auto c = frame_.rational_coords(x);
  if (!c) return false;
  for (Index i = 0; i < normals_.rows(); ++i) {
    Rational s = 0;
    for (Index j = 0; j < c->size(); ++j) s += Rational(normals_(i, j)) * (*c)(j);
    if (s < 0) return false;
  }
  return true;
}

bool Cone::in_relative_interior(const IntVector& x) const {
  if (dim() == 0) return x.isZero();
  auto sc = frame_.scaled_coords(x);
  if (!sc) return false;
  IntVector vals = normals_ * sc->first;
  for (Index i = 0; i < vals.size(); ++i)
    if (vals(i) <= 0) return false;
  return true;
}

std::vector<int> Cone::carrier_vertices(const IntVector& x) const {
  auto sc = frame_.scaled_coords(x);
  if (!sc) throw Error(ErrorCode::NotInCone, "vector outside the cone span");
  IntVector vals = normals_ * sc->first;
  std::vector<int> out;
  for (Index j = 0; j < vertex_coords_.cols(); ++j) {
    bool keep = true;
    for (Index i = 0; i < vals.size() && keep; ++i) {
      if (vals(i) < 0) throw Error(ErrorCode::NotInCone, "vector outside the cone");
      if (vals(i) == 0 && normals_.row(i).dot(vertex_coords_.col(j)) != 0) keep = false;
    }
    if (keep) out.push_back(static_cast<int>(j));
  }
  return out;
}

std::pair<IntVector, Integer> Cone::coefficients(const IntVector& x) const {
  if (!is_simplicial()) throw Error(ErrorCode::NotSimplicial, "coefficients need a simplicial cone");
  if (dim() == 0) return {IntVector(0), Integer(1)};
  auto sc = frame_.scaled_coords(x);
  if (!sc) throw Error(ErrorCode::NotInCone, "vector outside the cone span");
  IntVector num = inv_adj_ * sc->first;
  Integer den = inv_det_ * sc->second;
  Integer g = den;
  for (Index i = 0; i < num.size(); ++i) g = gcd_of(g, num(i));
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return {num, den};
}

std::vector<Rational> Cone::rational_coefficients(const IntVector& x) const {
  auto [num, den] = coefficients(x);
  std::vector<Rational> out;
  for (Index i = 0; i < num.size(); ++i) out.emplace_back(num(i), den);
  return out;
}

IntMatrix Cone::ambient_facet_functionals() const { return frame_.pull_functionals(normals_); }

bool Cone::same_as(const Cone& other) const {
  if (ambient_dim() != other.ambient_dim() || dim() != other.dim()) return false;
  if (num_vertices() != other.num_vertices()) return false;
  for (Index j = 0; j < num_vertices(); ++j)
    if (!same_vector(vertices_[j], other.vertices_[j])) return false;
  return lattice_basis() == other.lattice_basis();
}

std::vector<IntVector> vertices(const Cone& c) { return c.vertices(); }

std::vector<std::vector<int>> face_vertex_sets(const Cone& c) {
  const int k = static_cast<int>(c.num_vertices());
  std::set<std::vector<int>> sets;
  std::vector<int> all(k);
  for (int i = 0; i < k; ++i) all[i] = i;
  sets.insert(all);
  sets.insert({});
  std::vector<std::vector<int>> frontier;
  for (const auto& f : c.facet_vertices())
    if (sets.insert(f).second) frontier.push_back(f);
  const auto facets = c.facet_vertices();
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& a : frontier)
      for (const auto& b : facets) {
        std::vector<int> cut;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(cut));
        if (sets.insert(cut).second) next.push_back(cut);
      }
    frontier.swap(next);
  }
  std::vector<std::pair<Index, std::vector<int>>> keyed;
  for (const auto& s : sets) {
    IntMatrix m(c.dim(), static_cast<Index>(s.size()));
    for (size_t j = 0; j < s.size(); ++j) m.col(static_cast<Index>(j)) = c.vertex_coords().col(s[j]);
    keyed.emplace_back(s.empty() ? 0 : rank(m), s);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::vector<int>> out;
  for (auto& kv : keyed) out.push_back(kv.second);
  return out;
}

Cone face_cone(const Cone& c, const std::vector<int>& vertex_ids) {
  if (vertex_ids.empty()) return Cone::zero(c.ambient_dim());
  if (static_cast<Index>(vertex_ids.size()) == c.num_vertices()) return c;
  std::vector<IntVector> cols;
  for (int i : vertex_ids) cols.push_back(c.vertices()[i]);
  IntMatrix g = columns_of(cols, c.ambient_dim());
  return Cone::with_lattice(saturate(g, c.lattice_basis()), g);
}

std::vector<ConeFace> faces(const Cone& c) {
  std::vector<ConeFace> out;
  for (const auto& s : face_vertex_sets(c)) out.push_back({s, face_cone(c, s)});
  return out;
}

std::vector<int> minimal_face_over(const Cone& c, const std::vector<int>& vertex_ids) {
  std::vector<int> out;
  const auto& fv = c.facet_vertices();
  std::vector<const std::vector<int>*> tight;
  for (const auto& f : fv)
    if (std::includes(f.begin(), f.end(), vertex_ids.begin(), vertex_ids.end())) tight.push_back(&f);
  for (int j = 0; j < static_cast<int>(c.num_vertices()); ++j) {
    bool keep = true;
    for (const auto* f : tight)
      if (!std::binary_search(f->begin(), f->end(), j)) keep = false;
    if (keep) out.push_back(j);
  }
  return out;
}

Integer det_simplicial(const Cone& c) {
  if (!c.is_simplicial()) throw Error(ErrorCode::NotSimplicial, "determinant needs a simplicial cone");
  return abs_of(determinant(c.vertex_coords()));
}

bool is_regular(const Cone& c) { return c.is_simplicial() && det_simplicial(c) == 1; }

SingRegSplit sing_reg_split(const Cone& c) {
  const Index d = c.dim();
  const Index k = c.num_vertices();
  SingRegSplit out;
  for (Index j = 0; j < k; ++j) {
    IntMatrix others(d, k - 1);
    for (Index i = 0, col = 0; i < k; ++i)
      if (i != j) others.col(col++) = c.vertex_coords().col(i);
    bool split = false;
    if (rank(others) == d - 1) {
      IntMatrix ker = integer_kernel<Integer>(IntMatrix(others.transpose()));
      Integer val = ker.col(0).dot(c.vertex_coords().col(j));
      split = abs_of(val) == 1;
    }
    (split ? out.reg_vertex_ids : out.sing_vertex_ids).push_back(static_cast<int>(j));
  }
  out.sing_part = face_cone(c, out.sing_vertex_ids);
  out.reg_part = face_cone(c, out.reg_vertex_ids);
  return out;
}

bool is_irreducible(const Cone& c) { return sing_reg_split(c).reg_vertex_ids.empty(); }

std::vector<ConePoint> small_points(const Cone& c) {
  if (!c.is_simplicial()) throw Error(ErrorCode::NotSimplicial, "small vectors need a simplicial cone");
  std::vector<ConePoint> out;
  if (c.dim() == 0) return out;
  Integer den;
  auto box = half_open_box(c.vertex_coords(), den);
  for (auto& p : box) {
    if (p.coords.isZero()) continue;
    out.push_back({c.frame().ambient(p.coords), p.num, den});
  }
  std::sort(out.begin(), out.end(), [](const ConePoint& a, const ConePoint& b) { return lex_less(a.vector, b.vector); });
  return out;
}

std::vector<IntVector> small_vectors(const Cone& c) {
  std::vector<IntVector> out;
  for (auto& p : small_points(c)) out.push_back(p.vector);
  return out;
}

std::vector<IntVector> minimal_vectors(const Cone& c) {
  auto pts = small_points(c);
  std::vector<IntVector> out;
  for (size_t i = 0; i < pts.size(); ++i) {
    bool minimal = true;
    for (size_t j = 0; j < pts.size() && minimal; ++j) {
      if (i == j) continue;
      bool below = true;
      for (Index t = 0; t < pts[i].coef_num.size(); ++t)
        if (pts[j].coef_num(t) > pts[i].coef_num(t)) below = false;
      if (below) minimal = false;
    }
    if (minimal) out.push_back(pts[i].vector);
  }
  return out;
}

std::vector<IntVector> minimal_internal_vectors(const Cone& c) {
  const Index d = c.dim();
  std::vector<IntVector> out;
  if (d == 0) return out;
  const IntMatrix& vc = c.vertex_coords();
  const IntMatrix& nm = c.facet_normals();
  auto interior = [&](const IntVector& x) {
    IntVector vals = nm * x;
    for (Index i = 0; i < vals.size(); ++i)
      if (vals(i) <= 0) return false;
    return true;
  };
  auto inside = [&](const IntVector& x) {
    IntVector vals = nm * x;
    for (Index i = 0; i < vals.size(); ++i)
      if (vals(i) < 0) return false;
    return true;
  };
  // Every minimal internal vector has all coefficients <= 1 in any simplicial
  // subcone spanned by vertices that contains it.
  std::set<IntVector, LexLess> candidates;
  for_each_subset(static_cast<int>(c.num_vertices()), static_cast<int>(d), [&](const std::vector<int>& sub) {
    IntMatrix vs(d, d);
    for (Index j = 0; j < d; ++j) vs.col(j) = vc.col(sub[j]);
    if (determinant(vs) == 0) return;
    Integer den;
    for (const auto& p : half_open_box(vs, den)) {
      std::vector<Index> zeros;
      for (Index i = 0; i < d; ++i)
        if (p.num(i) == 0) zeros.push_back(i);
      const size_t z = zeros.size();
      for (size_t mask = 0; mask < (size_t(1) << z); ++mask) {
        IntVector x = p.coords;
        for (size_t b = 0; b < z; ++b)
          if (mask & (size_t(1) << b)) x += vs.col(zeros[b]);
        if (interior(x)) candidates.insert(x);
      }
    }
  });
  std::vector<IntVector> cand(candidates.begin(), candidates.end());
  for (size_t i = 0; i < cand.size(); ++i) {
    bool minimal = true;
    for (size_t j = 0; j < cand.size() && minimal; ++j) {
      if (i == j) continue;
      if (inside(IntVector(cand[i] - cand[j]))) minimal = false;
    }
    if (minimal) out.push_back(c.frame().ambient(cand[i]));
  }
  sort_lex(out);
  return out;
}

IntVector canonical_barycenter(const Cone& c) {
  auto mins = minimal_internal_vectors(c);
  if (mins.empty()) throw Error(ErrorCode::EmptyInterior, "no interior lattice points");
  IntVector sum = IntVector::Zero(c.ambient_dim());
  for (const auto& v : mins) sum += v;
  return primitivize(sum, c.lattice_basis());
}

void sort_lex(std::vector<IntVector>& vs) { std::sort(vs.begin(), vs.end(), LexLess()); }

}  // namespace fanforge
