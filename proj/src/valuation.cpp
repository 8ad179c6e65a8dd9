#include "fanforge/valuation.hpp"

#include <algorithm>
#include <limits>

namespace fanforge {

Integer val(const IntVector& v, const std::vector<IntVector>& support) {
  if (support.empty()) throw Error(ErrorCode::EmptySupport, "valuation of an empty support");
  Integer best = v.dot(support.front());
  for (const auto& w : support) best = std::min(best, Integer(v.dot(w)));
  return best;
}

namespace {

// m with m . vertex_coords(j) = values(j) for all j
std::optional<RatVector> functional_from_values(const Cone& c, const std::vector<Rational>& values) {
  const Index d = c.dim();
  if (d == 0) return RatVector(0);
  Integer den = 1;
  for (const auto& x : values) den = lcm_of(den, mp::denominator(x));
  IntVector rhs(static_cast<Index>(values.size()));
  for (size_t j = 0; j < values.size(); ++j) rhs(j) = mp::numerator(values[j] * den);
  IntMatrix vt = c.vertex_coords().transpose();
  auto m = solve_rational(vt, rhs);
  if (!m) return std::nullopt;
  return RatVector(*m / Rational(den));
}

Rational pair_with(const RatVector& m, const IntVector& coords) {
  Rational s = 0;
  for (Index i = 0; i < m.size(); ++i) s += m(i) * coords(i);
  return s;
}

bool fits(const Integer& x, const Integer& limit) { return abs_of(x) <= limit; }

// coordinates of the wall cones agree in both neighbours
bool comparable(const ConicalComplex& k, int wall, int a, int b) {
  if (k.frame(a) == k.frame(b)) return true;
  if (k.cone(a).ambient_dim() != k.cone(b).ambient_dim()) return false;
  return k.face_map(wall, a) == k.face_map(wall, b);
}

}  // namespace

bool is_integral(const PLFunction& f) {
  for (const auto& [id, m] : f.functional)
    for (Index i = 0; i < m.size(); ++i)
      if (mp::denominator(m(i)) != 1) return false;
  return true;
}

PLFunction scale(const PLFunction& f, const Rational& s) {
  PLFunction out;
  for (const auto& [id, m] : f.functional) out.functional[id] = m * s;
  return out;
}

PLFunction add(const PLFunction& f, const PLFunction& g) {
  PLFunction out = f;
  for (const auto& [id, m] : g.functional) {
    auto it = out.functional.find(id);
    if (it == out.functional.end())
      out.functional[id] = m;
    else
      it->second = RatVector(it->second + m);
  }
  return out;
}

Rational evaluate(const ConicalComplex& k, const PLFunction& f, int cone_id, const IntVector& x) {
  auto it = f.functional.find(cone_id);
  if (it == f.functional.end()) throw Error(ErrorCode::UnknownId, "no functional on cone " + std::to_string(cone_id));
  const Cone& c = k.cone(cone_id);
  auto coords = c.frame().rational_coords(x);
  if (!coords) throw Error(ErrorCode::NotInCone, "point outside the span of the cone");
  Rational s = 0;
  for (Index i = 0; i < coords->size(); ++i) s += it->second(i) * (*coords)(i);
  return s;
}

BlowupFunction pl_function(const ConicalComplex& k, const StarCenter& center, const Integer& a) {
  BlowupFunction out;
  out.subdivided = star_subdivide(k, {center});
  out.center_ray = out.subdivided.new_rays.at(0);
  for (int r : k.vertex_rays(center.carrier))
    if (out.subdivided.old_to_new[r] >= 0) out.carrier_rays.push_back(out.subdivided.old_to_new[r]);
  std::sort(out.carrier_rays.begin(), out.carrier_rays.end());
  const ConicalComplex& s = out.subdivided.complex;
  PLFunction unit;
  for (int m : s.maximal_cones()) {
    const auto& rays = s.vertex_rays(m);
    if (std::find(rays.begin(), rays.end(), out.center_ray) == rays.end()) {
      unit.functional[m] = RatVector::Zero(s.cone(m).dim());
      continue;
    }
    std::vector<Rational> values(rays.size(), Rational(0));
    for (size_t j = 0; j < rays.size(); ++j)
      if (rays[j] == out.center_ray) values[j] = 1;
    auto f = functional_from_values(s.cone(m), values);
    unit.functional[m] = f ? *f : RatVector(RatVector::Zero(s.cone(m).dim()));
  }
  Integer den = 1;
  for (const auto& [id, m] : unit.functional)
    for (Index i = 0; i < m.size(); ++i) den = lcm_of(den, mp::denominator(m(i)));
  out.min_integral_a = den;
  out.function = scale(unit, Rational(a));
  return out;
}

PLCheck check_blowup_function(const BlowupFunction& b, const Integer& a) {
  PLCheck out;
  const ConicalComplex& s = b.subdivided.complex;
  for (const auto& [m, f] : b.function.functional) {
    const auto& rays = s.vertex_rays(m);
    const Cone& c = s.cone(m);
    for (Index j = 0; j < c.num_vertices(); ++j) {
      Rational want = rays[j] == b.center_ray ? Rational(a) : Rational(0);
      if (pair_with(f, c.vertex_coords().col(j)) != want) {
        out.linear = false;
        out.problems.push_back("functional of cone " + std::to_string(m) + " misses a vertex value");
        break;
      }
    }
  }
  const auto maximal = s.maximal_cones();
  for (int wall = 0; wall < s.size(); ++wall) {
    const auto& wrays = s.vertex_rays(wall);
    if (std::find(wrays.begin(), wrays.end(), b.center_ray) == wrays.end()) continue;
    std::vector<int> sides;
    for (int sup : s.supers(wall))
      if (s.dim(sup) == s.dim(wall) + 1 && std::binary_search(maximal.begin(), maximal.end(), sup)) sides.push_back(sup);
    for (size_t i = 0; i < sides.size(); ++i)
      for (size_t j = i + 1; j < sides.size(); ++j) {
        const int p = sides[i], q = sides[j];
        if (!comparable(s, wall, p, q)) continue;
        // both sides must come from one original cone, i.e. the vertices off the wall are carrier rays
        auto off_wall_in_carrier = [&](int side) {
          const auto& rays = s.vertex_rays(side);
          for (int r : rays)
            if (std::find(wrays.begin(), wrays.end(), r) == wrays.end())
              return std::binary_search(b.carrier_rays.begin(), b.carrier_rays.end(), r);
          return false;
        };
        if (!off_wall_in_carrier(p) || !off_wall_in_carrier(q)) continue;
        ++out.walls;
        for (auto [own, other] : {std::pair{p, q}, std::pair{q, p}}) {
          auto on_wall = s.face_vertex_ids(wall, other);
          const Cone& oc = s.cone(other);
          for (Index t = 0; t < oc.num_vertices(); ++t) {
            if (std::binary_search(on_wall.begin(), on_wall.end(), static_cast<int>(t))) continue;
            const IntVector& u = oc.vertices()[t];
            if (!(evaluate(s, b.function, own, u) > evaluate(s, b.function, other, u))) {
              out.convex = false;
              out.problems.push_back("not strictly convex across the wall " + std::to_string(wall));
            }
          }
        }
      }
  }
  return out;
}

namespace {

template <class Int>
ConeSlice scan_cone(int cone_id, const Mat<Int>& vert, const Vec<Int>& vc, const Int& a, long long bound) {
  ConeSlice out;
  out.cone_id = cone_id;
  const Index d = vert.rows(), nv = vert.cols();
  std::vector<long long> m(d, -bound);
  std::vector<std::pair<Int, IntVector>> found;
  Vec<Int> mm(d);
  while (true) {
    for (Index i = 0; i < d; ++i) mm(i) = Int(m[i]);
    bool ok = true;
    Int weight = 0;
    for (Index j = 0; j < nv && ok; ++j) {
      Int x = mm.dot(vert.col(j));
      if (x < 0) ok = false;
      weight += x;
    }
    if (ok && mm.dot(vc) >= a && !(a <= 0 && weight == 0)) {
      IntVector g(d);
      for (Index i = 0; i < d; ++i) g(i) = m[i];
      found.push_back({weight, g});
    }
    Index i = 0;
    while (i < d && m[i] == bound) m[i++] = -bound;
    if (i == d) break;
    ++m[i];
  }
  std::stable_sort(found.begin(), found.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<Vec<Int>> gens;
  for (const auto& [w, g] : found) {
    out.members.push_back(g);
    Vec<Int> gi(d);
    for (Index i = 0; i < d; ++i) gi(i) = Int(g(i));
    bool minimal = true;
    for (const auto& h : gens) {
      Vec<Int> diff = gi - h;
      bool dominated = true;
      for (Index j = 0; j < nv && dominated; ++j)
        if (diff.dot(vert.col(j)) < 0) dominated = false;
      if (dominated) {
        minimal = false;
        break;
      }
    }
    if (minimal) {
      gens.push_back(gi);
      out.generators.push_back(g);
    }
  }
  std::sort(out.members.begin(), out.members.end(), [](const IntVector& x, const IntVector& y) { return lex_less(x, y); });
  sort_lex(out.generators);
  return out;
}

}  // namespace

ValuationIdealSlice ideal_slice(const ConicalComplex& k, const StarCenter& center, const Integer& a,
                                long long degree_bound) {
  ValuationIdealSlice out;
  out.v = center.vector;
  out.a = a;
  out.degree_bound = degree_bound;
  const auto maximal = k.maximal_cones();
  for (int sigma : star(k, center.carrier)) {
    if (!std::binary_search(maximal.begin(), maximal.end(), sigma)) continue;
    const Cone& c = k.cone(sigma);
    IntVector vc = c.frame().coords_or_throw(IntVector(k.face_map(center.carrier, sigma) * center.vector));
    const IntMatrix& vert = c.vertex_coords();
    // products stay below 2^62 when every entry is below this
    const Integer limit = Integer(1) << 24;
    bool small = fits(a, limit) && degree_bound < (1LL << 20) && c.dim() < 64;
    for (Index i = 0; i < vert.size() && small; ++i) small = fits(vert.data()[i], limit);
    for (Index i = 0; i < vc.size() && small; ++i) small = fits(vc(i), limit);
    if (small) {
      Mat<long long> v64 = vert.unaryExpr([](const Integer& x) { return x.convert_to<long long>(); });
      Vec<long long> c64 = vc.unaryExpr([](const Integer& x) { return x.convert_to<long long>(); });
      out.cones.push_back(scan_cone<long long>(sigma, v64, c64, a.convert_to<long long>(), degree_bound));
    } else {
      out.cones.push_back(scan_cone<Integer>(sigma, vert, vc, a, degree_bound));
    }
  }
  return out;
}

std::map<int, Rational> exceptional_coefficients(const ConicalComplex& k, const PLFunction& f) {
  std::map<int, Rational> out;
  for (const auto& [m, fn] : f.functional) {
    const auto& rays = k.vertex_rays(m);
    const Cone& c = k.cone(m);
    for (Index j = 0; j < c.num_vertices(); ++j)
      if (rays[j] >= 0 && !out.count(rays[j])) out[rays[j]] = pair_with(fn, c.vertex_coords().col(j));
  }
  return out;
}

std::optional<PLFunction> pl_from_divisor(const ConicalComplex& k, const std::map<int, Integer>& coeffs) {
  PLFunction out;
  for (int m : k.maximal_cones()) {
    const auto& rays = k.vertex_rays(m);
    std::vector<Rational> values(rays.size(), Rational(0));
    for (size_t j = 0; j < rays.size(); ++j) {
      auto it = coeffs.find(rays[j]);
      if (it != coeffs.end()) values[j] = Rational(it->second);
    }
    auto fn = functional_from_values(k.cone(m), values);
    if (!fn) return std::nullopt;
    out.functional[m] = *fn;
  }
  if (!is_integral(out)) return std::nullopt;
  return out;
}

}  // namespace fanforge
