#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fanforge/io.hpp"

namespace testing_support {

using namespace fanforge;
using I64Vec = std::vector<long long>;

inline IntVector vec(std::initializer_list<long long> xs) {
  IntVector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (long long x : xs) v(i++) = x;
  return v;
}

inline IntVector vec(const I64Vec& xs) {
  IntVector v(static_cast<Index>(xs.size()));
  for (size_t i = 0; i < xs.size(); ++i) v(static_cast<Index>(i)) = xs[i];
  return v;
}

inline I64Vec to_i64(const IntVector& v) {
  I64Vec out;
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i).convert_to<long long>());
  return out;
}

inline std::vector<I64Vec> to_i64(const std::vector<IntVector>& vs) {
  std::vector<I64Vec> out;
  for (const auto& v : vs) out.push_back(to_i64(v));
  std::sort(out.begin(), out.end());
  return out;
}

inline IntMatrix cols(std::initializer_list<IntVector> vs) {
  std::vector<IntVector> list(vs);
  return columns_of(list, list.front().size());
}

inline IntMatrix rows(std::initializer_list<std::initializer_list<long long>> rs) {
  IntMatrix m(static_cast<Index>(rs.size()), static_cast<Index>(rs.begin()->size()));
  Index i = 0;
  for (const auto& r : rs) {
    Index j = 0;
    for (long long x : r) m(i, j++) = x;
    ++i;
  }
  return m;
}

inline Cone cone_of(std::initializer_list<IntVector> gens) { return Cone::from_generators(cols(gens)); }
inline ConicalComplex fan_of(const Cone& c) { return fan_from_cones({c}); }

inline IntMatrix even_sum_lattice() { return cols({vec({1, 1, 0}), vec({1, 0, 1}), vec({0, 1, 1})}); }
inline Cone abramovich_cone() {
  return Cone::with_lattice(even_sum_lattice(), cols({vec({2, 0, 0}), vec({0, 2, 0}), vec({0, 0, 2})}));
}

inline std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name + ".json"; }
inline ComplexDocument load_fixture(const std::string& name) { return load_complex(fixture(name)); }

// every single-complex fixture that should resolve
inline std::vector<std::string> corpus_names() {
  std::vector<std::string> out;
  for (int n = 2; n <= 10; ++n) out.push_back("an_cone_" + std::to_string(n));
  for (int r = 2; r <= 7; ++r)
    for (int a = 1; a < r; ++a)
      if (std::gcd(r, a) == 1) out.push_back("quotient_" + std::to_string(r) + "_" + std::to_string(a));
  out.push_back("abramovich");
  out.push_back("regular_plane");
  out.push_back("regular_orthant");
  out.push_back("glued_cycle");
  return out;
}

// ---- random generators

struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}
  long long uniform(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(engine); }
};

inline long long det_i64(std::vector<I64Vec> m) {
  const size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  long long s = 0;
  for (size_t j = 0; j < n; ++j) {
    std::vector<I64Vec> minor;
    for (size_t i = 1; i < n; ++i) {
      I64Vec row;
      for (size_t t = 0; t < n; ++t)
        if (t != j) row.push_back(m[i][t]);
      minor.push_back(row);
    }
    s += (j % 2 ? -1 : 1) * m[0][j] * det_i64(minor);
  }
  return s;
}

// simplicial cone with d independent generators, entries in [lo, hi]
inline Cone random_simplicial_cone(Rng& rng, int d, long long lo, long long hi) {
  while (true) {
    std::vector<I64Vec> g(d, I64Vec(d));
    for (auto& row : g)
      for (auto& x : row) x = rng.uniform(lo, hi);
    if (det_i64(g) == 0) continue;
    std::vector<IntVector> gens;
    for (const auto& row : g) gens.push_back(vec(row));
    try {
      return Cone::from_generators(columns_of(gens, d));
    } catch (const Error&) {
      continue;  // not strictly convex when lo < 0
    }
  }
}

inline IntMatrix random_unimodular(Rng& rng, int d) {
  IntMatrix u = IntMatrix::Identity(d, d);
  for (int step = 0; step < 3 * d; ++step) {
    const int i = static_cast<int>(rng.uniform(0, d - 1));
    int j = static_cast<int>(rng.uniform(0, d - 2));
    if (j >= i) ++j;
    const long long f = rng.uniform(-2, 2);
    u.row(i) += Integer(f) * u.row(j);
  }
  if (rng.uniform(0, 1)) u.row(0) = -u.row(0);
  return u;
}

// ---- brute-force parallelepiped scan

struct ScanPoint {
  I64Vec ambient;
  I64Vec num;  // coefficients num / den on the vertices
};

struct Scan {
  long long den = 1;
  std::vector<ScanPoint> points;  // all lattice points with coefficients in [0, max_coef]
};

// Lattice points sum k_i/den v_i with 0 <= k_i <= max_coef * den; a point is in
// the lattice iff its coordinates on the lattice basis are integral.
inline Scan scan_cone(const Cone& c, long long max_coef) {
  const int d = static_cast<int>(c.dim());
  std::vector<I64Vec> vc(d, I64Vec(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) vc[i][j] = c.vertex_coords()(i, j).convert_to<long long>();
  Scan out;
  out.den = std::llabs(det_i64(vc));
  const long long top = max_coef * out.den;
  I64Vec k(d, 0);
  const IntMatrix& basis = c.lattice_basis();
  while (true) {
    I64Vec coords(d);
    bool lattice = true;
    for (int i = 0; i < d && lattice; ++i) {
      long long s = 0;
      for (int j = 0; j < d; ++j) s += vc[i][j] * k[j];
      if (s % out.den != 0) lattice = false;
      coords[i] = s / out.den;
    }
    if (lattice) {
      I64Vec amb(basis.rows(), 0);
      for (Index r = 0; r < basis.rows(); ++r)
        for (int i = 0; i < d; ++i) amb[r] += basis(r, i).convert_to<long long>() * coords[i];
      out.points.push_back({amb, k});
    }
    int i = 0;
    while (i < d && k[i] == top) k[i++] = 0;
    if (i == d) break;
    ++k[i];
  }
  return out;
}

inline bool below(const I64Vec& a, const I64Vec& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}
inline bool is_zero(const I64Vec& a) {
  return std::all_of(a.begin(), a.end(), [](long long x) { return x == 0; });
}
inline bool interior(const I64Vec& num) {
  return std::all_of(num.begin(), num.end(), [](long long x) { return x > 0; });
}
inline I64Vec minus(const I64Vec& a, const I64Vec& b) {
  I64Vec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline std::vector<I64Vec> oracle_small(const Cone& c) {
  Scan s = scan_cone(c, 1);
  std::vector<I64Vec> out;
  for (const auto& p : s.points)
    if (!is_zero(p.num) && std::all_of(p.num.begin(), p.num.end(), [&](long long x) { return x < s.den; }))
      out.push_back(p.ambient);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<I64Vec> oracle_minimal(const Cone& c) {
  Scan s = scan_cone(c, 1);
  std::vector<I64Vec> out;
  for (const auto& x : s.points) {
    if (is_zero(x.num) || !std::all_of(x.num.begin(), x.num.end(), [&](long long v) { return v < s.den; })) continue;
    bool decomposable = false;
    for (const auto& y : s.points)
      if (!is_zero(y.num) && y.num != x.num && below(y.num, x.num)) decomposable = true;
    if (!decomposable) out.push_back(x.ambient);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// interior points with coefficients up to `max_coef` that have no decomposition
// into two nonzero lattice points of the cone with one of them interior
inline std::vector<I64Vec> oracle_minimal_internal(const Cone& c, long long max_coef = 2) {
  Scan s = scan_cone(c, max_coef);
  std::vector<I64Vec> out;
  for (const auto& x : s.points) {
    if (!interior(x.num)) continue;
    bool decomposable = false;
    for (const auto& y : s.points) {
      if (decomposable) break;
      if (is_zero(y.num) || y.num == x.num || !below(y.num, x.num)) continue;
      if (interior(y.num) || interior(minus(x.num, y.num))) decomposable = true;
    }
    if (!decomposable) out.push_back(x.ambient);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---- exact membership of rational points

// x in the simplicial cone given by ambient vertex columns, by rational elimination
inline bool simplicial_contains(const std::vector<IntVector>& verts, const RatVector& x) {
  const Index n = x.size();
  const Index d = static_cast<Index>(verts.size());
  if (d == 0) return x.isZero();
  RatMatrix a(n, d + 1);
  for (Index j = 0; j < d; ++j)
    for (Index i = 0; i < n; ++i) a(i, j) = Rational(verts[j](i));
  for (Index i = 0; i < n; ++i) a(i, d) = x(i);
  Index row = 0;
  std::vector<Index> pivot_col;
  for (Index col = 0; col < d && row < n; ++col) {
    Index p = row;
    while (p < n && a(p, col) == 0) ++p;
    if (p == n) continue;
    a.row(row).swap(a.row(p));
    for (Index i = 0; i < n; ++i)
      if (i != row && a(i, col) != 0) {
        Rational f = a(i, col) / a(row, col);
        a.row(i) -= f * a.row(row);
      }
    pivot_col.push_back(col);
    ++row;
  }
  for (Index i = row; i < n; ++i)
    if (a(i, d) != 0) return false;  // outside the span
  for (Index i = 0; i < row; ++i)
    if (a(i, d) / a(i, pivot_col[i]) < 0) return false;
  return true;
}

// membership in the support of a fan whose maximal cones are simplicial
inline bool fan_contains(const ConicalComplex& k, const RatVector& x) {
  for (int m : k.maximal_cones())
    if (simplicial_contains(k.cone(m).vertices(), x)) return true;
  return false;
}

inline RatVector random_point_near(Rng& rng, const ConicalComplex& k) {
  const Index n = k.cone(k.maximal_cones().front()).ambient_dim();
  RatVector x = RatVector::Zero(n);
  if (rng.uniform(0, 1)) {
    for (Index i = 0; i < n; ++i) x(i) = Rational(rng.uniform(-20, 20), rng.uniform(1, 7));
    return x;
  }
  const auto maximal = k.maximal_cones();
  const Cone& c = k.cone(maximal[rng.uniform(0, static_cast<long long>(maximal.size()) - 1)]);
  for (const auto& v : c.vertices()) x += to_rational(v) * Rational(rng.uniform(-3, 12), rng.uniform(1, 10));
  return x;
}

// ---- complex summaries

inline std::vector<Integer> maximal_dets(const ConicalComplex& k) {
  std::vector<Integer> out;
  for (int m : k.maximal_cones()) out.push_back(det_simplicial(k.cone(m)));
  return out;
}

inline bool all_regular(const ConicalComplex& k) {
  for (int m : k.maximal_cones())
    if (!is_regular(k.cone(m))) return false;
  return true;
}

inline std::string cone_key(const Cone& c) {
  std::string s = "[";
  for (const auto& v : c.vertices()) {
    s += "(";
    for (Index i = 0; i < v.size(); ++i) s += v(i).str() + (i + 1 < v.size() ? "," : "");
    s += ")";
  }
  return s + "]";
}

// maximal cones as sorted vertex-set keys, tagged by frame
inline std::vector<std::string> maximal_keys(const ConicalComplex& k) {
  std::vector<std::string> out;
  for (int m : k.maximal_cones()) out.push_back(std::to_string(k.frame(m)) + cone_key(k.cone(m)));
  std::sort(out.begin(), out.end());
  return out;
}

inline int ray_id(const ConicalComplex& k, const IntVector& v) {
  for (int id : k.rays())
    if (same_vector(k.cone(id).vertices()[0], v)) return id;
  return -1;
}

inline bool same_centers(const SubdivisionTrace& a, const SubdivisionTrace& b) {
  if (a.steps.size() != b.steps.size()) return false;
  for (size_t i = 0; i < a.steps.size(); ++i) {
    auto x = a.steps[i].centers, y = b.steps[i].centers;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (a.steps[i].phase != b.steps[i].phase || !(x == y)) return false;
  }
  return true;
}

}  // namespace testing_support
