#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "fanforge/error.hpp"

namespace fanforge {

namespace mp = boost::multiprecision;

using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using Index = Eigen::Index;
using IntMatrix = Mat<Integer>;
using IntVector = Vec<Integer>;
using RatMatrix = Mat<Rational>;
using RatVector = Vec<Rational>;

inline Integer gcd_of(const Integer& a, const Integer& b) { return mp::gcd(a, b); }
inline long long gcd_of(long long a, long long b) { return std::gcd(a, b); }
inline Integer lcm_of(const Integer& a, const Integer& b) { return mp::lcm(a, b); }

template <class Int>
Int abs_of(const Int& a) {
  return a < 0 ? Int(-a) : a;
}

// floor(a / b) for b != 0
template <class Int>
Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  Int r = a - q * b;
  if (r != 0 && ((r < 0) != (b < 0))) q -= 1;
  return q;
}

// representative of a mod b in [0, |b|)
template <class Int>
Int mod_floor(const Int& a, const Int& b) {
  Int bb = abs_of(b);
  Int r = a % bb;
  if (r < 0) r += bb;
  return r;
}

template <class Int>
struct Hnf {
  Mat<Int> h;  // h = u * m, row echelon, positive pivots, reduced above pivots
  Mat<Int> u;  // unimodular
  std::vector<Index> pivot_cols;
  Index rank() const { return static_cast<Index>(pivot_cols.size()); }
};

// Row-operation Hermite normal form. Pivot rule: per column, the row with the
// smallest nonzero absolute value, lowest index on ties.
template <class Int>
Hnf<Int> hnf(const Mat<Int>& m) {
  const Index rows = m.rows(), cols = m.cols();
  Hnf<Int> out;
  out.h = m;
  out.u = Mat<Int>::Identity(rows, rows);
  Mat<Int>& h = out.h;
  Mat<Int>& u = out.u;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    while (true) {
      Index best = -1;
      for (Index i = r; i < rows; ++i) {
        if (h(i, c) == 0) continue;
        if (best < 0 || abs_of(h(i, c)) < abs_of(h(best, c))) best = i;
      }
      if (best < 0) break;
      if (best != r) {
        h.row(r).swap(h.row(best));
        u.row(r).swap(u.row(best));
      }
      bool clean = true;
      for (Index i = r + 1; i < rows; ++i) {
        if (h(i, c) == 0) continue;
        Int q = floor_div(h(i, c), h(r, c));
        h.row(i) -= q * h.row(r);
        u.row(i) -= q * u.row(r);
        if (h(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (r >= rows || h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      h.row(r) = -h.row(r);
      u.row(r) = -u.row(r);
    }
    for (Index i = 0; i < r; ++i) {
      Int q = floor_div(h(i, c), h(r, c));
      if (q != 0) {
        h.row(i) -= q * h.row(r);
        u.row(i) -= q * u.row(r);
      }
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  return out;
}

// Fraction-free (Bareiss) determinant.
template <class Int>
Int bareiss_determinant(Mat<Int> a) {
  const Index n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
  if (n == 0) return Int(1);
  Int sign = 1, prev = 1;
  for (Index k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      Index p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return Int(0);
      a.row(k).swap(a.row(p));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i)
      for (Index j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// Rank by fraction-free elimination.
template <class Int>
Index rank_of(Mat<Int> a) {
  const Index rows = a.rows(), cols = a.cols();
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    a.row(r).swap(a.row(p));
    for (Index i = r + 1; i < rows; ++i) {
      if (a(i, c) == 0) continue;
      Int f = a(i, c), g = a(r, c);
      a.row(i) = g * a.row(i) - f * a.row(r);
      Int cg = 0;
      for (Index j = 0; j < cols; ++j) cg = gcd_of(cg, a(i, j));
      if (cg > 1) a.row(i) /= cg;
    }
    ++r;
  }
  return r;
}

// Basis (as columns) of the integer kernel {x in Z^d : a x = 0}; saturated.
template <class Int>
Mat<Int> integer_kernel(const Mat<Int>& a) {
  Mat<Int> at = a.transpose();
  Hnf<Int> f = hnf(at);
  const Index d = a.cols();
  const Index k = d - f.rank();
  Mat<Int> ker(d, k);
  for (Index j = 0; j < k; ++j) ker.col(j) = f.u.row(f.rank() + j).transpose();
  return ker;
}

Integer determinant(const IntMatrix& m);
IntMatrix adjugate(const IntMatrix& m);
Index rank(const IntMatrix& m);
RatMatrix to_rational(const IntMatrix& m);
RatVector to_rational(const IntVector& v);

// m x = v over Q; free variables set to zero.
std::optional<RatVector> solve_rational(const IntMatrix& m, const IntVector& v);

struct LatticeIndex {
  bool infinite = false;
  Integer value = 0;
  bool operator==(const LatticeIndex&) const = default;
};

LatticeIndex sublattice_index(const IntMatrix& gens, const IntMatrix& ambient_gens);
bool is_saturated(const IntMatrix& sub_gens, const IntMatrix& ambient_gens);
IntVector primitivize(const IntVector& v, const IntMatrix& lattice_basis);

// HNF basis (columns) of the Z-span of the columns of gens.
IntMatrix lattice_basis_of(const IntMatrix& gens);
// Basis of (Q-span of gens) intersected with the lattice spanned by ambient_basis.
IntMatrix saturate(const IntMatrix& gens, const IntMatrix& ambient_basis);

Integer content(const IntVector& v);
bool lex_less(const IntVector& a, const IntVector& b);
bool same_vector(const IntVector& a, const IntVector& b);
IntMatrix columns_of(const std::vector<IntVector>& cols, Index rows);
std::vector<IntVector> column_list(const IntMatrix& m);

// Coordinates with respect to a fixed lattice basis (columns of full rank).
class LatticeFrame {
 public:
  LatticeFrame() = default;
  explicit LatticeFrame(IntMatrix basis);

  const IntMatrix& basis() const { return basis_; }
  Index ambient_dim() const { return basis_.rows(); }
  Index rank() const { return basis_.cols(); }

  // x = basis * num / den with den > 0; nullopt when x is outside the span.
  std::optional<std::pair<IntVector, Integer>> scaled_coords(const IntVector& x) const;
  std::optional<RatVector> rational_coords(const IntVector& x) const;
  std::optional<RatVector> rational_coords(const RatVector& x) const;
  // nullopt when x is not a lattice point.
  std::optional<IntVector> coords(const IntVector& x) const;
  IntVector coords_or_throw(const IntVector& x) const;
  IntVector ambient(const IntVector& c) const { return basis_ * c; }
  // Integer rows g with sign(g . x) = sign(l . coords(x)) for x in the span.
  IntMatrix pull_functionals(const IntMatrix& lattice_functionals) const;
  bool in_span(const IntVector& x) const;

 private:
  IntMatrix basis_;
  std::vector<Index> rows_;
  IntMatrix adj_;
  Integer det_ = 1;
};

}  // namespace fanforge
