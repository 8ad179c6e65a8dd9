#include "fanforge/exactlin.hpp"

#include <algorithm>

namespace fanforge {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::SpanViolation: return "SpanViolation";
    case ErrorCode::NotSublattice: return "NotSublattice";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::NotInLattice: return "NotInLattice";
    case ErrorCode::NotStrictlyConvex: return "NotStrictlyConvex";
    case ErrorCode::NotSimplicial: return "NotSimplicial";
    case ErrorCode::EmptyInterior: return "EmptyInterior";
    case ErrorCode::UnknownId: return "UnknownId";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::NotInterior: return "NotInterior";
    case ErrorCode::StarsNotDisjoint: return "StarsNotDisjoint";
    case ErrorCode::NotFaceClosed: return "NotFaceClosed";
    case ErrorCode::NotInCone: return "NotInCone";
    case ErrorCode::NoSmallVectors: return "NoSmallVectors";
    case ErrorCode::UniquenessViolated: return "UniquenessViolated";
    case ErrorCode::InvariantViolated: return "InvariantViolated";
    case ErrorCode::NonTermination: return "NonTermination";
    case ErrorCode::OrderNotTotal: return "OrderNotTotal";
    case ErrorCode::NotBalanced: return "NotBalanced";
    case ErrorCode::NotSimplicialPair: return "NotSimplicialPair";
    case ErrorCode::InOmega: return "InOmega";
    case ErrorCode::NotRelativelyIrreducible: return "NotRelativelyIrreducible";
    case ErrorCode::MapKindUnsupported: return "MapKindUnsupported";
    case ErrorCode::MapInvalid: return "MapInvalid";
    case ErrorCode::FunctorialityMismatch: return "FunctorialityMismatch";
    case ErrorCode::EmptySupport: return "EmptySupport";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Error";
}

Integer determinant(const IntMatrix& m) { return bareiss_determinant<Integer>(m); }

Index rank(const IntMatrix& m) { return rank_of<Integer>(m); }

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

RatVector to_rational(const IntVector& v) {
  RatVector r(v.size());
  for (Index i = 0; i < v.size(); ++i) r(i) = Rational(v(i));
  return r;
}

IntMatrix adjugate(const IntMatrix& m) {
  const Index n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("adjugate of non-square matrix");
  IntMatrix adj(n, n);
  if (n == 0) return adj;
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  IntMatrix minor(n - 1, n - 1);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      for (Index r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (Index c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(rr, cc++) = m(r, c);
        }
        ++rr;
      }
      Integer d = determinant(minor);
      adj(j, i) = ((i + j) % 2 == 0) ? d : Integer(-d);
    }
  }
  return adj;
}

std::optional<RatVector> solve_rational(const IntMatrix& m, const IntVector& v) {
  const Index rows = m.rows(), cols = m.cols();
  if (v.size() != rows) throw std::invalid_argument("solve_rational: size mismatch");
  RatMatrix a(rows, cols + 1);
  a.leftCols(cols) = to_rational(m);
  a.col(cols) = to_rational(v);
  std::vector<Index> pivots;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    a.row(r).swap(a.row(p));
    Rational inv = Rational(1) / a(r, c);
    a.row(r) *= inv;
    for (Index i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rational f = a(i, c);
      a.row(i) -= f * a.row(r);
    }
    pivots.push_back(c);
    ++r;
  }
  for (Index i = r; i < rows; ++i)
    if (a(i, cols) != 0) return std::nullopt;
  RatVector x = RatVector::Zero(cols);
  for (Index i = 0; i < r; ++i) x(pivots[i]) = a(i, cols);
  return x;
}

IntMatrix lattice_basis_of(const IntMatrix& gens) {
  Hnf<Integer> f = hnf<Integer>(gens.transpose());
  IntMatrix b(gens.rows(), f.rank());
  for (Index j = 0; j < f.rank(); ++j) b.col(j) = f.h.row(j).transpose();
  return b;
}

LatticeIndex sublattice_index(const IntMatrix& gens, const IntMatrix& ambient_gens) {
  LatticeFrame frame(lattice_basis_of(ambient_gens));
  IntMatrix coords(frame.rank(), gens.cols());
  for (Index j = 0; j < gens.cols(); ++j) {
    auto sc = frame.scaled_coords(gens.col(j));
    if (!sc) throw Error(ErrorCode::SpanViolation, "generator outside the ambient span");
    if (sc->second != 1) {
      for (Index i = 0; i < sc->first.size(); ++i)
        if (sc->first(i) % sc->second != 0)
          throw Error(ErrorCode::NotSublattice, "generator not in the ambient lattice");
      sc->first /= sc->second;
    }
    coords.col(j) = sc->first;
  }
  Hnf<Integer> f = hnf<Integer>(coords.transpose());
  LatticeIndex out;
  if (f.rank() < frame.rank()) {
    out.infinite = true;
    return out;
  }
  out.value = 1;
  for (Index i = 0; i < f.rank(); ++i) out.value *= f.h(i, f.pivot_cols[i]);
  return out;
}

IntMatrix saturate(const IntMatrix& gens, const IntMatrix& ambient_basis) {
  LatticeFrame frame(lattice_basis_of(ambient_basis));
  const Index d = frame.rank();
  IntMatrix coords(d, gens.cols());
  for (Index j = 0; j < gens.cols(); ++j) {
    auto sc = frame.scaled_coords(gens.col(j));
    if (!sc) throw Error(ErrorCode::SpanViolation, "generator outside the ambient span");
    coords.col(j) = sc->first;
  }
  IntMatrix normals = integer_kernel<Integer>(coords.transpose());
  IntMatrix sat;
  if (normals.cols() == 0)
    sat = IntMatrix::Identity(d, d);
  else
    sat = integer_kernel<Integer>(normals.transpose());
  return lattice_basis_of(frame.basis() * sat);
}

bool is_saturated(const IntMatrix& sub_gens, const IntMatrix& ambient_gens) {
  IntMatrix amb = lattice_basis_of(ambient_gens);
  LatticeFrame frame(amb);
  for (Index j = 0; j < sub_gens.cols(); ++j)
    if (!frame.coords(sub_gens.col(j))) return false;
  IntMatrix sat = saturate(sub_gens, amb);
  LatticeIndex idx = sublattice_index(sub_gens, sat);
  return !idx.infinite && idx.value == 1;
}

Integer content(const IntVector& v) {
  Integer g = 0;
  for (Index i = 0; i < v.size(); ++i) g = gcd_of(g, v(i));
  return g;
}

IntVector primitivize(const IntVector& v, const IntMatrix& lattice_basis) {
  LatticeFrame frame(lattice_basis_of(lattice_basis));
  auto c = frame.coords(v);
  if (!c) throw Error(ErrorCode::NotInLattice, "vector not in lattice");
  Integer g = content(*c);
  if (g == 0) throw Error(ErrorCode::ZeroVector, "cannot primitivize zero");
  IntVector out = v;
  for (Index i = 0; i < out.size(); ++i) out(i) /= g;
  return out;
}

bool lex_less(const IntVector& a, const IntVector& b) {
  const Index n = std::min(a.size(), b.size());
  for (Index i = 0; i < n; ++i) {
    if (a(i) < b(i)) return true;
    if (b(i) < a(i)) return false;
  }
  return a.size() < b.size();
}

bool same_vector(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) return false;
  for (Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return false;
  return true;
}

IntMatrix columns_of(const std::vector<IntVector>& cols, Index rows) {
  IntMatrix m(rows, static_cast<Index>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) m.col(static_cast<Index>(j)) = cols[j];
  return m;
}

std::vector<IntVector> column_list(const IntMatrix& m) {
  std::vector<IntVector> out;
  out.reserve(m.cols());
  for (Index j = 0; j < m.cols(); ++j) out.push_back(m.col(j));
  return out;
}

LatticeFrame::LatticeFrame(IntMatrix basis) : basis_(std::move(basis)) {
  const Index d = basis_.cols();
  // greedy choice of d independent rows
  IntMatrix picked(0, d);
  for (Index i = 0; i < basis_.rows() && static_cast<Index>(rows_.size()) < d; ++i) {
    IntMatrix trial(picked.rows() + 1, d);
    trial.topRows(picked.rows()) = picked;
    trial.row(picked.rows()) = basis_.row(i);
    if (fanforge::rank(trial) == trial.rows()) {
      picked = trial;
      rows_.push_back(i);
    }
  }
  if (static_cast<Index>(rows_.size()) != d)
    throw std::invalid_argument("lattice basis columns are dependent");
  det_ = determinant(picked);
  adj_ = adjugate(picked);
  if (det_ < 0) {
    det_ = -det_;
    adj_ = -adj_;
  }
}

std::optional<std::pair<IntVector, Integer>> LatticeFrame::scaled_coords(const IntVector& x) const {
  const Index d = rank();
  IntVector xr(d);
  for (Index k = 0; k < d; ++k) xr(k) = x(rows_[k]);
  IntVector num = adj_ * xr;
  Integer den = det_;
  IntVector back = basis_ * num;
  for (Index i = 0; i < x.size(); ++i)
    if (back(i) != den * x(i)) return std::nullopt;
  Integer g = den;
  for (Index k = 0; k < d; ++k) g = gcd_of(g, num(k));
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return std::make_pair(num, den);
}

std::optional<RatVector> LatticeFrame::rational_coords(const IntVector& x) const {
  auto sc = scaled_coords(x);
  if (!sc) return std::nullopt;
  RatVector r(rank());
  for (Index k = 0; k < rank(); ++k) r(k) = Rational(sc->first(k), sc->second);
  return r;
}

std::optional<RatVector> LatticeFrame::rational_coords(const RatVector& x) const {
  Integer den = 1;
  for (Index i = 0; i < x.size(); ++i) den = lcm_of(den, mp::denominator(x(i)));
  IntVector xi(x.size());
  for (Index i = 0; i < x.size(); ++i) xi(i) = mp::numerator(x(i)) * (den / mp::denominator(x(i)));
  auto r = rational_coords(xi);
  if (!r) return std::nullopt;
  for (Index k = 0; k < r->size(); ++k) (*r)(k) /= Rational(den);
  return r;
}

std::optional<IntVector> LatticeFrame::coords(const IntVector& x) const {
  auto sc = scaled_coords(x);
  if (!sc || sc->second != 1) return std::nullopt;
  return sc->first;
}

IntVector LatticeFrame::coords_or_throw(const IntVector& x) const {
  auto c = coords(x);
  if (!c) throw Error(ErrorCode::NotInLattice, "vector not in lattice");
  return *c;
}

bool LatticeFrame::in_span(const IntVector& x) const { return scaled_coords(x).has_value(); }

IntMatrix LatticeFrame::pull_functionals(const IntMatrix& lattice_functionals) const {
  IntMatrix lifted = lattice_functionals * adj_;
  IntMatrix g = IntMatrix::Zero(lattice_functionals.rows(), ambient_dim());
  for (Index k = 0; k < rank(); ++k) g.col(rows_[k]) = lifted.col(k);
  return g;
}

}  // namespace fanforge
