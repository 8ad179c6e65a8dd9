#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fanforge/complex.hpp"

namespace fanforge {

// min over the support of <v, m>
Integer val(const IntVector& v, const std::vector<IntVector>& support);

// One functional per maximal cone, in coordinates dual to the cone's lattice basis.
struct PLFunction {
  std::map<int, RatVector> functional;
};

bool is_integral(const PLFunction& f);
PLFunction scale(const PLFunction& f, const Rational& s);
PLFunction add(const PLFunction& f, const PLFunction& g);
// value at x (ambient coordinates of maximal cone `cone_id`)
Rational evaluate(const ConicalComplex& k, const PLFunction& f, int cone_id, const IntVector& x);

struct BlowupFunction {
  Subdivision subdivided;
  int center_ray = -1;   // ray of the center in the subdivided complex
  std::vector<int> carrier_rays;  // rays of the carrier, ids in the subdivided complex
  PLFunction function;   // for the requested a
  Integer min_integral_a;  // smallest a making every functional integral
};

// F_{v,a}: zero on the old rays, a on the center, linear on each new cone
BlowupFunction pl_function(const ConicalComplex& k, const StarCenter& center, const Integer& a);

struct PLCheck {
  bool linear = true;   // every functional reproduces the vertex values
  bool convex = true;   // strictly convex across every new wall inside an original cone
  long long walls = 0;
  std::vector<std::string> problems;
};
PLCheck check_blowup_function(const BlowupFunction& b, const Integer& a);

struct ConeSlice {
  int cone_id = -1;
  std::vector<IntVector> members;     // all scanned monoid elements in the ideal
  std::vector<IntVector> generators;  // minimal ones among members
};

struct ValuationIdealSlice {
  IntVector v;
  Integer a;
  long long degree_bound = 0;
  std::vector<ConeSlice> cones;
};

// For every maximal cone holding the center: all m (dual lattice coordinates,
// |m_i| <= degree_bound) with m >= 0 on the cone and <v, m> >= a.
ValuationIdealSlice ideal_slice(const ConicalComplex& k, const StarCenter& center, const Integer& a,
                                long long degree_bound);

// ray id -> value of f at the ray generator
std::map<int, Rational> exceptional_coefficients(const ConicalComplex& k, const PLFunction& f);
// the PL function with the given ray values; absent when not integral or not linear on a cone
std::optional<PLFunction> pl_from_divisor(const ConicalComplex& k, const std::map<int, Integer>& coeffs);

}  // namespace fanforge
