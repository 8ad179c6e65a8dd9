#pragma once

#include <map>
#include <vector>

#include "fanforge/complex.hpp"

namespace fanforge {

// Marked rays with a rank; a larger rank means a greater vertex.
struct Marking {
  std::map<int, long long> rank;  // ray id -> rank

  bool marked(int ray) const { return rank.count(ray) > 0; }
  long long top_rank() const;
};

enum class Order { LT, GT, INCOMPARABLE, EQ_PROJ };
const char* order_name(Order o);

// coefficients of v over the marked vertices of a simplicial cone, keyed by ray id
std::map<int, Rational> project(const ConicalComplex& k, const Marking& mk, int cone_id, const IntVector& v);

Order order_compare(const ConicalComplex& k, const Marking& mk, int cone_id, const IntVector& v, const IntVector& w);

// unique order-minimal small vector; throws NoSmallVectors / UniquenessViolated
IntVector minimal_small_vector(const ConicalComplex& k, const Marking& mk, int cone_id);
// order-minimal element of an arbitrary list of vectors of the cone
IntVector minimal_in_order(const ConicalComplex& k, const Marking& mk, int cone_id, const std::vector<IntVector>& vs);

std::vector<Violation> check_marking(const ConicalComplex& k, const Marking& mk);
bool is_regularly_marked(const ConicalComplex& k, const Marking& mk);

// Carries the ranks over to a subdivision and puts the new rays on a fresh
// rank above all previous ones. Throws InvariantViolated if the result is not
// a valid marking.
Marking extend_marking_after_subdivision(const ConicalComplex& subdivided, const Marking& mk,
                                         const std::vector<int>& old_to_new, const std::vector<int>& new_rays);

}  // namespace fanforge
