#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fanforge/marking.hpp"

namespace fanforge {

// det -> number of maximal cones with that determinant (det >= 2 only)
struct DetPolynomial {
  std::map<Integer, long long> coef;

  bool is_zero() const { return coef.empty(); }
  // sum of det * count
  Integer weight() const;
  bool operator==(const DetPolynomial&) const = default;
};
// compares the highest differing degree first
bool operator<(const DetPolynomial& a, const DetPolynomial& b);

// (dim of the Omega face, relative det) -> count
struct MuPolynomial {
  std::map<std::pair<long long, Integer>, long long> coef;

  bool is_zero() const { return coef.empty(); }
  bool operator==(const MuPolynomial&) const = default;
};
bool operator<(const MuPolynomial& a, const MuPolynomial& b);

DetPolynomial det_polynomial(const ConicalComplex& k);
// same, skipping maximal cones that are not simplicial
DetPolynomial det_histogram(const ConicalComplex& k);

struct TraceCenter {
  int frame = -1;                        // input cone whose coordinates are used
  std::vector<IntVector> carrier_vertices;  // sorted
  IntVector vector;

  bool operator==(const TraceCenter& o) const;
};
bool operator<(const TraceCenter& a, const TraceCenter& b);

struct TraceStep {
  std::string phase;  // "barycentric" or "minimal"
  std::vector<TraceCenter> centers;
  DetPolynomial pdet;  // before the step
  std::optional<MuPolynomial> pmu;
};

struct SubdivisionTrace {
  std::vector<TraceStep> steps;
};

std::string trace_step_json(const TraceStep& s);
std::string trace_to_json_lines(const SubdivisionTrace& t);

struct BatchEvent {
  const ConicalComplex& before;
  const std::vector<StarCenter>& centers;
  const Subdivision& result;
  const std::string& phase;
};

struct ResolveOptions {
  std::optional<long long> guard;  // overrides the iteration bound
  std::function<void(const BatchEvent&)> on_batch;
};

struct ResolveResult {
  ConicalComplex complex;
  Marking marking;
  SubdivisionTrace trace;
};

ResolveResult barycentric_phase(const ConicalComplex& k, const ResolveOptions& opt = {});
ResolveResult minimal_phase(const ConicalComplex& k, const Marking& mk, const ResolveOptions& opt = {});
ResolveResult resolve(const ConicalComplex& k, const ResolveOptions& opt = {});

// Moves the centers along the map; centers whose carrier loses dimension are
// dropped, and steps left empty disappear. Invariant fields are cleared.
SubdivisionTrace push_trace(const ComplexMap& f, const ConicalComplex& src, const SubdivisionTrace& tr);
// Applies the centers of a trace to k, recomputing the invariants.
ResolveResult replay_trace(const ConicalComplex& k, const SubdivisionTrace& tr);

namespace detail {

TraceCenter trace_center(const ConicalComplex& k, const StarCenter& c);
long long iteration_guard(const Integer& initial_weight, const ResolveOptions& opt);

// One batch: subdivide, extend the marking, record the step.
std::vector<int> apply_batch(ConicalComplex& k, Marking& mk, const std::vector<StarCenter>& centers,
                             const std::string& phase, SubdivisionTrace& tr, const ResolveOptions& opt,
                             std::optional<MuPolynomial> pmu);

// vector of the face `sub` mapping to x (ambient coordinates of `super`)
IntVector pull_to_face(const ConicalComplex& k, int sub, int super, const IntVector& x);
// the face of `super` holding x in its relative interior
int carrier_in(const ConicalComplex& k, int super, const IntVector& x);

// Keeps the candidates that every listed cone containing their carrier agrees on.
std::vector<StarCenter> canonical_batch(const ConicalComplex& k, const std::map<int, StarCenter>& candidate_of);

}  // namespace detail

}  // namespace fanforge
