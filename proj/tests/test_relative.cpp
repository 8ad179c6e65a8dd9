#include "doctest.h"
#include "support.hpp"

using namespace testing_support;

namespace {

int top_cone(const ConicalComplex& k) { return k.maximal_cones().front(); }

// the zero cone plus the given rays, ranked in the order listed
RelativeComplex with_omega_rays(const ConicalComplex& k, std::initializer_list<IntVector> rays) {
  RelativeComplex rk;
  rk.complex = k;
  rk.omega.push_back(0);
  long long r = 1;
  for (const auto& v : rays) {
    const int id = ray_id(k, v);
    rk.omega.push_back(id);
    rk.omega_order.rank[id] = r++;
  }
  std::sort(rk.omega.begin(), rk.omega.end());
  return rk;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::ParseError;
}

bool all_pairs_regular(const RelativeComplex& rk) {
  for (int m : rk.complex.maximal_cones())
    if (!pair_status(rk, m).regular_pair) return false;
  return true;
}

}  // namespace

TEST_CASE("pair status of a det 2 cone relative to one ray") {
  auto k = fan_of(cone_of({vec({1, 0}), vec({1, 2})}));
  auto rk = with_omega_rays(k, {vec({1, 0})});
  REQUIRE(k.dim(0) == 0);
  CHECK(omega_saturated(rk));
  const int top = top_cone(k);
  auto st = pair_status(rk, top);
  CHECK(st.balanced);
  CHECK(st.simplicial_pair);
  CHECK_FALSE(st.regular_pair);
  CHECK(st.omega_dim == 1);
  CHECK(st.relatively_irreducible);
  REQUIRE(st.rel_det.has_value());
  CHECK(*st.rel_det == 2);
  CHECK(to_i64(relative_minimal_vectors(rk, top)) == std::vector<I64Vec>{{1, 1}});
  CHECK(to_i64(relative_small_vectors(rk, top)) == std::vector<I64Vec>{{1, 1}});
  CHECK(same_vector(relative_barycenter(rk, top), vec({2, 1})));
  CHECK(mu_polynomial(rk).coef == std::map<std::pair<long long, Integer>, long long>{{{1, Integer(2)}, 1}});

  // the ray itself is in omega
  CHECK(code_of([&] { relative_barycenter(rk, ray_id(k, vec({1, 0}))); }) == ErrorCode::InOmega);
}

TEST_CASE("trivial omega reduces to the absolute notions") {
  Rng rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    Cone c = random_simplicial_cone(rng, 3, 0, 4);
    auto k = fan_of(c);
    RelativeComplex rk;
    rk.complex = k;
    rk.omega = {0};
    const int top = top_cone(k);
    auto st = pair_status(rk, top);
    CHECK(st.balanced);
    CHECK(st.regular_pair == is_regular(c));
    CHECK(*st.rel_det == det_simplicial(c));
    CHECK(st.relatively_irreducible == is_irreducible(c));
    CHECK(to_i64(relative_minimal_vectors(rk, top)) == to_i64(minimal_vectors(c)));
    if (st.relatively_irreducible && !is_regular(c))
      CHECK(same_vector(relative_barycenter(rk, top), canonical_barycenter(c)));
  }
}

TEST_CASE("a cone lying in omega is already a regular pair") {
  auto k = fan_of(cone_of({vec({1, 0}), vec({1, 2})}));
  RelativeComplex rk;
  rk.complex = k;
  for (int id = 0; id < k.size(); ++id) rk.omega.push_back(id);
  rk.omega_order.rank[ray_id(k, vec({1, 0}))] = 1;
  rk.omega_order.rank[ray_id(k, vec({1, 2}))] = 2;
  const int top = top_cone(k);
  auto st = pair_status(rk, top);
  CHECK(st.regular_pair);
  CHECK(*st.rel_det == 1);
  CHECK(mu_polynomial(rk).is_zero());
  CHECK(code_of([&] { relative_barycenter(rk, top); }) == ErrorCode::InOmega);
  auto r = resolve_relative(rk);
  CHECK(r.trace.steps.empty());
  CHECK(maximal_keys(r.complex.complex) == maximal_keys(k));
}

TEST_CASE("unbalanced cones and unsaturated omega") {
  auto k = fan_of(cone_of({vec({1, 0}), vec({0, 1})}));
  auto rk = with_omega_rays(k, {vec({1, 0}), vec({0, 1})});
  CHECK_FALSE(omega_saturated(rk));
  CHECK_FALSE(pair_status(rk, top_cone(k)).balanced);
  CHECK(code_of([&] { relative_small_vectors(rk, top_cone(k)); }) == ErrorCode::NotBalanced);
}

TEST_CASE("relative resolution of the det 2 cone") {
  auto k = fan_of(cone_of({vec({1, 0}), vec({1, 2})}));
  auto rk = with_omega_rays(k, {vec({1, 0})});
  auto r = resolve_relative(rk);
  REQUIRE_FALSE(r.trace.steps.empty());
  CHECK(r.trace.steps[0].phase == "barycentric");
  CHECK(to_i64(r.trace.steps[0].centers[0].vector) == I64Vec{2, 1});
  CHECK(all_pairs_regular(r.complex));
  CHECK(mu_polynomial(r.complex).is_zero());
  // omega survives untouched
  const int kept = ray_id(r.complex.complex, vec({1, 0}));
  REQUIRE(kept >= 0);
  CHECK(r.complex.in_omega(kept));
  Rng rng(62);
  for (int p = 0; p < 200; ++p) {
    RatVector x = random_point_near(rng, k);
    CHECK(fan_contains(k, x) == fan_contains(r.complex.complex, x));
  }
}

TEST_CASE("order of omega must be total") {
  auto k = fan_of(cone_of({vec({1, 0}), vec({1, 2})}));
  auto rk = with_omega_rays(k, {vec({1, 0})});
  rk.omega_order.rank.clear();
  CHECK(code_of([&] { resolve_relative(rk); }) == ErrorCode::OrderNotTotal);

  auto doc = load_fixture("obstruction");
  auto tied = doc.relative();
  for (auto& [ray, r] : tied.omega_order.rank) r = 1;
  CHECK(code_of([&] { resolve_relative(tied); }) == ErrorCode::OrderNotTotal);
}

TEST_CASE("obstruction example") {
  auto doc = load_fixture("obstruction");
  REQUIRE(doc.has_omega);
  auto rk = doc.relative();
  CHECK(omega_saturated(rk));
  auto r = resolve_relative(rk);
  REQUIRE_FALSE(r.trace.steps.empty());
  const auto& first = r.trace.steps[0];
  CHECK(first.phase == "barycentric");
  REQUIRE(first.centers.size() == 1);
  CHECK(to_i64(first.centers[0].vector) == I64Vec{3, 3, 2});
  REQUIRE(first.pmu.has_value());
  CHECK(first.pmu->coef == std::map<std::pair<long long, Integer>, long long>{{{2, Integer(2)}, 1}});
  CHECK(all_pairs_regular(r.complex));
  // the omega edge has det 2 and must come through unchanged, so the output is regular only as pairs
  int edge = -1;
  for (int w : r.complex.omega)
    if (r.complex.complex.dim(w) == 2) edge = w;
  REQUIRE(edge >= 0);
  CHECK(det_simplicial(r.complex.complex.cone(edge)) == 2);
  CHECK(to_i64(r.complex.complex.cone(edge).vertices()) == std::vector<I64Vec>{{0, 2, 0}, {2, 0, 0}});

  // phase two lowers the relative invariant at every step
  std::optional<MuPolynomial> last;
  for (const auto& s : r.trace.steps) {
    REQUIRE(s.pmu.has_value());
    if (s.phase != "minimal") continue;
    if (last) CHECK(*s.pmu < *last);
    last = s.pmu;
  }
}

TEST_CASE("trivial omega gives the absolute trace") {
  for (const auto& name : {"an_cone_3", "an_cone_7", "quotient_7_3", "quotient_5_2", "abramovich"}) {
    auto k = load_fixture(name).complex;
    RelativeComplex rk;
    rk.complex = k;
    rk.omega = {0};
    REQUIRE(k.dim(0) == 0);
    CHECK_MESSAGE(trace_to_json_lines(resolve_relative(rk).trace) == trace_to_json_lines(resolve(k).trace), name);
  }
}

TEST_CASE("an already regular pair is left alone") {
  auto k = load_fixture("regular_plane").complex;
  auto rk = with_omega_rays(k, {vec({1, 0})});
  auto r = resolve_relative(rk);
  CHECK(r.trace.steps.empty());
  CHECK(r.complex.complex.size() == k.size());
}
