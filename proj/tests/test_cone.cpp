#include "doctest.h"
#include "support.hpp"

using namespace testing_support;

TEST_CASE("vertices") {
  Cone q = cone_of({vec({1, 0}), vec({1, 1}), vec({0, 1})});
  CHECK(to_i64(q.vertices()) == std::vector<I64Vec>{{0, 1}, {1, 0}});
  Cone a = Cone::with_lattice(even_sum_lattice(), cols({vec({1, 1, 0}), vec({1, 0, 1}), vec({0, 1, 1}), vec({2, 0, 0}),
                                                        vec({0, 2, 0}), vec({0, 0, 2})}));
  CHECK(to_i64(a.vertices()) == std::vector<I64Vec>{{0, 0, 2}, {0, 2, 0}, {2, 0, 0}});
  CHECK(Cone::zero(3).vertices().empty());
  CHECK(Cone::zero(3).dim() == 0);
  CHECK(to_i64(cone_of({vec({2, 4})}).vertices()) == std::vector<I64Vec>{{1, 2}});
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(cone_of({vec({1, 0}), vec({-1, 0})}), Error);
  try {
    cone_of({vec({1, 0}), vec({-1, 0}), vec({0, 1})});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotStrictlyConvex);
  }
  try {
    Cone::with_lattice(even_sum_lattice(), cols({vec({1, 0, 0})}));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotInLattice);
  }
}

TEST_CASE("faces") {
  CHECK(faces(cone_of({vec({1, 0}), vec({0, 1})})).size() == 4);
  CHECK(faces(abramovich_cone()).size() == 8);
  CHECK(faces(cone_of({vec({1, 2})})).size() == 2);
  // square pyramid: zero, 4 rays, 4 facets, itself
  Cone pyramid = cone_of({vec({1, 0, 1}), vec({0, 1, 1}), vec({-1, 0, 1}), vec({0, -1, 1})});
  CHECK(faces(pyramid).size() == 10);
  for (const auto& f : faces(abramovich_cone())) CHECK(f.cone.dim() == static_cast<Index>(f.vertex_ids.size()));
  // induced lattice of a facet of the even-sum cone
  Cone facet = face_cone(abramovich_cone(), {1, 2});
  CHECK(det_simplicial(facet) == 2);
}

TEST_CASE("regularity and determinants") {
  CHECK(is_regular(cone_of({vec({1, 0}), vec({1, 1})})));
  CHECK_FALSE(is_regular(cone_of({vec({1, 0}), vec({1, 2})})));
  CHECK(det_simplicial(cone_of({vec({1, 0}), vec({1, 2})})) == 2);
  CHECK_FALSE(is_regular(abramovich_cone()));
  CHECK(det_simplicial(abramovich_cone()) == 4);
  for (int n = 1; n <= 10; ++n) CHECK(det_simplicial(cone_of({vec({1, 0}), vec({1, n})})) == n);
  CHECK(det_simplicial(Cone::zero(2)) == 1);
  CHECK_THROWS_AS(det_simplicial(cone_of({vec({1, 0, 1}), vec({0, 1, 1}), vec({-1, 0, 1}), vec({0, -1, 1})})), Error);
}

TEST_CASE("singular and regular parts") {
  Cone prod = cone_of({vec({1, 0, 0}), vec({1, 2, 0}), vec({0, 0, 1})});
  auto split = sing_reg_split(prod);
  CHECK(to_i64(split.sing_part.vertices()) == std::vector<I64Vec>{{1, 0, 0}, {1, 2, 0}});
  CHECK(to_i64(split.reg_part.vertices()) == std::vector<I64Vec>{{0, 0, 1}});
  CHECK_FALSE(is_irreducible(prod));
  auto reg = sing_reg_split(cone_of({vec({1, 0}), vec({0, 1})}));
  CHECK(reg.sing_part.dim() == 0);
  CHECK(reg.reg_part.dim() == 2);
  auto ab = sing_reg_split(abramovich_cone());
  CHECK(ab.sing_part.dim() == 3);
  CHECK(ab.reg_part.dim() == 0);
  CHECK(is_irreducible(abramovich_cone()));
}

TEST_CASE("small, minimal and minimal internal vectors") {
  Cone a3 = cone_of({vec({1, 0}), vec({1, 3})});
  CHECK(to_i64(small_vectors(a3)) == std::vector<I64Vec>{{1, 1}, {1, 2}});
  CHECK(to_i64(minimal_vectors(a3)) == std::vector<I64Vec>{{1, 1}, {1, 2}});
  CHECK(to_i64(minimal_internal_vectors(a3)) == std::vector<I64Vec>{{1, 1}, {1, 2}});
  CHECK(same_vector(canonical_barycenter(a3), vec({2, 3})));

  Cone b = cone_of({vec({1, 0}), vec({2, 3})});
  CHECK(to_i64(small_vectors(b)) == std::vector<I64Vec>{{1, 1}, {2, 2}});
  CHECK(to_i64(minimal_vectors(b)) == std::vector<I64Vec>{{1, 1}});

  CHECK(small_vectors(cone_of({vec({1, 0}), vec({0, 1})})).empty());
  CHECK(minimal_vectors(cone_of({vec({1, 0}), vec({0, 1})})).empty());

  Cone ab = abramovich_cone();
  CHECK(to_i64(minimal_vectors(ab)) == std::vector<I64Vec>{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  CHECK(to_i64(minimal_internal_vectors(ab)) == std::vector<I64Vec>{{1, 1, 2}, {1, 2, 1}, {2, 1, 1}});
  CHECK(same_vector(canonical_barycenter(ab), vec({2, 2, 2})));

  CHECK(same_vector(canonical_barycenter(cone_of({vec({1, 0}), vec({1, 2})})), vec({1, 1})));
  CHECK(to_i64(minimal_internal_vectors(cone_of({vec({1})}))) == std::vector<I64Vec>{{1}});
}

TEST_CASE("vector sets agree with brute-force scans on random cones") {
  Rng rng(21);
  int checked = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const int d = static_cast<int>(rng.uniform(2, 3));
    Cone c = random_simplicial_cone(rng, d, d == 2 ? -6 : 0, d == 2 ? 8 : 4);
    const Integer det = det_simplicial(c);
    if (det > 40) continue;
    ++checked;
    auto small = oracle_small(c);
    CHECK(to_i64(small_vectors(c)) == small);
    CHECK(Integer(static_cast<long long>(small.size())) == det - 1);
    auto minimal = oracle_minimal(c);
    CHECK(to_i64(minimal_vectors(c)) == minimal);
    CHECK(minimal.empty() == is_regular(c));
    for (const auto& m : minimal) CHECK(std::binary_search(small.begin(), small.end(), m));
    CHECK(to_i64(minimal_internal_vectors(c)) == oracle_minimal_internal(c));
  }
  CHECK(checked > 40);
}

// every small vector is a sum of minimal vectors
TEST_CASE("small vectors decompose into minimal vectors") {
  Rng rng(22);
  for (int trial = 0; trial < 60; ++trial) {
    Cone c = random_simplicial_cone(rng, 3, 0, 4);
    if (det_simplicial(c) > 60) continue;
    Scan s = scan_cone(c, 1);
    auto minimal = to_i64(minimal_vectors(c));
    for (const auto& x : s.points) {
      if (is_zero(x.num)) continue;
      if (std::any_of(x.num.begin(), x.num.end(), [&](long long v) { return v >= s.den; })) continue;
      // greedy peeling: subtract a minimal vector that keeps the rest in the parallelepiped
      I64Vec rest = x.num;
      int guard = 0;
      while (!is_zero(rest) && guard++ < 100) {
        bool peeled = false;
        for (const auto& p : s.points)
          if (!is_zero(p.num) && below(p.num, rest) &&
              std::binary_search(minimal.begin(), minimal.end(), p.ambient)) {
            rest = minus(rest, p.num);
            peeled = true;
            break;
          }
        if (!peeled) break;
      }
      CHECK(is_zero(rest));
    }
  }
}

TEST_CASE("barycenter is equivariant under lattice automorphisms") {
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    Cone c = random_simplicial_cone(rng, 3, 0, 4);
    if (!is_irreducible(c) || is_regular(c) || det_simplicial(c) > 40) continue;
    IntMatrix u = random_unimodular(rng, 3);
    Cone moved = Cone::from_generators(IntMatrix(u * c.vertex_matrix()));
    CHECK(same_vector(canonical_barycenter(moved), IntVector(u * canonical_barycenter(c))));
  }
}

TEST_CASE("singular part carries the determinant and the minimal vectors") {
  Rng rng(24);
  for (int trial = 0; trial < 40; ++trial) {
    Cone base = random_simplicial_cone(rng, 2, -5, 7);
    std::vector<IntVector> gens;
    for (const auto& v : base.vertices()) gens.push_back(vec({v(0).convert_to<long long>(), v(1).convert_to<long long>(), 0}));
    gens.push_back(vec({0, 0, 1}));
    Cone prod = Cone::from_generators(columns_of(gens, 3));
    auto split = sing_reg_split(prod);
    CHECK(is_regular(split.reg_part));
    CHECK(det_simplicial(split.sing_part) == det_simplicial(prod));
    for (const auto& m : minimal_vectors(prod)) CHECK(m(2) == 0);
  }
}
