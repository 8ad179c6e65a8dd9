#include "doctest.h"
#include "support.hpp"

using namespace testing_support;

TEST_CASE("determinant matches cofactor expansion on random matrices") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = static_cast<int>(rng.uniform(1, 4));
    std::vector<I64Vec> m(n, I64Vec(n));
    IntMatrix a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = m[i][j] = rng.uniform(-9, 9);
    CHECK(determinant(a) == Integer(det_i64(m)));
    CHECK(bareiss_determinant<long long>(a.unaryExpr([](const Integer& x) { return x.convert_to<long long>(); })) ==
          det_i64(m));
  }
}

TEST_CASE("determinant is multiplicative beyond 64 bits") {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    IntMatrix a(3, 3), b(3, 3);
    for (Index i = 0; i < 3; ++i)
      for (Index j = 0; j < 3; ++j) {
        a(i, j) = Integer(rng.uniform(-99, 99)) * Integer("1000000000000000000000");
        b(i, j) = rng.uniform(-99, 99);
      }
    CHECK(determinant(IntMatrix(a * b)) == determinant(a) * determinant(b));
  }
}

TEST_CASE("adjugate times matrix is det times identity") {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = static_cast<int>(rng.uniform(1, 4));
    IntMatrix a(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) a(i, j) = rng.uniform(-6, 6);
    IntMatrix want = determinant(a) * IntMatrix::Identity(n, n);
    CHECK(IntMatrix(adjugate(a) * a) == want);
  }
}

TEST_CASE("hermite form keeps the row lattice") {
  Rng rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    IntMatrix m(3, 4);
    for (Index i = 0; i < 3; ++i)
      for (Index j = 0; j < 4; ++j) m(i, j) = rng.uniform(-5, 5);
    auto f = hnf(m);
    CHECK(IntMatrix(f.u * m) == f.h);
    CHECK(abs_of(determinant(f.u)) == 1);
    CHECK(f.rank() == rank(m));
    for (Index r = 0; r < f.rank(); ++r) CHECK(f.h(r, f.pivot_cols[r]) > 0);
  }
}

TEST_CASE("integer kernel") {
  IntMatrix a = rows({{1, 2, 3}, {2, 4, 6}});
  IntMatrix k = integer_kernel(a);
  CHECK(k.cols() == 2);
  CHECK((a * k).isZero());
  CHECK(rank(k) == 2);
  CHECK(is_saturated(k, IntMatrix::Identity(3, 3)));
}

TEST_CASE("sublattice indices") {
  IntMatrix id3 = IntMatrix::Identity(3, 3);
  CHECK(sublattice_index(IntMatrix(2 * id3), id3).value == 8);
  CHECK(sublattice_index(even_sum_lattice(), id3).value == 2);
  CHECK(sublattice_index(cols({vec({2, 0, 0}), vec({0, 2, 0}), vec({0, 0, 2})}), even_sum_lattice()).value == 4);
  CHECK(sublattice_index(cols({vec({1, 0, 0})}), id3).infinite);
  CHECK(is_saturated(cols({vec({1, 0})}), IntMatrix::Identity(2, 2)));
  CHECK_FALSE(is_saturated(cols({vec({2, 0})}), IntMatrix::Identity(2, 2)));
}

TEST_CASE("lattice basis and saturation") {
  IntMatrix b = lattice_basis_of(cols({vec({2, 4}), vec({3, 6})}));
  CHECK(b.cols() == 1);
  CHECK(same_vector(b.col(0), vec({1, 2})));
  IntMatrix s = saturate(cols({vec({2, 2, 0})}), IntMatrix::Identity(3, 3));
  CHECK(same_vector(s.col(0), vec({1, 1, 0})));
  IntMatrix even = saturate(cols({vec({2, 0, 0}), vec({0, 2, 0})}), even_sum_lattice());
  CHECK(sublattice_index(even, cols({vec({1, 0, 0}), vec({0, 1, 0})})).value == 2);
}

TEST_CASE("primitivize") {
  CHECK(same_vector(primitivize(vec({4, 4, 4}), even_sum_lattice()), vec({2, 2, 2})));
  CHECK(same_vector(primitivize(vec({6, 6, 4}), even_sum_lattice()), vec({3, 3, 2})));
  CHECK(same_vector(primitivize(vec({2, 4}), IntMatrix::Identity(2, 2)), vec({1, 2})));
  CHECK_THROWS_AS(primitivize(vec({0, 0}), IntMatrix::Identity(2, 2)), Error);
}

TEST_CASE("rational solve") {
  Rng rng(15);
  for (int trial = 0; trial < 50; ++trial) {
    IntMatrix m(3, 2);
    for (Index i = 0; i < 3; ++i)
      for (Index j = 0; j < 2; ++j) m(i, j) = rng.uniform(-5, 5);
    IntVector x = vec({rng.uniform(-4, 4), rng.uniform(-4, 4)});
    IntVector v = m * x;
    auto sol = solve_rational(m, v);
    REQUIRE(sol.has_value());
    CHECK(RatVector(to_rational(m) * *sol) == to_rational(v));
  }
  CHECK_FALSE(solve_rational(rows({{1, 0}, {0, 1}, {0, 0}}), vec({0, 0, 1})).has_value());
}

TEST_CASE("lattice frame coordinates") {
  LatticeFrame f(even_sum_lattice());
  auto c = f.coords(vec({2, 0, 0}));
  REQUIRE(c.has_value());
  CHECK(same_vector(f.ambient(*c), vec({2, 0, 0})));
  CHECK_FALSE(f.coords(vec({1, 0, 0})).has_value());
  CHECK_THROWS_AS(f.coords_or_throw(vec({1, 0, 0})), Error);
  LatticeFrame plane(cols({vec({1, 0, 0}), vec({0, 1, 0})}));
  CHECK_FALSE(plane.in_span(vec({0, 0, 1})));
  CHECK_FALSE(plane.rational_coords(vec({0, 0, 1})).has_value());
}

TEST_CASE("helpers") {
  CHECK(content(vec({4, -6, 10})) == 2);
  CHECK(lex_less(vec({1, 2}), vec({1, 3})));
  CHECK_FALSE(lex_less(vec({1, 3}), vec({1, 3})));
  CHECK(floor_div(Integer(-7), Integer(2)) == -4);
  CHECK(mod_floor(Integer(-7), Integer(2)) == 1);
}
