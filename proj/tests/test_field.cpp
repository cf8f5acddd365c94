#include "doctest.h"

#include "cotensor/field.hpp"
#include "generators.hpp"

#include <algorithm>
#include <string>
#include <vector>

using namespace cotensor;

namespace {

std::vector<FieldSpec> all_fields() {
  return {FieldSpec::gf(2), FieldSpec::gf(3), FieldSpec::gf(7),
          FieldSpec::rationals()};
}

bool equal(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return (a - b).is_zero();
}

}  // namespace

TEST_CASE("field spec accepts primes and rationals only") {
  CHECK(FieldSpec::rationals().is_valid());
  CHECK(FieldSpec::gf(2).is_valid());
  CHECK(FieldSpec::gf(97).is_valid());
  CHECK_FALSE(FieldSpec{1}.is_valid());
  CHECK_FALSE(FieldSpec{4}.is_valid());
  CHECK_FALSE(FieldSpec{9}.is_valid());
  CHECK_FALSE(FieldSpec{-2}.is_valid());
}

TEST_CASE("entries reduce into canonical form") {
  Matrix m = Matrix::zeros(FieldSpec::gf(5), 1, 3);
  m.set_int(0, 0, 7);
  m.set_int(0, 1, -1);
  m.set_int(0, 2, 10);
  CHECK(m.int_at(0, 0) == 2);
  CHECK(m.int_at(0, 1) == 4);
  CHECK(m.entry_is_zero(0, 2));

  Matrix q =
      Matrix::from_strings(FieldSpec::rationals(), 1, 2, {"2/4", "-6/3"});
  CHECK(q.entry_string(0, 0) == "1/2");
  CHECK(q.entry_string(0, 1) == "-2");
  CHECK_THROWS_AS(Matrix::from_strings(FieldSpec::rationals(), 1, 1, {"1/0"}),
                  parse_error);
}

TEST_CASE("arithmetic identities hold over every field") {
  for (FieldSpec f : all_fields()) {
    CAPTURE(f.name());
    testgen::Rng g(11);
    Matrix a = testgen::random_matrix(f, 4, 3, g);
    Matrix b = testgen::random_matrix(f, 3, 5, g);
    Matrix c = testgen::random_matrix(f, 5, 2, g);
    CHECK(equal((a * b) * c, a * (b * c)));
    CHECK(equal(a * Matrix::identity(f, 3), a));
    CHECK(equal(Matrix::identity(f, 4) * a, a));
    CHECK((a + a.negated()).is_zero());
    CHECK(equal(a.scaled_by_sign(-1), a.negated()));
    CHECK(equal(a.scaled_by_sign(1), a));
    CHECK(equal(a.transpose().transpose(), a));
    CHECK(equal((a * b).transpose(), b.transpose() * a.transpose()));
  }
}

TEST_CASE("rref produces a reduced echelon form with correct rank") {
  for (FieldSpec f : all_fields()) {
    CAPTURE(f.name());
    testgen::Rng g(23);
    for (int it = 0; it < 30; ++it) {
      int r = (int)testgen::draw(g, 0, 5), c = (int)testgen::draw(g, 0, 5);
      Matrix m = testgen::random_matrix(f, r, c, g);
      auto [e, res] = m.rref();
      CHECK(res.rank == (int)res.pivots.size());
      CHECK(res.rank == m.rank());
      CHECK(res.rank <= std::min(r, c));
      // Pivot columns carry exactly one 1, and pivots move right.
      for (int i = 0; i < res.rank; ++i) {
        int pc = res.pivots[i];
        if (i > 0) CHECK(pc > res.pivots[i - 1]);
        for (int row = 0; row < r; ++row) {
          if (row == i)
            CHECK(e.entry_string(row, pc) == "1");
          else
            CHECK(e.entry_is_zero(row, pc));
        }
      }
      CHECK(e.rank() == res.rank);
    }
  }
}

TEST_CASE("kernel basis spans the exact kernel") {
  for (FieldSpec f : all_fields()) {
    CAPTURE(f.name());
    testgen::Rng g(37);
    for (int it = 0; it < 25; ++it) {
      int r = (int)testgen::draw(g, 0, 5), c = (int)testgen::draw(g, 0, 5);
      Matrix m = testgen::random_matrix(f, r, c, g);
      Matrix k = m.kernel_basis();
      CHECK(k.rows() == c);
      CHECK(k.cols() == c - m.rank());
      CHECK((m * k).is_zero());
      CHECK(k.rank() == k.cols());
    }
    Matrix z = Matrix::zeros(f, 2, 3);
    CHECK(equal(z.kernel_basis(), Matrix::identity(f, 3)));
  }
}

TEST_CASE("solve returns an exact solution exactly when one exists") {
  for (FieldSpec f : all_fields()) {
    CAPTURE(f.name());
    testgen::Rng g(51);
    for (int it = 0; it < 25; ++it) {
      int r = (int)testgen::draw(g, 1, 5), c = (int)testgen::draw(g, 1, 5);
      Matrix m = testgen::random_matrix(f, r, c, g);
      Matrix x = testgen::random_matrix(f, c, 2, g);
      Matrix rhs = m * x;
      auto sol = m.solve(rhs);
      REQUIRE(sol.has_value());
      CHECK(equal(m * *sol, rhs));
    }
    // An inconsistent system: 0 * x = 1.
    Matrix zero = Matrix::zeros(f, 1, 1);
    Matrix one = Matrix::identity(f, 1);
    CHECK_FALSE(zero.solve(one).has_value());
  }
}

TEST_CASE("inverse round-trips and rejects singular input") {
  for (FieldSpec f : all_fields()) {
    CAPTURE(f.name());
    testgen::Rng g(67);
    for (int n = 0; n <= 4; ++n) {
      Matrix p = testgen::random_invertible(f, n, g);
      auto pi = p.inverse();
      REQUIRE(pi.has_value());
      CHECK(equal(p * *pi, Matrix::identity(f, n)));
      CHECK(equal(*pi * p, Matrix::identity(f, n)));
    }
    Matrix s = Matrix::from_ints(f, 2, 2, {1, 1, 1, 1});
    CHECK_FALSE(s.inverse().has_value());
  }
}

TEST_CASE("section of a surjection is a right inverse") {
  for (FieldSpec f : all_fields()) {
    CAPTURE(f.name());
    testgen::Rng g(71);
    for (int it = 0; it < 15; ++it) {
      int r = (int)testgen::draw(g, 0, 3);
      int c = r + (int)testgen::draw(g, 0, 3);
      Matrix m = Matrix::identity(f, r).hstack(
          testgen::random_matrix(f, r, c - r, g));
      Matrix p = testgen::random_invertible(f, c, g);
      m = m * p;
      Matrix s = m.section_of_surjection();
      CHECK(equal(m * s, Matrix::identity(f, r)));
    }
    Matrix bad = Matrix::zeros(f, 2, 2);
    CHECK_THROWS_AS(bad.section_of_surjection(), precondition_error);
  }
}

TEST_CASE("factor_through solves mono * w = target exactly") {
  for (FieldSpec f : all_fields()) {
    CAPTURE(f.name());
    testgen::Rng g(83);
    for (int it = 0; it < 15; ++it) {
      int small = (int)testgen::draw(g, 0, 3);
      int big = small + (int)testgen::draw(g, 0, 3);
      Matrix mono = Matrix::identity(f, small).vstack(
          Matrix::zeros(f, big - small, small));
      Matrix p = testgen::random_invertible(f, big, g);
      mono = p * mono;
      Matrix w = testgen::random_matrix(f, small, 4, g);
      Matrix through = Matrix::factor_through(mono, mono * w);
      CHECK(equal(through, w));
    }
    // A target outside the image must be rejected.
    Matrix mono = Matrix::from_ints(f, 2, 1, {1, 0});
    Matrix target = Matrix::from_ints(f, 2, 1, {0, 1});
    CHECK_THROWS_AS(Matrix::factor_through(mono, target), internal_error);
  }
}

TEST_CASE("span operations satisfy lattice identities") {
  for (FieldSpec f : all_fields()) {
    CAPTURE(f.name());
    testgen::Rng g(91);
    for (int it = 0; it < 20; ++it) {
      int amb = (int)testgen::draw(g, 1, 5);
      Matrix a =
          testgen::random_matrix(f, amb, (int)testgen::draw(g, 0, 3), g);
      Matrix b =
          testgen::random_matrix(f, amb, (int)testgen::draw(g, 0, 3), g);
      Matrix s = Matrix::span_sum(a, b);
      Matrix i = Matrix::span_intersection(a, b);
      CHECK(Matrix::span_contains(s, a));
      CHECK(Matrix::span_contains(s, b));
      CHECK(Matrix::span_contains(a, i));
      CHECK(Matrix::span_contains(b, i));
      // Modular dimension identity.
      CHECK(s.rank() + i.rank() == a.rank() + b.rank());
      // canonical_span is a unique representative of the subspace.
      Matrix ca = a.canonical_span();
      Matrix cb = a.hstack(a).canonical_span();
      CHECK(equal(ca, cb));
      CHECK(Matrix::span_contains(ca, a));
      CHECK(Matrix::span_contains(a, ca));
    }
  }
}

TEST_CASE("preimage_of_span pulls a subspace back exactly") {
  for (FieldSpec f : all_fields()) {
    CAPTURE(f.name());
    testgen::Rng g(101);
    for (int it = 0; it < 20; ++it) {
      int r = (int)testgen::draw(g, 1, 4), c = (int)testgen::draw(g, 1, 4);
      Matrix m = testgen::random_matrix(f, r, c, g);
      Matrix s =
          testgen::random_matrix(f, r, (int)testgen::draw(g, 0, 2), g);
      Matrix pre = m.preimage_of_span(s);
      CHECK(pre.rows() == c);
      CHECK(Matrix::span_contains(s, m * pre));
      // Maximality: the kernel always lies in the preimage.
      CHECK(Matrix::span_contains(pre, m.kernel_basis()));
      // Dimension: dim pre = dim ker + dim(im m cap span s).
      Matrix img = m.column_space_basis().first;
      Matrix cap = Matrix::span_intersection(img, s);
      CHECK(pre.rank() == m.kernel_basis().cols() + cap.rank());
    }
  }
}

TEST_CASE("quotient data gives projection, section and dimension") {
  for (FieldSpec f : all_fields()) {
    CAPTURE(f.name());
    testgen::Rng g(113);
    for (int it = 0; it < 20; ++it) {
      int amb = (int)testgen::draw(g, 1, 5);
      Matrix sub =
          testgen::random_matrix(f, amb, (int)testgen::draw(g, 0, 3), g);
      QuotientData q = quotient_by_span(sub);
      CHECK(q.proj.rows() == amb - sub.rank());
      CHECK(q.proj.cols() == amb);
      CHECK((q.proj * sub).is_zero());
      CHECK(equal(q.proj * q.section, Matrix::identity(f, q.proj.rows())));
    }
  }
}

TEST_CASE("kronecker respects the mixed product rule") {
  for (FieldSpec f : {FieldSpec::gf(3), FieldSpec::rationals()}) {
    CAPTURE(f.name());
    testgen::Rng g(127);
    Matrix a = testgen::random_matrix(f, 2, 3, g);
    Matrix b = testgen::random_matrix(f, 3, 2, g);
    Matrix c = testgen::random_matrix(f, 3, 2, g);
    Matrix d = testgen::random_matrix(f, 2, 3, g);
    CHECK(equal(Matrix::kronecker(a, c) * Matrix::kronecker(b, d),
                Matrix::kronecker(a * b, c * d)));
    CHECK(Matrix::kronecker(a, c).rows() == a.rows() * c.rows());
    CHECK(Matrix::kronecker(a, c).cols() == a.cols() * c.cols());
  }
}

TEST_CASE("block assembly and extraction round-trip") {
  FieldSpec f = FieldSpec::gf(5);
  testgen::Rng g(131);
  Matrix a = testgen::random_matrix(f, 2, 3, g);
  Matrix b = testgen::random_matrix(f, 2, 2, g);
  Matrix h = a.hstack(b);
  CHECK(equal(h.block(0, 0, 2, 3), a));
  CHECK(equal(h.block(0, 3, 2, 2), b));
  Matrix v = a.vstack(testgen::random_matrix(f, 1, 3, g));
  CHECK(equal(v.block(0, 0, 2, 3), a));
  Matrix z = Matrix::zeros(f, 4, 5);
  z.set_block(1, 2, a);
  CHECK(equal(z.block(1, 2, 2, 3), a));
  CHECK(equal(h.select_cols({3, 4}), b));
  CHECK(equal(v.select_rows({0, 1}), a));
}

TEST_CASE("permutation matrices act as expected") {
  FieldSpec f = FieldSpec::gf(2);
  Matrix p = Matrix::permutation(f, {2, 0, 1});
  Matrix e = Matrix::from_ints(f, 3, 1, {1, 0, 0});
  Matrix img = p * e;
  // Column j of p is the basis vector image[j].
  CHECK(img.int_at(2, 0) == 1);
  CHECK(img.int_at(0, 0) == 0);
  Matrix sp =
      Matrix::signed_permutation(FieldSpec::rationals(), {1, 0}, {1, -1});
  CHECK(sp.entry_string(1, 0) == "1");
  CHECK(sp.entry_string(0, 1) == "-1");
}

TEST_CASE("exact rationals do not drift under long products") {
  FieldSpec f = FieldSpec::rationals();
  Matrix m = Matrix::from_strings(f, 2, 2, {"1/3", "1/7", "0", "1/3"});
  Matrix acc = Matrix::identity(f, 2);
  for (int i = 0; i < 20; ++i) acc = acc * m;
  // (1/3)^20 exactly.
  CHECK(acc.entry_string(0, 0) == "1/3486784401");
  auto inv = m.inverse();
  REQUIRE(inv.has_value());
  Matrix back = acc;
  for (int i = 0; i < 20; ++i) back = back * *inv;
  CHECK(equal(back, Matrix::identity(f, 2)));
}

TEST_CASE("reduction pipeline is deterministic across repeated runs") {
  for (FieldSpec f : all_fields()) {
    CAPTURE(f.name());
    testgen::Rng g1(17), g2(17);
    for (int it = 0; it < 10; ++it) {
      Matrix a = testgen::random_matrix(f, 5, 7, g1);
      Matrix b = testgen::random_matrix(f, 5, 7, g2);
      CHECK(equal(a, b));
      CHECK(equal(a.kernel_basis(), b.kernel_basis()));
      CHECK(equal(a.canonical_span(), b.canonical_span()));
      auto [ra, pa] = a.rref();
      auto [rb, pb] = b.rref();
      CHECK(equal(ra, rb));
      CHECK(pa.pivots == pb.pivots);
    }
  }
}
