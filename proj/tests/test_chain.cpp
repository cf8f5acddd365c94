#include "doctest.h"

#include "cotensor/chain.hpp"
#include "generators.hpp"

#include <vector>

using namespace cotensor;

namespace {

std::vector<FieldSpec> test_fields() {
  return {FieldSpec::gf(2), FieldSpec::gf(3), FieldSpec::rationals()};
}

// Convolution of graded dimension vectors, the expected homology of a tensor
// product over a field.
GradedDims convolve(const GradedDims& a, const GradedDims& b) {
  if (a.empty() || b.empty()) return {0};
  GradedDims out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

int at(const GradedDims& v, int n) {
  return (n >= 0 && n < (int)v.size()) ? v[n] : 0;
}

}  // namespace

TEST_CASE("basic complexes have the advertised homology") {
  for (FieldSpec f : test_fields()) {
    CAPTURE(f.name());
    ChainComplex u = ChainComplex::unit(f);
    CHECK(u.dim(0) == 1);
    CHECK(homology_dim(u, 0) == 1);

    ChainComplex s3 = ChainComplex::sphere(f, 3, 2);
    CHECK(s3.maxdeg() == 3);
    CHECK(s3.dim(3) == 2);
    CHECK(homology_dim(s3, 3) == 2);
    CHECK(homology_dim(s3, 0) == 0);

    ChainComplex d2 = ChainComplex::disk(f, 2);
    CHECK(d2.dim(1) == 1);
    CHECK(d2.dim(2) == 1);
    for (int n = 0; n <= 2; ++n) CHECK(homology_dim(d2, n) == 0);

    ChainComplex z = ChainComplex::zero(f, 2);
    CHECK(z.maxdeg() == 2);
    CHECK(z.total_dim() == 0);
    CHECK(validate_complex(u).ok);
    CHECK(validate_complex(s3).ok);
    CHECK(validate_complex(d2).ok);
    CHECK(validate_complex(z).ok);
  }
}

TEST_CASE("validate_complex rejects a non-squaring differential") {
  FieldSpec f = FieldSpec::gf(2);
  // d1 = d2 = identity on one generator per degree: d*d = 1 != 0.
  ChainComplex bad(f, {1, 1, 1},
                   {Matrix::zeros(f, 0, 0), Matrix::identity(f, 1),
                    Matrix::identity(f, 1)});
  Report r = validate_complex(bad);
  CHECK_FALSE(r.ok);
  CHECK_FALSE(r.issues.empty());
}

TEST_CASE("dim and diff are zero outside the stored range") {
  FieldSpec f = FieldSpec::gf(3);
  ChainComplex s2 = ChainComplex::sphere(f, 2);
  CHECK(s2.dim(-1) == 0);
  CHECK(s2.dim(5) == 0);
  CHECK(s2.diff(5).rows() == 0);
  CHECK(s2.diff(0).cols() == s2.dim(0));
}

TEST_CASE("splitting dimensions and round-trip on a fixed example") {
  FieldSpec f2 = FieldSpec::gf(2);
  ChainComplex c(f2, {2, 3, 2},
                 {Matrix::zeros(f2, 0, 0),
                  Matrix::from_ints(f2, 2, 3, {1, 0, 1, 0, 1, 1}),
                  Matrix::from_ints(f2, 3, 2, {1, 0, 1, 0, 1, 0})});
  REQUIRE(validate_complex(c).ok);
  Splitting s = split_complex(c);
  CHECK(validate_complex(s.model).ok);
  for (int n = 0; n <= c.maxdeg(); ++n) {
    CHECK(s.model.dims() == c.dims());
    CHECK(at(s.v, n) == homology_dim(c, n));
    CHECK(c.dim(n) == at(s.v, n) + at(s.w, n) + at(s.w, n + 1));
    CHECK((s.to_x[n] * s.from_x[n]).is_identity());
    CHECK((s.from_x[n] * s.to_x[n]).is_identity());
    CHECK(homology_dim(s.model, n) == homology_dim(c, n));
    if (n >= 1)
      CHECK(c.diff(n) * s.to_x[n] == s.to_x[n - 1] * s.model.diff(n));
  }
}

TEST_CASE("splitting of random complexes over three fields") {
  for (FieldSpec f : test_fields()) {
    CAPTURE(f.name());
    testgen::Rng g(2024);
    for (int it = 0; it < 25; ++it) {
      auto rc = testgen::random_complex(f, 6, 6, g);
      REQUIRE(validate_complex(rc.x).ok);
      Splitting s = split_complex(rc.x);
      for (int n = 0; n <= rc.x.maxdeg(); ++n) {
        CHECK(rc.x.dim(n) == at(s.v, n) + at(s.w, n) + at(s.w, n + 1));
        CHECK(at(s.v, n) == at(rc.h, n));
        CHECK((s.to_x[n] * s.from_x[n]).is_identity());
        CHECK((s.from_x[n] * s.to_x[n]).is_identity());
        // Homology representatives are cycles and independent in homology.
        Matrix reps = s.homology_reps(n);
        CHECK(reps.cols() == at(s.v, n));
        CHECK((rc.x.diff(n) * reps).is_zero());
        Matrix bn = s.bounds[n];
        CHECK(Matrix::span_sum(reps, bn).rank() == reps.cols() + bn.rank());
      }
    }
  }
}

TEST_CASE("tensor dims, differential square and Kunneth over a field") {
  for (FieldSpec f : test_fields()) {
    CAPTURE(f.name());
    testgen::Rng g(555);
    for (int it = 0; it < 6; ++it) {
      auto a = testgen::random_complex(f, 4, 4, g);
      auto b = testgen::random_complex(f, 4, 4, g);
      ChainComplex t = tensor(a.x, b.x);
      REQUIRE(validate_complex(t).ok);
      for (int n = 0; n <= t.maxdeg(); ++n) {
        int expect = 0;
        for (int i = 0; i <= n; ++i) expect += a.x.dim(i) * b.x.dim(n - i);
        CHECK(t.dim(n) == expect);
      }
      GradedDims hk = convolve(a.h, b.h);
      GradedDims ht = homology_dims(t);
      for (int n = 0; n <= t.maxdeg(); ++n) CHECK(at(ht, n) == at(hk, n));
    }
  }
}

TEST_CASE("capped tensor marks truncation and matches below the cap") {
  FieldSpec f = FieldSpec::rationals();
  ChainComplex d2 = ChainComplex::disk(f, 2);
  ChainComplex full = tensor(d2, d2);
  ChainComplex capped = tensor(d2, d2, 3);
  CHECK_FALSE(full.truncated());
  CHECK(capped.truncated());
  CHECK(capped.maxdeg() == 3);
  for (int n = 0; n <= 3; ++n) {
    CHECK(capped.dim(n) == full.dim(n));
    if (n >= 1) CHECK(capped.diff(n) == full.diff(n));
  }
  CHECK(homology_exact_through(capped) == 2);
  CHECK(homology_exact_through(full) == full.maxdeg());
}

TEST_CASE("tensor of maps is functorial") {
  FieldSpec f = FieldSpec::gf(3);
  testgen::Rng g(77);
  auto a = testgen::random_complex(f, 3, 3, g);
  auto b = testgen::random_complex(f, 3, 3, g);
  Splitting sa = split_complex(a.x);
  // A chain self-map: conjugate the identity (gives identity), plus zero map.
  ChainMap ida = identity_chain_map(a.x);
  ChainMap idb = identity_chain_map(b.x);
  ChainMap t = tensor_map(ida, idb);
  CHECK(validate_chain_map(t).ok);
  for (int n = 0; n <= t.source.maxdeg(); ++n) CHECK(t.at(n).is_identity());
  ChainMap z = zero_chain_map(a.x, a.x);
  ChainMap tz = tensor_map(z, idb);
  for (int n = 0; n <= tz.source.maxdeg(); ++n) CHECK(tz.at(n).is_zero());
  (void)sa;
}

TEST_CASE("twist is a chain isomorphism with Koszul signs") {
  FieldSpec q = FieldSpec::rationals();
  ChainComplex s1 = ChainComplex::sphere(q, 1, 2);
  ChainComplex s2 = ChainComplex::sphere(q, 2, 1);
  ChainMap tw = twist(s1, s2);
  CHECK(validate_chain_map(tw).ok);
  // Odd-odd block picks up the sign (-1)^{1*1} = -1.
  ChainMap tw11 = twist(s1, s1);
  CHECK(tw11.at(2).entry_string(0, 0) == "-1");
  // Twist is involutive: (Y twist X) after (X twist Y) = identity.
  ChainComplex d1 = ChainComplex::disk(q, 1);
  ChainMap fwd = twist(d1, d1);
  ChainMap bwd = twist(d1, d1);
  ChainMap sq = compose(bwd, fwd);
  CHECK(validate_chain_map(fwd).ok);
  for (int n = 0; n <= 2; ++n) CHECK(sq.at(n).is_identity());
  // Twist of random complexes is a quasi-isomorphism.
  testgen::Rng g(31);
  auto a = testgen::random_complex(q, 4, 4, g);
  auto b = testgen::random_complex(q, 4, 4, g);
  CHECK(is_quasi_iso(twist(a.x, b.x)));
}

TEST_CASE("regrouping the triple tensor is a permutation chain map") {
  FieldSpec q = FieldSpec::rationals();
  ChainComplex d1 = ChainComplex::disk(q, 1);
  ChainComplex s1 = ChainComplex::sphere(q, 1, 2);
  MultiTensor flat({d1, s1, d1});
  auto rl = regroup_left(d1, s1, d1);
  auto rr = regroup_right(d1, s1, d1);
  ChainComplex nl = tensor(tensor(d1, s1), d1);
  ChainComplex nr = tensor(d1, tensor(s1, d1));
  ChainMap ml{flat.complex(), nl, rl};
  ChainMap mr{flat.complex(), nr, rr};
  CHECK(validate_chain_map(ml).ok);
  CHECK(validate_chain_map(mr).ok);
  for (int n = 0; n <= flat.complex().maxdeg(); ++n) {
    CHECK(rl[n].rank() == flat.complex().dim(n));
    CHECK(rr[n].rank() == flat.complex().dim(n));
  }
}

TEST_CASE("multi-tensor tuple enumeration is ordered and complete") {
  FieldSpec f = FieldSpec::gf(2);
  ChainComplex a = ChainComplex::sphere(f, 1, 2);
  ChainComplex b = ChainComplex::disk(f, 2, 1);
  MultiTensor mt({a, b});
  for (int n = 0; n <= mt.cap(); ++n) {
    const auto& ts = mt.tuples(n);
    int width = 0;
    int last_first = -1;
    for (int t = 0; t < (int)ts.size(); ++t) {
      CHECK(ts[t][0] + ts[t][1] == n);
      CHECK(ts[t][0] > last_first);  // strictly ascending in first factor
      last_first = ts[t][0];
      CHECK(mt.tuple_offset(n, t) == width);
      CHECK(mt.find_tuple(n, ts[t]) == t);
      width += mt.tuple_width(ts[t]);
    }
    CHECK(width == mt.complex().dim(n));
  }
  CHECK(mt.find_tuple(1, {0, 1}) == -1);  // zero-width blocks are skipped
}

TEST_CASE("direct sums of complexes come with coherent maps") {
  FieldSpec f = FieldSpec::gf(5);
  testgen::Rng g(404);
  auto a = testgen::random_complex(f, 4, 4, g);
  auto b = testgen::random_complex(f, 4, 4, g);
  SumDecomp s = direct_sum(a.x, b.x);
  REQUIRE(validate_complex(s.sum).ok);
  CHECK(validate_chain_map(s.inj_a).ok);
  CHECK(validate_chain_map(s.inj_b).ok);
  CHECK(validate_chain_map(s.proj_a).ok);
  CHECK(validate_chain_map(s.proj_b).ok);
  for (int n = 0; n <= s.sum.maxdeg(); ++n) {
    CHECK(s.sum.dim(n) == a.x.dim(n) + b.x.dim(n));
    CHECK((s.proj_a.at(n) * s.inj_a.at(n)).is_identity());
    CHECK((s.proj_b.at(n) * s.inj_b.at(n)).is_identity());
    CHECK((s.proj_a.at(n) * s.inj_b.at(n)).is_zero());
    CHECK(homology_dim(s.sum, n) ==
          homology_dim(a.x, n) + homology_dim(b.x, n));
  }
}

TEST_CASE("induced homology map of a splitting isomorphism is invertible") {
  for (FieldSpec f : test_fields()) {
    CAPTURE(f.name());
    testgen::Rng g(808);
    auto rc = testgen::random_complex(f, 5, 5, g);
    Splitting s = split_complex(rc.x);
    ChainMap to{s.model, rc.x, s.to_x};
    CHECK(validate_chain_map(to).ok);
    Splitting sm = split_complex(s.model);
    Splitting sx = split_complex(rc.x);
    for (int n = 0; n <= rc.x.maxdeg(); ++n) {
      Matrix h = induced_homology_map(to, sm, sx, n);
      CHECK(h.rows() == homology_dim(rc.x, n));
      CHECK(h.cols() == homology_dim(s.model, n));
      CHECK(h.rank() == h.rows());
      CHECK(h.rows() == h.cols());
    }
    CHECK(is_quasi_iso(to));
  }
}

TEST_CASE("quasi-isomorphism detection and its degree window") {
  FieldSpec f = FieldSpec::gf(2);
  testgen::Rng g(909);
  auto rc = testgen::random_complex(f, 5, 5, g);
  CHECK(is_quasi_iso(identity_chain_map(rc.x)));
  ChainComplex z = ChainComplex::zero(f, 2);
  // Zero -> X is a quasi-iso only when X is acyclic.
  ChainComplex d3 = ChainComplex::disk(f, 3);
  CHECK(is_quasi_iso(zero_chain_map(z, d3)));
  ChainComplex s2 = ChainComplex::sphere(f, 2);
  CHECK_FALSE(is_quasi_iso(zero_chain_map(z, s2)));
  // A truncated target is compared only through its clean degrees.
  ChainComplex d2full = ChainComplex::disk(f, 2);
  ChainComplex d2cut = truncate_below(d2full, 1);
  CHECK(d2cut.maxdeg() == 1);
  // Explicit window override.
  CHECK(is_quasi_iso(zero_chain_map(z, d3), 2));
  CHECK_FALSE(is_quasi_iso(zero_chain_map(z, s2), 2));
}

TEST_CASE("truncate_below keeps low degrees and flags the cut") {
  FieldSpec f = FieldSpec::rationals();
  ChainComplex d3 = ChainComplex::disk(f, 3);
  ChainComplex t = truncate_below(d3, 2);
  CHECK(t.maxdeg() == 2);
  CHECK(t.truncated());
  for (int n = 0; n <= 2; ++n) CHECK(t.dim(n) == d3.dim(n));
  CHECK(t.diff(2) == d3.diff(2));
  CHECK(homology_exact_through(t) == 1);
  // Truncating at or above maxdeg keeps everything.
  ChainComplex same = truncate_below(d3, 3);
  CHECK(same.maxdeg() == 3);
}

TEST_CASE("chain map validation catches non-commuting squares") {
  FieldSpec f = FieldSpec::gf(2);
  ChainComplex d1 = ChainComplex::disk(f, 1);
  ChainComplex s1 = ChainComplex::sphere(f, 1);
  // Map s1 -> d1 hitting the disk top: d(f(x)) is the disk bottom but
  // f(d(x)) = 0, so the square does not commute.
  ChainMap bad{s1, d1,
               {Matrix::zeros(f, 1, 0), Matrix::identity(f, 1)}};
  Report r = validate_chain_map(bad);
  CHECK_FALSE(r.ok);
}
