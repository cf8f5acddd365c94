#include "doctest.h"

#include "cotensor/comodule.hpp"
#include "cotensor/fixtures.hpp"
#include "generators.hpp"

#include <vector>

using namespace cotensor;

namespace {

CoalgebraPtr sphere_coalg() {
  return fixture_sphere2_coalgebra(FieldSpec::gf(2));
}

}  // namespace

TEST_CASE("trivial and cofree comodules validate over all fixtures") {
  for (FieldSpec f :
       {FieldSpec::gf(2), FieldSpec::gf(3), FieldSpec::rationals()}) {
    CAPTURE(f.name());
    for (const auto& nm : fixture_comodules(f)) {
      CAPTURE(nm.name);
      CHECK(validate_comodule(nm.m).ok);
    }
    for (const auto& nc : fixture_coalgebras(f)) {
      ChainComplex m = ChainComplex::sphere(f, 3, 2);
      DGComodule cf = cofree_comodule(m, nc.c);
      DGComodule tv = trivial_comodule(m, nc.c);
      CHECK(validate_comodule(cf).ok);
      CHECK(validate_comodule(tv).ok);
      // Cofree carrier is M (x) C; trivial carrier is M itself.
      for (int n = 0; n <= cf.maxdeg(); ++n) {
        int expect = 0;
        for (int i = 0; i <= n; ++i) expect += m.dim(i) * nc.c->c.dim(n - i);
        CHECK(cf.x.dim(n) == expect);
      }
      CHECK(tv.x.dims() == m.dims());
    }
  }
}

TEST_CASE("validate_comodule rejects a broken coaction") {
  auto c = sphere_coalg();
  FieldSpec f = c->field();
  ChainComplex m = ChainComplex::unit(f);
  DGComodule tv = trivial_comodule(m, c);
  // Zero out the coaction: violates counitality.
  tv.coaction[0] = Matrix::zeros(f, 1, 1);
  CHECK_FALSE(validate_comodule(tv).ok);
}

TEST_CASE("comodule map composition and validation") {
  auto c = sphere_coalg();
  testgen::Rng g(314);
  DGComodule m = testgen::random_comodule(c, 4, 4, g);
  ComoduleMap id = identity_comodule_map(m);
  CHECK(validate_comodule_map(id).ok);
  ComoduleMap z = zero_comodule_map(m, m);
  CHECK(validate_comodule_map(z).ok);
  ComoduleMap zz = compose(z, id);
  for (int n = 0; n <= m.maxdeg(); ++n) CHECK(zz.at(n).is_zero());
  // carrier() exposes the underlying chain map.
  CHECK(validate_chain_map(id.carrier()).ok);
  CHECK(is_quasi_iso(id.carrier()));
}

TEST_CASE("cofree functor action is a comodule map") {
  auto c = sphere_coalg();
  FieldSpec f = c->field();
  ChainComplex s1 = ChainComplex::sphere(f, 1);
  ChainComplex d2 = ChainComplex::disk(f, 2);
  // Chain map S^1 -> D^2 hitting the disk bottom.
  ChainMap g{s1, d2, {Matrix::zeros(f, 0, 0), Matrix::identity(f, 1)}};
  REQUIRE(validate_chain_map(g).ok);
  ComoduleMap cg = cofree_comodule_map(g, c);
  CHECK(validate_comodule_map(cg).ok);
  CHECK(cg.source.x.dims() == cofree_comodule(s1, c).x.dims());
  CHECK(cg.target.x.dims() == cofree_comodule(d2, c).x.dims());
}

TEST_CASE("direct sum of comodules has coherent injections and projections") {
  auto c = sphere_coalg();
  testgen::Rng g(217);
  DGComodule a = testgen::random_comodule(c, 4, 4, g);
  DGComodule b = testgen::random_comodule(c, 4, 4, g);
  ComoduleSum s = direct_sum(a, b);
  CHECK(validate_comodule(s.sum).ok);
  CHECK(validate_comodule_map(s.inj_a).ok);
  CHECK(validate_comodule_map(s.inj_b).ok);
  CHECK(validate_comodule_map(s.proj_a).ok);
  CHECK(validate_comodule_map(s.proj_b).ok);
  for (int n = 0; n <= s.sum.maxdeg(); ++n) {
    CHECK(s.sum.x.dim(n) == a.x.dim(n) + b.x.dim(n));
    CHECK((s.proj_a.at(n) * s.inj_a.at(n)).is_identity());
    CHECK((s.proj_b.at(n) * s.inj_b.at(n)).is_identity());
    CHECK((s.proj_a.at(n) * s.inj_b.at(n)).is_zero());
    CHECK((s.proj_b.at(n) * s.inj_a.at(n)).is_zero());
  }
}

TEST_CASE("kernel and cokernel are comodules with exact carriers") {
  auto c = sphere_coalg();
  testgen::Rng g(999);
  for (int it = 0; it < 10; ++it) {
    DGComodule a = testgen::random_comodule(c, 3, 3, g);
    DGComodule b = testgen::random_comodule(c, 3, 3, g);
    ComoduleSum s = direct_sum(a, b);
    // Projection onto a is a comodule map with kernel b.
    ComoduleKernel k = kernel(s.proj_a);
    CHECK(validate_comodule(k.k).ok);
    CHECK(validate_comodule_map(k.incl).ok);
    for (int n = 0; n <= s.sum.maxdeg(); ++n) {
      CHECK(k.k.x.dim(n) == b.x.dim(n));
      CHECK((s.proj_a.at(n) * k.incl.at(n)).is_zero());
      CHECK(k.incl.at(n).rank() == k.k.x.dim(n));
    }
    // Cokernel of the injection of a is b.
    ComoduleCokernel q = cokernel(s.inj_a);
    CHECK(validate_comodule(q.q).ok);
    CHECK(validate_comodule_map(q.proj).ok);
    for (int n = 0; n <= s.sum.maxdeg(); ++n) {
      CHECK(q.q.x.dim(n) == b.x.dim(n));
      CHECK((q.proj.at(n) * s.inj_a.at(n)).is_zero());
      CHECK(q.proj.at(n).rank() == q.q.x.dim(n));
    }
  }
}

TEST_CASE("pullback satisfies the universal property") {
  auto c = sphere_coalg();
  testgen::Rng g(2718);
  DGComodule a = testgen::random_comodule(c, 3, 3, g);
  DGComodule b = testgen::random_comodule(c, 3, 3, g);
  ComoduleSum s = direct_sum(a, b);
  // Pull back proj_a along proj_a: the pullback of the cospan
  // sum -> a <- sum.
  ComodulePullback pb = pullback(s.proj_a, s.proj_a);
  CHECK(validate_comodule(pb.p).ok);
  CHECK(validate_comodule_map(pb.to_a).ok);
  CHECK(validate_comodule_map(pb.to_b).ok);
  // The square commutes.
  for (int n = 0; n <= pb.p.maxdeg(); ++n)
    CHECK(s.proj_a.at(n) * pb.to_a.at(n) == s.proj_a.at(n) * pb.to_b.at(n));
  // The diagonal cone factors through it, uniquely compatible.
  ComoduleMap med = pullback_mediating(pb, identity_comodule_map(s.sum),
                                       identity_comodule_map(s.sum));
  CHECK(validate_comodule_map(med).ok);
  for (int n = 0; n <= s.sum.maxdeg(); ++n) {
    CHECK(pb.to_a.at(n) * med.at(n) == Matrix::identity(c->field(), s.sum.x.dim(n)));
    CHECK(pb.to_b.at(n) * med.at(n) == Matrix::identity(c->field(), s.sum.x.dim(n)));
  }
}

TEST_CASE("truncation of a comodule restricts the coaction") {
  auto c = sphere_coalg();
  FieldSpec f = c->field();
  ChainComplex m = ChainComplex::sphere(f, 4).dims() == GradedDims{}
                       ? ChainComplex::unit(f)
                       : ChainComplex::sphere(f, 4);
  DGComodule cf = cofree_comodule(m, c);
  TruncatedComodule t = truncate_comodule(cf, 5);
  CHECK(t.restricts.ok);
  CHECK(validate_comodule(t.m).ok);
  CHECK(validate_comodule_map(t.incl).ok);
  CHECK(t.m.maxdeg() == 5);
  CHECK(t.m.x.truncated());
  for (int n = 0; n <= 5; ++n) CHECK(t.m.x.dim(n) == cf.x.dim(n));
  // Truncating above maxdeg changes nothing and stays untruncated.
  TruncatedComodule whole = truncate_comodule(cf, cf.maxdeg());
  CHECK_FALSE(whole.m.x.truncated());
}

TEST_CASE("left coaction is derived by the twist and stays compatible") {
  auto c = sphere_coalg();
  FieldSpec f = c->field();
  testgen::Rng g(31337);
  DGComodule m = testgen::random_comodule(c, 4, 4, g);
  auto left = m.left_coaction();
  REQUIRE((int)left.size() == m.maxdeg() + 1);
  // Counit on the left factor recovers the identity.
  MultiTensor cx({c->c, m.x}, m.maxdeg());
  for (int n = 0; n <= m.maxdeg(); ++n) {
    CHECK(left[n].rows() == cx.complex().dim(n));
    CHECK(left[n].cols() == m.x.dim(n));
  }
  ChainMap counitmap{c->c, ChainComplex::unit(f), {c->counit}};
  ChainMap idm = identity_chain_map(m.x);
  ChainMap collapse = tensor_map(counitmap, idm, m.maxdeg());
  for (int n = 0; n <= m.maxdeg(); ++n)
    CHECK((collapse.at(n) * left[n]).is_identity());
}

TEST_CASE("hom complex between small comodules has the right shape") {
  auto c = sphere_coalg();
  FieldSpec f = c->field();
  DGComodule cf = cofree_comodule(ChainComplex::unit(f), c);
  HomSubcomplex h = hom_comodule(cf, cf);
  // Hom_C(C, C) = k in degrees 0 and -2 (maps induced by the counit and by
  // projection onto the top class).
  CHECK(h.sub.dim(0) == 1);
  CHECK(h.sub.dim(-2) == 1);
  CHECK(h.sub.dim(-1) == 0);
  CHECK(h.sub.dim(1) == 0);
  // Differential vanishes on this window.
  for (int n = h.sub.lo; n <= h.sub.hi(); ++n)
    CHECK(h.sub.diff(n).is_zero());
  // The inclusion lands in the full Hom complex degreewise.
  for (int k = 0; k < (int)h.incl.size(); ++k) {
    CHECK(h.incl[k].rows() == h.full.dim(h.sub.lo + k));
    CHECK(h.incl[k].cols() == h.sub.dim(h.sub.lo + k));
  }
}

TEST_CASE("hom_post_compose is compatible with the differential") {
  auto c = sphere_coalg();
  FieldSpec f = c->field();
  DGComodule cf = cofree_comodule(ChainComplex::unit(f), c);
  DGComodule cf2 = cofree_comodule(ChainComplex::sphere(f, 1), c);
  ChainMap g{ChainComplex::unit(f), ChainComplex::sphere(f, 1),
             {Matrix::zeros(f, 0, 1)}};
  ComoduleMap p = cofree_comodule_map(g, c);
  HomSubcomplex hxy = hom_comodule(cf, cf);
  HomSubcomplex hxz = hom_comodule(cf, cf2);
  auto post = hom_post_compose(hxy, hxz, cf, p);
  // Window sizes agree with the sub complexes.
  REQUIRE((int)post.size() >= 1);
}

TEST_CASE("comodules over structurally equal coalgebras are compatible") {
  FieldSpec f = FieldSpec::gf(2);
  auto c1 = fixture_sphere2_coalgebra(f);
  auto c2 = fixture_sphere2_coalgebra(f);
  CHECK(c1.get() != c2.get());
  DGComodule a = trivial_comodule(ChainComplex::unit(f), c1);
  DGComodule b = trivial_comodule(ChainComplex::unit(f), c2);
  CHECK(comodules_compatible(a, b));
  auto c4 = fixture_proj_plane_coalgebra(f);
  DGComodule d = trivial_comodule(ChainComplex::unit(f), c4);
  CHECK_FALSE(comodules_compatible(a, d));
}
