#include "doctest.h"

#include "cotensor/coalgebra.hpp"
#include "cotensor/fixtures.hpp"

#include <vector>

using namespace cotensor;

namespace {

std::vector<FieldSpec> test_fields() {
  return {FieldSpec::gf(2), FieldSpec::gf(3), FieldSpec::rationals()};
}

}  // namespace

TEST_CASE("shipped coalgebras validate over every field") {
  for (FieldSpec f : test_fields()) {
    CAPTURE(f.name());
    for (const auto& nc : fixture_coalgebras(f)) {
      CAPTURE(nc.name);
      CoalgebraProps props;
      Report r = validate_coalgebra(*nc.c, &props);
      CHECK(r.ok);
      CHECK(props.cocommutative);
      CHECK(props.simply_connected);
      CHECK(is_cocommutative(*nc.c));
      CHECK(is_simply_connected(*nc.c));
      // Counit splits the coaugmentation.
      CHECK((nc.c->counit * nc.c->unit).is_identity());
    }
  }
}

TEST_CASE("shipped coalgebras have the advertised carriers") {
  FieldSpec f = FieldSpec::gf(2);
  auto fx = fixture_coalgebras(f);
  REQUIRE(fx.size() == 4);
  CHECK(fx[0].name == "f1");
  CHECK(fx[0].c->c.dims() == GradedDims{1});
  CHECK(fx[1].name == "f2");
  CHECK(fx[1].c->c.dims() == GradedDims{1, 0, 1});
  CHECK(fx[2].name == "f3");
  CHECK(fx[2].c->c.dims() == GradedDims{1, 0, 2, 1});
  CHECK(homology_dims(fx[2].c->c) == GradedDims{1, 0, 1, 0});
  CHECK(fx[3].name == "f4");
  CHECK(fx[3].c->c.dims() == GradedDims{1, 0, 1, 0, 1});
}

TEST_CASE("make_coalgebra rejects a non-surjective counit") {
  FieldSpec f = FieldSpec::gf(2);
  ChainComplex u = ChainComplex::unit(f);
  std::vector<Matrix> comult = {Matrix::identity(f, 1)};
  CHECK_THROWS_AS(make_coalgebra(u, comult, Matrix::zeros(f, 1, 1)),
                  precondition_error);
}

TEST_CASE("coassociativity violations are reported, not crashed on") {
  FieldSpec f = FieldSpec::gf(3);
  // Carrier k in degrees 0 and 1; comult with a deliberately wrong degree-1
  // block: x |-> 2(x tensor 1) + 1 tensor x breaks counitality.
  ChainComplex c(f, {1, 1},
                 {Matrix::zeros(f, 0, 0), Matrix::zeros(f, 1, 1)});
  std::vector<Matrix> comult = {Matrix::identity(f, 1),
                                Matrix::from_ints(f, 2, 1, {2, 1})};
  DGCoalgebra bad = make_coalgebra(c, comult, Matrix::identity(f, 1));
  Report r = validate_coalgebra(bad);
  CHECK_FALSE(r.ok);
}

TEST_CASE("collapse map is a coalgebra quasi-isomorphism") {
  for (FieldSpec f : test_fields()) {
    CAPTURE(f.name());
    CoalgebraMap cm = fixture_collapse_map(f);
    CHECK(validate_coalgebra_map(cm).ok);
    CHECK(is_quasi_iso(ChainMap{cm.source.c, cm.target.c, cm.f}));
    // It kills exactly the acyclic pair: degreewise ranks 1,0,1,0.
    CHECK(cm.at(0).rank() == 1);
    CHECK(cm.at(2).rank() == 1);
    CHECK(cm.at(3).rank() == 0);
  }
}

TEST_CASE("coalgebra map validation catches comultiplication mismatch") {
  FieldSpec f = FieldSpec::gf(2);
  auto f4 = fixture_proj_plane_coalgebra(f);
  // Self-map of the projective-plane coalgebra that kills x2 but keeps x4:
  // comult(x4) contains x2 (x) x2, which the map must also kill, so the
  // comultiplication square cannot commute.
  std::vector<Matrix> comp = {Matrix::identity(f, 1), Matrix::zeros(f, 0, 0),
                              Matrix::zeros(f, 1, 1), Matrix::zeros(f, 0, 0),
                              Matrix::identity(f, 1)};
  CoalgebraMap bad{*f4, *f4, comp};
  Report r = validate_coalgebra_map(bad);
  CHECK_FALSE(r.ok);
  // Killing the top class instead factors through the counit and is fine.
  std::vector<Matrix> ok_comp = {Matrix::identity(f, 1),
                                 Matrix::zeros(f, 0, 0),
                                 Matrix::zeros(f, 1, 1),
                                 Matrix::zeros(f, 0, 0),
                                 Matrix::zeros(f, 1, 1)};
  CoalgebraMap good{*f4, *f4, ok_comp};
  CHECK(validate_coalgebra_map(good).ok);
}

TEST_CASE("unit coideal splits off the coaugmentation") {
  FieldSpec f = FieldSpec::gf(2);
  auto f2c = fixture_sphere2_coalgebra(f);
  Coideal ci = unit_coideal(*f2c);
  CHECK(ci.cbar.dims() == GradedDims{0, 0, 1});
  CHECK(validate_complex(ci.cbar).ok);
  for (int n = 0; n <= 2; ++n) {
    // proj * incl = id on the coideal.
    CHECK((ci.proj[n] * ci.incl[n]).is_identity());
  }
  // incl * proj = id - unit * counit in degree 0.
  Matrix defect = Matrix::identity(f, 1) - f2c->unit * f2c->counit;
  CHECK(ci.incl[0] * ci.proj[0] == defect);
  // The sphere class is primitive: reduced comultiplication vanishes.
  for (int n = 0; n <= 2; ++n) {
    if (ci.red_comult[n].rows() && ci.red_comult[n].cols())
      CHECK(ci.red_comult[n].is_zero());
  }
}

TEST_CASE("projective-plane coideal has a nonzero reduced square") {
  FieldSpec f = FieldSpec::gf(2);
  auto f4 = fixture_proj_plane_coalgebra(f);
  Coideal ci = unit_coideal(*f4);
  CHECK(ci.cbar.dims() == GradedDims{0, 0, 1, 0, 1});
  // In degree 4 the class maps to x2 (x) x2 inside cbar (x) cbar.
  bool nonzero = false;
  for (int n = 0; n <= 4; ++n)
    if (ci.red_comult[n].rows() && ci.red_comult[n].cols() &&
        !ci.red_comult[n].is_zero())
      nonzero = true;
  CHECK(nonzero);
}

TEST_CASE("homology coalgebra of the acyclic extension matches the core") {
  for (FieldSpec f : test_fields()) {
    CAPTURE(f.name());
    auto f3 = fixture_sphere2_acyclic_coalgebra(f);
    auto f2 = fixture_sphere2_coalgebra(f);
    HomologyCoalgebra hc = homology_coalgebra(*f3);
    CHECK(validate_coalgebra(hc.h).ok);
    // Zero differential and the dims of the 2-sphere coalgebra.
    for (int n = 1; n <= hc.h.maxdeg(); ++n) CHECK(hc.h.c.diff(n).is_zero());
    for (int n = 0; n <= 2; ++n) CHECK(hc.h.c.dim(n) == f2->c.dim(n));
    for (int n = 3; n <= hc.h.maxdeg(); ++n) CHECK(hc.h.c.dim(n) == 0);
  }
}

TEST_CASE("homology coalgebra of an already-split coalgebra is itself") {
  FieldSpec f = FieldSpec::gf(3);
  auto f4 = fixture_proj_plane_coalgebra(f);
  HomologyCoalgebra hc = homology_coalgebra(*f4);
  CHECK(hc.h.c.dims() == f4->c.dims());
  CHECK(validate_coalgebra(hc.h).ok);
  // The splitting it returns is the identity-sized one.
  for (int n = 0; n <= f4->maxdeg(); ++n)
    CHECK(hc.split.to_x[n].is_identity());
}

TEST_CASE("comult_at is zero-shaped outside the stored range") {
  FieldSpec f = FieldSpec::gf(2);
  auto f2 = fixture_sphere2_coalgebra(f);
  Matrix m = f2->comult_at(7);
  CHECK(m.cols() == 0);
}
