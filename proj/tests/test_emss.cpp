#include "doctest.h"

#include "cotensor/emss.hpp"
#include "cotensor/fixtures.hpp"
#include "cotensor/postnikov.hpp"

#include <vector>

using namespace cotensor;

namespace {

// Page dims agree with a reference CoTor table on cells whose total degree
// p - q lies inside the trusted window.
bool page_matches_cotor(const SpectralSequencePage& page, const CotorResult& hc,
                        int window) {
  for (int q = 0; q <= page.qmax(); ++q)
    for (int p = 0; p <= page.cap(); ++p) {
      if (p - q < 0 || p - q > window) continue;
      if (q > hc.qmax || p > hc.through) continue;
      if (page.dim(q, p) != hc.dims[q][p]) return false;
    }
  return true;
}

bool page_matches_rows(const SpectralSequencePage& e1, const CobarBicomplex& hb,
                       int window) {
  for (int q = 0; q <= e1.qmax(); ++q)
    for (int p = 0; p <= e1.cap(); ++p) {
      if (p - q < 0 || p - q > window) continue;
      int want = q <= hb.qmax && p <= hb.cap ? hb.rows[q].dim(p) : 0;
      if (e1.dim(q, p) != want) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("loop-space sequence of the unit over the sphere coalgebra") {
  FieldSpec f2 = FieldSpec::gf(2);
  CoalgebraPtr c = fixture_sphere2_coalgebra(f2);
  const int N = 4, QMAX = N + 1, CAP = 2 * (N + 1);
  DGComodule k = trivial_comodule(ChainComplex::sphere(f2, 0), c);
  CobarBicomplex b = cobar_bicomplex(k, k, QMAX, CAP);
  CHECK(total_exact_through(b) == N);

  GradedDims th = total_homology(b, N);
  for (int n = 0; n <= N; ++n) CHECK(th[n] == 1);

  SpectralSequencePage e1 = cobar_page(b, 1);
  for (int q = 0; q <= QMAX; ++q)
    for (int p = 0; p <= CAP; ++p) {
      if (p - q < 0 || p - q > N) continue;
      CHECK(e1.dim(q, p) == (p == 2 * q ? 1 : 0));
    }
  CHECK(validate_page(e1).ok);

  SpectralSequencePage e2 = next_page(e1);
  SpectralSequencePage einf = run_to_einfty(e2);
  CHECK(page_total_dims(einf, N) == th);

  HomologyTransport ht = homology_transport(*c);
  DGComodule hk = homology_comodule(k, ht);
  CHECK(validate_comodule(hk).ok);
  CotorResult hc = cotor(hk, hk, QMAX, CAP);
  CHECK(page_matches_cotor(e2, hc, N));
}

TEST_CASE("coflat first argument collapses the sequence onto column zero") {
  FieldSpec f2 = FieldSpec::gf(2);
  CoalgebraPtr c = fixture_sphere2_coalgebra(f2);
  const int N = 4, QMAX = N + 1, CAP = 2 * (N + 1);
  DGComodule xc = cofree_comodule(ChainComplex::unit(f2), c);
  DGComodule k = trivial_comodule(ChainComplex::sphere(f2, 0), c);
  CobarBicomplex b = cobar_bicomplex(xc, k, QMAX, CAP);
  SpectralSequencePage e2 = cobar_page(b, 2);
  for (int q = 0; q <= QMAX; ++q)
    for (int p = 0; p <= CAP; ++p) {
      if (p - q < 0 || p - q > N) continue;
      CHECK(e2.dim(q, p) == ((q == 0 && p == 0) ? 1 : 0));
    }
  SpectralSequencePage einf = run_to_einfty(e2);
  CHECK(einf.r == 2);
  GradedDims th = total_homology(b, N);
  CHECK(th == GradedDims({1, 0, 0, 0, 0}));
}

TEST_CASE("an acyclic first argument kills the whole sequence") {
  FieldSpec f2 = FieldSpec::gf(2);
  CoalgebraPtr c = fixture_sphere2_coalgebra(f2);
  const int N = 3, QMAX = N + 1, CAP = 2 * (N + 1);
  DGComodule xd = cofree_comodule(ChainComplex::disk(f2, 2), c);
  DGComodule k = trivial_comodule(ChainComplex::sphere(f2, 0), c);
  CobarBicomplex b = cobar_bicomplex(xd, k, QMAX, CAP);
  SpectralSequencePage e1 = cobar_page(b, 1);
  for (int q = 0; q <= QMAX; ++q)
    for (int p = 0; p <= CAP; ++p) {
      if (p - q < 0 || p - q > N) continue;
      CHECK(e1.dim(q, p) == 0);
    }
  GradedDims th = total_homology(b, N);
  for (int n = 0; n <= N; ++n) CHECK(th[n] == 0);
}

TEST_CASE("a nonzero second-page differential cancels the right cells") {
  FieldSpec f2 = FieldSpec::gf(2);
  CoalgebraPtr c = fixture_sphere2_coalgebra(f2);
  const int N = 4, QMAX = N + 1, CAP = 2 * (N + 1);
  DGComodule k = trivial_comodule(ChainComplex::sphere(f2, 0), c);
  PostnikovTower t = postnikov_tower(k, 2);
  DGComodule x2 = t.stages[2];  // carrier [1,1,1,1], homology k at 0 and 3
  REQUIRE(homology_dim(x2.x, 3) == 1);

  CobarBicomplex b = cobar_bicomplex(x2, k, QMAX, CAP);
  SpectralSequencePage e1 = cobar_page(b, 1);
  SpectralSequencePage e2 = next_page(e1);
  CHECK(validate_page(e1).ok);
  CHECK(validate_page(e2).ok);

  CHECK(e2.dim(0, 3) == 1);
  CHECK(e2.dim(2, 4) == 1);
  CHECK(e2.d_at(0, 3).rank() == 1);
  SpectralSequencePage e3 = next_page(e2);
  CHECK(e3.dim(0, 3) == 0);
  CHECK(e3.dim(2, 4) == 0);

  SpectralSequencePage einf = run_to_einfty(e2);
  GradedDims th = total_homology(b, N);
  CHECK(page_total_dims(einf, N) == th);
  CHECK(th == GradedDims({1, 1, 0, 0, 0}));

  HomologyTransport ht = homology_transport(*c);
  DGComodule hx = homology_comodule(x2, ht);
  DGComodule hk = homology_comodule(k, ht);
  CHECK(validate_comodule(hx).ok);
  CotorResult hc = cotor(hx, hk, QMAX, CAP);
  CHECK(page_matches_cotor(e2, hc, N));
  CobarBicomplex hb = cobar_bicomplex(hx, hk, QMAX, CAP);
  CHECK(page_matches_rows(e1, hb, N));
}

TEST_CASE("the zero comodule yields the empty sequence") {
  FieldSpec f2 = FieldSpec::gf(2);
  CoalgebraPtr c = fixture_sphere2_coalgebra(f2);
  DGComodule z = zero_comodule(c);
  CobarBicomplex b = cobar_bicomplex(z, z, 3, 6);
  GradedDims th = total_homology(b, 2);
  CHECK(th == GradedDims({0, 0, 0}));
  SpectralSequencePage e2 = cobar_page(b, 2);
  SpectralSequencePage einf = run_to_einfty(e2);
  CHECK(einf.r == 2);
}

TEST_CASE("projective-plane coalgebra sequence is self-consistent") {
  FieldSpec f2 = FieldSpec::gf(2);
  CoalgebraPtr c4 = fixture_proj_plane_coalgebra(f2);
  const int N = 3, QMAX = N + 1, CAP = 2 * (N + 1);
  DGComodule k = trivial_comodule(ChainComplex::sphere(f2, 0), c4);
  CobarBicomplex b = cobar_bicomplex(k, k, QMAX, CAP);
  SpectralSequencePage e2 = cobar_page(b, 2);
  CHECK(validate_page(e2).ok);
  SpectralSequencePage einf = run_to_einfty(e2);
  GradedDims th = total_homology(b, N);
  CHECK(page_total_dims(einf, N) == th);
  HomologyTransport ht = homology_transport(*c4);
  DGComodule hk = homology_comodule(k, ht);
  CotorResult hc = cotor(hk, hk, QMAX, CAP);
  CHECK(page_matches_cotor(e2, hc, N));
}

TEST_CASE("page helpers built from comodules match the bicomplex pages") {
  FieldSpec f2 = FieldSpec::gf(2);
  CoalgebraPtr c = fixture_sphere2_coalgebra(f2);
  const int N = 3, QMAX = N + 1, CAP = 2 * (N + 1);
  DGComodule k = trivial_comodule(ChainComplex::sphere(f2, 0), c);
  CobarBicomplex b = cobar_bicomplex(k, k, QMAX, CAP);
  SpectralSequencePage a1 = cobar_page(b, 1);
  SpectralSequencePage h1 = e1_page(k, k, QMAX, CAP);
  SpectralSequencePage a2 = next_page(a1);
  SpectralSequencePage h2 = e2_page(k, k, QMAX, CAP);
  for (int q = 0; q <= QMAX; ++q)
    for (int p = 0; p <= CAP; ++p) {
      CHECK(a1.dim(q, p) == h1.dim(q, p));
      CHECK(a2.dim(q, p) == h2.dim(q, p));
    }
}

TEST_CASE("filtered total complex bookkeeping is coherent") {
  FieldSpec f2 = FieldSpec::gf(2);
  CoalgebraPtr c = fixture_sphere2_coalgebra(f2);
  DGComodule k = trivial_comodule(ChainComplex::sphere(f2, 0), c);
  CobarBicomplex b = cobar_bicomplex(k, k, 3, 8);
  FilteredTotal t = total_complex(b);
  CHECK(t.nmax == t.cap);
  for (int n = 0; n <= t.nmax; ++n) {
    int sum = 0;
    for (int q = 0; q < t.blocks(n); ++q) {
      CHECK(t.offset(n, q) == sum);
      sum += t.block[n][q];
    }
    CHECK(t.dim(n) == sum);
    if (n >= 1) {
      Matrix dd = t.diff(n - 1) * t.diff(n);
      if (dd.rows() && dd.cols()) CHECK(dd.is_zero());
    }
  }
  CHECK(t.dim(t.nmax + 3) == 0);
}
