#pragma once

// Spectral sequence of the reduced cobar bicomplex, filtered by cobar
// degree: the filtered total complex and its homology (the abutment), exact
// subquotient pages with their differentials, page turning to the limit
// page, and homology-level comparison data (the homology coalgebra's
// comodules) for cross-checking the first two pages.

#include <memory>
#include <string>
#include <vector>

#include "cotensor/cotensor.hpp"

namespace cotensor {

// Total complex of a cobar bicomplex.  Cell (q, p) -- cobar degree q, chain
// degree p -- sits in total degree n = p - q; Tot_n stacks the cells
// (0, n), (1, n+1), ..., in that order.  The differential adds the rows'
// internal (sign-adjusted) differential, which keeps q, and the cobar
// differential, which raises q by one; both lower the total degree.
// Filtration by q is preserved by the differential.
struct FilteredTotal {
  FieldSpec f = FieldSpec::gf(2);
  int qmax = 0;
  int cap = 0;   // chain-degree cap inherited from the bicomplex rows
  int nmax = 0;  // total degrees stored: 0..nmax (nmax = cap)
  // block[n][q] = dim of cell (q, n + q); q runs while q <= qmax and
  // n + q <= cap.
  std::vector<std::vector<int>> block;
  std::vector<Matrix> d;  // d[n] : Tot_n -> Tot_{n-1}

  int blocks(int n) const;           // number of stored cells in Tot_n
  int dim(int n) const;              // 0 outside the stored range
  int offset(int n, int q) const;    // first coordinate of block q in Tot_n
  Matrix diff(int n) const;          // right-shaped zeros outside
};
FilteredTotal total_complex(const CobarBicomplex& b);

// Homology dims of the total complex for total degrees 0..through.  The
// entries are those of the stored truncation; they agree with the full
// bicomplex for through <= total_exact_through(b).
GradedDims total_homology(const CobarBicomplex& b, int through);

// Largest total degree whose homology (and page cells at that total degree)
// is unaffected by the qmax / cap truncation of the bicomplex, assuming a
// simply connected coalgebra so that cell (q, p) vanishes for p < 2q.
int total_exact_through(const CobarBicomplex& b);

// One page of the spectral sequence of the q-filtered total complex.
// Cells are indexed (q, p) like the bicomplex; the page-r differential maps
// cell (q, p) to cell (q + r, p + r - 1), one lower in total degree.
// Dims and differentials are exact subquotient data of the stored
// truncation; `tot` is retained so later pages can be computed.
struct SpectralSequencePage {
  int r = 0;
  std::string filtration = "cobar-degree";
  std::shared_ptr<const FilteredTotal> tot;
  std::vector<std::vector<int>> dims;    // dims[q][p]
  std::vector<std::vector<Matrix>> d;    // d[q][p] : (q,p) -> (q+r, p+r-1)

  int qmax() const { return tot ? tot->qmax : 0; }
  int cap() const { return tot ? tot->cap : 0; }
  int dim(int q, int p) const;           // 0 outside the stored window
  Matrix d_at(int q, int p) const;       // right-shaped zeros outside
};

// Page r >= 0 computed directly from approximate-cycle subquotients:
// Z_r(q, n) = F^q Tot_n  intersected with  D^{-1}(F^{q+r} Tot_{n-1}),
// E_r(q, n) = Z_r(q, n) / (Z_{r-1}(q+1, n) + D Z_{r-1}(q-r+1, n+1)).
SpectralSequencePage cobar_page(const CobarBicomplex& b, int r);
SpectralSequencePage page_from_total(std::shared_ptr<const FilteredTotal> t,
                                     int r);
SpectralSequencePage next_page(const SpectralSequencePage& p);

// Column homology of the bicomplex rows, with the induced differential.
SpectralSequencePage e1_page(const DGComodule& x, const DGComodule& y,
                             int qmax, int maxdeg);
// Homology of (E1, d1); cross-checkable against cotor over the homology
// coalgebra of C with its transported comodules.
SpectralSequencePage e2_page(const DGComodule& x, const DGComodule& y,
                             int qmax, int maxdeg);

// Turns pages from the given one until no later differential can be
// nonzero (no pair of nonvanishing columns is r or more apart); returns the
// page reached, whose index reports where the sequence degenerated.
SpectralSequencePage run_to_einfty(const SpectralSequencePage& page2);

// d_r o d_r = 0 cellwise, and the dims of the next page equal the homology
// of this one at every cell.
Report validate_page(const SpectralSequencePage& p);

// Antidiagonal sums dims[n] = sum_q dim(q, n + q) for n = 0..through; on
// the limit page these are the dims of the abutment.
GradedDims page_total_dims(const SpectralSequencePage& p, int through);

// The homology coalgebra packaged for building comodules over it: the
// zero-differential coalgebra behind a shareable pointer plus the splitting
// of C that fixed the class representatives.
struct HomologyTransport {
  CoalgebraPtr h;
  Splitting csplit;
};
HomologyTransport homology_transport(const DGCoalgebra& c);

// H(X) over the homology coalgebra: zero differential, coaction transported
// through the Kunneth bases of the chosen splittings.  A stored left
// coaction is transported the same way.
DGComodule homology_comodule(const DGComodule& x, const HomologyTransport& t);

}  // namespace cotensor
