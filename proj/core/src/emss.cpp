#include "cotensor/emss.hpp"

#include <algorithm>
#include <utility>

#include "cotensor/chain.hpp"

namespace cotensor {

namespace {

int clamp_offset(const FilteredTotal& t, int n, int q) {
  if (n < 0 || n > t.nmax) return 0;
  return t.offset(n, q);
}

// Injection of the filtration subspace F^s Tot_n (blocks q >= s) as
// identity-pattern columns.
Matrix filt_incl(const FilteredTotal& t, int n, int s) {
  FieldSpec f = t.f;
  if (n < 0 || n > t.nmax) return Matrix::zeros(f, 0, 0);
  int dn = t.dim(n);
  int s0 = std::max(s, 0);
  int off = clamp_offset(t, n, s0);
  int w = dn - off;
  Matrix inc = Matrix::zeros(f, dn, w);
  for (int i = 0; i < w; ++i) inc.set_int(off + i, i, 1);
  return inc;
}

// Basis (independent columns, Tot_n coordinates) of the approximate cycles
// Z_rr(n, s) = F^s  intersected with  D^{-1}(F^{s + rr} Tot_{n-1}).
// Valid for rr >= -1; negative filtration indices mean the whole space.
Matrix zbasis(const FilteredTotal& t, int n, int s, int rr) {
  Matrix inc = filt_incl(t, n, s);
  if (inc.cols() == 0) return inc;
  int t2 = s + rr;
  int nb1 = t.blocks(n - 1);
  int cut = t2 <= 0 ? 0
                    : (t2 >= nb1 ? t.dim(n - 1) : clamp_offset(t, n - 1, t2));
  if (cut == 0) return inc;
  Matrix m = (t.diff(n) * inc).block(0, 0, cut, inc.cols());
  return inc * m.kernel_basis();
}

// Columns of z that are independent modulo span(base), kept in order.
Matrix complete_mod(const Matrix& base, const Matrix& z) {
  Matrix pick = base;
  int have = pick.rank();
  Matrix reps = Matrix::zeros(z.field(), z.rows(), 0);
  for (int j = 0; j < z.cols(); ++j) {
    Matrix col = z.select_cols({j});
    Matrix cand = pick.hstack(col);
    if (cand.rank() > have) {
      pick = std::move(cand);
      ++have;
      reps = reps.hstack(col);
    }
  }
  return reps;
}

}  // namespace

int FilteredTotal::blocks(int n) const {
  if (n < 0 || n > nmax) return 0;
  return static_cast<int>(block[n].size());
}

int FilteredTotal::offset(int n, int q) const {
  if (n < 0 || n > nmax) return 0;
  int nb = blocks(n);
  int lim = std::min(q, nb);
  int off = 0;
  for (int i = 0; i < lim; ++i) off += block[n][i];
  return off;
}

int FilteredTotal::dim(int n) const { return offset(n, blocks(n)); }

Matrix FilteredTotal::diff(int n) const {
  if (n >= 0 && n <= nmax) return d[n];
  return Matrix::zeros(f, dim(n - 1), dim(n));
}

FilteredTotal total_complex(const CobarBicomplex& b) {
  FilteredTotal t;
  t.f = b.rows.at(0).field();
  t.qmax = b.qmax;
  t.cap = b.cap;
  t.nmax = b.cap;
  t.block.resize(t.nmax + 1);
  for (int n = 0; n <= t.nmax; ++n)
    for (int q = 0; q <= b.qmax && n + q <= b.cap; ++q)
      t.block[n].push_back(b.rows[q].dim(n + q));

  t.d.reserve(t.nmax + 1);
  for (int n = 0; n <= t.nmax; ++n) {
    Matrix dn = Matrix::zeros(t.f, t.dim(n - 1), t.dim(n));
    if (n >= 1) {
      for (int q = 0; q < t.blocks(n); ++q) {
        int p = n + q;
        dn.set_block(t.offset(n - 1, q), t.offset(n, q), b.rows[q].diff(p));
        if (q < b.qmax)
          dn.set_block(t.offset(n - 1, q + 1), t.offset(n, q),
                       b.horiz[q][p]);
      }
    }
    t.d.push_back(std::move(dn));
  }
  return t;
}

GradedDims total_homology(const CobarBicomplex& b, int through) {
  FilteredTotal t = total_complex(b);
  GradedDims out(through + 1, 0);
  for (int n = 0; n <= through; ++n) {
    if (n > t.nmax) continue;
    out[n] = t.dim(n) - t.diff(n).rank() - t.diff(n + 1).rank();
  }
  return out;
}

int total_exact_through(const CobarBicomplex& b) {
  return std::min(b.qmax, b.cap / 2) - 1;
}

int SpectralSequencePage::dim(int q, int p) const {
  if (q < 0 || q >= static_cast<int>(dims.size())) return 0;
  if (p < 0 || p >= static_cast<int>(dims[q].size())) return 0;
  return dims[q][p];
}

Matrix SpectralSequencePage::d_at(int q, int p) const {
  if (q >= 0 && q < static_cast<int>(d.size()) && p >= 0 &&
      p < static_cast<int>(d[q].size()) && dim(q, p) > 0)
    return d[q][p];
  FieldSpec f = tot ? tot->f : FieldSpec::gf(2);
  return Matrix::zeros(f, dim(q + r, p + r - 1), dim(q, p));
}

SpectralSequencePage page_from_total(std::shared_ptr<const FilteredTotal> t,
                                     int r) {
  if (!t) throw precondition_error("page_from_total: missing total complex");
  if (r < 0) throw precondition_error("page_from_total: page index < 0");
  const FilteredTotal& tc = *t;
  FieldSpec f = tc.f;

  SpectralSequencePage out;
  out.r = r;
  out.tot = t;
  out.dims.assign(tc.qmax + 1, std::vector<int>(tc.cap + 1, 0));

  // Pass 1: representatives and divided-out bases per cell.
  std::vector<std::vector<Matrix>> reps(tc.qmax + 1);
  std::vector<std::vector<Matrix>> divs(tc.qmax + 1);
  for (int q = 0; q <= tc.qmax; ++q) {
    reps[q].reserve(tc.cap + 1);
    divs[q].reserve(tc.cap + 1);
    for (int p = 0; p <= tc.cap; ++p) {
      int n = p - q;
      if (n < 0 || q >= tc.blocks(n)) {
        reps[q].push_back(Matrix::zeros(f, std::max(tc.dim(n), 0), 0));
        divs[q].push_back(Matrix::zeros(f, std::max(tc.dim(n), 0), 0));
        continue;
      }
      Matrix zr = zbasis(tc, n, q, r);
      Matrix den = zbasis(tc, n, q + 1, r - 1)
                       .hstack(tc.diff(n + 1) *
                               zbasis(tc, n + 1, q - r + 1, r - 1));
      Matrix denb = den.column_space_basis().first;
      Matrix rp = complete_mod(denb, zr);
      out.dims[q][p] = rp.cols();
      reps[q].push_back(std::move(rp));
      divs[q].push_back(std::move(denb));
    }
  }

  // Pass 2: induced differentials on representatives.  The image of a
  // representative lies in the target cell's cycle space, so it has unique
  // coordinates over [target reps | target divided-out basis].
  out.d.assign(tc.qmax + 1, std::vector<Matrix>());
  for (int q = 0; q <= tc.qmax; ++q)
    for (int p = 0; p <= tc.cap; ++p) {
      int n = p - q;
      int q2 = q + r, p2 = p + r - 1;
      int tdim = out.dim(q2, p2);
      int sdim = out.dims[q][p];
      if (sdim == 0 || tdim == 0) {
        out.d[q].push_back(Matrix::zeros(f, tdim, sdim));
        continue;
      }
      Matrix basis = reps[q2][p2].hstack(divs[q2][p2]);
      auto sol = basis.solve(tc.diff(n) * reps[q][p]);
      if (!sol)
        throw internal_error(
            "page_from_total: differential image escaped the target cell");
      out.d[q].push_back(sol->block(0, 0, tdim, sdim));
    }
  return out;
}

SpectralSequencePage cobar_page(const CobarBicomplex& b, int r) {
  return page_from_total(std::make_shared<FilteredTotal>(total_complex(b)),
                         r);
}

SpectralSequencePage next_page(const SpectralSequencePage& p) {
  return page_from_total(p.tot, p.r + 1);
}

SpectralSequencePage e1_page(const DGComodule& x, const DGComodule& y,
                             int qmax, int maxdeg) {
  return cobar_page(cobar_bicomplex(x, y, qmax, maxdeg), 1);
}

SpectralSequencePage e2_page(const DGComodule& x, const DGComodule& y,
                             int qmax, int maxdeg) {
  return cobar_page(cobar_bicomplex(x, y, qmax, maxdeg), 2);
}

SpectralSequencePage run_to_einfty(const SpectralSequencePage& page2) {
  SpectralSequencePage cur = page2;
  while (true) {
    int lo = -1, hi = -1;
    for (int q = 0; q <= cur.qmax(); ++q)
      for (int p = 0; p <= cur.cap(); ++p)
        if (cur.dim(q, p) > 0) {
          if (lo < 0) lo = q;
          hi = q;
          break;
        }
    // Differentials on page s move filtration by s; once the page index
    // exceeds the spread of the surviving columns, every later
    // differential connects a cell to zero.
    if (lo < 0 || cur.r > hi - lo) return cur;
    cur = next_page(cur);
  }
}

Report validate_page(const SpectralSequencePage& p) {
  Report rep;
  if (!p.tot) {
    rep.fail("page carries no total-complex context");
    return rep;
  }
  for (int q = 0; q <= p.qmax(); ++q)
    for (int pp = 0; pp <= p.cap(); ++pp)
      if (p.dim(q, pp) > 0 && p.dim(q + p.r, pp + p.r - 1) > 0)
        rep.require((p.d_at(q + p.r, pp + p.r - 1) * p.d_at(q, pp)).is_zero(),
                    "d o d != 0 from cell (" + std::to_string(q) + ", " +
                        std::to_string(pp) + ")");

  SpectralSequencePage np = next_page(p);
  for (int q = 0; q <= p.qmax(); ++q)
    for (int pp = 0; pp <= p.cap(); ++pp) {
      int expect = p.dim(q, pp) - p.d_at(q, pp).rank() -
                   p.d_at(q - p.r, pp - p.r + 1).rank();
      rep.require(np.dim(q, pp) == expect,
                  "next page dims differ from page homology at cell (" +
                      std::to_string(q) + ", " + std::to_string(pp) + ")");
    }
  return rep;
}

GradedDims page_total_dims(const SpectralSequencePage& p, int through) {
  GradedDims out(through + 1, 0);
  for (int n = 0; n <= through; ++n)
    for (int q = 0; q <= p.qmax(); ++q) out[n] += p.dim(q, n + q);
  return out;
}

HomologyTransport homology_transport(const DGCoalgebra& c) {
  HomologyCoalgebra hc = homology_coalgebra(c);
  HomologyTransport t;
  t.h = std::make_shared<const DGCoalgebra>(std::move(hc.h));
  t.csplit = std::move(hc.split);
  return t;
}

namespace {

// Transports a structure map X_n -> (A (x) B)_n to homology classes:
// coefficients of [map . reps] in the Kunneth basis [ha_i (x) hb_j] of
// H(A (x) B), read through a splitting of the full product.
std::vector<Matrix> transport_to_kunneth(
    const ChainComplex& a, const ChainComplex& b, const Splitting& sa,
    const Splitting& sb, const ChainComplex& ha, const ChainComplex& hb,
    const Splitting& scarrier, const std::vector<Matrix>& maps, int top) {
  FieldSpec f = a.field();
  MultiTensor full({a, b}, a.maxdeg() + b.maxdeg());
  ChainComplex ambient = full.complex();
  Splitting samb = split_complex(ambient);
  MultiTensor hh({ha, hb}, top);

  std::vector<Matrix> out(top + 1);
  for (int n = 0; n <= top; ++n) {
    Matrix kbasis = Matrix::zeros(f, ambient.dim(n), hh.complex().dim(n));
    int colbase = 0;
    for (int ti = 0; ti < static_cast<int>(hh.tuples(n).size()); ++ti) {
      int i = hh.tuples(n)[ti][0], j = hh.tuples(n)[ti][1];
      int tj = full.find_tuple(n, {i, j});
      if (tj < 0) throw internal_error("homology transport: missing block");
      Matrix blockm =
          Matrix::kronecker(sa.homology_reps(i), sb.homology_reps(j));
      kbasis.set_block(full.tuple_offset(n, tj), colbase, blockm);
      colbase += blockm.cols();
    }
    Matrix target = maps[n] * scarrier.homology_reps(n);
    Matrix coeff =
        Matrix::factor_through(kbasis.hstack(samb.bounds[n]), target);
    out[n] = coeff.block(0, 0, kbasis.cols(), coeff.cols());
  }
  return out;
}

}  // namespace

DGComodule homology_comodule(const DGComodule& x, const HomologyTransport& t) {
  const DGCoalgebra& c = x.coalg();
  FieldSpec f = x.field();
  int top = x.maxdeg();
  Splitting sx = split_complex(x.x);

  ChainComplex hx(f, sx.v, {});
  if (x.x.truncated()) hx.mark_truncated();
  const ChainComplex& hc = t.h->c;

  std::vector<Matrix> rho(top + 1);
  for (int n = 0; n <= top; ++n) rho[n] = x.coaction_at(n);
  DGComodule out;
  out.c = t.h;
  out.x = hx;
  out.coaction =
      transport_to_kunneth(x.x, c.c, sx, t.csplit, hx, hc, sx, rho, top);
  if (x.left_override) {
    std::vector<Matrix> lam = x.left_coaction();
    out.left_override =
        transport_to_kunneth(c.c, x.x, t.csplit, sx, hc, hx, sx, lam, top);
  }
  return out;
}

}  // namespace cotensor
