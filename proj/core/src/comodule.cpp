#include "cotensor/comodule.hpp"

#include <algorithm>

namespace cotensor {

bool comodules_compatible(const DGComodule& a, const DGComodule& b) {
  if (a.c == b.c) return true;
  if (!a.c || !b.c) return false;
  return a.c->c == b.c->c && a.c->comult == b.c->comult &&
         a.c->counit == b.c->counit;
}

namespace {

bool same_coalgebra(const DGComodule& a, const DGComodule& b) {
  return comodules_compatible(a, b);
}

// (g (x) id_C) on carriers, capped at `cap`.
ChainMap tensor_with_identity(const ChainMap& g, const DGCoalgebra& c,
                              int cap) {
  return tensor_map(g, identity_chain_map(c.c), cap);
}

}  // namespace

Matrix DGComodule::coaction_at(int n) const {
  if (n >= 0 && n < static_cast<int>(coaction.size())) return coaction[n];
  MultiTensor xc({x, c->c}, x.maxdeg());
  return Matrix::zeros(x.field(), xc.complex().dim(n), x.dim(n));
}

std::vector<Matrix> DGComodule::left_coaction() const {
  if (left_override) return *left_override;
  ChainMap tw = twist(x, c->c, x.maxdeg());
  std::vector<Matrix> out(x.maxdeg() + 1);
  for (int n = 0; n <= x.maxdeg(); ++n) out[n] = tw.at(n) * coaction_at(n);
  return out;
}

Report validate_comodule(const DGComodule& m) {
  Report rep;
  if (!m.c) {
    rep.fail("no coalgebra attached");
    return rep;
  }
  rep.merge(validate_complex(m.x), "carrier: ");
  int top = m.maxdeg();
  const ChainComplex& cc = m.c->c;
  MultiTensor xc({m.x, cc}, top);
  MultiTensor xonly({m.x}, top);
  MultiTensor xcc({m.x, cc, cc}, top);

  if (static_cast<int>(m.coaction.size()) != top + 1) {
    rep.fail("coaction must have one component per degree");
    return rep;
  }
  for (int n = 0; n <= top; ++n) {
    if (m.coaction[n].rows() != xc.complex().dim(n) ||
        m.coaction[n].cols() != m.x.dim(n)) {
      rep.fail("coaction shape mismatch at degree " + std::to_string(n));
      return rep;
    }
  }

  ChainMap rho{m.x, xc.complex(), m.coaction};
  rep.merge(validate_chain_map(rho), "coaction: ");

  std::vector<Matrix> eps = {m.c->counit};
  ChainMap counit_side = contract_factor(xc, 1, eps, xonly);
  for (int n = 0; n <= top; ++n) {
    if (!(counit_side.at(n) * m.coaction[n]).is_identity())
      rep.fail("counit identity fails at degree " + std::to_string(n));
    if (m.coaction[n].rank() != m.x.dim(n))
      rep.fail("coaction not injective at degree " + std::to_string(n));
  }

  ChainMap lhs = expand_factor(xc, 0, m.coaction, m.x, cc, xcc);
  ChainMap rhs = expand_factor(xc, 1, m.c->comult, cc, cc, xcc);
  for (int n = 0; n <= top; ++n)
    if (!(lhs.at(n) * m.coaction[n] == rhs.at(n) * m.coaction[n]))
      rep.fail("coaction not coassociative at degree " + std::to_string(n));

  if (m.left_override) {
    const std::vector<Matrix>& lam = *m.left_override;
    MultiTensor cx({cc, m.x}, top);
    MultiTensor ccx({cc, cc, m.x}, top);
    MultiTensor cxc({cc, m.x, cc}, top);
    if (static_cast<int>(lam.size()) != top + 1) {
      rep.fail("left coaction must have one component per degree");
      return rep;
    }
    ChainMap lmap{m.x, cx.complex(), lam};
    rep.merge(validate_chain_map(lmap), "left coaction: ");
    ChainMap lcounit = contract_factor(cx, 0, eps, xonly);
    for (int n = 0; n <= top; ++n)
      if (!(lcounit.at(n) * lam[n]).is_identity())
        rep.fail("left counit identity fails at degree " + std::to_string(n));
    ChainMap l1 = expand_factor(cx, 0, m.c->comult, cc, cc, ccx);
    ChainMap l2 = expand_factor(cx, 1, lam, cc, m.x, ccx);
    for (int n = 0; n <= top; ++n)
      if (!(l1.at(n) * lam[n] == l2.at(n) * lam[n]))
        rep.fail("left coaction not coassociative at degree " +
                 std::to_string(n));
    // Bicomodule compatibility of the two coactions.
    ChainMap b1 = expand_factor(xc, 0, lam, cc, m.x, cxc);
    ChainMap b2 = expand_factor(cx, 1, m.coaction, m.x, cc, cxc);
    for (int n = 0; n <= top; ++n)
      if (!(b1.at(n) * m.coaction[n] == b2.at(n) * lam[n]))
        rep.fail("left and right coactions incompatible at degree " +
                 std::to_string(n));
  }
  return rep;
}

Matrix ComoduleMap::at(int n) const {
  if (n >= 0 && n < static_cast<int>(f.size())) return f[n];
  return Matrix::zeros(source.field(), target.x.dim(n), source.x.dim(n));
}

Report validate_comodule_map(const ComoduleMap& m) {
  Report rep;
  if (!same_coalgebra(m.source, m.target)) {
    rep.fail("source and target live over different coalgebras");
    return rep;
  }
  rep.merge(validate_chain_map(m.carrier()), "carrier map: ");
  int top = std::max(m.source.maxdeg(), m.target.maxdeg());
  ChainMap fc = tensor_with_identity(m.carrier(), m.source.coalg(), top);
  MultiTensor yc_big({m.target.x, m.source.coalg().c}, top);
  for (int n = 0; n <= m.source.maxdeg(); ++n) {
    Matrix lhsn = fc.at(n) * m.source.coaction_at(n);
    Matrix rhsn = n <= m.target.maxdeg()
                      ? m.target.coaction_at(n) * m.at(n)
                      : Matrix::zeros(m.source.field(),
                                      yc_big.complex().dim(n),
                                      m.source.x.dim(n));
    if (!(lhsn == rhsn))
      rep.fail("does not commute with the coaction at degree " +
               std::to_string(n));
  }
  return rep;
}

ComoduleMap identity_comodule_map(const DGComodule& x) {
  ComoduleMap m{x, x, {}};
  for (int n = 0; n <= x.maxdeg(); ++n)
    m.f.push_back(Matrix::identity(x.field(), x.x.dim(n)));
  return m;
}

ComoduleMap zero_comodule_map(const DGComodule& x, const DGComodule& y) {
  ComoduleMap m{x, y, {}};
  int top = std::max(x.maxdeg(), y.maxdeg());
  for (int n = 0; n <= top; ++n)
    m.f.push_back(Matrix::zeros(x.field(), y.x.dim(n), x.x.dim(n)));
  return m;
}

ComoduleMap compose(const ComoduleMap& g, const ComoduleMap& f) {
  ComoduleMap m{f.source, g.target, {}};
  int top = std::max(f.source.maxdeg(), g.target.maxdeg());
  for (int n = 0; n <= top; ++n) m.f.push_back(g.at(n) * f.at(n));
  return m;
}

DGComodule cofree_comodule(const ChainComplex& m, CoalgebraPtr c) {
  DGComodule out;
  out.c = c;
  out.x = tensor(m, c->c);
  int top = out.x.maxdeg();
  MultiTensor mc({m, c->c}, top);
  MultiTensor mcc({m, c->c, c->c}, top);
  ChainMap ex = expand_factor(mc, 1, c->comult, c->c, c->c, mcc);
  std::vector<Matrix> rl = regroup_left(m, c->c, c->c, top);
  out.coaction.resize(top + 1);
  for (int n = 0; n <= top; ++n) out.coaction[n] = rl[n] * ex.at(n);
  return out;
}

DGComodule trivial_comodule(const ChainComplex& m, CoalgebraPtr c) {
  DGComodule out;
  out.c = c;
  out.x = m;
  FieldSpec f = m.field();
  ChainComplex unitcx = ChainComplex::unit(f);
  ChainMap eta{unitcx, c->c, {c->unit}};
  ChainMap rho = tensor_map(identity_chain_map(m), eta, m.maxdeg());
  // (M (x) k)_n = M_n with identical indexing, so rho reads directly as the
  // coaction.
  out.coaction.resize(m.maxdeg() + 1);
  for (int n = 0; n <= m.maxdeg(); ++n) {
    if (rho.at(n).cols() != m.dim(n))
      throw internal_error("trivial comodule: unit reindexing mismatch");
    out.coaction[n] = rho.at(n);
  }
  return out;
}

DGComodule zero_comodule(CoalgebraPtr c) {
  return trivial_comodule(ChainComplex::zero(c->c.field()), c);
}

ComoduleMap cofree_comodule_map(const ChainMap& g, CoalgebraPtr c) {
  DGComodule src = cofree_comodule(g.source, c);
  DGComodule dst = cofree_comodule(g.target, c);
  ChainMap cm = tensor_map(g, identity_chain_map(c->c));
  ComoduleMap out{src, dst, {}};
  for (int n = 0; n <= src.maxdeg(); ++n) out.f.push_back(cm.at(n));
  return out;
}

ComoduleSum direct_sum(const DGComodule& a, const DGComodule& b) {
  if (!same_coalgebra(a, b))
    throw precondition_error("direct_sum: different coalgebras");
  SumDecomp s = direct_sum(a.x, b.x);
  int top = s.sum.maxdeg();
  ComoduleSum out;
  DGComodule sum;
  sum.c = a.c;
  sum.x = s.sum;
  ChainMap ia_c = tensor_with_identity(s.inj_a, a.coalg(), top);
  ChainMap ib_c = tensor_with_identity(s.inj_b, a.coalg(), top);
  sum.coaction.resize(top + 1);
  for (int n = 0; n <= top; ++n) {
    int trows = ia_c.target.dim(n);
    Matrix ca = n <= a.maxdeg() ? ia_c.at(n) * a.coaction_at(n)
                                : Matrix::zeros(a.field(), trows, 0);
    Matrix cb = n <= b.maxdeg() ? ib_c.at(n) * b.coaction_at(n)
                                : Matrix::zeros(a.field(), trows, 0);
    sum.coaction[n] = ca.hstack(cb);
  }
  if (a.left_override || b.left_override) {
    std::vector<Matrix> la = a.left_coaction(), lb = b.left_coaction();
    ChainMap ia_l = tensor_map(identity_chain_map(a.coalg().c), s.inj_a, top);
    ChainMap ib_l = tensor_map(identity_chain_map(a.coalg().c), s.inj_b, top);
    std::vector<Matrix> lam(top + 1);
    for (int n = 0; n <= top; ++n) {
      Matrix la_n = n <= a.maxdeg()
                        ? ia_l.at(n) * la[n]
                        : Matrix::zeros(a.field(), ia_l.target.dim(n), 0);
      Matrix lb_n = n <= b.maxdeg()
                        ? ib_l.at(n) * lb[n]
                        : Matrix::zeros(a.field(), ib_l.target.dim(n), 0);
      lam[n] = la_n.hstack(lb_n);
    }
    sum.left_override = std::move(lam);
  }
  out.sum = sum;
  out.inj_a = ComoduleMap{a, sum, s.inj_a.f};
  out.inj_b = ComoduleMap{b, sum, s.inj_b.f};
  out.proj_a = ComoduleMap{sum, a, s.proj_a.f};
  out.proj_b = ComoduleMap{sum, b, s.proj_b.f};
  return out;
}

namespace {

// Shared: comodule structure on a degreewise subspace K[n] of a comodule S
// closed under both the differential and the coaction.
DGComodule sub_comodule(const DGComodule& s, const std::vector<Matrix>& k) {
  FieldSpec f = s.field();
  int top = s.maxdeg();
  GradedDims dims(top + 1, 0);
  for (int n = 0; n <= top; ++n) dims[n] = k[n].cols();
  std::vector<Matrix> d(top + 1);
  for (int n = 1; n <= top; ++n) {
    Matrix img = s.x.diff(n) * k[n];
    d[n] = Matrix::factor_through(k[n - 1], img);
  }
  DGComodule out;
  out.c = s.c;
  out.x = ChainComplex(f, dims, d);
  if (s.x.truncated()) out.x.mark_truncated();
  ChainMap kmap{out.x, s.x, k};
  ChainMap kc = tensor_with_identity(kmap, s.coalg(), top);
  out.coaction.resize(top + 1);
  for (int n = 0; n <= top; ++n) {
    Matrix img = s.coaction_at(n) * k[n];
    out.coaction[n] = Matrix::factor_through(kc.at(n), img);
  }
  if (s.left_override) {
    std::vector<Matrix> ls = s.left_coaction();
    ChainMap kl = tensor_map(identity_chain_map(s.coalg().c), kmap, top);
    std::vector<Matrix> lam(top + 1);
    for (int n = 0; n <= top; ++n)
      lam[n] = Matrix::factor_through(kl.at(n), ls[n] * k[n]);
    out.left_override = std::move(lam);
  }
  return out;
}

}  // namespace

ComodulePullback pullback(const ComoduleMap& f, const ComoduleMap& g) {
  if (!same_coalgebra(f.target, g.target))
    throw precondition_error("pullback: mismatched cospan");
  ComoduleSum s = direct_sum(f.source, g.source);
  int top = s.sum.maxdeg();
  std::vector<Matrix> k(top + 1);
  for (int n = 0; n <= top; ++n) {
    Matrix h = (f.at(n) * s.proj_a.at(n)) - (g.at(n) * s.proj_b.at(n));
    k[n] = h.kernel_basis();
  }
  ComodulePullback out;
  out.p = sub_comodule(s.sum, k);
  out.to_a = ComoduleMap{out.p, f.source, {}};
  out.to_b = ComoduleMap{out.p, g.source, {}};
  for (int n = 0; n <= top; ++n) {
    out.to_a.f.push_back(s.proj_a.at(n) * k[n]);
    out.to_b.f.push_back(s.proj_b.at(n) * k[n]);
  }
  return out;
}

ComoduleMap pullback_mediating(const ComodulePullback& pb,
                               const ComoduleMap& qa, const ComoduleMap& qb) {
  ComoduleMap out{qa.source, pb.p, {}};
  int top = qa.source.maxdeg();
  for (int n = 0; n <= top; ++n) {
    // The pullback carrier embeds in A (+) B; solve through that embedding.
    Matrix cone = pb.to_a.at(n).vstack(pb.to_b.at(n));
    Matrix want = qa.at(n).vstack(qb.at(n));
    out.f.push_back(Matrix::factor_through(cone, want));
  }
  return out;
}

ComoduleKernel kernel(const ComoduleMap& f) {
  int top = f.source.maxdeg();
  std::vector<Matrix> k(top + 1);
  for (int n = 0; n <= top; ++n) k[n] = f.at(n).kernel_basis();
  ComoduleKernel out;
  out.k = sub_comodule(f.source, k);
  out.incl = ComoduleMap{out.k, f.source, k};
  return out;
}

ComoduleCokernel cokernel(const ComoduleMap& f) {
  const DGComodule& y = f.target;
  FieldSpec fld = y.field();
  int top = y.maxdeg();
  std::vector<QuotientData> q(top + 1);
  GradedDims dims(top + 1, 0);
  for (int n = 0; n <= top; ++n) {
    q[n] = quotient_by_span(f.at(n).canonical_span());
    dims[n] = q[n].proj.rows();
  }
  std::vector<Matrix> d(top + 1);
  for (int n = 1; n <= top; ++n) {
    d[n] = q[n - 1].proj * y.x.diff(n) * q[n].section;
    if (!(d[n] * q[n].proj == q[n - 1].proj * y.x.diff(n)))
      throw internal_error("cokernel: image is not a subcomplex");
  }
  ComoduleCokernel out;
  DGComodule qm;
  qm.c = y.c;
  qm.x = ChainComplex(fld, dims, d);
  if (y.x.truncated()) qm.x.mark_truncated();
  ChainMap projmap{y.x, qm.x, {}};
  for (int n = 0; n <= top; ++n) projmap.f.push_back(q[n].proj);
  ChainMap pc = tensor_with_identity(projmap, y.coalg(), top);
  qm.coaction.resize(top + 1);
  for (int n = 0; n <= top; ++n) {
    qm.coaction[n] = pc.at(n) * y.coaction_at(n) * q[n].section;
    if (!(qm.coaction[n] * q[n].proj == pc.at(n) * y.coaction_at(n)))
      throw internal_error("cokernel: image is not a subcomodule");
  }
  if (y.left_override) {
    std::vector<Matrix> ly = y.left_coaction();
    ChainMap pl = tensor_map(identity_chain_map(y.coalg().c), projmap, top);
    std::vector<Matrix> lam(top + 1);
    for (int n = 0; n <= top; ++n) lam[n] = pl.at(n) * ly[n] * q[n].section;
    qm.left_override = std::move(lam);
  }
  out.q = qm;
  out.proj = ComoduleMap{y, qm, projmap.f};
  return out;
}

TruncatedComodule truncate_comodule(const DGComodule& m, int n) {
  TruncatedComodule out;
  if (n < 0) {
    out.m = zero_comodule(m.c);
    out.incl = zero_comodule_map(out.m, m);
    return out;
  }
  int top = std::min(n, m.maxdeg());
  ChainComplex tc = truncate_below(m.x, top);
  DGComodule t;
  t.c = m.c;
  t.x = tc;
  t.coaction.resize(tc.maxdeg() + 1);
  MultiTensor txc({tc, m.coalg().c}, tc.maxdeg());
  MultiTensor xc({m.x, m.coalg().c}, m.maxdeg());
  for (int i = 0; i <= tc.maxdeg(); ++i) {
    // (X_{<=n} (x) C)_i and (X (x) C)_i agree verbatim for i <= n; verify
    // instead of assuming.
    if (txc.complex().dim(i) != xc.complex().dim(i) || tc.dim(i) != m.x.dim(i)) {
      out.restricts.fail("coaction does not restrict at degree " +
                         std::to_string(i));
      t.coaction[i] = Matrix::zeros(m.field(), txc.complex().dim(i),
                                    tc.dim(i));
      continue;
    }
    t.coaction[i] = m.coaction_at(i);
  }
  if (m.left_override) {
    std::vector<Matrix> lm = m.left_coaction();
    MultiTensor tcx({m.coalg().c, tc}, tc.maxdeg());
    MultiTensor cx({m.coalg().c, m.x}, m.maxdeg());
    std::vector<Matrix> lam(tc.maxdeg() + 1);
    for (int i = 0; i <= tc.maxdeg(); ++i) {
      if (tcx.complex().dim(i) != cx.complex().dim(i)) {
        out.restricts.fail("left coaction does not restrict at degree " +
                           std::to_string(i));
        lam[i] = Matrix::zeros(m.field(), tcx.complex().dim(i), tc.dim(i));
        continue;
      }
      lam[i] = lm[i];
    }
    t.left_override = std::move(lam);
  }
  out.m = t;
  out.incl = ComoduleMap{t, m, {}};
  for (int i = 0; i <= m.maxdeg(); ++i) {
    Matrix inc = Matrix::zeros(m.field(), m.x.dim(i), tc.dim(i));
    inc.set_block(0, 0, Matrix::identity(m.field(), tc.dim(i)));
    out.incl.f.push_back(inc);
  }
  return out;
}

// ---- Hom complexes ----

int HomComplex::dim(int n) const {
  int k = n - lo;
  if (k < 0 || k >= static_cast<int>(dims.size())) return 0;
  return dims[k];
}

Matrix HomComplex::diff(int n) const {
  int k = n - lo;
  if (k >= 1 && k < static_cast<int>(d.size())) return d[k];
  return Matrix::zeros(f, dim(n - 1), dim(n));
}

namespace {

std::vector<int> hom_offsets(const ChainComplex& x, const ChainComplex& y,
                             int n, int* total) {
  std::vector<int> offs(x.maxdeg() + 1, 0);
  int acc = 0;
  for (int i = 0; i <= x.maxdeg(); ++i) {
    offs[i] = acc;
    acc += x.dim(i) * y.dim(i + n);
  }
  *total = acc;
  return offs;
}

}  // namespace

HomComplex hom_complex(const ChainComplex& x, const ChainComplex& y) {
  FieldSpec f = x.field();
  HomComplex out;
  out.f = f;
  out.lo = -x.maxdeg();
  int hi = y.maxdeg();
  int width = hi - out.lo + 1;
  out.dims.resize(width, 0);
  out.d.resize(width);
  for (int k = 0; k < width; ++k) {
    int n = out.lo + k;
    int total = 0;
    hom_offsets(x, y, n, &total);
    out.dims[k] = total;
  }
  for (int k = 1; k < width; ++k) {
    int n = out.lo + k;
    int src_total = 0, dst_total = 0;
    std::vector<int> soffs = hom_offsets(x, y, n, &src_total);
    std::vector<int> doffs = hom_offsets(x, y, n - 1, &dst_total);
    Matrix d = Matrix::zeros(f, dst_total, src_total);
    int fsign = (((n % 2) + 2) % 2 == 0) ? -1 : 1;  // -(-1)^n
    for (int i = 0; i <= x.maxdeg(); ++i) {
      int xi = x.dim(i), yin = y.dim(i + n);
      if (xi == 0 || yin == 0) continue;
      // Post-composition with d_Y: component i -> component i.
      Matrix dy = y.diff(i + n);
      for (int r = 0; r < xi; ++r)
        for (int c = 0; c < yin; ++c) {
          int col = soffs[i] + c * xi + r;
          for (int rr = 0; rr < dy.rows(); ++rr) {
            if (dy.entry_is_zero(rr, c)) continue;
            d.set_from(dy, rr, c, doffs[i] + rr * xi + r, col);
          }
        }
      // Pre-composition with d_X: component i -> component i+1.
      if (i + 1 <= x.maxdeg() && x.dim(i + 1) > 0) {
        Matrix dx = x.diff(i + 1).scaled_by_sign(fsign);
        for (int r = 0; r < xi; ++r)
          for (int c = 0; c < yin; ++c) {
            int col = soffs[i] + c * xi + r;
            for (int cc = 0; cc < dx.cols(); ++cc) {
              if (dx.entry_is_zero(r, cc)) continue;
              d.set_from(dx, r, cc, doffs[i + 1] + c * x.dim(i + 1) + cc,
                         col);
            }
          }
      }
    }
    out.d[k] = d;
  }
  return out;
}

HomSubcomplex hom_comodule(const DGComodule& x, const DGComodule& y) {
  if (!same_coalgebra(x, y))
    throw precondition_error("hom_comodule: different coalgebras");
  FieldSpec f = x.field();
  const ChainComplex& cc = x.coalg().c;
  HomSubcomplex out;
  out.full = hom_complex(x.x, y.x);
  ChainComplex t = tensor(y.x, cc);  // full, untruncated
  MultiTensor tmt({y.x, cc});
  MultiTensor xcmt({x.x, cc}, x.maxdeg());

  int width = static_cast<int>(out.full.dims.size());
  out.sub.f = out.full.f;
  out.sub.lo = out.full.lo;
  out.sub.dims.resize(width, 0);
  out.sub.d.resize(width);
  out.incl.resize(width);

  for (int k = 0; k < width; ++k) {
    int n = out.full.lo + k;
    int src_total = 0, g_total = 0;
    std::vector<int> soffs = hom_offsets(x.x, y.x, n, &src_total);
    std::vector<int> goffs = hom_offsets(x.x, t, n, &g_total);
    // alpha and beta overlap (e.g. in the C-degree-0 blocks), so they are
    // assembled separately and subtracted.
    Matrix alpha = Matrix::zeros(f, g_total, src_total);
    Matrix beta = Matrix::zeros(f, g_total, src_total);
    for (int i = 0; i <= x.maxdeg(); ++i) {
      int xi = x.x.dim(i), yin = y.x.dim(i + n);
      if (xi == 0 || yin == 0) continue;
      // alpha: f |-> rho_Y after f, block-diagonal per component.
      Matrix ry = y.coaction_at(i + n);  // layout matches t at degree i+n
      for (int r = 0; r < xi; ++r)
        for (int c = 0; c < yin; ++c) {
          int col = soffs[i] + c * xi + r;
          for (int rr = 0; rr < ry.rows(); ++rr) {
            if (ry.entry_is_zero(rr, c)) continue;
            alpha.set_from(ry, rr, c, goffs[i] + rr * xi + r, col);
          }
        }
    }
    // beta: f |-> (f (x) id) rho_X.
    for (int i = 0; i <= x.maxdeg(); ++i) {
      int xi = x.x.dim(i), yin = y.x.dim(i + n);
      if (xi == 0 || yin == 0) continue;
      for (int j = i; j <= x.maxdeg(); ++j) {
        int cdeg = j - i;
        if (cdeg > cc.maxdeg() || cc.dim(cdeg) == 0 || x.x.dim(j) == 0)
          continue;
        int bx = xcmt.find_tuple(j, {i, cdeg});
        int bt = tmt.find_tuple(j + n, {i + n, cdeg});
        if (bx < 0 || bt < 0) continue;
        int oxc = xcmt.tuple_offset(j, bx);
        int ot = tmt.tuple_offset(j + n, bt);
        Matrix rx = x.coaction_at(j);
        int dc = cc.dim(cdeg);
        for (int r = 0; r < yin; ++r)
          for (int c = 0; c < xi; ++c) {
            int col = soffs[i] + r * xi + c;
            for (int b = 0; b < x.x.dim(j); ++b)
              for (int g = 0; g < dc; ++g) {
                if (rx.entry_is_zero(oxc + c * dc + g, b)) continue;
                beta.set_from(rx, oxc + c * dc + g, b,
                              goffs[j] + (ot + r * dc + g) * x.x.dim(j) + b,
                              col);
              }
          }
      }
    }
    out.incl[k] = (alpha - beta).kernel_basis();
    out.sub.dims[k] = out.incl[k].cols();
  }
  for (int k = 1; k < width; ++k)
    out.sub.d[k] =
        Matrix::factor_through(out.incl[k - 1], out.full.d[k] * out.incl[k]);
  return out;
}

std::vector<Matrix> hom_post_compose(const HomSubcomplex& hxy,
                                     const HomSubcomplex& hxz,
                                     const DGComodule& x,
                                     const ComoduleMap& p) {
  FieldSpec f = x.field();
  int width = static_cast<int>(hxz.sub.dims.size());
  std::vector<Matrix> out(width);
  for (int k = 0; k < width; ++k) {
    int n = hxz.sub.lo + k;
    int src_total = 0, dst_total = 0;
    std::vector<int> soffs = hom_offsets(x.x, p.source.x, n, &src_total);
    std::vector<int> doffs = hom_offsets(x.x, p.target.x, n, &dst_total);
    Matrix pf = Matrix::zeros(f, dst_total, src_total);
    for (int i = 0; i <= x.maxdeg(); ++i) {
      int xi = x.x.dim(i), yin = p.source.x.dim(i + n);
      if (xi == 0 || yin == 0) continue;
      Matrix pm = p.at(i + n);
      for (int r = 0; r < xi; ++r)
        for (int c = 0; c < yin; ++c) {
          int col = soffs[i] + c * xi + r;
          for (int rr = 0; rr < pm.rows(); ++rr) {
            if (pm.entry_is_zero(rr, c)) continue;
            pf.set_from(pm, rr, c, doffs[i] + rr * xi + r, col);
          }
        }
    }
    int ky = n - hxy.sub.lo;
    Matrix inc_y =
        (ky >= 0 && ky < static_cast<int>(hxy.incl.size()))
            ? hxy.incl[ky]
            : Matrix::zeros(f, src_total, 0);
    out[k] = Matrix::factor_through(hxz.incl[k], pf * inc_y);
  }
  return out;
}

}  // namespace cotensor
