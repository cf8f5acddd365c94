#include "cotensor/cotensor.hpp"

#include <algorithm>

namespace cotensor {

CotensorResult cotensor(const DGComodule& x, const DGComodule& y, int cap,
                        bool want_comodule) {
  if (!comodules_compatible(x, y))
    throw precondition_error("cotensor: different coalgebras");
  FieldSpec f = x.field();
  const ChainComplex& cc = x.coalg().c;
  MultiTensor mtxy({x.x, y.x}, cap);
  int top = mtxy.complex().maxdeg();
  MultiTensor mtxcy({x.x, cc, y.x}, top);

  ChainMap b1 = expand_factor(mtxy, 0, x.coaction, x.x, cc, mtxcy);
  std::vector<Matrix> lam = y.left_coaction();
  ChainMap b2 = expand_factor(mtxy, 1, lam, cc, y.x, mtxcy);

  CotensorResult out;
  out.ambient = mtxy.complex();
  out.incl.resize(top + 1);
  GradedDims dims(top + 1, 0);
  for (int n = 0; n <= top; ++n) {
    out.incl[n] = (b1.at(n) - b2.at(n)).kernel_basis();
    dims[n] = out.incl[n].cols();
  }
  if (!out.ambient.truncated()) {
    // Trim trailing zero degrees (an untruncated ambient guarantees there is
    // nothing above them).
    int last = top;
    while (last > 0 && dims[last] == 0) --last;
    dims.resize(last + 1);
    out.incl.resize(last + 1);
    top = last;
  }
  std::vector<Matrix> d(top + 1);
  for (int n = 1; n <= top; ++n)
    d[n] = Matrix::factor_through(out.incl[n - 1],
                                  out.ambient.diff(n) * out.incl[n]);
  out.complex = ChainComplex(f, dims, d);
  if (out.ambient.truncated()) out.complex.mark_truncated();

  if (want_comodule && is_cocommutative(x.coalg())) {
    MultiTensor mtxyc({x.x, y.x, cc}, top);
    ChainMap ey = expand_factor(mtxy, 1, y.coaction, y.x, cc, mtxyc);
    std::vector<Matrix> rl = regroup_left(x.x, y.x, cc, top);
    ChainMap kmap{out.complex, out.ambient, out.incl};
    ChainMap kc = tensor_map(kmap, identity_chain_map(cc), top);
    DGComodule m;
    m.c = x.c;
    m.x = out.complex;
    m.coaction.resize(top + 1);
    for (int n = 0; n <= top; ++n)
      m.coaction[n] = Matrix::factor_through(
          kc.at(n), rl[n] * ey.at(n) * out.incl[n]);
    out.comodule = std::move(m);
  }
  return out;
}

std::vector<Matrix> cotensor_map_right(const DGComodule& x,
                                       const ComoduleMap& fmap,
                                       const CotensorResult& xy,
                                       const CotensorResult& xy2) {
  int top = std::min(xy.complex.maxdeg(), xy2.complex.maxdeg());
  ChainMap t = tensor_map(identity_chain_map(x.x), fmap.carrier(), top);
  std::vector<Matrix> out(top + 1);
  for (int n = 0; n <= top; ++n)
    out[n] = Matrix::factor_through(xy2.incl[n], t.at(n) * xy.incl[n]);
  return out;
}

bool cotensor_assoc_check(const DGComodule& x, const DGComodule& y,
                          const DGComodule& z) {
  if (!is_cocommutative(x.coalg())) return false;
  CotensorResult a = cotensor(x, y);
  CotensorResult b = cotensor(y, z);
  if (!a.comodule || !b.comodule) return false;
  CotensorResult az = cotensor(*a.comodule, z, -1, false);
  CotensorResult xb = cotensor(x, *b.comodule, -1, false);

  int top = std::min(az.complex.maxdeg(), xb.complex.maxdeg());
  // Embed both iterated kernels into the flat three-factor layout.
  std::vector<Matrix> rl = regroup_left(x.x, y.x, z.x, top);
  std::vector<Matrix> rr = regroup_right(x.x, y.x, z.x, top);
  ChainMap ia = tensor_map(ChainMap{a.complex, a.ambient, a.incl},
                           identity_chain_map(z.x), top);
  ChainMap ib = tensor_map(identity_chain_map(x.x),
                           ChainMap{b.complex, b.ambient, b.incl}, top);
  for (int n = 0; n <= top; ++n) {
    Matrix s1 = rl[n].transpose() * ia.at(n) * az.incl[n];
    Matrix s2 = rr[n].transpose() * ib.at(n) * xb.incl[n];
    if (s1.cols() != s2.cols()) return false;
    if (!Matrix::span_contains(s1, s2) || !Matrix::span_contains(s2, s1))
      return false;
  }
  return true;
}

CobarBicomplex cobar_bicomplex(const DGComodule& x, const DGComodule& y,
                               int qmax, int cap) {
  if (!comodules_compatible(x, y))
    throw precondition_error("cobar: different coalgebras");
  const DGCoalgebra& c = x.coalg();
  if (!is_simply_connected(c))
    throw precondition_error("cobar: coalgebra not simply connected");
  FieldSpec f = x.field();
  Coideal ci = unit_coideal(c);

  // Reduced right coaction of X and reduced left coaction of Y.
  ChainMap projmap{c.c, ci.cbar, ci.proj};
  ChainMap rbar_post = tensor_map(identity_chain_map(x.x), projmap,
                                  x.maxdeg());
  std::vector<Matrix> rbar(x.maxdeg() + 1);
  for (int t = 0; t <= x.maxdeg(); ++t)
    rbar[t] = rbar_post.at(t) * x.coaction_at(t);
  std::vector<Matrix> lam = y.left_coaction();
  ChainMap lbar_post = tensor_map(projmap, identity_chain_map(y.x),
                                  y.maxdeg());
  std::vector<Matrix> lbar(y.maxdeg() + 1);
  for (int t = 0; t <= y.maxdeg(); ++t)
    lbar[t] = lbar_post.at(t) * lam[t];

  std::vector<MultiTensor> mts;
  mts.reserve(qmax + 1);
  for (int q = 0; q <= qmax; ++q) {
    std::vector<ChainComplex> factors;
    factors.push_back(x.x);
    for (int j = 0; j < q; ++j) factors.push_back(ci.cbar);
    factors.push_back(y.x);
    mts.emplace_back(std::move(factors), cap);
  }

  CobarBicomplex out;
  out.qmax = qmax;
  out.cap = cap;
  out.rows.reserve(qmax + 1);
  for (int q = 0; q <= qmax; ++q) {
    ChainComplex rc = mts[q].complex();
    if (q % 2 == 1) {
      // Vertical sign convention: scale the internal differential by (-1)^q.
      std::vector<Matrix> nd(rc.maxdeg() + 1);
      for (int n = 1; n <= rc.maxdeg(); ++n) nd[n] = rc.diff(n).negated();
      bool trunc = rc.truncated();
      rc = ChainComplex(f, rc.dims(), nd);
      if (trunc) rc.mark_truncated();
    }
    out.rows.push_back(rc);
  }

  out.horiz.resize(qmax);
  for (int q = 0; q < qmax; ++q) {
    std::vector<ChainMap> faces;
    faces.push_back(expand_factor(mts[q], 0, rbar, x.x, ci.cbar, mts[q + 1]));
    for (int j = 1; j <= q; ++j)
      faces.push_back(expand_factor(mts[q], j, ci.red_comult, ci.cbar,
                                    ci.cbar, mts[q + 1]));
    faces.push_back(
        expand_factor(mts[q], q + 1, lbar, ci.cbar, y.x, mts[q + 1]));
    out.horiz[q].resize(cap + 1);
    for (int n = 0; n <= cap; ++n) {
      Matrix h = faces[0].at(n);
      for (int i = 1; i < static_cast<int>(faces.size()); ++i) {
        Matrix term = faces[i].at(n);
        h = (i % 2 == 0) ? h + term : h - term;
      }
      out.horiz[q][n] = h;
    }
  }
  return out;
}

Report validate_cobar(const CobarBicomplex& b) {
  Report rep;
  for (int q = 0; q + 1 < static_cast<int>(b.horiz.size()); ++q)
    for (int n = 0; n <= b.cap; ++n)
      if (!(b.horiz[q + 1][n] * b.horiz[q][n]).is_zero())
        rep.fail("cobar differential does not square to zero at row " +
                 std::to_string(q) + ", degree " + std::to_string(n));
  for (int q = 0; q < static_cast<int>(b.horiz.size()); ++q)
    for (int n = 1; n <= b.cap; ++n) {
      Matrix anti = b.rows[q + 1].diff(n) * b.horiz[q][n] +
                    b.horiz[q][n - 1] * b.rows[q].diff(n);
      if (!anti.is_zero())
        rep.fail("cobar squares fail to anticommute at row " +
                 std::to_string(q) + ", degree " + std::to_string(n));
    }
  return rep;
}

CotorResult cotor(const DGComodule& x, const DGComodule& y, int qmax,
                  int through) {
  CobarBicomplex b = cobar_bicomplex(x, y, qmax + 1, through);
  CotorResult out;
  out.qmax = qmax;
  out.through = through;
  out.dims.assign(qmax + 1, GradedDims(through + 1, 0));
  for (int q = 0; q <= qmax; ++q)
    for (int n = 0; n <= through; ++n) {
      int kerdim = b.rows[q].dim(n) - b.horiz[q][n].rank();
      int imdim = q >= 1 ? b.horiz[q - 1][n].rank() : 0;
      out.dims[q][n] = kerdim - imdim;
    }
  return out;
}

InjectiveResolution injective_resolution(const DGComodule& y, int length) {
  InjectiveResolution out;
  DGComodule w = y;
  ComoduleMap prev_proj;
  for (int q = 0; q <= length; ++q) {
    DGComodule iq = cofree_comodule(w.x, y.c);
    ComoduleMap emb{w, iq, w.coaction};
    if (q == 0)
      out.aug = emb;
    else
      out.maps.push_back(compose(emb, prev_proj));
    out.stages.push_back(iq);
    if (q < length) {
      ComoduleCokernel ck = cokernel(emb);
      prev_proj = ck.proj;
      w = ck.q;
    }
  }
  return out;
}

CotorResult cotor_via_resolution(const DGComodule& x, const DGComodule& y,
                                 int qmax, int through) {
  InjectiveResolution res = injective_resolution(y, qmax + 1);
  std::vector<CotensorResult> cots;
  cots.reserve(qmax + 2);
  for (int q = 0; q <= qmax + 1; ++q)
    cots.push_back(cotensor(x, res.stages[q], through, false));
  std::vector<std::vector<Matrix>> maps(qmax + 1);
  for (int q = 0; q <= qmax; ++q)
    maps[q] = cotensor_map_right(x, res.maps[q], cots[q], cots[q + 1]);

  CotorResult out;
  out.qmax = qmax;
  out.through = through;
  out.dims.assign(qmax + 1, GradedDims(through + 1, 0));
  for (int q = 0; q <= qmax; ++q)
    for (int n = 0; n <= through; ++n) {
      Matrix mq = n < static_cast<int>(maps[q].size())
                      ? maps[q][n]
                      : Matrix::zeros(x.field(), 0,
                                      cots[q].complex.dim(n));
      int kerdim = cots[q].complex.dim(n) - mq.rank();
      int imdim = 0;
      if (q >= 1 && n < static_cast<int>(maps[q - 1].size()))
        imdim = maps[q - 1][n].rank();
      out.dims[q][n] = kerdim - imdim;
    }
  return out;
}

ExtResult ext(const DGComodule& x, const DGComodule& y, int i, int lo,
              int hi) {
  if (i < 0) throw precondition_error("ext: negative derived degree");
  FieldSpec f = x.field();
  InjectiveResolution res = injective_resolution(y, i + 1);
  std::vector<HomSubcomplex> hs;
  hs.reserve(i + 2);
  for (int q = 0; q <= i + 1; ++q)
    hs.push_back(hom_comodule(x, res.stages[q]));
  std::vector<std::vector<Matrix>> posts(i + 1);
  for (int q = 0; q <= i; ++q)
    posts[q] = hom_post_compose(hs[q], hs[q + 1], x, res.maps[q]);

  auto post_at = [&](int q, int n) -> Matrix {
    int k = n - hs[q + 1].sub.lo;
    if (k >= 0 && k < static_cast<int>(posts[q].size())) return posts[q][k];
    return Matrix::zeros(f, hs[q + 1].sub.dim(n), hs[q].sub.dim(n));
  };

  ExtResult out;
  out.i = i;
  out.lo = lo;
  out.dims.assign(hi - lo + 1, 0);
  for (int n = lo; n <= hi; ++n) {
    // Degree-n cycles of each Hom_C stage, then the induced maps on cycles.
    std::vector<Matrix> z(i + 2);
    for (int q = 0; q <= i + 1; ++q) z[q] = hs[q].sub.diff(n).kernel_basis();
    Matrix pi = Matrix::factor_through(z[i + 1], post_at(i, n) * z[i]);
    int kerdim = z[i].cols() - pi.rank();
    int imdim = 0;
    if (i >= 1) {
      Matrix pprev = Matrix::factor_through(z[i], post_at(i - 1, n) * z[i - 1]);
      imdim = pprev.rank();
    }
    out.dims[n - lo] = kerdim - imdim;
  }
  return out;
}

FibrancyCertificate is_fibrant(const DGComodule& m, int through) {
  if (through < 0) through = m.maxdeg() + m.coalg().maxdeg();
  DGComodule point = trivial_comodule(ChainComplex::unit(m.field()), m.c);
  CotorResult r = cotor(point, m, 1, through);
  FibrancyCertificate cert;
  cert.through = through;
  cert.fibrant = true;
  for (int n = 0; n <= through; ++n)
    if (r.dims[1][n] != 0) {
      cert.fibrant = false;
      cert.witness_degree = n;
      break;
    }
  return cert;
}

FibrationResult is_fibration(const ComoduleMap& f, int through) {
  FibrationResult out;
  int top = std::max(f.source.maxdeg(), f.target.maxdeg());
  for (int n = 0; n <= top; ++n) {
    if (f.at(n).rank() != f.target.x.dim(n)) {
      out.verdict = FibrationVerdict::inconclusive;
      out.detail = "not an epimorphism in degree " + std::to_string(n);
      out.through = through;
      return out;
    }
  }
  ComoduleKernel k = kernel(f);
  FibrancyCertificate cert = is_fibrant(k.k, through);
  out.through = cert.through;
  out.verdict = cert.fibrant ? FibrationVerdict::yes : FibrationVerdict::no;
  out.detail = cert.fibrant
                   ? "epimorphism with fibrant kernel"
                   : "kernel not fibrant: nonzero class in degree " +
                         std::to_string(cert.witness_degree);
  return out;
}

DGComodule corestrict(const DGComodule& x, const CoalgebraMap& g,
                      CoalgebraPtr dptr) {
  if (!(x.coalg().c == g.source.c))
    throw precondition_error("corestrict: comodule not over the map source");
  DGComodule out;
  out.c = dptr;
  out.x = x.x;
  int top = x.maxdeg();
  MultiTensor xc({x.x, g.source.c}, top);
  MultiTensor xd({x.x, g.target.c}, top);
  ChainMap push = map_factor(xc, 1, g.f, g.target.c, xd);
  out.coaction.resize(top + 1);
  for (int n = 0; n <= top; ++n)
    out.coaction[n] = push.at(n) * x.coaction_at(n);
  if (x.left_override) {
    std::vector<Matrix> lam = x.left_coaction();
    MultiTensor cx({g.source.c, x.x}, top);
    MultiTensor dx({g.target.c, x.x}, top);
    ChainMap pushl = map_factor(cx, 0, g.f, g.target.c, dx);
    std::vector<Matrix> lo(top + 1);
    for (int n = 0; n <= top; ++n) lo[n] = pushl.at(n) * lam[n];
    out.left_override = std::move(lo);
  }
  return out;
}

DGComodule coalgebra_along(const CoalgebraMap& g, CoalgebraPtr cptr,
                           CoalgebraPtr dptr) {
  const ChainComplex& c = g.source.c;
  int top = c.maxdeg();
  MultiTensor ccm({c, c}, top);
  MultiTensor cd({c, g.target.c}, top);
  MultiTensor dc({g.target.c, c}, top);
  ChainMap right = map_factor(ccm, 1, g.f, g.target.c, cd);
  ChainMap left = map_factor(ccm, 0, g.f, g.target.c, dc);
  DGComodule out;
  out.c = dptr;
  out.x = c;
  out.coaction.resize(top + 1);
  std::vector<Matrix> lam(top + 1);
  for (int n = 0; n <= top; ++n) {
    out.coaction[n] = right.at(n) * cptr->comult_at(n);
    lam[n] = left.at(n) * cptr->comult_at(n);
  }
  out.left_override = std::move(lam);
  return out;
}

CoinducedComodule coinduce(const DGComodule& x, const CoalgebraMap& g,
                           CoalgebraPtr cptr, CoalgebraPtr dptr) {
  DGComodule calong = coalgebra_along(g, cptr, dptr);
  CoinducedComodule out;
  out.cot = cotensor(x, calong, -1, false);
  const ChainComplex& c = cptr->c;
  int top = out.cot.complex.maxdeg();
  MultiTensor xc({x.x, c}, top);
  MultiTensor xcc({x.x, c, c}, top);
  MultiTensor xonly({x.x}, top);
  ChainMap e = expand_factor(xc, 1, cptr->comult, c, c, xcc);
  std::vector<Matrix> rl = regroup_left(x.x, c, c, top);
  ChainMap kmap{out.cot.complex, out.cot.ambient, out.cot.incl};
  ChainMap kc = tensor_map(kmap, identity_chain_map(c), top);
  out.m.c = cptr;
  out.m.x = out.cot.complex;
  out.m.coaction.resize(top + 1);
  for (int n = 0; n <= top; ++n)
    out.m.coaction[n] = Matrix::factor_through(
        kc.at(n), rl[n] * e.at(n) * out.cot.incl[n]);
  std::vector<Matrix> eps = {cptr->counit};
  ChainMap contract = contract_factor(xc, 1, eps, xonly);
  out.counit.resize(top + 1);
  for (int n = 0; n <= top; ++n)
    out.counit[n] = contract.at(n) * out.cot.incl[n];
  return out;
}

std::vector<Matrix> coinduction_unit(const DGComodule& x,
                                     const CoinducedComodule& ci) {
  int top = ci.cot.complex.maxdeg();
  std::vector<Matrix> out(top + 1);
  for (int n = 0; n <= top; ++n) {
    Matrix rho = n <= x.maxdeg()
                     ? x.coaction_at(n)
                     : Matrix::zeros(x.field(), ci.cot.ambient.dim(n), 0);
    out[n] = Matrix::factor_through(ci.cot.incl[n], rho);
  }
  return out;
}

}  // namespace cotensor
