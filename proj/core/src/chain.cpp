#include "cotensor/chain.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace cotensor {

ChainComplex::ChainComplex(FieldSpec f, GradedDims dims,
                           std::vector<Matrix> diffs)
    : f_(f), dims_(std::move(dims)), d_(std::move(diffs)) {
  if (dims_.empty()) dims_.push_back(0);
  for (int n : dims_)
    if (n < 0) throw precondition_error("negative dimension in complex");
  d_.resize(dims_.size());
  d_[0] = Matrix::zeros(f_, 0, dims_[0]);
  for (int n = 1; n <= maxdeg(); ++n) {
    if (d_[n].rows() == 0 && d_[n].cols() == 0)
      d_[n] = Matrix::zeros(f_, dims_[n - 1], dims_[n]);
    if (d_[n].rows() != dims_[n - 1] || d_[n].cols() != dims_[n])
      throw precondition_error("differential shape mismatch at degree " +
                               std::to_string(n));
    if (!(d_[n].field() == f_))
      throw precondition_error("differential field mismatch at degree " +
                               std::to_string(n));
  }
}

ChainComplex ChainComplex::zero(FieldSpec f, int maxdeg) {
  return ChainComplex(f, GradedDims(static_cast<size_t>(maxdeg) + 1, 0), {});
}

ChainComplex ChainComplex::unit(FieldSpec f) {
  return ChainComplex(f, {1}, {});
}

ChainComplex ChainComplex::sphere(FieldSpec f, int n, int dim) {
  if (n < 0) throw precondition_error("sphere degree must be non-negative");
  GradedDims dims(static_cast<size_t>(n) + 1, 0);
  dims[n] = dim;
  return ChainComplex(f, std::move(dims), {});
}

ChainComplex ChainComplex::disk(FieldSpec f, int n, int dim) {
  if (n < 1) throw precondition_error("disk degree must be at least 1");
  GradedDims dims(static_cast<size_t>(n) + 1, 0);
  dims[n] = dims[n - 1] = dim;
  std::vector<Matrix> d(static_cast<size_t>(n) + 1);
  d[n] = Matrix::identity(f, dim);
  return ChainComplex(f, std::move(dims), std::move(d));
}

Matrix ChainComplex::diff(int n) const {
  if (n >= 1 && n <= maxdeg()) return d_[n];
  return Matrix::zeros(f_, dim(n - 1), dim(n));
}

int ChainComplex::total_dim() const {
  return std::accumulate(dims_.begin(), dims_.end(), 0);
}

Report validate_complex(const ChainComplex& x) {
  Report rep;
  rep.merge(validate_field(x.field()), "field: ");
  for (int n = 1; n + 1 <= x.maxdeg(); ++n) {
    // d shapes are enforced on construction; check d*d = 0.
    if (!(x.diff(n) * x.diff(n + 1)).is_zero())
      rep.fail("d∘d != 0 between degrees " + std::to_string(n + 1) + " and " +
               std::to_string(n - 1));
  }
  return rep;
}

Matrix ChainMap::at(int n) const {
  if (n >= 0 && n < static_cast<int>(f.size())) return f[n];
  return Matrix::zeros(source.field(), target.dim(n), source.dim(n));
}

ChainMap identity_chain_map(const ChainComplex& x) {
  ChainMap m{x, x, {}};
  m.f.reserve(x.maxdeg() + 1);
  for (int n = 0; n <= x.maxdeg(); ++n)
    m.f.push_back(Matrix::identity(x.field(), x.dim(n)));
  return m;
}

ChainMap zero_chain_map(const ChainComplex& x, const ChainComplex& y) {
  ChainMap m{x, y, {}};
  int top = std::max(x.maxdeg(), y.maxdeg());
  for (int n = 0; n <= top; ++n)
    m.f.push_back(Matrix::zeros(x.field(), y.dim(n), x.dim(n)));
  return m;
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  if (!(g.source.dims() == f.target.dims()))
    throw precondition_error("compose: dimension profiles do not match");
  ChainMap m{f.source, g.target, {}};
  int top = std::max(f.source.maxdeg(), g.target.maxdeg());
  for (int n = 0; n <= top; ++n) m.f.push_back(g.at(n) * f.at(n));
  return m;
}

Report validate_chain_map(const ChainMap& m) {
  Report rep;
  for (int n = 0; n <= m.source.maxdeg(); ++n) {
    Matrix fn = m.at(n);
    if (fn.rows() != m.target.dim(n) || fn.cols() != m.source.dim(n)) {
      rep.fail("component shape mismatch at degree " + std::to_string(n));
      continue;
    }
    if (n >= 1) {
      if (!(m.target.diff(n) * m.at(n) == m.at(n - 1) * m.source.diff(n)))
        rep.fail("does not commute with differentials at degree " +
                 std::to_string(n));
    }
  }
  return rep;
}

int homology_dim(const ChainComplex& x, int n) {
  if (n < 0 || n > x.maxdeg()) return 0;
  int cycles = x.dim(n) - x.diff(n).rank();
  int bounds = x.diff(n + 1).rank();
  return cycles - bounds;
}

GradedDims homology_dims(const ChainComplex& x) {
  GradedDims h(static_cast<size_t>(x.maxdeg()) + 1, 0);
  for (int n = 0; n <= x.maxdeg(); ++n) h[n] = homology_dim(x, n);
  return h;
}

int homology_exact_through(const ChainComplex& x) {
  return x.truncated() ? x.maxdeg() - 1 : x.maxdeg();
}

Splitting split_complex(const ChainComplex& x) {
  int top = x.maxdeg();
  FieldSpec f = x.field();
  Splitting s;
  s.v.assign(top + 1, 0);
  s.w.assign(top + 2, 0);
  s.cycles.resize(top + 1);
  s.bounds.resize(top + 1);
  s.to_x.resize(top + 1);
  s.from_x.resize(top + 1);

  std::vector<Matrix> reps(top + 1), pre(top + 1);
  for (int n = 0; n <= top; ++n) {
    Matrix z = (n == 0) ? Matrix::identity(f, x.dim(0))
                        : x.diff(n).kernel_basis();
    Matrix b = x.diff(n + 1).column_space_basis().first;
    s.cycles[n] = z;
    s.bounds[n] = b;
    // Complete the boundary basis to a basis of the cycles; the completion
    // columns are the chosen homology representatives.
    auto [red, res] = b.hstack(z).rref();
    (void)red;
    std::vector<int> pick;
    for (int c : res.pivots)
      if (c >= b.cols()) pick.push_back(c - b.cols());
    reps[n] = z.select_cols(pick);
    s.v[n] = reps[n].cols();
    if (n >= 1) {
      // Preimages under d_n of the boundary basis in degree n-1.
      auto sol = x.diff(n).solve(s.bounds[n - 1]);
      if (!sol) throw internal_error("split: boundary has no preimage");
      pre[n] = *sol;
    } else {
      pre[n] = Matrix::zeros(f, x.dim(0), 0);
    }
    s.w[n] = pre[n].cols();
  }
  // w[n] = dim B_{n-1}; record the top boundary block count as w[top+1].
  s.w[top + 1] = s.bounds[top].cols();

  GradedDims mdims(top + 1, 0);
  std::vector<Matrix> mdiff(top + 1);
  for (int n = 0; n <= top; ++n) {
    s.to_x[n] = reps[n].hstack(s.bounds[n]).hstack(pre[n]);
    if (s.to_x[n].cols() != x.dim(n))
      throw internal_error("split: decomposition dimension mismatch");
    auto inv = s.to_x[n].inverse();
    if (!inv) throw internal_error("split: decomposition not invertible");
    s.from_x[n] = *inv;
    mdims[n] = x.dim(n);
  }
  for (int n = 1; n <= top; ++n) {
    // Model differential: disk-top block of degree n maps identically onto
    // the boundary block of degree n-1.
    Matrix d = Matrix::zeros(f, mdims[n - 1], mdims[n]);
    int src0 = s.v[n] + s.w[n + 1];
    int dst0 = s.v[n - 1];
    for (int i = 0; i < s.w[n]; ++i) d.set_int(dst0 + i, src0 + i, 1);
    mdiff[n] = d;
  }
  s.model = ChainComplex(f, mdims, mdiff);
  return s;
}

Matrix Splitting::homology_reps(int n) const {
  if (n < 0 || n >= static_cast<int>(to_x.size()))
    return Matrix::zeros(model.field(), 0, 0);
  return to_x[n].block(0, 0, to_x[n].rows(), v[n]);
}

Matrix induced_homology_map(const ChainMap& f, const Splitting& sx,
                            const Splitting& sy, int n) {
  FieldSpec fld = f.source.field();
  int vx = n <= static_cast<int>(sx.v.size()) - 1 && n >= 0 ? sx.v[n] : 0;
  int vy = n <= static_cast<int>(sy.v.size()) - 1 && n >= 0 ? sy.v[n] : 0;
  if (vx == 0 || f.target.dim(n) == 0) return Matrix::zeros(fld, vy, vx);
  Matrix img = f.at(n) * sx.homology_reps(n);
  if (!(f.target.diff(n) * img).is_zero())
    throw internal_error("induced_homology_map: image of a cycle not a cycle");
  // Express classes in the chosen basis [homology reps | boundaries].
  Matrix basis = sy.homology_reps(n).hstack(sy.bounds[n]);
  Matrix coeff = Matrix::factor_through(basis, img);
  return coeff.block(0, 0, vy, coeff.cols());
}

bool is_quasi_iso(const ChainMap& f, int through) {
  Splitting sx = split_complex(f.source);
  Splitting sy = split_complex(f.target);
  if (through < 0) {
    // Cover every degree where either side can carry homology, but never
    // look past a truncation point: beyond it the reported homology of a
    // truncated complex is not meaningful.
    int cap = std::max(f.source.maxdeg(), f.target.maxdeg());
    int es = f.source.truncated() ? homology_exact_through(f.source) : cap;
    int et = f.target.truncated() ? homology_exact_through(f.target) : cap;
    through = std::min(es, et);
  }
  for (int n = 0; n <= through; ++n) {
    int vx = n < static_cast<int>(sx.v.size()) ? sx.v[n] : 0;
    int vy = n < static_cast<int>(sy.v.size()) ? sy.v[n] : 0;
    if (vx != vy) return false;
    if (vx == 0) continue;
    Matrix h = induced_homology_map(f, sx, sy, n);
    if (h.rank() != vx) return false;
  }
  return true;
}

ChainComplex truncate_below(const ChainComplex& x, int n) {
  if (n < 0) return ChainComplex::zero(x.field());
  int top = std::min(n, x.maxdeg());
  GradedDims dims(x.dims().begin(), x.dims().begin() + top + 1);
  std::vector<Matrix> d(top + 1);
  for (int i = 1; i <= top; ++i) d[i] = x.diff(i);
  ChainComplex out(x.field(), std::move(dims), std::move(d));
  bool dropped = false;
  for (int i = top + 1; i <= x.maxdeg(); ++i) dropped = dropped || x.dim(i) > 0;
  if (dropped || x.truncated()) out.mark_truncated();
  return out;
}

SumDecomp direct_sum(const ChainComplex& a, const ChainComplex& b) {
  FieldSpec f = a.field();
  if (!(f == b.field())) throw precondition_error("direct_sum field mismatch");
  int top = std::max(a.maxdeg(), b.maxdeg());
  GradedDims dims(top + 1, 0);
  std::vector<Matrix> d(top + 1);
  for (int n = 0; n <= top; ++n) dims[n] = a.dim(n) + b.dim(n);
  for (int n = 1; n <= top; ++n) {
    Matrix m = Matrix::zeros(f, dims[n - 1], dims[n]);
    m.set_block(0, 0, a.diff(n));
    m.set_block(a.dim(n - 1), a.dim(n), b.diff(n));
    d[n] = m;
  }
  SumDecomp out;
  out.sum = ChainComplex(f, dims, d);
  if (a.truncated() || b.truncated()) out.sum.mark_truncated();
  out.inj_a = ChainMap{a, out.sum, {}};
  out.inj_b = ChainMap{b, out.sum, {}};
  out.proj_a = ChainMap{out.sum, a, {}};
  out.proj_b = ChainMap{out.sum, b, {}};
  for (int n = 0; n <= top; ++n) {
    Matrix ia = Matrix::zeros(f, dims[n], a.dim(n));
    Matrix ib = Matrix::zeros(f, dims[n], b.dim(n));
    ia.set_block(0, 0, Matrix::identity(f, a.dim(n)));
    ib.set_block(a.dim(n), 0, Matrix::identity(f, b.dim(n)));
    out.inj_a.f.push_back(ia);
    out.inj_b.f.push_back(ib);
    out.proj_a.f.push_back(ia.transpose());
    out.proj_b.f.push_back(ib.transpose());
  }
  return out;
}

// ---- tensor machinery ----

MultiTensor::MultiTensor(std::vector<ChainComplex> factors, int cap)
    : factors_(std::move(factors)) {
  if (factors_.empty()) throw precondition_error("empty tensor factor list");
  FieldSpec f = factors_[0].field();
  int natural = 0;
  bool trunc_in = false;
  for (const auto& x : factors_) {
    if (!(x.field() == f)) throw precondition_error("tensor field mismatch");
    natural += x.maxdeg();
    trunc_in = trunc_in || x.truncated();
  }
  int top = (cap < 0) ? natural : std::min(cap, natural);
  tuples_.resize(top + 1);
  offsets_.resize(top + 1);

  int m = static_cast<int>(factors_.size());
  GradedDims dims(top + 1, 0);
  for (int n = 0; n <= top; ++n) {
    // Enumerate degree tuples in lexicographic order, skipping zero blocks.
    std::vector<int> t(m, 0);
    int off = 0;
    std::function<void(int, int)> rec = [&](int k, int rem) {
      if (k == m - 1) {
        if (rem > factors_[k].maxdeg()) return;
        t[k] = rem;
        int wdt = tuple_width(t);
        if (wdt > 0) {
          tuples_[n].push_back(t);
          offsets_[n].push_back(off);
          off += wdt;
        }
        return;
      }
      for (int dk = 0; dk <= std::min(rem, factors_[k].maxdeg()); ++dk) {
        t[k] = dk;
        rec(k + 1, rem - dk);
      }
    };
    rec(0, n);
    dims[n] = off;
  }

  std::vector<Matrix> diffs(top + 1);
  for (int n = 1; n <= top; ++n) {
    Matrix d = Matrix::zeros(f, dims[n - 1], dims[n]);
    for (int ti = 0; ti < static_cast<int>(tuples_[n].size()); ++ti) {
      const std::vector<int>& t = tuples_[n][ti];
      int coff = offsets_[n][ti];
      int sign_acc = 0;
      for (int k = 0; k < m; ++k) {
        if (t[k] >= 1) {
          std::vector<int> t2 = t;
          t2[k] -= 1;
          int tj = find_tuple(n - 1, t2);
          if (tj >= 0) {
            int roff = offsets_[n - 1][tj];
            int pre = 1, post = 1;
            for (int o = 0; o < k; ++o) pre *= factors_[o].dim(t[o]);
            for (int o = k + 1; o < m; ++o) post *= factors_[o].dim(t[o]);
            Matrix dk = factors_[k].diff(t[k]).scaled_by_sign(
                sign_acc % 2 == 0 ? 1 : -1);
            int srows = dk.rows(), scols = dk.cols();
            for (int p = 0; p < pre; ++p)
              for (int r = 0; r < srows; ++r)
                for (int c = 0; c < scols; ++c) {
                  if (dk.entry_is_zero(r, c)) continue;
                  for (int q = 0; q < post; ++q)
                    d.set_from(dk, r, c, roff + (p * srows + r) * post + q,
                               coff + (p * scols + c) * post + q);
                }
          }
        }
        sign_acc += t[k];
      }
    }
    diffs[n] = d;
  }
  x_ = ChainComplex(f, dims, diffs);
  if (trunc_in || (cap >= 0 && cap < natural)) x_.mark_truncated();
}

const std::vector<std::vector<int>>& MultiTensor::tuples(int n) const {
  static const std::vector<std::vector<int>> empty;
  if (n < 0 || n >= static_cast<int>(tuples_.size())) return empty;
  return tuples_[n];
}

int MultiTensor::tuple_offset(int n, int t) const { return offsets_[n][t]; }

int MultiTensor::tuple_width(const std::vector<int>& degs) const {
  int w = 1;
  for (size_t k = 0; k < factors_.size(); ++k) w *= factors_[k].dim(degs[k]);
  return w;
}

int MultiTensor::find_tuple(int n, const std::vector<int>& degs) const {
  if (n < 0 || n >= static_cast<int>(tuples_.size())) return -1;
  const auto& ts = tuples_[n];
  // Lexicographic order allows binary search.
  auto it = std::lower_bound(ts.begin(), ts.end(), degs);
  if (it == ts.end() || *it != degs) return -1;
  return static_cast<int>(it - ts.begin());
}

ChainComplex tensor(const ChainComplex& x, const ChainComplex& y, int cap) {
  return MultiTensor({x, y}, cap).complex();
}

ChainMap tensor_map(const ChainMap& a, const ChainMap& b, int cap) {
  MultiTensor src({a.source, b.source}, cap);
  MultiTensor dst({a.target, b.target}, cap);
  ChainMap out{src.complex(), dst.complex(), {}};
  int top = src.complex().maxdeg();
  for (int n = 0; n <= top; ++n) {
    Matrix m = Matrix::zeros(a.source.field(), dst.complex().dim(n),
                             src.complex().dim(n));
    for (int ti = 0; ti < static_cast<int>(src.tuples(n).size()); ++ti) {
      const auto& t = src.tuples(n)[ti];
      int tj = dst.find_tuple(n, t);
      if (tj < 0) continue;
      Matrix blockm = Matrix::kronecker(a.at(t[0]), b.at(t[1]));
      m.set_block(dst.tuple_offset(n, tj), src.tuple_offset(n, ti), blockm);
    }
    out.f.push_back(m);
  }
  return out;
}

ChainMap twist(const ChainComplex& x, const ChainComplex& y, int cap) {
  MultiTensor src({x, y}, cap);
  MultiTensor dst({y, x}, cap);
  ChainMap out{src.complex(), dst.complex(), {}};
  int top = src.complex().maxdeg();
  for (int n = 0; n <= top; ++n) {
    Matrix m = Matrix::zeros(x.field(), dst.complex().dim(n),
                             src.complex().dim(n));
    for (int ti = 0; ti < static_cast<int>(src.tuples(n).size()); ++ti) {
      const auto& t = src.tuples(n)[ti];
      int i = t[0], j = t[1];
      int tj = dst.find_tuple(n, {j, i});
      if (tj < 0) continue;
      int xd = x.dim(i), yd = y.dim(j);
      int sgn = (i % 2 == 1 && j % 2 == 1) ? -1 : 1;
      int coff = src.tuple_offset(n, ti), roff = dst.tuple_offset(n, tj);
      for (int p = 0; p < xd; ++p)
        for (int q = 0; q < yd; ++q)
          m.set_int(roff + q * xd + p, coff + p * yd + q, sgn);
    }
    out.f.push_back(m);
  }
  return out;
}

ChainMap expand_factor(const MultiTensor& src, int k,
                       const std::vector<Matrix>& g, const ChainComplex& a,
                       const ChainComplex& b, const MultiTensor& dst) {
  const auto& fs = src.factors();
  int m = static_cast<int>(fs.size());
  FieldSpec fld = src.complex().field();
  MultiTensor ab({a, b}, -1);  // block layout of the binary target of g
  ChainMap out{src.complex(), dst.complex(), {}};
  int top = src.complex().maxdeg();
  for (int n = 0; n <= top; ++n) {
    Matrix mat = Matrix::zeros(fld, dst.complex().dim(n),
                               src.complex().dim(n));
    for (int ti = 0; ti < static_cast<int>(src.tuples(n).size()); ++ti) {
      const auto& t = src.tuples(n)[ti];
      int tk = t[k];
      if (tk >= static_cast<int>(g.size())) continue;
      const Matrix& gt = g[tk];
      if (gt.cols() == 0 || gt.rows() == 0) continue;
      int pre = 1, post = 1;
      for (int o = 0; o < k; ++o) pre *= fs[o].dim(t[o]);
      for (int o = k + 1; o < m; ++o) post *= fs[o].dim(t[o]);
      int coff = src.tuple_offset(n, ti);
      int fkdim = fs[k].dim(tk);
      for (int bi = 0; bi < static_cast<int>(ab.tuples(tk).size()); ++bi) {
        const auto& abt = ab.tuples(tk)[bi];
        int alpha = abt[0], beta = abt[1];
        int bw = a.dim(alpha) * b.dim(beta);
        std::vector<int> t2;
        t2.reserve(m + 1);
        for (int o = 0; o < k; ++o) t2.push_back(t[o]);
        t2.push_back(alpha);
        t2.push_back(beta);
        for (int o = k + 1; o < m; ++o) t2.push_back(t[o]);
        int tj = dst.find_tuple(n, t2);
        if (tj < 0) continue;
        int roff = dst.tuple_offset(n, tj);
        Matrix sub = gt.block(ab.tuple_offset(tk, bi), 0, bw, fkdim);
        for (int p = 0; p < pre; ++p)
          for (int r = 0; r < bw; ++r)
            for (int c = 0; c < fkdim; ++c) {
              if (sub.entry_is_zero(r, c)) continue;
              for (int q = 0; q < post; ++q)
                mat.set_from(sub, r, c, roff + (p * bw + r) * post + q,
                             coff + (p * fkdim + c) * post + q);
            }
      }
    }
    out.f.push_back(mat);
  }
  return out;
}

ChainMap map_factor(const MultiTensor& src, int k,
                    const std::vector<Matrix>& g, const ChainComplex& a,
                    const MultiTensor& dst) {
  const auto& fs = src.factors();
  int m = static_cast<int>(fs.size());
  FieldSpec fld = src.complex().field();
  ChainMap out{src.complex(), dst.complex(), {}};
  int top = src.complex().maxdeg();
  for (int n = 0; n <= top; ++n) {
    Matrix mat = Matrix::zeros(fld, dst.complex().dim(n),
                               src.complex().dim(n));
    for (int ti = 0; ti < static_cast<int>(src.tuples(n).size()); ++ti) {
      const auto& t = src.tuples(n)[ti];
      int tk = t[k];
      Matrix gt = tk < static_cast<int>(g.size())
                      ? g[tk]
                      : Matrix::zeros(fld, a.dim(tk), fs[k].dim(tk));
      if (gt.rows() == 0 || gt.cols() == 0) continue;
      int tj = dst.find_tuple(n, t);
      if (tj < 0) continue;
      int pre = 1, post = 1;
      for (int o = 0; o < k; ++o) pre *= fs[o].dim(t[o]);
      for (int o = k + 1; o < m; ++o) post *= fs[o].dim(t[o]);
      int coff = src.tuple_offset(n, ti), roff = dst.tuple_offset(n, tj);
      for (int p = 0; p < pre; ++p)
        for (int r = 0; r < gt.rows(); ++r)
          for (int c = 0; c < gt.cols(); ++c) {
            if (gt.entry_is_zero(r, c)) continue;
            for (int q = 0; q < post; ++q)
              mat.set_from(gt, r, c, roff + (p * gt.rows() + r) * post + q,
                           coff + (p * gt.cols() + c) * post + q);
          }
    }
    out.f.push_back(mat);
  }
  return out;
}

ChainMap contract_factor(const MultiTensor& src, int k,
                         const std::vector<Matrix>& g, const MultiTensor& dst) {
  const auto& fs = src.factors();
  int m = static_cast<int>(fs.size());
  FieldSpec fld = src.complex().field();
  ChainMap out{src.complex(), dst.complex(), {}};
  int top = src.complex().maxdeg();
  for (int n = 0; n <= top; ++n) {
    Matrix mat = Matrix::zeros(fld, dst.complex().dim(n),
                               src.complex().dim(n));
    for (int ti = 0; ti < static_cast<int>(src.tuples(n).size()); ++ti) {
      const auto& t = src.tuples(n)[ti];
      int tk = t[k];
      if (tk != 0) continue;  // unit target vanishes above degree 0
      if (tk >= static_cast<int>(g.size())) continue;
      const Matrix& gt = g[tk];  // 1 x dim
      if (gt.rows() == 0 || gt.cols() == 0) continue;
      std::vector<int> t2;
      for (int o = 0; o < m; ++o)
        if (o != k) t2.push_back(t[o]);
      int tj = dst.find_tuple(n, t2);
      if (tj < 0) continue;
      int pre = 1, post = 1;
      for (int o = 0; o < k; ++o) pre *= fs[o].dim(t[o]);
      for (int o = k + 1; o < m; ++o) post *= fs[o].dim(t[o]);
      int coff = src.tuple_offset(n, ti), roff = dst.tuple_offset(n, tj);
      int fkdim = fs[k].dim(tk);
      for (int p = 0; p < pre; ++p)
        for (int c = 0; c < fkdim; ++c) {
          if (gt.entry_is_zero(0, c)) continue;
          for (int q = 0; q < post; ++q)
            mat.set_from(gt, 0, c, roff + p * post + q,
                         coff + (p * fkdim + c) * post + q);
        }
    }
    out.f.push_back(mat);
  }
  return out;
}

namespace {

// Shared implementation of the two three-factor regroupings.
std::vector<Matrix> regroup_impl(const ChainComplex& a, const ChainComplex& b,
                                 const ChainComplex& c, int cap, bool left) {
  MultiTensor flat({a, b, c}, cap);
  int top = flat.complex().maxdeg();
  FieldSpec f = a.field();
  // Nested layouts built from the same binary tensor machinery.
  ChainComplex inner = left ? tensor(a, b, top) : tensor(b, c, top);
  MultiTensor innermt = left ? MultiTensor({a, b}, top)
                             : MultiTensor({b, c}, top);
  MultiTensor outer = left ? MultiTensor({inner, c}, top)
                           : MultiTensor({a, inner}, top);
  std::vector<Matrix> out(top + 1);
  for (int n = 0; n <= top; ++n) {
    Matrix m = Matrix::zeros(f, outer.complex().dim(n), flat.complex().dim(n));
    for (int ti = 0; ti < static_cast<int>(flat.tuples(n).size()); ++ti) {
      const auto& t = flat.tuples(n)[ti];
      int i = t[0], j = t[1], k = t[2];
      int ad = a.dim(i), bd = b.dim(j), cd = c.dim(k);
      int coff = flat.tuple_offset(n, ti);
      if (left) {
        int s = i + j;
        int iidx = innermt.find_tuple(s, {i, j});
        int oidx = outer.find_tuple(n, {s, k});
        if (iidx < 0 || oidx < 0)
          throw internal_error("regroup: missing nested block");
        int ioff = innermt.tuple_offset(s, iidx);
        int ooff = outer.tuple_offset(n, oidx);
        for (int p = 0; p < ad; ++p)
          for (int q = 0; q < bd; ++q)
            for (int r = 0; r < cd; ++r)
              m.set_int(ooff + (ioff + p * bd + q) * cd + r,
                        coff + (p * bd + q) * cd + r, 1);
      } else {
        int s = j + k;
        int iidx = innermt.find_tuple(s, {j, k});
        int oidx = outer.find_tuple(n, {i, s});
        if (iidx < 0 || oidx < 0)
          throw internal_error("regroup: missing nested block");
        int ioff = innermt.tuple_offset(s, iidx);
        int ooff = outer.tuple_offset(n, oidx);
        int innerdim = inner.dim(s);
        for (int p = 0; p < ad; ++p)
          for (int q = 0; q < bd; ++q)
            for (int r = 0; r < cd; ++r)
              m.set_int(ooff + p * innerdim + ioff + q * cd + r,
                        coff + (p * bd + q) * cd + r, 1);
      }
    }
    out[n] = m;
  }
  return out;
}

}  // namespace

std::vector<Matrix> regroup_left(const ChainComplex& a, const ChainComplex& b,
                                 const ChainComplex& c, int cap) {
  return regroup_impl(a, b, c, cap, true);
}

std::vector<Matrix> regroup_right(const ChainComplex& a, const ChainComplex& b,
                                  const ChainComplex& c, int cap) {
  return regroup_impl(a, b, c, cap, false);
}

}  // namespace cotensor
