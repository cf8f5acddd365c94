#include "cotensor/field.hpp"

#include <algorithm>
#include <sstream>

namespace cotensor {

namespace {

long long mod_reduce(long long v, long long p) {
  long long r = v % p;
  return r < 0 ? r + p : r;
}

// Extended Euclid inverse of a mod p, a in (0, p).
long long mod_inverse(long long a, long long p) {
  long long t = 0, newt = 1, r = p, newr = a;
  while (newr != 0) {
    long long q = r / newr;
    long long tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (r != 1) throw internal_error("mod_inverse: not invertible");
  return t < 0 ? t + p : t;
}

// Field operation bundles used by the shared elimination engine.
struct FpOps {
  long long p;
  using E = long long;
  bool is_zero(const E& a) const { return a == 0; }
  E add(const E& a, const E& b) const { return (a + b) % p; }
  E sub(const E& a, const E& b) const { return mod_reduce(a - b, p); }
  E mul(const E& a, const E& b) const { return (a * b) % p; }
  E inv(const E& a) const { return mod_inverse(a, p); }
  E neg(const E& a) const { return a == 0 ? 0 : p - a; }
};

struct QOps {
  using E = mpq_class;
  bool is_zero(const E& a) const { return sgn(a) == 0; }
  E add(const E& a, const E& b) const { return a + b; }
  E sub(const E& a, const E& b) const { return a - b; }
  E mul(const E& a, const E& b) const { return a * b; }
  E inv(const E& a) const { return 1 / a; }
  E neg(const E& a) const { return -a; }
};

// In-place RREF with first-nonzero-in-column-order pivoting.
template <class Ops>
void rref_engine(std::vector<typename Ops::E>& a, int rows, int cols,
                 const Ops& ops, std::vector<int>& pivots) {
  pivots.clear();
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i) {
      if (!ops.is_zero(a[static_cast<size_t>(i) * cols + c])) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != r) {
      for (int j = 0; j < cols; ++j)
        std::swap(a[static_cast<size_t>(piv) * cols + j],
                  a[static_cast<size_t>(r) * cols + j]);
    }
    auto scale = ops.inv(a[static_cast<size_t>(r) * cols + c]);
    for (int j = c; j < cols; ++j) {
      auto& e = a[static_cast<size_t>(r) * cols + j];
      e = ops.mul(e, scale);
    }
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      auto f = a[static_cast<size_t>(i) * cols + c];
      if (ops.is_zero(f)) continue;
      for (int j = c; j < cols; ++j) {
        a[static_cast<size_t>(i) * cols + j] =
            ops.sub(a[static_cast<size_t>(i) * cols + j],
                    ops.mul(f, a[static_cast<size_t>(r) * cols + j]));
      }
    }
    pivots.push_back(c);
    ++r;
  }
}

bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

bool FieldSpec::is_valid() const {
  return characteristic == 0 || is_prime(characteristic);
}

std::string FieldSpec::name() const {
  if (is_rational()) return "QQ";
  return "GF(" + std::to_string(characteristic) + ")";
}

Report validate_field(const FieldSpec& f) {
  Report rep;
  rep.require(f.is_valid(), "characteristic must be 0 or a prime, got " +
                                std::to_string(f.characteristic));
  return rep;
}

void Matrix::alloc() {
  size_t n = static_cast<size_t>(rows_) * cols_;
  if (f_.is_rational())
    qp_.assign(n, mpq_class(0));
  else
    ip_.assign(n, 0);
}

void Matrix::check_same_field(const Matrix& other) const {
  if (!(f_ == other.f_))
    throw precondition_error("matrix field mismatch: " + f_.name() + " vs " +
                             other.f_.name());
}

Matrix Matrix::zeros(FieldSpec f, int rows, int cols) {
  if (!f.is_valid())
    throw precondition_error("invalid field characteristic " +
                             std::to_string(f.characteristic));
  if (rows < 0 || cols < 0) throw precondition_error("negative matrix shape");
  Matrix m;
  m.f_ = f;
  m.rows_ = rows;
  m.cols_ = cols;
  m.alloc();
  return m;
}

Matrix Matrix::identity(FieldSpec f, int n) {
  Matrix m = zeros(f, n, n);
  for (int i = 0; i < n; ++i) m.set_int(i, i, 1);
  return m;
}

Matrix Matrix::from_ints(FieldSpec f, int rows, int cols,
                         const std::vector<long long>& entries) {
  if (static_cast<size_t>(rows) * cols != entries.size())
    throw precondition_error("entry count does not match matrix shape");
  Matrix m = zeros(f, rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      m.set_int(r, c, entries[static_cast<size_t>(r) * cols + c]);
  return m;
}

Matrix Matrix::from_strings(FieldSpec f, int rows, int cols,
                            const std::vector<std::string>& entries) {
  if (static_cast<size_t>(rows) * cols != entries.size())
    throw parse_error("entry count does not match matrix shape");
  Matrix m = zeros(f, rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const std::string& s = entries[static_cast<size_t>(r) * cols + c];
      if (f.is_rational()) {
        try {
          mpq_class q(s);
          if (q.get_den() == 0)
            throw parse_error("bad rational entry '" + s + "': zero denominator");
          q.canonicalize();
          m.set_rat(r, c, q);
        } catch (const std::invalid_argument&) {
          throw parse_error("bad rational entry '" + s + "'");
        }
      } else {
        try {
          size_t used = 0;
          long long v = std::stoll(s, &used);
          if (used != s.size()) throw std::invalid_argument(s);
          m.set_int(r, c, v);
        } catch (const std::exception&) {
          throw parse_error("bad GF(p) entry '" + s + "'");
        }
      }
    }
  }
  return m;
}

Matrix Matrix::permutation(FieldSpec f, const std::vector<int>& image) {
  int n = static_cast<int>(image.size());
  Matrix m = zeros(f, n, n);
  for (int j = 0; j < n; ++j) m.set_int(image[j], j, 1);
  return m;
}

Matrix Matrix::signed_permutation(FieldSpec f, const std::vector<int>& image,
                                  const std::vector<int>& signs) {
  int n = static_cast<int>(image.size());
  Matrix m = zeros(f, n, n);
  for (int j = 0; j < n; ++j) m.set_int(image[j], j, signs[j]);
  return m;
}

bool Matrix::is_zero() const {
  if (f_.is_rational()) {
    for (const auto& e : qp_)
      if (sgn(e) != 0) return false;
  } else {
    for (auto e : ip_)
      if (e != 0) return false;
  }
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) {
      if (f_.is_rational()) {
        if (qp_[static_cast<size_t>(r) * cols_ + c] != (r == c ? 1 : 0))
          return false;
      } else {
        if (ip_[static_cast<size_t>(r) * cols_ + c] != (r == c ? 1 : 0))
          return false;
      }
    }
  return true;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.f_ == b.f_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
         a.ip_ == b.ip_ && a.qp_ == b.qp_;
}

long long Matrix::int_at(int r, int c) const {
  return ip_[static_cast<size_t>(r) * cols_ + c];
}

mpq_class Matrix::rat_at(int r, int c) const {
  return qp_[static_cast<size_t>(r) * cols_ + c];
}

bool Matrix::entry_is_zero(int r, int c) const {
  if (f_.is_rational()) return sgn(qp_[static_cast<size_t>(r) * cols_ + c]) == 0;
  return ip_[static_cast<size_t>(r) * cols_ + c] == 0;
}

std::string Matrix::entry_string(int r, int c) const {
  if (f_.is_rational()) return qp_[static_cast<size_t>(r) * cols_ + c].get_str();
  return std::to_string(ip_[static_cast<size_t>(r) * cols_ + c]);
}

void Matrix::set_int(int r, int c, long long v) {
  if (f_.is_rational())
    qp_[static_cast<size_t>(r) * cols_ + c] = mpq_class(static_cast<long>(v));
  else
    ip_[static_cast<size_t>(r) * cols_ + c] = mod_reduce(v, f_.characteristic);
}

void Matrix::set_rat(int r, int c, const mpq_class& v) {
  if (!f_.is_rational())
    throw precondition_error("rational entry in a GF(p) matrix");
  qp_[static_cast<size_t>(r) * cols_ + c] = v;
}

void Matrix::set_from(const Matrix& src, int sr, int sc, int r, int c) {
  check_same_field(src);
  if (f_.is_rational())
    qp_[static_cast<size_t>(r) * cols_ + c] =
        src.qp_[static_cast<size_t>(sr) * src.cols_ + sc];
  else
    ip_[static_cast<size_t>(r) * cols_ + c] =
        src.ip_[static_cast<size_t>(sr) * src.cols_ + sc];
}

Matrix Matrix::transpose() const {
  Matrix m = zeros(f_, cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) m.set_from(*this, r, c, c, r);
  return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  check_same_field(rhs);
  if (cols_ != rhs.rows_)
    throw precondition_error(
        "matrix product shape mismatch: " + std::to_string(rows_) + "x" +
        std::to_string(cols_) + " * " + std::to_string(rhs.rows_) + "x" +
        std::to_string(rhs.cols_));
  Matrix out = zeros(f_, rows_, rhs.cols_);
  if (f_.is_rational()) {
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const mpq_class& a = qp_[static_cast<size_t>(i) * cols_ + k];
        if (sgn(a) == 0) continue;
        for (int j = 0; j < rhs.cols_; ++j) {
          const mpq_class& b = rhs.qp_[static_cast<size_t>(k) * rhs.cols_ + j];
          if (sgn(b) == 0) continue;
          out.qp_[static_cast<size_t>(i) * out.cols_ + j] += a * b;
        }
      }
  } else {
    long long p = f_.characteristic;
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        long long a = ip_[static_cast<size_t>(i) * cols_ + k];
        if (a == 0) continue;
        for (int j = 0; j < rhs.cols_; ++j) {
          long long b = rhs.ip_[static_cast<size_t>(k) * rhs.cols_ + j];
          if (b == 0) continue;
          auto& e = out.ip_[static_cast<size_t>(i) * out.cols_ + j];
          e = (e + a * b) % p;
        }
      }
  }
  return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  check_same_field(rhs);
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw precondition_error("matrix sum shape mismatch");
  Matrix out = *this;
  if (f_.is_rational()) {
    for (size_t i = 0; i < qp_.size(); ++i) out.qp_[i] += rhs.qp_[i];
  } else {
    long long p = f_.characteristic;
    for (size_t i = 0; i < ip_.size(); ++i)
      out.ip_[i] = (out.ip_[i] + rhs.ip_[i]) % p;
  }
  return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const { return *this + rhs.negated(); }

Matrix Matrix::negated() const {
  Matrix out = *this;
  if (f_.is_rational()) {
    for (auto& e : out.qp_) e = -e;
  } else {
    long long p = f_.characteristic;
    for (auto& e : out.ip_) e = e == 0 ? 0 : p - e;
  }
  return out;
}

Matrix Matrix::scaled_by_sign(int sign) const {
  if (sign == 1) return *this;
  if (sign == -1) return negated();
  throw precondition_error("sign must be +1 or -1");
}

Matrix Matrix::hstack(const Matrix& right) const {
  check_same_field(right);
  if (rows_ != right.rows_) throw precondition_error("hstack row mismatch");
  Matrix out = zeros(f_, rows_, cols_ + right.cols_);
  out.set_block(0, 0, *this);
  out.set_block(0, cols_, right);
  return out;
}

Matrix Matrix::vstack(const Matrix& below) const {
  check_same_field(below);
  if (cols_ != below.cols_) throw precondition_error("vstack column mismatch");
  Matrix out = zeros(f_, rows_ + below.rows_, cols_);
  out.set_block(0, 0, *this);
  out.set_block(rows_, 0, below);
  return out;
}

void Matrix::set_block(int r0, int c0, const Matrix& b) {
  check_same_field(b);
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_)
    throw precondition_error("set_block out of range");
  for (int r = 0; r < b.rows_; ++r)
    for (int c = 0; c < b.cols_; ++c) set_from(b, r, c, r0 + r, c0 + c);
}

Matrix Matrix::block(int r0, int c0, int nrows, int ncols) const {
  if (r0 + nrows > rows_ || c0 + ncols > cols_ || r0 < 0 || c0 < 0)
    throw precondition_error("block out of range");
  Matrix out = zeros(f_, nrows, ncols);
  for (int r = 0; r < nrows; ++r)
    for (int c = 0; c < ncols; ++c) out.set_from(*this, r0 + r, c0 + c, r, c);
  return out;
}

Matrix Matrix::select_cols(const std::vector<int>& idx) const {
  Matrix out = zeros(f_, rows_, static_cast<int>(idx.size()));
  for (int j = 0; j < static_cast<int>(idx.size()); ++j)
    for (int r = 0; r < rows_; ++r) out.set_from(*this, r, idx[j], r, j);
  return out;
}

Matrix Matrix::select_rows(const std::vector<int>& idx) const {
  Matrix out = zeros(f_, static_cast<int>(idx.size()), cols_);
  for (int i = 0; i < static_cast<int>(idx.size()); ++i)
    for (int c = 0; c < cols_; ++c) out.set_from(*this, idx[i], c, i, c);
  return out;
}

Matrix Matrix::kronecker(const Matrix& a, const Matrix& b) {
  a.check_same_field(b);
  Matrix out = zeros(a.f_, a.rows_ * b.rows_, a.cols_ * b.cols_);
  if (a.f_.is_rational()) {
    for (int i = 0; i < a.rows_; ++i)
      for (int j = 0; j < a.cols_; ++j) {
        mpq_class av = a.rat_at(i, j);
        if (sgn(av) == 0) continue;
        for (int k = 0; k < b.rows_; ++k)
          for (int l = 0; l < b.cols_; ++l) {
            mpq_class bv = b.rat_at(k, l);
            if (sgn(bv) == 0) continue;
            out.set_rat(i * b.rows_ + k, j * b.cols_ + l, av * bv);
          }
      }
  } else {
    for (int i = 0; i < a.rows_; ++i)
      for (int j = 0; j < a.cols_; ++j) {
        long long av = a.int_at(i, j);
        if (av == 0) continue;
        for (int k = 0; k < b.rows_; ++k)
          for (int l = 0; l < b.cols_; ++l) {
            long long bv = b.int_at(k, l);
            if (bv == 0) continue;
            out.set_int(i * b.rows_ + k, j * b.cols_ + l, av * bv);
          }
      }
  }
  return out;
}

std::pair<Matrix, RrefResult> Matrix::rref() const {
  Matrix red = *this;
  RrefResult res;
  if (f_.is_rational()) {
    rref_engine(red.qp_, rows_, cols_, QOps{}, res.pivots);
  } else {
    rref_engine(red.ip_, rows_, cols_, FpOps{f_.characteristic}, res.pivots);
  }
  res.rank = static_cast<int>(res.pivots.size());
  return {std::move(red), std::move(res)};
}

int Matrix::rank() const { return rref().second.rank; }

Matrix Matrix::kernel_basis() const {
  auto [red, res] = rref();
  std::vector<bool> is_pivot(cols_, false);
  for (int c : res.pivots) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < cols_; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix k = zeros(f_, cols_, static_cast<int>(free_cols.size()));
  for (int t = 0; t < static_cast<int>(free_cols.size()); ++t) {
    int fc = free_cols[t];
    k.set_int(fc, t, 1);
    for (int i = 0; i < res.rank; ++i) {
      int pc = res.pivots[i];
      if (red.entry_is_zero(i, fc)) continue;
      if (f_.is_rational())
        k.set_rat(pc, t, -red.rat_at(i, fc));
      else
        k.set_int(pc, t, f_.characteristic - red.int_at(i, fc));
    }
  }
  return k;
}

std::pair<Matrix, std::vector<int>> Matrix::column_space_basis() const {
  auto [red, res] = rref();
  (void)red;
  return {select_cols(res.pivots), res.pivots};
}

std::optional<Matrix> Matrix::solve(const Matrix& rhs) const {
  check_same_field(rhs);
  if (rhs.rows_ != rows_) throw precondition_error("solve: rhs row mismatch");
  Matrix aug = hstack(rhs);
  auto [red, res] = aug.rref();
  for (int c : res.pivots)
    if (c >= cols_) return std::nullopt;  // inconsistent system
  Matrix x = zeros(f_, cols_, rhs.cols_);
  for (int i = 0; i < res.rank; ++i) {
    int pc = res.pivots[i];
    for (int j = 0; j < rhs.cols_; ++j) x.set_from(red, i, cols_ + j, pc, j);
  }
  return x;
}

std::optional<Matrix> Matrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  auto sol = solve(identity(f_, rows_));
  if (!sol) return std::nullopt;
  // solve() succeeding on the identity for a square matrix implies full rank
  return sol;
}

Matrix Matrix::section_of_surjection() const {
  auto sol = solve(identity(f_, rows_));
  if (!sol)
    throw precondition_error("section_of_surjection: map is not surjective");
  return *sol;
}

Matrix Matrix::canonical_span() const {
  auto [red, res] = transpose().rref();
  Matrix rowbasis = zeros(f_, res.rank, rows_);
  for (int i = 0; i < res.rank; ++i)
    for (int c = 0; c < rows_; ++c) rowbasis.set_from(red, i, c, i, c);
  return rowbasis.transpose();
}

Matrix Matrix::preimage_of_span(const Matrix& s) const {
  check_same_field(s);
  if (s.rows_ != rows_) throw precondition_error("preimage: ambient mismatch");
  Matrix k = hstack(s.negated()).kernel_basis();
  return k.block(0, 0, cols_, k.cols()).canonical_span();
}

Matrix Matrix::factor_through(const Matrix& mono, const Matrix& w) {
  auto sol = mono.solve(w);
  if (!sol)
    throw internal_error(
        "factor_through: target does not factor through the subobject");
  return *sol;
}

Matrix Matrix::span_sum(const Matrix& a, const Matrix& b) {
  return a.hstack(b).canonical_span();
}

Matrix Matrix::span_intersection(const Matrix& a, const Matrix& b) {
  a.check_same_field(b);
  if (a.rows_ != b.rows_)
    throw precondition_error("span_intersection: ambient mismatch");
  Matrix k = a.hstack(b.negated()).kernel_basis();
  Matrix coeff = k.block(0, 0, a.cols_, k.cols());
  return (a * coeff).canonical_span();
}

bool Matrix::span_contains(const Matrix& space, const Matrix& vecs) {
  return space.solve(vecs).has_value();
}

QuotientData quotient_by_span(const Matrix& sub) {
  Matrix basis = sub.canonical_span();
  int m = sub.rows();
  int k = basis.cols();
  FieldSpec f = sub.field();
  // Complete to a basis of the ambient space with standard vectors.
  Matrix aug = basis.hstack(Matrix::identity(f, m));
  auto [red, res] = aug.rref();
  (void)red;
  std::vector<int> eidx;
  for (int c : res.pivots)
    if (c >= k) eidx.push_back(c - k);
  if (static_cast<int>(eidx.size()) != m - k)
    throw internal_error("quotient_by_span: completion failed");
  Matrix e = Matrix::zeros(f, m, m - k);
  for (int j = 0; j < m - k; ++j) e.set_int(eidx[j], j, 1);
  Matrix t = basis.hstack(e);
  auto ti = t.inverse();
  if (!ti) throw internal_error("quotient_by_span: basis change not invertible");
  QuotientData q;
  q.proj = ti->block(k, 0, m - k, m);
  q.section = e;
  return q;
}

}  // namespace cotensor
