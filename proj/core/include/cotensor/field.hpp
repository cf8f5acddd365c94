#pragma once

// Exact dense linear algebra over the rationals and over prime fields GF(p).
//
// Every algorithm pivots deterministically (first nonzero entry in column
// order, scanning remaining rows top to bottom), so all derived data --
// reduced forms, kernel bases, particular solutions, sections, chosen
// complements -- is reproducible bit for bit across runs and platforms.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "cotensor/common.hpp"

namespace cotensor {

// Coefficient field: characteristic 0 selects the rationals, a prime p
// selects GF(p) with entries stored as canonical representatives in [0, p).
struct FieldSpec {
  long long characteristic = 0;

  static FieldSpec rationals() { return {0}; }
  static FieldSpec gf(long long p) { return {p}; }

  bool is_rational() const { return characteristic == 0; }
  bool is_valid() const;
  std::string name() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

class Matrix;

// Row reduction output: r is the reduced row echelon form, pivots lists the
// pivot column of each nonzero row in order, rank = pivots.size().
struct RrefResult {
  std::vector<int> pivots;
  int rank = 0;
  // reduced matrix is returned separately to keep this POD-ish
};

class Matrix {
 public:
  Matrix() = default;

  static Matrix zeros(FieldSpec f, int rows, int cols);
  static Matrix identity(FieldSpec f, int n);
  // Entries row-major; GF(p) values are reduced, rationals taken as integers.
  static Matrix from_ints(FieldSpec f, int rows, int cols,
                          const std::vector<long long>& entries);
  // Entries as strings: integers for GF(p), "a/b" or integers for Q.
  static Matrix from_strings(FieldSpec f, int rows, int cols,
                             const std::vector<std::string>& entries);
  // P with P*e_j = e_image[j]; optional signs[j] in {+1,-1}.
  static Matrix permutation(FieldSpec f, const std::vector<int>& image);
  static Matrix signed_permutation(FieldSpec f, const std::vector<int>& image,
                                   const std::vector<int>& signs);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  FieldSpec field() const { return f_; }
  bool is_zero() const;
  bool is_identity() const;

  friend bool operator==(const Matrix& a, const Matrix& b);

  long long int_at(int r, int c) const;   // GF(p) storage only
  mpq_class rat_at(int r, int c) const;   // rational storage only
  bool entry_is_zero(int r, int c) const;
  std::string entry_string(int r, int c) const;  // canonical text form
  void set_int(int r, int c, long long v);
  void set_rat(int r, int c, const mpq_class& v);
  void set_from(const Matrix& src, int sr, int sc, int r, int c);

  Matrix transpose() const;
  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix negated() const;
  // sign must be +1 or -1; used for Koszul signs.
  Matrix scaled_by_sign(int sign) const;

  Matrix hstack(const Matrix& right) const;
  Matrix vstack(const Matrix& below) const;
  void set_block(int r0, int c0, const Matrix& b);
  Matrix block(int r0, int c0, int nrows, int ncols) const;
  Matrix select_cols(const std::vector<int>& idx) const;
  Matrix select_rows(const std::vector<int>& idx) const;
  static Matrix kronecker(const Matrix& a, const Matrix& b);

  // Reduced row echelon form with deterministic pivoting.
  std::pair<Matrix, RrefResult> rref() const;
  int rank() const;
  // Columns span ker(this); for each free column j the basis vector has a 1
  // in slot j, so the kernel of a zero map is the identity matrix.
  Matrix kernel_basis() const;
  // Basis of the column space taken from the original matrix's pivot columns,
  // plus the pivot column indices.
  std::pair<Matrix, std::vector<int>> column_space_basis() const;
  // Particular solution of this * X = rhs with free variables set to zero.
  std::optional<Matrix> solve(const Matrix& rhs) const;
  std::optional<Matrix> inverse() const;
  // s with this * s = identity; throws precondition_error if not surjective.
  Matrix section_of_surjection() const;
  // Canonical basis of the column space (unique per subspace): the nonzero
  // rows of the row-reduced transpose, transposed back.
  Matrix canonical_span() const;
  // Basis of {x : this*x in span(s)}.
  Matrix preimage_of_span(const Matrix& s) const;

  // u with mono * u = w; throws internal_error when inconsistent (callers
  // use it only where consistency is guaranteed by construction).
  static Matrix factor_through(const Matrix& mono, const Matrix& w);
  static Matrix span_sum(const Matrix& a, const Matrix& b);
  static Matrix span_intersection(const Matrix& a, const Matrix& b);
  static bool span_contains(const Matrix& space, const Matrix& vecs);

 private:
  FieldSpec f_;
  int rows_ = 0, cols_ = 0;
  std::vector<long long> ip_;  // GF(p) entries
  std::vector<mpq_class> qp_;  // rational entries

  void alloc();
  void check_same_field(const Matrix& other) const;
};

// Data of the quotient k^m -> k^m / span(sub): proj * section = identity,
// proj * sub = 0, dim of the quotient = m - rank(sub).
struct QuotientData {
  Matrix proj;     // t x m
  Matrix section;  // m x t, columns are standard basis vectors
};
QuotientData quotient_by_span(const Matrix& sub);

Report validate_field(const FieldSpec& f);

}  // namespace cotensor
