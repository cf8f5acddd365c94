#pragma once

// Non-negatively graded chain complexes of finite dimensional vector spaces,
// chain maps, homology, the Koszul-signed tensor product, and the canonical
// splitting of a complex over a field into spheres and disks.
//
// Grading conventions used throughout:
//  * a complex stores dims[n] for n = 0..maxdeg and differentials
//    d[n] : X_n -> X_{n-1} for n = 1..maxdeg;
//  * (X (x) Y)_n is ordered by ascending degree i of the left factor, blocks
//    X_i (x) Y_{n-i}, row-major within a block (left index slow);
//  * d(x (x) y) = dx (x) y + (-1)^{|x|} x (x) dy;
//  * the twist sends x (x) y to (-1)^{|x||y|} y (x) x.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cotensor/common.hpp"
#include "cotensor/field.hpp"

namespace cotensor {

using GradedDims = std::vector<int>;

class ChainComplex {
 public:
  ChainComplex() = default;
  // diffs[n] : X_n -> X_{n-1} for n >= 1; diffs[0] is ignored and may be
  // empty. Shapes are checked; d*d = 0 is checked by validate_complex.
  ChainComplex(FieldSpec f, GradedDims dims, std::vector<Matrix> diffs);

  static ChainComplex zero(FieldSpec f, int maxdeg = 0);
  static ChainComplex unit(FieldSpec f);  // the field in degree 0
  // Sphere: dim generators in degree n. Disk: degrees n-1 and n with the
  // identity differential (n >= 1).
  static ChainComplex sphere(FieldSpec f, int n, int dim = 1);
  static ChainComplex disk(FieldSpec f, int n, int dim = 1);

  FieldSpec field() const { return f_; }
  int maxdeg() const { return static_cast<int>(dims_.size()) - 1; }
  const GradedDims& dims() const { return dims_; }
  int dim(int n) const {
    return (n >= 0 && n <= maxdeg()) ? dims_[n] : 0;
  }
  // d_n for n in [1, maxdeg]; any other n yields the right-shaped zero map.
  Matrix diff(int n) const;

  int total_dim() const;

  // True when content above maxdeg may have been cut off by a degree cap, so
  // stored degree maxdeg (and homology there) may disagree with the
  // untruncated object.
  bool truncated() const { return truncated_; }
  void mark_truncated() { truncated_ = true; }

  friend bool operator==(const ChainComplex& a, const ChainComplex& b) {
    return a.f_ == b.f_ && a.dims_ == b.dims_ && a.d_ == b.d_;
  }

 private:
  FieldSpec f_;
  GradedDims dims_;
  std::vector<Matrix> d_;
  bool truncated_ = false;
};

Report validate_complex(const ChainComplex& x);

// Degree-zero chain map f[n] : source_n -> target_n.
struct ChainMap {
  ChainComplex source, target;
  std::vector<Matrix> f;

  // f[n] when stored, otherwise the right-shaped zero block.
  Matrix at(int n) const;
};

ChainMap identity_chain_map(const ChainComplex& x);
ChainMap zero_chain_map(const ChainComplex& x, const ChainComplex& y);
ChainMap compose(const ChainMap& g, const ChainMap& f);
Report validate_chain_map(const ChainMap& m);

// dim H_n computed by rank-nullity; the top stored degree is flagged as
// truncation-polluted by homology_exact_through when x is truncated.
int homology_dim(const ChainComplex& x, int n);
GradedDims homology_dims(const ChainComplex& x);
int homology_exact_through(const ChainComplex& x);

// Chosen decomposition X ~= (+)_n S^n(V_n) (+) D^n(W_n) with V_n = H_n(X)
// and W_n = dim B_{n-1}(X).  The model complex orders each degree as
// [homology reps | boundaries B_n | disk tops hitting B_{n-1}], so that
// to_x / from_x are chain isomorphisms between the model and X.
struct Splitting {
  ChainComplex model;
  GradedDims v, w;
  std::vector<Matrix> to_x;     // model_n -> X_n, invertible
  std::vector<Matrix> from_x;   // inverse
  std::vector<Matrix> cycles;   // basis of Z_n(X) in X coordinates
  std::vector<Matrix> bounds;   // basis of B_n(X) in X coordinates

  Matrix homology_reps(int n) const;  // first v[n] columns of to_x[n]
};

Splitting split_complex(const ChainComplex& x);

// Matrix of H_n(f) on the chosen homology bases of the two splittings.
Matrix induced_homology_map(const ChainMap& f, const Splitting& sx,
                            const Splitting& sy, int n);

// Quasi-isomorphism test through the last degree where both homologies are
// truncation-clean (or through `through` if given).
bool is_quasi_iso(const ChainMap& f, int through = -1);

ChainComplex truncate_below(const ChainComplex& x, int n);

struct SumDecomp {
  ChainComplex sum;
  ChainMap inj_a, inj_b, proj_a, proj_b;
};
SumDecomp direct_sum(const ChainComplex& a, const ChainComplex& b);

// ---- tensor machinery ----

// Iterated tensor product of an ordered factor list, capped at degree `cap`
// (cap < 0 means the natural top degree).  Degree-n basis: tuples of factor
// degrees summing to n in lexicographic order, indices row-major within a
// tuple (leftmost factor slowest).  For two factors this is exactly the
// documented binary layout.
class MultiTensor {
 public:
  MultiTensor(std::vector<ChainComplex> factors, int cap = -1);

  const ChainComplex& complex() const { return x_; }
  const std::vector<ChainComplex>& factors() const { return factors_; }
  int cap() const { return x_.maxdeg(); }

  // Degree tuples of degree n in enumeration order.
  const std::vector<std::vector<int>>& tuples(int n) const;
  int tuple_offset(int n, int t) const;
  int tuple_width(const std::vector<int>& degs) const;
  // Index of a tuple within tuples(n), -1 if absent.
  int find_tuple(int n, const std::vector<int>& degs) const;

 private:
  std::vector<ChainComplex> factors_;
  ChainComplex x_;
  std::vector<std::vector<std::vector<int>>> tuples_;
  std::vector<std::vector<int>> offsets_;
};

ChainComplex tensor(const ChainComplex& x, const ChainComplex& y, int cap = -1);

// f (x) g for degree-zero chain maps (no Koszul signs arise).
ChainMap tensor_map(const ChainMap& a, const ChainMap& b, int cap = -1);

// Twist X (x) Y -> Y (x) X, block (i,j) -> (j,i) scaled by (-1)^{ij}.
ChainMap twist(const ChainComplex& x, const ChainComplex& y, int cap = -1);

// Replace factor k by two factors via g[t] : F_k(t) -> (A (x) B)_t (a
// degree-zero map into the binary tensor); yields multi(F) -> multi(F') with
// F' = F with slot k expanded to A, B.  No signs (g has degree zero).
ChainMap expand_factor(const MultiTensor& src, int k,
                       const std::vector<Matrix>& g, const ChainComplex& a,
                       const ChainComplex& b, const MultiTensor& dst);

// Replace factor k via a degree-zero map g[t] : F_k(t) -> A_t.
ChainMap map_factor(const MultiTensor& src, int k,
                    const std::vector<Matrix>& g, const ChainComplex& a,
                    const MultiTensor& dst);

// Drop factor k via g[t] : F_k(t) -> unit_t (so only t = 0 can be nonzero).
ChainMap contract_factor(const MultiTensor& src, int k,
                         const std::vector<Matrix>& g, const MultiTensor& dst);

// Reindexing isomorphisms between the flat three-factor layout [A,B,C] and
// the nested binary layouts; pure permutations (no signs).
std::vector<Matrix> regroup_left(const ChainComplex& a, const ChainComplex& b,
                                 const ChainComplex& c, int cap = -1);
std::vector<Matrix> regroup_right(const ChainComplex& a, const ChainComplex& b,
                                  const ChainComplex& c, int cap = -1);

}  // namespace cotensor
