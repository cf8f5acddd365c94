#pragma once

// Deterministic generators for property tests. Randomness always flows
// through a caller-owned std::mt19937_64 with a fixed seed and engine-modulo
// draws, so every run of the suite sees the same inputs.
//
// Random complexes are shuffled direct sums of disks and spheres, so their
// homology is known by construction. Random comodules are direct sums of
// trivial and cofree pieces transported along a random invertible change of
// basis; transport preserves validity, so the results are valid comodules
// with known structure but generic-looking matrices.

#include <optional>
#include <random>
#include <vector>

#include "cotensor/chain.hpp"
#include "cotensor/comodule.hpp"

namespace testgen {

using cotensor::ChainComplex;
using cotensor::ChainMap;
using cotensor::CoalgebraPtr;
using cotensor::ComoduleMap;
using cotensor::DGComodule;
using cotensor::FieldSpec;
using cotensor::GradedDims;
using cotensor::Matrix;

using Rng = std::mt19937_64;

inline long long draw(Rng& g, long long lo, long long hi) {
  return lo + static_cast<long long>(g() % static_cast<unsigned long long>(
                                               hi - lo + 1));
}

inline Matrix random_matrix(FieldSpec f, int rows, int cols, Rng& g) {
  Matrix m = Matrix::zeros(f, rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (f.is_rational())
        m.set_int(r, c, draw(g, -3, 3));
      else
        m.set_int(r, c, draw(g, 0, f.characteristic - 1));
    }
  return m;
}

inline Matrix random_invertible(FieldSpec f, int n, Rng& g) {
  if (n == 0) return Matrix::zeros(f, 0, 0);
  for (;;) {
    Matrix m = random_matrix(f, n, n, g);
    if (m.rank() == n) return m;
  }
}

struct RandomComplex {
  ChainComplex x;
  GradedDims h;  // homology dimensions by construction
};

// Direct sum of spheres and disks in random multiplicities, conjugated
// degreewise by random invertible matrices. Homology dims = sphere counts.
inline RandomComplex random_complex(FieldSpec f, int maxdeg, int maxdim,
                                    Rng& g) {
  std::vector<int> s(maxdeg + 2, 0), d(maxdeg + 2, 0);
  for (int n = 0; n <= maxdeg; ++n) s[n] = static_cast<int>(draw(g, 0, 2));
  for (int n = 1; n <= maxdeg; ++n) d[n] = static_cast<int>(draw(g, 0, 2));
  GradedDims dims(maxdeg + 1, 0);
  for (int n = 0; n <= maxdeg; ++n) {
    dims[n] = s[n] + d[n] + d[n + 1];
    if (dims[n] > maxdim) {
      int over = dims[n] - maxdim;
      int cut = std::min(over, s[n]);
      s[n] -= cut;
      over -= cut;
      cut = std::min(over, d[n + 1]);
      d[n + 1] -= cut;
      dims[n] = s[n] + d[n] + d[n + 1];
    }
  }
  // Basis order in degree n: spheres, disk tops (d[n]), disk bottoms
  // (d[n+1]); the differential sends disk top j to disk bottom j below.
  std::vector<Matrix> diffs;
  diffs.push_back(Matrix::zeros(f, 0, dims[0]));
  for (int n = 1; n <= maxdeg; ++n) {
    Matrix dn = Matrix::zeros(f, dims[n - 1], dims[n]);
    for (int j = 0; j < d[n]; ++j)
      dn.set_int(s[n - 1] + d[n - 1] + j, s[n] + j, 1);
    diffs.push_back(dn);
  }
  std::vector<Matrix> p, pinv;
  for (int n = 0; n <= maxdeg; ++n) {
    p.push_back(random_invertible(f, dims[n], g));
    pinv.push_back(*p.back().inverse());
  }
  std::vector<Matrix> conj;
  conj.push_back(Matrix::zeros(f, 0, dims[0]));
  for (int n = 1; n <= maxdeg; ++n)
    conj.push_back(p[n - 1] * diffs[n] * pinv[n]);
  GradedDims h(maxdeg + 1, 0);
  for (int n = 0; n <= maxdeg; ++n) h[n] = s[n];
  return {ChainComplex(f, dims, conj), h};
}

// A comodule together with the change of basis that produced it, so maps
// into or out of the original can be transported consistently.
struct Transport {
  DGComodule m;
  std::vector<Matrix> p, pinv;  // p[n] : original_n -> shuffled_n
};

// Transport along a random degreewise change of basis of the carrier: diff
// and coaction are conjugated, so the result is again a valid comodule.
inline Transport shuffle_comodule(const DGComodule& m, Rng& g) {
  FieldSpec f = m.field();
  int top = m.maxdeg();
  Transport t;
  for (int n = 0; n <= top; ++n) {
    t.p.push_back(random_invertible(f, m.x.dim(n), g));
    t.pinv.push_back(*t.p.back().inverse());
  }
  std::vector<Matrix> diffs;
  diffs.push_back(Matrix::zeros(f, 0, m.x.dim(0)));
  for (int n = 1; n <= top; ++n)
    diffs.push_back(t.p[n - 1] * m.x.diff(n) * t.pinv[n]);
  ChainComplex x2(f, m.x.dims(), diffs);
  if (m.x.truncated()) x2.mark_truncated();
  ChainMap pmap{m.x, x2, t.p};
  ChainMap pc = tensor_map(pmap, identity_chain_map(m.coalg().c), top);
  std::vector<Matrix> coact;
  for (int n = 0; n <= top; ++n)
    coact.push_back(pc.at(n) * m.coaction_at(n) * t.pinv[n]);
  t.m = DGComodule{m.c, x2, coact, std::nullopt};
  if (m.left_override) {
    ChainMap cp = tensor_map(identity_chain_map(m.coalg().c), pmap, top);
    std::vector<Matrix> left;
    for (int n = 0; n <= top; ++n)
      left.push_back(cp.at(n) * m.left_coaction()[n] * t.pinv[n]);
    t.m.left_override = left;
  }
  return t;
}

// f' = p_t . f . p_s^{-1} between the shuffled ends.
inline ComoduleMap transport_map(const ComoduleMap& f, const Transport& s,
                                 const Transport& t) {
  std::vector<Matrix> comp;
  for (int n = 0; n <= f.source.maxdeg(); ++n) {
    Matrix tn = n < static_cast<int>(t.p.size())
                    ? t.p[n]
                    : Matrix::zeros(f.at(n).field(), t.m.x.dim(n),
                                    t.m.x.dim(n));
    comp.push_back(tn * f.at(n) * s.pinv[n]);
  }
  return ComoduleMap{s.m, t.m, comp};
}

// A random comodule: direct sum of a trivial piece and a cofree piece on
// random complexes, shuffled. `want_trivial` forces / forbids the trivial
// piece (cofree-only comodules are coflat by construction).
inline DGComodule random_comodule(CoalgebraPtr c, int maxdeg, int maxdim,
                                  Rng& g, int want_trivial = -1) {
  FieldSpec f = c->field();
  bool triv = want_trivial < 0 ? draw(g, 0, 1) == 1 : want_trivial > 0;
  RandomComplex a = random_complex(f, maxdeg, maxdim, g);
  RandomComplex b =
      random_complex(f, std::max(0, maxdeg - c->maxdeg()), maxdim, g);
  DGComodule cb = cofree_comodule(b.x, c);
  if (!triv) return shuffle_comodule(cb, g).m;
  DGComodule ta = trivial_comodule(a.x, c);
  return shuffle_comodule(direct_sum(ta, cb).sum, g).m;
}

}  // namespace testgen
