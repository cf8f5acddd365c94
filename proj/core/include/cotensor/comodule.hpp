#pragma once

// Right dg-comodules over a fixed coalgebra: validation, cofree and trivial
// comodules, finite limits and colimits created by the forgetful functor,
// direct sums, truncation, and the enriched Hom with its comodule-linear
// subcomplex.  Left coactions are derived from the twist when the coalgebra
// is cocommutative, or supplied explicitly.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cotensor/coalgebra.hpp"

namespace cotensor {

using CoalgebraPtr = std::shared_ptr<const DGCoalgebra>;

// coaction[n] : X_n -> (X (x) C)_n for n = 0..X.maxdeg, binary layout
// capped at X.maxdeg (complete in that range).
struct DGComodule {
  CoalgebraPtr c;
  ChainComplex x;
  std::vector<Matrix> coaction;
  // Optional explicit left coaction X_n -> (C (x) X)_n for use over
  // non-cocommutative coalgebras.
  std::optional<std::vector<Matrix>> left_override;

  const DGCoalgebra& coalg() const { return *c; }
  FieldSpec field() const { return x.field(); }
  int maxdeg() const { return x.maxdeg(); }
  Matrix coaction_at(int n) const;
  // Left coaction: the stored override, else twist-composed right coaction.
  std::vector<Matrix> left_coaction() const;
};

Report validate_comodule(const DGComodule& m);

// True when the two comodules share the same coalgebra (same object or
// structurally equal data).
bool comodules_compatible(const DGComodule& a, const DGComodule& b);

struct ComoduleMap {
  DGComodule source, target;
  std::vector<Matrix> f;
  Matrix at(int n) const;
  ChainMap carrier() const { return ChainMap{source.x, target.x, f}; }
};

Report validate_comodule_map(const ComoduleMap& m);
ComoduleMap identity_comodule_map(const DGComodule& x);
ComoduleMap zero_comodule_map(const DGComodule& x, const DGComodule& y);
ComoduleMap compose(const ComoduleMap& g, const ComoduleMap& f);

// M (x) C with coaction id (x) comult; the injective objects of the theory.
DGComodule cofree_comodule(const ChainComplex& m, CoalgebraPtr c);
// Carrier M with coaction id (x) coaugmentation.
DGComodule trivial_comodule(const ChainComplex& m, CoalgebraPtr c);
DGComodule zero_comodule(CoalgebraPtr c);
// Functor action of cofree on a chain map M -> N.
ComoduleMap cofree_comodule_map(const ChainMap& g, CoalgebraPtr c);

struct ComoduleSum {
  DGComodule sum;
  ComoduleMap inj_a, inj_b, proj_a, proj_b;
};
ComoduleSum direct_sum(const DGComodule& a, const DGComodule& b);

// Finite limits/colimits, created degreewise on carriers.
struct ComodulePullback {
  DGComodule p;
  ComoduleMap to_a, to_b;  // projections of the square
};
ComodulePullback pullback(const ComoduleMap& f, const ComoduleMap& g);
// Mediating map into a pullback from a commuting cone (qa, qb).
ComoduleMap pullback_mediating(const ComodulePullback& pb,
                               const ComoduleMap& qa, const ComoduleMap& qb);

struct ComoduleKernel {
  DGComodule k;
  ComoduleMap incl;
};
ComoduleKernel kernel(const ComoduleMap& f);

struct ComoduleCokernel {
  DGComodule q;
  ComoduleMap proj;
};
ComoduleCokernel cokernel(const ComoduleMap& f);

// X_{<= n} with the inherited coaction; fails in the report if the coaction
// does not restrict (cannot happen over a simply connected coalgebra).
struct TruncatedComodule {
  DGComodule m;
  ComoduleMap incl;
  Report restricts;
};
TruncatedComodule truncate_comodule(const DGComodule& m, int n);

// Z-graded Hom complex on a finite degree window [lo, lo + dims.size() - 1];
// d[k] : degree (lo+k) -> degree (lo+k-1), (Df) = d_Y f - (-1)^n f d_X.
struct HomComplex {
  FieldSpec f;
  int lo = 0;
  std::vector<int> dims;
  std::vector<Matrix> d;
  int hi() const { return lo + static_cast<int>(dims.size()) - 1; }
  int dim(int n) const;
  Matrix diff(int n) const;  // degree n -> n-1, right-shaped zeros off-window
};

// Ambient Hom(X,Y), with basis: ascending carrier degree i, then the
// row-major entries of the component X_i -> Y_{i+n}.
HomComplex hom_complex(const ChainComplex& x, const ChainComplex& y);

// Comodule-linear subcomplex Hom_C(X,Y) = equalizer of
// f |-> rho_Y f  and  f |-> (f (x) id) rho_X inside Hom(X, Y (x) C).
struct HomSubcomplex {
  HomComplex full;
  HomComplex sub;
  std::vector<Matrix> incl;  // incl[k] : sub degree lo+k -> full degree lo+k
};
HomSubcomplex hom_comodule(const DGComodule& x, const DGComodule& y);

// Post-composition with a comodule map p : Y -> Z restricted to the
// comodule-linear subcomplexes, degreewise on the common window.
std::vector<Matrix> hom_post_compose(const HomSubcomplex& hxy,
                                     const HomSubcomplex& hxz,
                                     const DGComodule& x,
                                     const ComoduleMap& p);

}  // namespace cotensor
