#pragma once
// Postnikov towers of dg-comodules: homology-correcting pullbacks along the
// generating fibrations D^n(V)(x)C -> S^n(V)(x)C and 0 -> S^0(V)(x)C,
// stagewise towers that stabilize in each degree, degreewise-assembled
// stabilized limits (fibrant replacements), and the factorization of an
// arbitrary comodule map as a mono quasi-isomorphism followed by a tower.

#include <vector>

#include "cotensor/comodule.hpp"

namespace cotensor {

// One correcting pullback. Given fn : X_n -> V surjective on degree-n cycles
// and vanishing on boundaries, form the classifying comodule map
// X -> S^n(V)(x)C adjoint to fn and pull back the generating fibration
// D^n(V)(x)C -> S^n(V)(x)C (for n = 0: 0 -> S^0(V)(x)C). The result P has
// H_i(P) = H_i(X) for i != n and H_n(P) = ker H_n(fn on classes);
// P_i = X_i for i < n-1 and i = n, and P_{n-1} = X_{n-1} (+) V.
struct FixHomologyStep {
  int n = 0;     // corrected degree
  int vdim = 0;  // dim V
  DGComodule p;
  ComoduleMap to_x;      // P -> X; pullback leg along the generating fibration
  ComoduleMap to_disk;   // P -> D^n(V)(x)C (P -> 0 when n = 0)
  ComoduleMap classify;  // X -> S^n(V)(x)C
  ComoduleMap gen_fib;   // D^n(V)(x)C -> S^n(V)(x)C (0 -> S^0(V)(x)C at n=0)
};

FixHomologyStep fix_homology_step(const DGComodule& x, int n, const Matrix& fn);

// Correct one homology degree of the target of a degreewise-injective,
// homology-injective comodule map j : X -> Y. Sets V = coker H_n(j), solves
// for the correcting surjection fn : Y_n -> V (projection onto V on cycle
// classes, zero on j(X_n)), and forms P = F_n(Y) with the mediating map
// X -> P satisfying to_x . mediating = j. H_n(mediating) is an isomorphism
// and H_i is unchanged for i != n.
struct FactorStep {
  FixHomologyStep fix;    // pullback over Y; fix.to_x : F_n(Y) -> Y
  ComoduleMap mediating;  // X -> F_n(Y)
  Matrix fn;              // correcting surjection Y_n -> V
};

FactorStep factor_step(const ComoduleMap& j, int n);
// Degree-zero variant: pull back 0 -> S^0(V)(x)C with V = coker H_0(j).
FactorStep degree_zero_step(const ComoduleMap& j);

// Attaching data for tower stage n >= 2.
struct PostnikovStage {
  int n = 0;
  int vdim = 0;     // dim V_n = coker(H_n(X) -> H_n(X(n-1)))
  FactorStep step;  // pullback witness: classify, gen_fib, to_disk, mediating
};

// X(0) = 0, X(1) = U(X)(x)C with inclusion the coaction, and for n >= 2
// X(n) = pullback of X(n-1) -> S^n(V_n)(x)C <- D^n(V_n)(x)C. Connecting
// maps are epimorphisms with cofree kernels; H_i(X) -> H_i(X(n)) is an
// isomorphism for i <= n; degree i is constant from stage i+1 on.
struct PostnikovTower {
  DGComodule x;
  std::vector<DGComodule> stages;       // X(0), ..., X(N)
  std::vector<ComoduleMap> connecting;  // connecting[n] : X(n+1) -> X(n)
  std::vector<ComoduleMap> incl;        // incl[n] : X -> X(n)
  std::vector<PostnikovStage> attach;   // stages n = 2..N
};

PostnikovTower postnikov_tower(const DGComodule& x, int stages);

// Degreewise-stable value of the tower: m_i = X(i+1)_i with differential and
// coaction read off from stage i+1. Requires the tower to be built to stage
// >= maxdeg(X) + 2. The carrier is marked truncated unless the tower has
// become constant (top inclusion already a quasi-isomorphism), in which case
// the top stage itself is returned.
struct StabilizedLimit {
  DGComodule m;      // the fibrant replacement of the tower's base
  ComoduleMap incl;  // X -> m, a quasi-isomorphism
};

StabilizedLimit stabilized_limit(const PostnikovTower& t);

// Factorization of f : X -> Y through W = (U(X)(x)C) (+) Y: the mono
// j = (coaction, f) : X -> W is corrected degree by degree (G_0 at degree 0,
// then G_n at degree n), and the stabilized limit gives a mono
// quasi-isomorphism jtilde : X -> Wtilde together with a stagewise tower map
// Wtilde -> Y whose composite with jtilde equals f.
struct Factorization {
  ComoduleMap f;     // the factored map X -> Y
  DGComodule w;      // (U(X)(x)C) (+) Y
  ComoduleMap j;     // X -> W from (coaction, f)
  ComoduleMap proj;  // W -> Y, projection (epi with cofree kernel)
  std::vector<FactorStep> stages;       // G_0, ..., G_N (G_n at degree n)
  std::vector<DGComodule> tower;        // W, G_0(W), ..., G_N(W)
  std::vector<ComoduleMap> connecting;  // connecting[k] : tower[k+1]->tower[k]
  std::vector<ComoduleMap> incl;        // incl[k] : X -> tower[k]; incl[0] = j
  DGComodule wtilde;
  ComoduleMap jtilde;     // X -> Wtilde, mono quasi-isomorphism
  ComoduleMap tower_map;  // Wtilde -> Y with tower_map . jtilde = f
};

// Builds at least enough stages for the limit to stabilize (the requested
// count is raised to maxdeg(W) + 2 when smaller).
Factorization factorize(const ComoduleMap& f, int stages);

// Checks every tower invariant: mediating triangles, homology isomorphisms
// H_i(X) = H_i(X(n)) for i <= n, fibers of the connecting maps isomorphic to
// S^n(V_{n+1})(x)C degreewise, connecting maps certified by is_fibration,
// bit-exact stabilization (identity blocks), and the pullback witness
// squares (commutation plus kernel characterization).
Report verify_tower(const PostnikovTower& t);

// Checks the factorization contract: composite equals f degreewise, jtilde
// degreewise injective and a homology isomorphism inside the exact window,
// every connecting map a certified generating-fibration pullback, and
// is_fibration positive on every epi connecting map.
Report verify_factorization(const Factorization& fz);

}  // namespace cotensor
