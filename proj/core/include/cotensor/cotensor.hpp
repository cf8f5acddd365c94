#pragma once

// Cotensor products, the reduced two-sided cobar bicomplex, CoTor (cobar
// route and injective-resolution route), Ext, coflatness/fibrancy
// certificates, fibration testing, and change of coalgebras.

#include <optional>
#include <string>
#include <vector>

#include "cotensor/comodule.hpp"

namespace cotensor {

// X [] Y = degreewise kernel of (rho_X expanded at slot 0) minus (lambda_Y
// expanded at slot 1), as maps (X (x) Y)_n -> (X (x) C (x) Y)_n.  When the
// coalgebra is cocommutative the right coaction of Y induces a comodule
// structure on the kernel.
struct CotensorResult {
  ChainComplex complex;
  std::vector<Matrix> incl;  // into the ambient tensor product
  ChainComplex ambient;      // X (x) Y, possibly degree-capped
  std::optional<DGComodule> comodule;
};
CotensorResult cotensor(const DGComodule& x, const DGComodule& y,
                        int cap = -1, bool want_comodule = true);

// Maps induced on cotensor kernels by a comodule map in the right slot.
std::vector<Matrix> cotensor_map_right(const DGComodule& x,
                                       const ComoduleMap& f,
                                       const CotensorResult& xy,
                                       const CotensorResult& xy2);

// Verifies ((X [] Y) [] Z) and (X [] (Y [] Z)) agree inside X (x) Y (x) Z:
// equal spans in the flat layout, hence a mediating isomorphism.
bool cotensor_assoc_check(const DGComodule& x, const DGComodule& y,
                          const DGComodule& z);

// Reduced cobar bicomplex: row q carries (X (x) Cbar^q (x) Y) capped at
// `cap`, with vertical differential scaled by (-1)^q so that the squares
// anticommute; horiz[q][n] : row_q -> row_{q+1} in chain degree n.
struct CobarBicomplex {
  int qmax = 0;
  int cap = 0;
  std::vector<ChainComplex> rows;
  std::vector<std::vector<Matrix>> horiz;
};
CobarBicomplex cobar_bicomplex(const DGComodule& x, const DGComodule& y,
                               int qmax, int cap);
Report validate_cobar(const CobarBicomplex& b);

// CoTor^q per chain degree: cohomology of the cobar rows at fixed chain
// degree (row maps preserve the chain degree).
struct CotorResult {
  int qmax = 0;
  int through = 0;
  // dims[q][n] = dim CoTor^q in chain degree n, for q <= qmax, n <= through.
  std::vector<GradedDims> dims;
};
CotorResult cotor(const DGComodule& x, const DGComodule& y, int qmax,
                  int through);

// 0 -> Y -> I^0 -> I^1 -> ... with I^q cofree on the carrier of the
// iterated cokernel, embedded by its coaction.
struct InjectiveResolution {
  ComoduleMap aug;                 // Y -> I^0
  std::vector<DGComodule> stages;  // I^0 .. I^length
  std::vector<ComoduleMap> maps;   // I^q -> I^{q+1}, q < length
};
InjectiveResolution injective_resolution(const DGComodule& y, int length);

// CoTor computed as H^q(X [] I^*): the resolution route, used as an
// independent cross-check of the cobar route.
CotorResult cotor_via_resolution(const DGComodule& x, const DGComodule& y,
                                 int qmax, int through);

// Ext^i(X, Y) per internal degree: derived functor of degree-n cycles of
// Hom_C(X, -), computed through the injective resolution of Y.
struct ExtResult {
  int i = 0;
  int lo = 0;
  GradedDims dims;  // dims[k] at internal degree lo + k
  int dim(int n) const {
    int k = n - lo;
    return (k >= 0 && k < static_cast<int>(dims.size())) ? dims[k] : 0;
  }
};
ExtResult ext(const DGComodule& x, const DGComodule& y, int i, int lo,
              int hi);

// Fibrant = coflat, certified by vanishing of CoTor^1(k, -) through the
// stated chain degree; witness_degree reports the first nonzero class.
struct FibrancyCertificate {
  bool fibrant = false;
  int through = 0;
  int witness_degree = -1;
};
FibrancyCertificate is_fibrant(const DGComodule& m, int through = -1);

enum class FibrationVerdict { yes, no, inconclusive };
struct FibrationResult {
  FibrationVerdict verdict = FibrationVerdict::inconclusive;
  int through = 0;
  std::string detail;
};
// Epimorphisms of comodules are tested degreewise; for an epimorphism the
// verdict is is_fibrant(kernel), otherwise inconclusive.
FibrationResult is_fibration(const ComoduleMap& f, int through = -1);

// Change of coalgebras along g : C -> D.
DGComodule corestrict(const DGComodule& x, const CoalgebraMap& g,
                      CoalgebraPtr dptr);

// C itself as a D-comodule along g (right coaction (id (x) g) Delta, left
// coaction (g (x) id) Delta stored explicitly).
DGComodule coalgebra_along(const CoalgebraMap& g, CoalgebraPtr cptr,
                           CoalgebraPtr dptr);

// X []_D C with its C-coaction from Delta_C, plus the adjunction counit
// (id (x) counit_C) : X []_D C -> X on carriers.
struct CoinducedComodule {
  DGComodule m;                // over C
  CotensorResult cot;          // the underlying equalizer inside X (x) C
  std::vector<Matrix> counit;  // cot.complex -> X
};
CoinducedComodule coinduce(const DGComodule& x, const CoalgebraMap& g,
                           CoalgebraPtr cptr, CoalgebraPtr dptr);

// Adjunction unit X -> coinduce(corestrict(X)) on carriers.
std::vector<Matrix> coinduction_unit(const DGComodule& x,
                                     const CoinducedComodule& ci);

}  // namespace cotensor
