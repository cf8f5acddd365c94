#pragma once

// Differential graded coalgebras over a field: validation (coassociativity,
// counitality, chain-map comultiplication, cocommutativity, simple
// connectivity), the coaugmentation, the unit coideal with its reduced
// comultiplication, coalgebra maps, and the homology coalgebra.

#include <vector>

#include "cotensor/chain.hpp"

namespace cotensor {

// Comultiplication comult[n] : C_n -> (C (x) C)_n in the binary tensor
// layout; counit : C_0 -> k; unit : k -> C_0 a chosen coaugmentation with
// counit * unit = 1.
struct DGCoalgebra {
  ChainComplex c;
  std::vector<Matrix> comult;
  Matrix counit;
  Matrix unit;

  FieldSpec field() const { return c.field(); }
  int maxdeg() const { return c.maxdeg(); }
  Matrix comult_at(int n) const;
};

// Builds the struct and derives the coaugmentation as the canonical section
// of the counit (its inverse when dim C_0 = 1).
DGCoalgebra make_coalgebra(ChainComplex c, std::vector<Matrix> comult,
                           Matrix counit);

struct CoalgebraProps {
  bool cocommutative = false;
  bool simply_connected = false;
};

Report validate_coalgebra(const DGCoalgebra& c,
                          CoalgebraProps* props = nullptr);
bool is_cocommutative(const DGCoalgebra& c);
bool is_simply_connected(const DGCoalgebra& c);

// Unit coideal ker(counit) with the reduced comultiplication.  proj is a
// chosen retraction of incl with incl*proj = id - unit*counit in degree 0.
struct Coideal {
  ChainComplex cbar;
  std::vector<Matrix> incl;        // cbar_n -> C_n
  std::vector<Matrix> proj;        // C_n -> cbar_n
  std::vector<Matrix> red_comult;  // cbar_n -> (cbar (x) cbar)_n
};
Coideal unit_coideal(const DGCoalgebra& c);

struct CoalgebraMap {
  DGCoalgebra source, target;
  std::vector<Matrix> f;
  Matrix at(int n) const;
};
Report validate_coalgebra_map(const CoalgebraMap& m);

// Homology H(C) as a coalgebra with zero differential: classes of the chosen
// splitting, comultiplication read off through the Kunneth basis
// [z_a (x) z_b] of H(C (x) C).  Also returns the splitting used, so callers
// can transport other structure to the same basis.
struct HomologyCoalgebra {
  DGCoalgebra h;
  Splitting split;
};
HomologyCoalgebra homology_coalgebra(const DGCoalgebra& c);

}  // namespace cotensor
