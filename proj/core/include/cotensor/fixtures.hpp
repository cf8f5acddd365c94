#pragma once

// Built-in example coalgebras and comodules shared by the test suite and the
// CLI fixture library.  All of them have 0/1 structure constants, so they are
// valid over any coefficient field.

#include <string>
#include <vector>

#include "cotensor/comodule.hpp"

namespace cotensor {

// f1: the field itself in degree 0.
CoalgebraPtr fixture_point_coalgebra(FieldSpec f);
// f2: dims [1,0,1], one primitive degree-2 class.
CoalgebraPtr fixture_sphere2_coalgebra(FieldSpec f);
// f3: dims [1,0,2,1] = f2 plus a primitive acyclic pair dv = u; the collapse
// map onto f2 is a quasi-isomorphism of coalgebras.
CoalgebraPtr fixture_sphere2_acyclic_coalgebra(FieldSpec f);
// f4: dims [1,0,1,0,1], comultiplication x4 |-> x4*1 + x2*x2 + 1*x4.
CoalgebraPtr fixture_proj_plane_coalgebra(FieldSpec f);

// The quasi-isomorphism f3 -> f2 (kills the acyclic pair).
CoalgebraMap fixture_collapse_map(FieldSpec f);

struct NamedCoalgebra {
  std::string name;
  CoalgebraPtr c;
};
struct NamedComodule {
  std::string name;
  DGComodule m;
};

// f1..f4 in order.
std::vector<NamedCoalgebra> fixture_coalgebras(FieldSpec f);
// The shipped comodule inventory: trivial(k) and cofree(k) over each fixture
// coalgebra.
std::vector<NamedComodule> fixture_comodules(FieldSpec f);

}  // namespace cotensor
