#include "cotensor/fixtures.hpp"

namespace cotensor {

namespace {

// Comultiplication making degree 0 grouplike and every positive-degree basis
// element primitive: y |-> y*1 + 1*y.
std::vector<Matrix> primitive_comult(const ChainComplex& c) {
  FieldSpec f = c.field();
  MultiTensor cc({c, c}, c.maxdeg());
  std::vector<Matrix> out(c.maxdeg() + 1);
  out[0] = Matrix::identity(f, 1);
  for (int n = 1; n <= c.maxdeg(); ++n) {
    Matrix m = Matrix::zeros(f, cc.complex().dim(n), c.dim(n));
    int right = cc.find_tuple(n, {0, n});
    int left = cc.find_tuple(n, {n, 0});
    for (int i = 0; i < c.dim(n); ++i) {
      if (right >= 0) m.set_int(cc.tuple_offset(n, right) + i, i, 1);
      if (left >= 0) m.set_int(cc.tuple_offset(n, left) + i, i, 1);
    }
    out[n] = m;
  }
  return out;
}

CoalgebraPtr share(DGCoalgebra c) {
  return std::make_shared<const DGCoalgebra>(std::move(c));
}

}  // namespace

CoalgebraPtr fixture_point_coalgebra(FieldSpec f) {
  ChainComplex c = ChainComplex::unit(f);
  return share(make_coalgebra(c, primitive_comult(c),
                              Matrix::identity(f, 1)));
}

CoalgebraPtr fixture_sphere2_coalgebra(FieldSpec f) {
  ChainComplex c(f, {1, 0, 1}, {});
  return share(make_coalgebra(c, primitive_comult(c),
                              Matrix::identity(f, 1)));
}

CoalgebraPtr fixture_sphere2_acyclic_coalgebra(FieldSpec f) {
  // Degree-2 basis: [surviving class, killed class u]; degree-3 basis: [v]
  // with dv = u.
  std::vector<Matrix> d(4);
  d[3] = Matrix::from_ints(f, 2, 1, {0, 1});
  ChainComplex c(f, {1, 0, 2, 1}, d);
  return share(make_coalgebra(c, primitive_comult(c),
                              Matrix::identity(f, 1)));
}

CoalgebraPtr fixture_proj_plane_coalgebra(FieldSpec f) {
  ChainComplex c(f, {1, 0, 1, 0, 1}, {});
  std::vector<Matrix> comult = primitive_comult(c);
  MultiTensor cc({c, c}, 4);
  int mid = cc.find_tuple(4, {2, 2});
  comult[4].set_int(cc.tuple_offset(4, mid), 0, 1);
  return share(make_coalgebra(c, comult, Matrix::identity(f, 1)));
}

CoalgebraMap fixture_collapse_map(FieldSpec f) {
  CoalgebraPtr src = fixture_sphere2_acyclic_coalgebra(f);
  CoalgebraPtr dst = fixture_sphere2_coalgebra(f);
  CoalgebraMap m;
  m.source = *src;
  m.target = *dst;
  m.f = {Matrix::identity(f, 1), Matrix::zeros(f, 0, 0),
         Matrix::from_ints(f, 1, 2, {1, 0}), Matrix::zeros(f, 0, 1)};
  return m;
}

std::vector<NamedCoalgebra> fixture_coalgebras(FieldSpec f) {
  return {{"f1", fixture_point_coalgebra(f)},
          {"f2", fixture_sphere2_coalgebra(f)},
          {"f3", fixture_sphere2_acyclic_coalgebra(f)},
          {"f4", fixture_proj_plane_coalgebra(f)}};
}

std::vector<NamedComodule> fixture_comodules(FieldSpec f) {
  std::vector<NamedComodule> out;
  ChainComplex point = ChainComplex::unit(f);
  for (const NamedCoalgebra& nc : fixture_coalgebras(f)) {
    out.push_back({"triv-k(" + nc.name + ")",
                   trivial_comodule(point, nc.c)});
    out.push_back({"cofree-k(" + nc.name + ")",
                   cofree_comodule(point, nc.c)});
  }
  return out;
}

}  // namespace cotensor
