#include "cotensor/coalgebra.hpp"

#include <algorithm>

namespace cotensor {

Matrix DGCoalgebra::comult_at(int n) const {
  if (n >= 0 && n < static_cast<int>(comult.size())) return comult[n];
  MultiTensor cc({c, c}, c.maxdeg());
  return Matrix::zeros(c.field(), cc.complex().dim(n), c.dim(n));
}

DGCoalgebra make_coalgebra(ChainComplex c, std::vector<Matrix> comult,
                           Matrix counit) {
  DGCoalgebra out;
  out.unit = counit.section_of_surjection();
  out.c = std::move(c);
  out.comult = std::move(comult);
  out.counit = std::move(counit);
  return out;
}

Report validate_coalgebra(const DGCoalgebra& c, CoalgebraProps* props) {
  Report rep;
  rep.merge(validate_complex(c.c), "carrier: ");
  int top = c.maxdeg();

  if (c.counit.rows() != 1 || c.counit.cols() != c.c.dim(0)) {
    rep.fail("counit shape mismatch");
    return rep;
  }
  if (c.unit.rows() != c.c.dim(0) || c.unit.cols() != 1) {
    rep.fail("coaugmentation shape mismatch");
    return rep;
  }
  if (static_cast<int>(c.comult.size()) != top + 1) {
    rep.fail("comultiplication must have one component per degree");
    return rep;
  }

  MultiTensor cc({c.c, c.c}, top);
  MultiTensor ccc({c.c, c.c, c.c}, top);
  MultiTensor conly({c.c}, top);
  for (int n = 0; n <= top; ++n) {
    if (c.comult[n].rows() != cc.complex().dim(n) ||
        c.comult[n].cols() != c.c.dim(n)) {
      rep.fail("comultiplication shape mismatch at degree " +
               std::to_string(n));
      return rep;
    }
  }

  // Chain map: d_{C(x)C} comult = comult d_C.
  ChainMap dm{c.c, cc.complex(), c.comult};
  rep.merge(validate_chain_map(dm), "comultiplication: ");

  // Coassociativity, compared inside the flat three-factor layout.
  ChainMap lhs = expand_factor(cc, 0, c.comult, c.c, c.c, ccc);
  ChainMap rhs = expand_factor(cc, 1, c.comult, c.c, c.c, ccc);
  for (int n = 0; n <= top; ++n)
    if (!(lhs.at(n) * c.comult[n] == rhs.at(n) * c.comult[n]))
      rep.fail("comultiplication not coassociative at degree " +
               std::to_string(n));

  // Counitality on both sides.
  std::vector<Matrix> eps = {c.counit};
  ChainMap left = contract_factor(cc, 0, eps, conly);
  ChainMap right = contract_factor(cc, 1, eps, conly);
  for (int n = 0; n <= top; ++n) {
    if (!(left.at(n) * c.comult[n]).is_identity())
      rep.fail("left counit identity fails at degree " + std::to_string(n));
    if (!(right.at(n) * c.comult[n]).is_identity())
      rep.fail("right counit identity fails at degree " + std::to_string(n));
  }

  // Coaugmentation: a section of the counit that is a coalgebra point.
  if (!(c.counit * c.unit).is_identity())
    rep.fail("counit * coaugmentation != 1");
  if (rep.ok && !(c.comult[0] * c.unit == Matrix::kronecker(c.unit, c.unit)))
    rep.fail("coaugmentation is not grouplike");
  if ((c.counit * c.c.diff(1)).rows() > 0 &&
      !(c.counit * c.c.diff(1)).is_zero())
    rep.fail("counit is not a chain map");

  if (props) {
    ChainMap tw = twist(c.c, c.c, top);
    props->cocommutative = true;
    for (int n = 0; n <= top && props->cocommutative; ++n)
      if (!(tw.at(n) * c.comult[n] == c.comult[n]))
        props->cocommutative = false;
    props->simply_connected = c.c.dim(0) == 1 && c.c.dim(1) == 0;
  }
  return rep;
}

bool is_cocommutative(const DGCoalgebra& c) {
  ChainMap tw = twist(c.c, c.c, c.maxdeg());
  for (int n = 0; n <= c.maxdeg(); ++n)
    if (!(tw.at(n) * c.comult_at(n) == c.comult_at(n))) return false;
  return true;
}

bool is_simply_connected(const DGCoalgebra& c) {
  return c.c.dim(0) == 1 && c.c.dim(1) == 0;
}

Coideal unit_coideal(const DGCoalgebra& c) {
  FieldSpec f = c.field();
  int top = c.maxdeg();
  Coideal out;
  out.incl.resize(top + 1);
  out.proj.resize(top + 1);

  GradedDims dims(top + 1, 0);
  for (int n = 0; n <= top; ++n) {
    if (n == 0) {
      out.incl[0] = c.counit.kernel_basis();
      Matrix complement =
          Matrix::identity(f, c.c.dim(0)) - c.unit * c.counit;
      out.proj[0] = Matrix::factor_through(out.incl[0], complement);
    } else {
      out.incl[n] = Matrix::identity(f, c.c.dim(n));
      out.proj[n] = out.incl[n];
    }
    dims[n] = out.incl[n].cols();
  }
  std::vector<Matrix> d(top + 1);
  for (int n = 1; n <= top; ++n)
    d[n] = out.proj[n - 1] * c.c.diff(n) * out.incl[n];
  out.cbar = ChainComplex(f, dims, d);
  if (c.c.truncated()) out.cbar.mark_truncated();

  ChainMap projmap{c.c, out.cbar, out.proj};
  ChainMap pp = tensor_map(projmap, projmap, top);
  out.red_comult.resize(top + 1);
  for (int n = 0; n <= top; ++n)
    out.red_comult[n] = pp.at(n) * c.comult[n] * out.incl[n];
  return out;
}

Matrix CoalgebraMap::at(int n) const {
  if (n >= 0 && n < static_cast<int>(f.size())) return f[n];
  return Matrix::zeros(source.field(), target.c.dim(n), source.c.dim(n));
}

Report validate_coalgebra_map(const CoalgebraMap& m) {
  Report rep;
  ChainMap cm{m.source.c, m.target.c, m.f};
  rep.merge(validate_chain_map(cm), "carrier map: ");
  int top = m.source.maxdeg();
  ChainMap ff = tensor_map(cm, cm, top);
  for (int n = 0; n <= top; ++n) {
    if (!(ff.at(n) * m.source.comult_at(n) ==
          m.target.comult_at(n) * m.at(n)))
      rep.fail("does not commute with comultiplication at degree " +
               std::to_string(n));
  }
  if (!(m.target.counit * m.at(0) == m.source.counit))
    rep.fail("does not preserve the counit");
  return rep;
}

HomologyCoalgebra homology_coalgebra(const DGCoalgebra& c) {
  FieldSpec f = c.field();
  int top = c.maxdeg();
  HomologyCoalgebra out;
  out.split = split_complex(c.c);
  const Splitting& s = out.split;

  ChainComplex h(f, s.v, {});
  if (c.c.truncated()) h.mark_truncated();
  MultiTensor hh({h, h}, top);
  MultiTensor cc({c.c, c.c}, top);
  ChainComplex ccx = cc.complex();
  Splitting scc = split_complex(ccx);

  std::vector<Matrix> comult(top + 1);
  for (int n = 0; n <= top; ++n) {
    // Kunneth basis of H_n(C (x) C): classes of z_a (x) z_b, in the block
    // order of the tensor layout.
    Matrix kbasis = Matrix::zeros(f, ccx.dim(n), hh.complex().dim(n));
    int colbase = 0;
    for (int ti = 0; ti < static_cast<int>(hh.tuples(n).size()); ++ti) {
      int i = hh.tuples(n)[ti][0], j = hh.tuples(n)[ti][1];
      int tj = cc.find_tuple(n, {i, j});
      if (tj < 0) throw internal_error("homology_coalgebra: missing block");
      Matrix blockm =
          Matrix::kronecker(s.homology_reps(i), s.homology_reps(j));
      kbasis.set_block(cc.tuple_offset(n, tj), colbase, blockm);
      colbase += blockm.cols();
    }
    // [Delta z] expressed in the Kunneth basis modulo boundaries.
    Matrix target = c.comult_at(n) * s.homology_reps(n);
    Matrix coeff =
        Matrix::factor_through(kbasis.hstack(scc.bounds[n]), target);
    comult[n] = coeff.block(0, 0, kbasis.cols(), coeff.cols());
  }

  // The counit kills boundaries (it is a chain map), so evaluating it on the
  // chosen representatives gives the induced counit on classes.
  Matrix counit_row = c.counit * s.homology_reps(0);
  out.h = make_coalgebra(h, comult, counit_row);
  return out;
}

}  // namespace cotensor
