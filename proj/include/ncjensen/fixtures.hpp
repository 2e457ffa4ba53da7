// Built-in worked examples shared by the test suites and the CLI.
#pragma once

#include "ncjensen/fock.hpp"

namespace ncj::fixtures {

// Two selfadjoint 3x3 generators whose compression to span{e1} is of Fubini
// type but not a free product ucp map.
struct NonProductFubini {
  FiniteRep rep;
  Subspace H;
  std::vector<AlgebraSpec> algebras;
};

inline NonProductFubini non_product_fubini() {
  Matrix y1(3, 3), y2(3, 3);
  y1 << 1, 1, 0,
        1, 1, 0,
        0, 0, 1;
  y2 << 1, 0, 1,
        0, 1, 1,
        1, 1, 1;
  NonProductFubini fx;
  fx.rep = make_rep({y1, y2});
  fx.H = Subspace::span_of(3, {0});
  fx.algebras = interval_family({{-3.0, 3.0}, {-3.0, 3.0}});
  return fx;
}

inline NCPoly symmetrized_ab() {
  return make_symmetrized_product({0, 1}, {poly_monomial(1), poly_monomial(1)});
}

inline NCPoly conjugated_ab2a() {
  return make_conjugated_square({0, 1}, {poly_monomial(1), poly_monomial(1)});
}

// Normalized trace on M_2 with commuting a = diag(1,0), b = diag(0,1),
// written as a compression of the doubled representation. Violates the
// symmetrized-product inequality: f(bar) = 1/2 > mu(f) = 0.
inline CompressedPointEval m2_trace_eval() {
  Matrix a = Matrix::Zero(4, 4), b = Matrix::Zero(4, 4);
  a.diagonal() << 1, 0, 1, 0;
  b.diagonal() << 0, 1, 0, 1;
  Matrix alpha = Matrix::Zero(4, 1);
  alpha(0, 0) = 1.0 / std::sqrt(2.0);
  alpha(3, 0) = 1.0 / std::sqrt(2.0);
  CompressedPointEval mu{make_rep({a, b}), alpha};
  mu.validate();
  return mu;
}

// Intervals whose corners reproduce the classical scalar counterexample for
// the joint-convexity failure of ab+ba: midpoint of (1,-1) and (0,0).
inline std::vector<AlgebraSpec> classical_xy_algebras() {
  return interval_family({{0.0, 1.0}, {-1.0, 0.0}});
}

// The explicit separate-mode witness for -ab2a used by the converse check:
// y = (diag(1,-1), I_2), alpha = (1,1)^T / sqrt(2).
inline ConvexityWitness neg_ab2a_witness() {
  ConvexityWitness w;
  w.mode = ConvexityMode::Separate;
  w.level = 1;
  w.coordinate = 0;
  Matrix y1 = Matrix::Zero(2, 2), y2 = identity(2);
  y1.diagonal() << 1, -1;
  w.y.level = 2;
  w.y.entries = {{0, y1}, {1, y2}};
  w.isometry = Matrix::Constant(2, 1, Complex(1.0 / std::sqrt(2.0), 0.0));
  w.x.level = 1;
  w.x.entries = {{0, Matrix::Zero(1, 1)}, {1, identity(1)}};
  NCPoly f = Complex(-1.0) * conjugated_ab2a();
  w.defect = min_eigenvalue(
      Matrix(w.isometry.adjoint() * evaluate_poly(f, w.y) * w.isometry - evaluate_poly(f, w.x)));
  return w;
}

}  // namespace ncj::fixtures
