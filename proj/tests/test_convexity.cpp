#include <doctest.h>

#include "ncjensen/convexity.hpp"
#include "ncjensen/fixtures.hpp"

using namespace ncj;

TEST_CASE("family constructors") {
  NCPoly sym = fixtures::symmetrized_ab();
  CHECK(sym.terms.size() == 2);
  CHECK(is_selfadjoint(sym));

  NCPoly sq = fixtures::conjugated_ab2a();
  CHECK(is_selfadjoint(sq));
  auto rng = make_rng(31);
  for (int t = 0; t < 10; ++t) {
    MatrixTuple x = make_tuple({random_hermitian(rng, 3, -2, 2), random_hermitian(rng, 3, -2, 2)});
    CHECK(min_eigenvalue(evaluate_poly(sq, x)) >= -1e-10);
  }

  CHECK_THROWS_AS(make_symmetrized_product({0, 0}, {poly_monomial(1), poly_monomial(1)}), NcError);
  CHECK_THROWS_AS(make_conjugated_square({0}, {poly_monomial(2)}), NcError);
}

TEST_CASE("ab+ba is separately convex but not jointly convex") {
  NCPoly f = fixtures::symmetrized_ab();
  auto algebras = fixtures::classical_xy_algebras();

  auto sep = check_separate_convexity(f, algebras, ConvexityMode::Separate, {1, 2, 3}, 300, 7);
  CHECK_FALSE(sep.has_value());

  auto joint = check_separate_convexity(f, algebras, ConvexityMode::Joint, {1}, 0, 7);
  REQUIRE(joint.has_value());
  CHECK(joint->trial == -1);  // deterministic corner sweep
  CHECK(joint->level == 1);
  CHECK(std::abs(joint->defect - (-0.5)) < 1e-12);
  CHECK(std::abs(joint->x.at(0)(0, 0) - Complex(0.5, 0.0)) < 1e-12);
  CHECK(std::abs(joint->x.at(1)(0, 0) - Complex(-0.5, 0.0)) < 1e-12);
}

TEST_CASE("-ab2a admits a separate-mode witness") {
  NCPoly f = Complex(-1.0) * fixtures::conjugated_ab2a();
  auto algebras = interval_family({{-1.0, 1.0}, {-1.0, 1.0}});
  auto w = check_separate_convexity(f, algebras, ConvexityMode::Separate, {1, 2}, 1000, 5);
  REQUIRE(w.has_value());
  CHECK(w->defect < 0.0);
  CHECK(w->coordinate >= 0);
  // the witness really is a dilation: x = alpha* y alpha componentwise
  for (const auto& [i, xi] : w->x.entries) {
    Matrix compressed = w->isometry.adjoint() * w->y.at(i) * w->isometry;
    CHECK((compressed - xi).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("jensen_verify accepts c-free instances and flags the trace example") {
  auto rng = make_rng(19);
  CFreeFunctional F = random_cfree_instance(
      rng, interval_family({{-1.0, 1.0}, {-1.0, 1.0}}), 2, 3);
  JensenReport ok = jensen_verify(fixtures::conjugated_ab2a(), F);
  CHECK(ok.holds);

  JensenReport bad = jensen_verify(fixtures::symmetrized_ab(), fixtures::m2_trace_eval());
  CHECK_FALSE(bad.holds);
  CHECK(std::abs(bad.lhs(0, 0) - Complex(0.5, 0.0)) < 1e-12);
  CHECK(std::abs(bad.rhs(0, 0)) < 1e-12);
  CHECK(std::abs(bad.min_eig - (-0.5)) < 1e-12);
}

TEST_CASE("jensen_verify symmetrized equality law on c-free instances") {
  auto rng = make_rng(23);
  for (int t = 0; t < 10; ++t) {
    CFreeFunctional F = random_cfree_instance(
        rng, interval_family({{-1.0, 2.0}, {-2.0, 1.0}}), 1 + t % 3, 4);
    JensenReport r = jensen_verify(fixtures::symmetrized_ab(), F);
    CHECK(r.holds);
    CHECK(r.gap.cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("jensen_counterexample packages the -ab2a witness") {
  NCPoly f = Complex(-1.0) * fixtures::conjugated_ab2a();
  ConvexityWitness w = fixtures::neg_ab2a_witness();
  CHECK(std::abs(w.defect - (-1.0)) < 1e-12);

  JensenCounterexample ce = jensen_counterexample(f, w);
  CHECK_FALSE(ce.report.holds);
  CHECK(std::abs(ce.report.min_eig - (-1.0)) < 1e-12);
  CHECK((ce.report.lhs - ce.report.rhs - identity(1)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(ce.chain_report.ok);
  for (const auto& step : ce.chain_report.nontrivial) CHECK(step.size() <= 1);
}

TEST_CASE("witnesses from the falsifier replay through jensen_counterexample") {
  NCPoly f = Complex(-1.0) * fixtures::conjugated_ab2a();
  auto algebras = interval_family({{-1.0, 1.0}, {-1.0, 1.0}});
  auto w = check_separate_convexity(f, algebras, ConvexityMode::Separate, {1}, 500, 12);
  REQUIRE(w.has_value());
  JensenCounterexample ce = jensen_counterexample(f, *w);
  CHECK_FALSE(ce.report.holds);
  CHECK(ce.chain_report.ok);
}
