#include <doctest.h>

#include "ncjensen/io.hpp"
#include "ncjensen/random.hpp"

using namespace ncj;
using ncj::io::json;

TEST_CASE("complex and matrix round trips") {
  Complex c(1.5, -2.25);
  CHECK(io::complex_from_json(io::complex_to_json(c)) == c);
  CHECK(io::complex_from_json(json(3.0)) == Complex(3.0, 0.0));

  auto rng = make_rng(3);
  Matrix m = random_hermitian(rng, 3, -2, 2);
  CHECK((io::matrix_from_json(io::matrix_to_json(m)) - m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("polynomial round trip") {
  NCPoly p;
  {
    std::vector<Letter> ls{Letter(0, poly_monomial(1)), Letter(1, poly_monomial(2))};
    ReducedWord r = reduce_word(ls);
    p.add(r.word, Complex(2.0, 1.0));
  }
  p = p + adjoint(p) + NCPoly::unit();
  NCPoly q = io::ncpoly_from_json(io::ncpoly_to_json(p));
  CHECK((p - q).terms.empty());
}

TEST_CASE("polynomial parsing reduces incoming words") {
  json j{{"terms",
          {{{"coeff", {2.0, 0.0}},
            {"word",
             {{{"alg", 0}, {"poly", {0.0, 1.0}}}, {{"alg", 0}, {"poly", {0.0, 1.0}}}}}}}}};
  NCPoly p = io::ncpoly_from_json(j);
  REQUIRE(p.terms.size() == 1);
  const auto& [w, c] = *p.terms.begin();
  CHECK(w.length() == 1);
  CHECK(w.letters[0].poly()(2) == 1.0);
  CHECK(c == Complex(2.0, 0.0));
}

TEST_CASE("measure, rep, and subspace round trips") {
  auto rng = make_rng(5);
  OVMeasure m = random_ovmeasure(rng, 1, -1.5, 0.5, 2, 3);
  OVMeasure m2 = io::ovmeasure_from_json(io::ovmeasure_to_json(m));
  CHECK(m2.algebra == 1);
  CHECK(m2.lo == m.lo);
  CHECK(m2.hi == m.hi);
  REQUIRE(m2.atoms.size() == m.atoms.size());
  for (std::size_t j = 0; j < m.atoms.size(); ++j) {
    CHECK(m2.atoms[j].t == m.atoms[j].t);
    CHECK((m2.atoms[j].Q - m.atoms[j].Q).cwiseAbs().maxCoeff() == 0.0);
  }

  FiniteRep rep = make_rep({random_hermitian(rng, 3, -1, 1), random_hermitian(rng, 3, -1, 1)});
  FiniteRep rep2 = io::finiterep_from_json(io::finiterep_to_json(rep));
  CHECK(rep2.dim == 3);
  for (int i : {0, 1})
    CHECK((rep2.generator(i) - rep.generator(i)).cwiseAbs().maxCoeff() == 0.0);

  Subspace s = Subspace::span_of(3, {0, 2});
  Subspace s2 = io::subspace_from_json(io::subspace_to_json(s));
  CHECK(s2.matches(s, 1e-12));
}

TEST_CASE("cfree functional and compressed eval round trips") {
  auto rng = make_rng(9);
  CFreeFunctional F = random_cfree_instance(
      rng, interval_family({{-1.0, 1.0}, {0.0, 2.0}}), 2, 3);
  CFreeFunctional F2 = io::cfree_from_json(io::cfree_to_json(F));
  CHECK(F2.k == 2);
  NCWord w = reduce_word({Letter(0, poly_monomial(1)), Letter(1, poly_monomial(2))}).word;
  CHECK((cfree_evaluate(F, w) - cfree_evaluate(F2, w)).cwiseAbs().maxCoeff() < 1e-14);

  CompressedPointEval mu = fixtures::m2_trace_eval();
  CompressedPointEval mu2 = io::compressed_from_json(io::compressed_to_json(mu));
  NCPoly f = fixtures::symmetrized_ab();
  CHECK((compress(mu, f) - compress(mu2, f)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("report serializers expose verdicts") {
  JensenReport bad = jensen_verify(fixtures::symmetrized_ab(), fixtures::m2_trace_eval());
  json jj = io::jensen_report_to_json(bad);
  CHECK(jj.at("verdict") == "violated");
  CHECK(jj.at("min_eig").get<double>() == bad.min_eig);

  auto fx = fixtures::non_product_fubini();
  PatternReport rep = pattern_subspaces(fx.rep, fx.H, 2);
  json pj = io::pattern_report_to_json(rep);
  CHECK(pj.at("verdict") == false);
  CHECK(pj.at("offending").size() == rep.offending.size());

  DilationChain chain;
  chain.rep = fx.rep;
  chain.spaces = {fx.H, closure_under(fx.H, fx.rep, 0), Subspace::full(3)};
  json fj = io::fubini_report_to_json(verify_fubini_chain(chain));
  CHECK(fj.at("ok") == true);
  CHECK(fj.at("nontrivial_per_step").size() == 2);
}
