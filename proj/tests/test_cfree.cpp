#include <doctest.h>

#include "ncjensen/cfree.hpp"
#include "ncjensen/random.hpp"

using namespace ncj;

namespace {

NCWord alt_word(const std::vector<std::pair<int, int>>& factors) {
  std::vector<Letter> ls;
  for (auto [i, p] : factors) ls.emplace_back(i, poly_monomial(p));
  ReducedWord r = reduce_word(ls);
  REQUIRE(r.scalar == Complex(1.0, 0.0));
  return r.word;
}

CFreeFunctional sample_instance(std::uint64_t seed, int d, Eigen::Index k) {
  auto rng = make_rng(seed);
  std::vector<std::pair<double, double>> ivs;
  for (int i = 0; i < d; ++i) ivs.emplace_back(-1.0 - i, 1.0 + 0.5 * i);
  return random_cfree_instance(rng, interval_family(ivs), k, 4);
}

}  // namespace

TEST_CASE("restriction to a single factor is the ucp map") {
  CFreeFunctional F = sample_instance(2, 2, 2);
  for (int p = 1; p <= 4; ++p) {
    NCWord w = alt_word({{0, p}});
    CHECK((cfree_evaluate(F, w) - measure_apply(F.ucp[0], poly_monomial(p)))
              .cwiseAbs().maxCoeff() < 1e-14);
  }
  CHECK((cfree_evaluate(F, NCWord{}) - identity(2)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("centered alternating words multiply") {
  CFreeFunctional F = sample_instance(5, 3, 2);
  // letters q_i(t) = t^p - phi_i(t^p), alternating algebras
  std::vector<std::pair<int, int>> pattern{{0, 2}, {1, 1}, {2, 3}, {0, 1}};
  std::vector<Letter> letters;
  Matrix expect = identity(F.k);
  for (auto [i, p] : pattern) {
    Poly q = poly_monomial(p);
    q(0) -= state_apply(F.states[i], q);
    letters.emplace_back(i, q);
    expect *= measure_apply(F.ucp[i], q);
  }
  ReducedWord red = reduce_word(letters);
  REQUIRE(red.scalar == Complex(1.0, 0.0));
  CHECK((cfree_evaluate(F, red.word) - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("words visiting distinct algebras factor into ordered products") {
  for (std::uint64_t seed : {7u, 8u, 9u}) {
    CFreeFunctional F = sample_instance(seed, 3, 3);
    for (auto pattern : std::vector<std::vector<std::pair<int, int>>>{
             {{0, 1}, {1, 1}}, {{1, 2}, {0, 1}}, {{2, 1}, {0, 3}, {1, 2}}}) {
      NCWord w = alt_word(pattern);
      Matrix expect = identity(F.k);
      for (auto [i, p] : pattern) expect *= measure_apply(F.ucp[i], poly_monomial(p));
      CHECK((cfree_evaluate(F, w) - expect).cwiseAbs().maxCoeff() < 1e-11);
    }
  }
}

TEST_CASE("evaluation rejects unreduced or out-of-range words") {
  CFreeFunctional F = sample_instance(3, 2, 1);
  NCWord bad;
  bad.letters.emplace_back(0, poly_monomial(1));
  bad.letters.emplace_back(0, poly_monomial(1));
  CHECK_THROWS_AS(cfree_evaluate(F, bad), NcError);
  NCWord oob;
  oob.letters.emplace_back(5, poly_monomial(1));
  CHECK_THROWS_AS(cfree_evaluate(F, oob), NcError);
}

TEST_CASE("memoization does not change values") {
  CFreeFunctional F = sample_instance(11, 2, 2);
  CFreeFunctional G = F;
  G.memo = std::make_shared<CFreeFunctional::Memo>();
  G.use_memo = false;
  NCWord w = alt_word({{0, 2}, {1, 2}, {0, 1}, {1, 3}, {0, 2}});
  Matrix with = cfree_evaluate(F, w);
  Matrix again = cfree_evaluate(F, w);  // memo hit
  Matrix without = cfree_evaluate(G, w);
  CHECK((with - again).cwiseAbs().maxCoeff() == 0.0);
  CHECK((with - without).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("linearity over NCPoly and scalar extraction") {
  CFreeFunctional F = sample_instance(13, 2, 2);
  NCWord w = alt_word({{0, 1}, {1, 2}});
  NCPoly p = NCPoly::from_word(w, Complex(2.0, -1.0)) + NCPoly::unit();
  Matrix v = cfree_evaluate_poly(F, p);
  Matrix want = Complex(2.0, -1.0) * cfree_evaluate(F, w) + identity(2);
  CHECK((v - want).cwiseAbs().maxCoeff() < 1e-12);

  // constants inside products come out through reduce_word
  std::vector<Letter> ls{Letter(0, poly_monomial(1)), Letter(1, poly_constant(3.0)),
                         Letter(0, poly_monomial(1))};
  ReducedWord red = reduce_word(ls);
  CHECK(red.scalar == Complex(3.0, 0.0));
  Matrix direct = red.scalar * cfree_evaluate(F, red.word);
  CHECK((direct - 3.0 * cfree_evaluate(F, alt_word({{0, 2}}))).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("barycenter collects first moments inside the intervals") {
  CFreeFunctional F = sample_instance(17, 3, 2);
  MatrixTuple bar = barycenter(F);
  CHECK(bar.level == 2);
  for (int i = 0; i < 3; ++i) {
    const auto& iv = F.algebras[static_cast<std::size_t>(i)].interval();
    Matrix mean = measure_apply(F.ucp[static_cast<std::size_t>(i)], poly_monomial(1));
    CHECK((bar.at(i) - mean).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(min_membership(bar.at(i), iv.lo, iv.hi, 1e-8));
  }
}

TEST_CASE("build_gns at L = 0 is the unit block") {
  CFreeFunctional F = sample_instance(23, 2, 3);
  GnsSpace g = build_gns(F, 0);
  CHECK(g.basis_size() == 1);
  CHECK((g.gram - identity(3)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("GNS word enumeration and left action") {
  CFreeFunctional F = sample_instance(29, 2, 1);
  GnsSpace g = build_gns(F, 2, 1);
  // unit, two length-1 words, two length-2 words with degree bound 1
  CHECK(g.basis_size() == 5);
  CHECK(g.words[0].is_unit());
  int unit = g.index.at(NCWord{});
  int a = g.act(0, 1, unit);
  REQUIRE(a >= 0);
  CHECK(g.words[static_cast<std::size_t>(a)].length() == 1);
  int ba = g.act(1, 1, a);
  REQUIRE(ba >= 0);
  CHECK(g.words[static_cast<std::size_t>(ba)].length() == 2);
  CHECK(g.act(0, 1, ba) == -1);  // leaves the truncation
}

TEST_CASE("Gram matrices of random instances are Hermitian PSD") {
  for (std::uint64_t seed = 40; seed < 52; ++seed) {
    CFreeFunctional F = sample_instance(seed, 2, static_cast<Eigen::Index>(1 + seed % 3));
    GnsSpace g = build_gns(F, 3);
    const double scale = 1.0 + g.gram.cwiseAbs().maxCoeff();
    CHECK(is_hermitian(g.gram, 1e-9));
    CHECK(min_eigenvalue(g.gram) >= -kPsdTol * scale);
  }
}
