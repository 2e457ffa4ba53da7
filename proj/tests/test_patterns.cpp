#include <doctest.h>

#include "ncjensen/patterns.hpp"
#include "ncjensen/fixtures.hpp"

using namespace ncj;

namespace {

Subspace pattern_space(const PatternReport& rep, const std::string& w) {
  return Subspace{rep.bases.at(w).rows(), rep.bases.at(w)};
}

}  // namespace

TEST_CASE("two-generator fixture: pattern spaces and verdict") {
  auto fx = fixtures::non_product_fubini();
  PatternReport rep = pattern_subspaces(fx.rep, fx.H, 2);

  CHECK_FALSE(rep.minimal_truncated);
  CHECK(pattern_space(rep, "").matches(Subspace::span_of(3, {0}), 1e-10));
  CHECK(pattern_space(rep, "0").matches(Subspace::span_of(3, {1}), 1e-10));
  CHECK(pattern_space(rep, "1").matches(Subspace::span_of(3, {1, 2}), 1e-10));
  CHECK(pattern_space(rep, "10").matches(Subspace::span_of(3, {0, 2}), 1e-10));
  CHECK(pattern_space(rep, "01").matches(Subspace::span_of(3, {0}), 1e-10));

  CHECK_FALSE(rep.verdict);
  CHECK(rep.has_offender("", "10"));
  CHECK(rep.has_offender("0", "1"));
  CHECK_FALSE(rep.has_offender("0", "10"));
  CHECK(rep.offdiag > 0.5);

  FreeProductVerdict v = is_free_product_map(fx.rep, fx.H, 2);
  CHECK_FALSE(v.is_free_product);
}

TEST_CASE("a single generator always passes") {
  Matrix y(3, 3);
  y << 2, 1, 0,
       1, 0, 1,
       0, 1, -1;
  PatternReport rep = pattern_subspaces(make_rep({y}), Subspace::span_of(3, {0}), 3);
  CHECK(rep.verdict);
  CHECK(rep.offdiag <= kPsdTol);
}

TEST_CASE("block-diagonal generators give a free product verdict") {
  // y_i act on orthogonal complements of H's line, so every K-space stays put
  Matrix y1 = Matrix::Zero(3, 3), y2 = Matrix::Zero(3, 3);
  y1(0, 0) = 1;
  y1(1, 1) = -1;
  y2(2, 2) = 2;
  PatternReport rep = pattern_subspaces(make_rep({y1, y2}), Subspace::span_of(3, {0}), 2);
  CHECK(rep.verdict);
}

TEST_CASE("GNS pattern spaces of a c-free instance are orthogonal") {
  auto rng = make_rng(61);
  for (int t = 0; t < 4; ++t) {
    CFreeFunctional F = random_cfree_instance(
        rng, interval_family({{-1.0, 1.0}, {-2.0, 0.5}}), 1 + t % 2, 3);
    GnsSpace g = build_gns(F, 3);
    PatternReport rep = pattern_subspaces(g, 3);
    CHECK(rep.verdict);
    CHECK(rep.offdiag <= kPsdTol);
    CHECK_FALSE(rep.degenerate);
  }
}

TEST_CASE("verify_fubini_chain on the fixture chain") {
  auto fx = fixtures::non_product_fubini();
  DilationChain chain;
  chain.rep = fx.rep;
  chain.spaces = {fx.H, closure_under(fx.H, fx.rep, 0), Subspace::full(3)};
  FubiniReport rep = verify_fubini_chain(chain);
  CHECK(rep.ok);
  CHECK(rep.step_coordinates() == std::vector<int>{0, 1});
}

TEST_CASE("verify_fubini_chain rejects a two-coordinate step") {
  auto fx = fixtures::non_product_fubini();
  DilationChain chain;
  chain.rep = fx.rep;
  chain.spaces = {fx.H, Subspace::full(3)};
  FubiniReport rep = verify_fubini_chain(chain);
  CHECK_FALSE(rep.ok);
  REQUIRE(rep.nontrivial.size() == 1);
  CHECK(rep.nontrivial[0].size() == 2);
}

TEST_CASE("verify_fubini_chain reports chain defects") {
  auto fx = fixtures::non_product_fubini();
  DilationChain chain;
  chain.rep = fx.rep;
  chain.spaces = {fx.H, closure_under(fx.H, fx.rep, 0)};
  FubiniReport rep = verify_fubini_chain(chain);
  CHECK_FALSE(rep.ok);
  CHECK_FALSE(rep.failure.empty());
}

TEST_CASE("find_fubini_chain discovers the fixture sequence") {
  auto fx = fixtures::non_product_fubini();
  FubiniSearchResult res = find_fubini_chain(fx.rep, fx.H, 4);
  REQUIRE(res.found);
  CHECK(res.sequence == std::vector<int>{0, 1});
  CHECK(res.report.ok);
  CHECK(res.report.step_coordinates() == std::vector<int>{0, 1});
  CHECK_NOTHROW(res.chain.validate());
}

TEST_CASE("find_fubini_chain fails on generic generators") {
  auto rng = make_rng(101);
  FiniteRep rep = make_rep({random_hermitian(rng, 3, -1, 1), random_hermitian(rng, 3, -1, 1)});
  FubiniSearchResult res = find_fubini_chain(rep, Subspace::span_of(3, {0}), 4);
  CHECK_FALSE(res.found);
}
