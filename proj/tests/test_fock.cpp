#include <doctest.h>

#include "ncjensen/fock.hpp"

using namespace ncj;

TEST_CASE("creation operators are isometries below the cutoff") {
  TruncatedFock f = make_fock(2, 3);
  CHECK(f.dim() == 1 + 2 + 4 + 8);
  Matrix low = Matrix::Zero(f.dim(), f.dim());
  for (Eigen::Index w = 0; w < f.dim(); ++w)
    if (static_cast<int>(f.basis[static_cast<std::size_t>(w)].size()) < f.max_len) low(w, w) = 1.0;
  for (int i = 0; i < 2; ++i) {
    const Matrix& ell = f.creation[static_cast<std::size_t>(i)];
    CHECK((ell.adjoint() * ell - low).cwiseAbs().maxCoeff() < 1e-14);
    for (int j = 0; j < i; ++j)
      CHECK((f.creation[static_cast<std::size_t>(j)].adjoint() * ell).cwiseAbs().maxCoeff() <
            1e-14);
  }
}

TEST_CASE("semicircular moments are Catalan numbers") {
  SemicircularFamily fam = make_semicircular(1, 8, {2.0});
  const double want[] = {1, 0, 1, 0, 2, 0, 5, 0, 14};
  for (int p = 0; p <= 8; ++p) {
    VacuumMoment m = vacuum_moment(fam, {{{0, p}}});
    CHECK_FALSE(m.truncation_risk);
    CHECK(std::abs(m.value - want[p]) < 1e-12);
  }
  VacuumMoment risky = vacuum_moment(fam, {{{0, 9}}});
  CHECK(risky.truncation_risk);
}

TEST_CASE("radius scaling of even moments") {
  SemicircularFamily fam = make_semicircular(1, 4, {1.0});
  // variance r^2/4
  CHECK(std::abs(vacuum_moment(fam, {{{0, 2}}}).value - 0.25) < 1e-14);
  CHECK(std::abs(vacuum_moment(fam, {{{0, 4}}}).value - 2.0 / 16.0) < 1e-14);
}

TEST_CASE("mixed alternating moments vanish") {
  SemicircularFamily fam = make_semicircular(2, 6, {2.0, 1.0});
  CHECK(std::abs(vacuum_moment(fam, {{{0, 1}, {1, 1}}}).value) < 1e-14);
  CHECK(std::abs(vacuum_moment(fam, {{{0, 1}, {1, 1}, {0, 1}, {1, 1}}}).value) < 1e-14);
  // s1 s2^2 s1 factors as phi(s1^2) phi(s2^2) by freeness
  double v = vacuum_moment(fam, {{{0, 1}, {1, 2}, {0, 1}}}).value;
  CHECK(std::abs(v - 1.0 * 0.25) < 1e-13);
}

TEST_CASE("semicircle quadrature matches the moment sequence") {
  OVMeasure m = semicircle_quadrature(0, 2.0, 5);
  CHECK_NOTHROW(m.validate());
  const double want[] = {1, 0, 1, 0, 2, 0, 5, 0, 14};
  for (int p = 0; p <= 8; ++p)  // exact to degree 2q-1 = 9
    CHECK(std::abs(state_apply(m, poly_monomial(p)) - want[p]) < 1e-12);
}

TEST_CASE("free semicircular functional agrees with the Fock oracle") {
  SemicircularFamily fam = make_semicircular(2, 6, {2.0, 1.5});
  CFreeFunctional F = free_semicircular_functional({2.0, 1.5}, 5);
  CHECK(crosscheck_free_moments(fam, F, 3, 6) <= 1e-10);
  // guard rails
  CHECK_THROWS_AS(crosscheck_free_moments(fam, F, 3, 7), NcError);
  SemicircularFamily shallow = make_semicircular(2, 2, {2.0, 1.5});
  CHECK_THROWS_AS(crosscheck_free_moments(shallow, F, 3, 6), NcError);
}

TEST_CASE("semicircular inequality experiment holds and replays") {
  SemicircularExperiment a = semicircular_inequality_experiment(2, {2.0, 1.0}, 25, 77);
  CHECK(a.all_hold);
  CHECK(a.worst_sym >= -kPsdTol);
  CHECK(a.worst_sq >= -kPsdTol);
  CHECK(a.worst_sym_gap <= 1e-8);

  SemicircularExperiment b = semicircular_inequality_experiment(2, {2.0, 1.0}, 25, 77);
  REQUIRE(a.trials.size() == b.trials.size());
  for (std::size_t t = 0; t < a.trials.size(); ++t) {
    CHECK(a.trials[t].sym_min_eig == b.trials[t].sym_min_eig);
    CHECK(a.trials[t].sq_min_eig == b.trials[t].sq_min_eig);
  }
}
