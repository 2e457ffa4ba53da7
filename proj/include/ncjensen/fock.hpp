// Truncated full Fock space realization of free semicircular families.
// Serves as an independent oracle for the free (phi = vacuum) case.
#pragma once

#include <vector>

#include "ncjensen/convexity.hpp"

namespace ncj {

struct TruncatedFock {
  int d = 1;       // number of generators
  int max_len = 0; // max tensor length N
  std::vector<std::vector<int>> basis;  // index words, length-major then lex
  std::vector<Matrix> creation;         // one per generator

  Eigen::Index dim() const { return static_cast<Eigen::Index>(basis.size()); }
  Vector vacuum() const {
    Vector v = Vector::Zero(dim());
    v(0) = 1.0;
    return v;
  }
};

inline TruncatedFock make_fock(int d, int max_len) {
  if (d < 1 || max_len < 0) throw NcError("make_fock: need d >= 1, max_len >= 0");
  TruncatedFock f;
  f.d = d;
  f.max_len = max_len;
  f.basis.push_back({});
  std::size_t begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    std::size_t end = f.basis.size();
    for (std::size_t w = begin; w < end; ++w)
      for (int i = 0; i < d; ++i) {
        auto longer = f.basis[w];
        longer.insert(longer.begin(), i);
        f.basis.push_back(std::move(longer));
      }
    begin = end;
  }
  std::map<std::vector<int>, Eigen::Index> index;
  for (Eigen::Index w = 0; w < f.dim(); ++w) index[f.basis[w]] = w;

  for (int i = 0; i < d; ++i) {
    Matrix ell = Matrix::Zero(f.dim(), f.dim());
    for (Eigen::Index w = 0; w < f.dim(); ++w) {
      if (static_cast<int>(f.basis[w].size()) == max_len) continue;  // truncation
      auto longer = f.basis[w];
      longer.insert(longer.begin(), i);
      ell(index.at(longer), w) = 1.0;
    }
    f.creation.push_back(std::move(ell));
  }
  return f;
}

struct SemicircularFamily {
  TruncatedFock fock;
  std::vector<double> radii;
  std::vector<Matrix> s;  // s_i = (r_i/2)(ell_i + ell_i*)
};

inline SemicircularFamily make_semicircular(int d, int max_len, std::vector<double> radii) {
  if (static_cast<int>(radii.size()) != d) throw NcError("make_semicircular: radii size mismatch");
  SemicircularFamily fam;
  fam.fock = make_fock(d, max_len);
  fam.radii = std::move(radii);
  for (int i = 0; i < d; ++i) {
    const Matrix& ell = fam.fock.creation[i];
    fam.s.push_back(0.5 * fam.radii[i] * (ell + ell.adjoint()));
  }
  return fam;
}

// Words in the generators with powers: (index, power) pairs.
struct MomentWord {
  std::vector<std::pair<int, int>> factors;
  int total_degree() const {
    int deg = 0;
    for (auto [i, p] : factors) deg += p;
    return deg;
  }
};

struct VacuumMoment {
  double value = 0.0;
  bool truncation_risk = false;  // total degree exceeded the Fock cutoff
};

inline VacuumMoment vacuum_moment(const SemicircularFamily& fam, const MomentWord& w) {
  VacuumMoment out;
  out.truncation_risk = w.total_degree() > fam.fock.max_len;
  Vector v = fam.fock.vacuum();
  for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) {
    auto [i, p] = *it;
    if (i < 0 || i >= fam.fock.d) throw NcError("vacuum_moment: generator index out of range");
    for (int rep = 0; rep < p; ++rep) v = fam.s[static_cast<std::size_t>(i)] * v;
  }
  out.value = (fam.fock.vacuum().adjoint() * v)(0).real();
  return out;
}

// Gauss quadrature for the Chebyshev-U weight: exact semicircle moments to
// polynomial degree 2q-1.
inline OVMeasure semicircle_quadrature(int algebra, double radius, int order) {
  if (order < 1) throw NcError("semicircle_quadrature: order must be >= 1");
  std::vector<double> nodes, weights;
  for (int j = 1; j <= order; ++j) {
    const double theta = j * M_PI / (order + 1);
    nodes.push_back(radius * std::cos(theta));
    weights.push_back(2.0 / (order + 1) * std::sin(theta) * std::sin(theta));
  }
  return scalar_measure(algebra, -radius, radius, nodes, weights);
}

// c-free functional with mu_i = phi_i = semicircle quadrature: the free
// product of the semicircle distributions.
inline CFreeFunctional free_semicircular_functional(const std::vector<double>& radii, int order) {
  CFreeFunctional F;
  F.k = 1;
  std::vector<std::pair<double, double>> ivs;
  for (double r : radii) ivs.emplace_back(-r, r);
  F.algebras = interval_family(ivs);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    F.ucp.push_back(semicircle_quadrature(static_cast<int>(i), radii[i], order));
    F.states.push_back(F.ucp.back());
  }
  F.validate();
  return F;
}

// Max deviation between the Fock vacuum moments and the c-free evaluation over
// alternating words of pattern length <= max_len and total degree <= max_deg.
inline double crosscheck_free_moments(const SemicircularFamily& fam, const CFreeFunctional& F,
                                      int max_len, int max_deg) {
  if (fam.fock.max_len < max_deg)
    throw NcError("crosscheck_free_moments: Fock truncation below requested degree");
  for (const auto& m : F.ucp)
    if (2 * static_cast<int>(m.atoms.size()) - 1 < max_deg)
      throw NcError("crosscheck_free_moments: insufficient quadrature order");

  std::vector<MomentWord> words{{}};
  std::size_t begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    std::size_t end = words.size();
    for (std::size_t w = begin; w < end; ++w)
      for (int i = 0; i < fam.fock.d; ++i) {
        if (!words[w].factors.empty() && words[w].factors.front().first == i) continue;
        for (int p = 1; words[w].total_degree() + p <= max_deg; ++p) {
          MomentWord longer = words[w];
          longer.factors.insert(longer.factors.begin(), {i, p});
          words.push_back(std::move(longer));
        }
      }
    begin = end;
  }

  double worst = 0.0;
  for (const MomentWord& w : words) {
    VacuumMoment fock_side = vacuum_moment(fam, w);
    NCWord nc;
    for (auto [i, p] : w.factors) nc.letters.emplace_back(i, poly_monomial(p));
    const double cfree_side = cfree_evaluate(F, nc)(0, 0).real();
    worst = std::max(worst, std::abs(fock_side.value - cfree_side));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Randomized check of the semicircular-family operator inequalities for
// arbitrary c-free instances on the same intervals.

struct SemicircularExperiment {
  struct Trial {
    std::uint64_t index = 0;
    double sym_min_eig = 0.0;   // chain inequality a_1...a_d + reverse
    double sym_gap_norm = 0.0;  // should vanish: equality law
    double sq_min_eig = 0.0;    // conjugated square inequality
  };
  Eigen::Index k = 1;
  std::vector<double> radii;
  std::uint64_t seed = 0;
  std::vector<Trial> trials;
  double worst_sym = 0.0, worst_sq = 0.0, worst_sym_gap = 0.0;
  bool all_hold = true;
};

inline SemicircularExperiment semicircular_inequality_experiment(
    Eigen::Index k, const std::vector<double>& radii, std::int64_t trials, std::uint64_t seed,
    int max_atoms = 4, double tol = kPsdTol) {
  SemicircularExperiment out;
  out.k = k;
  out.radii = radii;
  out.seed = seed;
  const int d = static_cast<int>(radii.size());
  std::vector<std::pair<double, double>> ivs;
  for (double r : radii) ivs.emplace_back(-r, r);
  auto algebras = interval_family(ivs);

  std::vector<int> indices;
  std::vector<Poly> payloads;
  for (int i = 0; i < d; ++i) {
    indices.push_back(i);
    payloads.push_back(poly_monomial(1));
  }
  NCPoly sym = make_symmetrized_product(indices, payloads);
  NCPoly sq = make_conjugated_square(indices, payloads);

  out.worst_sym = out.worst_sq = std::numeric_limits<double>::infinity();
  for (std::int64_t t = 0; t < trials; ++t) {
    auto rng = make_rng(seed, static_cast<std::uint64_t>(t));
    CFreeFunctional F = random_cfree_instance(rng, algebras, k, max_atoms);
    JensenReport sym_rep = jensen_verify(sym, F, tol);
    JensenReport sq_rep = jensen_verify(sq, F, tol);
    SemicircularExperiment::Trial tr;
    tr.index = static_cast<std::uint64_t>(t);
    tr.sym_min_eig = sym_rep.min_eig;
    tr.sym_gap_norm = sym_rep.gap.cwiseAbs().maxCoeff();
    tr.sq_min_eig = sq_rep.min_eig;
    out.worst_sym = std::min(out.worst_sym, tr.sym_min_eig);
    out.worst_sq = std::min(out.worst_sq, tr.sq_min_eig);
    out.worst_sym_gap = std::max(out.worst_sym_gap, tr.sym_gap_norm);
    out.all_hold = out.all_hold && sym_rep.holds && sq_rep.holds;
    out.trials.push_back(tr);
  }
  return out;
}

}  // namespace ncj
