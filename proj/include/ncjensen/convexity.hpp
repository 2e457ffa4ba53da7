// Separately nc convex families, randomized convexity falsifiers, the Jensen
// verifier, and the converse counterexample construction.
#pragma once

#include <optional>

#include "ncjensen/patterns.hpp"
#include "ncjensen/random.hpp"

namespace ncj {

// ---------------------------------------------------------------------------
// Constructors for the separately nc convex families

// a_1...a_m + adjoint, letters in pairwise distinct algebras.
inline NCPoly make_symmetrized_product(const std::vector<int>& indices,
                                       const std::vector<Poly>& payloads) {
  if (indices.size() != payloads.size()) throw NcError("make_symmetrized_product: size mismatch");
  for (std::size_t i = 0; i < indices.size(); ++i)
    for (std::size_t j = i + 1; j < indices.size(); ++j)
      if (indices[i] == indices[j]) throw NcError("make_symmetrized_product: repeated index");
  std::vector<Letter> letters;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (payloads[i].size() > 2) throw NcError("make_symmetrized_product: payload degree > 1");
    letters.emplace_back(indices[i], payloads[i]);
  }
  ReducedWord red = reduce_word(letters);
  NCPoly p = NCPoly::from_word(red.word, red.scalar);
  return p + adjoint(p);
}

// a_1* ... a_m* a_m ... a_1, selfadjoint and PSD-valued.
inline NCPoly make_conjugated_square(const std::vector<int>& indices,
                                     const std::vector<Poly>& payloads) {
  if (indices.size() != payloads.size()) throw NcError("make_conjugated_square: size mismatch");
  for (std::size_t i = 0; i < indices.size(); ++i)
    for (std::size_t j = i + 1; j < indices.size(); ++j)
      if (indices[i] == indices[j]) throw NcError("make_conjugated_square: repeated index");
  std::vector<Letter> letters;  // a_m ... a_1
  for (std::size_t i = indices.size(); i-- > 0;) {
    if (payloads[i].size() > 2) throw NcError("make_conjugated_square: payload degree > 1");
    letters.emplace_back(indices[i], payloads[i]);
  }
  ReducedWord red = reduce_word(letters);
  NCPoly u = NCPoly::from_word(red.word, red.scalar);
  return adjoint(u) * u;
}

// ---------------------------------------------------------------------------
// Convexity falsifier

enum class ConvexityMode { Separate, Joint };

struct ConvexityWitness {
  ConvexityMode mode = ConvexityMode::Separate;
  Eigen::Index level = 1;
  MatrixTuple x;     // = alpha* y alpha componentwise
  MatrixTuple y;
  Matrix isometry;   // alpha
  int coordinate = -1;  // active coordinate in separate mode
  double defect = 0.0;  // most negative eigenvalue of alpha* f(y) alpha - f(x)
  std::int64_t trial = -1;  // -1: deterministic corner sweep
};

namespace detail {

inline double dilation_defect(const NCPoly& f, const MatrixTuple& y, const Matrix& alpha,
                              const MatrixTuple& x) {
  Matrix fy = evaluate_poly(f, y);
  Matrix fx = evaluate_poly(f, x);
  return min_eigenvalue(Matrix(alpha.adjoint() * fy * alpha - fx));
}

inline double violation_eps(const NCPoly& f, const MatrixTuple& y) {
  Matrix fy = evaluate_poly(f, y);
  return 1e-7 * (1.0 + fy.cwiseAbs().maxCoeff());
}

// Dilation data for the midpoint of two tuples: y_i = z_i' (+) z_i'',
// alpha = (I;I)/sqrt(2).
inline ConvexityWitness midpoint_witness(const MatrixTuple& z1, const MatrixTuple& z2) {
  ConvexityWitness w;
  const Eigen::Index n = z1.level;
  w.level = n;
  w.x.level = n;
  w.y.level = 2 * n;
  for (const auto& [i, a] : z1.entries) {
    const Matrix& b = z2.at(i);
    Matrix y = Matrix::Zero(2 * n, 2 * n);
    y.topLeftCorner(n, n) = a;
    y.bottomRightCorner(n, n) = b;
    w.y.entries[i] = y;
    w.x.entries[i] = 0.5 * (a + b);
  }
  w.isometry = Matrix::Zero(2 * n, n);
  w.isometry.topRows(n) = identity(n) / std::sqrt(2.0);
  w.isometry.bottomRows(n) = identity(n) / std::sqrt(2.0);
  return w;
}

}  // namespace detail

// Two falsification strategies per trial: a levelwise midpoint test and a
// block dilation test. A deterministic corner sweep at level 1 runs first so
// the classical scalar counterexamples are always found.
inline std::optional<ConvexityWitness> check_separate_convexity(
    const NCPoly& f, const std::vector<AlgebraSpec>& algebras, ConvexityMode mode,
    const std::vector<Eigen::Index>& levels, std::int64_t trials, std::uint64_t seed) {
  if (!is_selfadjoint(f, 1e-10)) throw NcError("check_separate_convexity: f must be selfadjoint");
  validate_algebras(algebras);
  const int d = static_cast<int>(algebras.size());

  auto finish = [&](ConvexityWitness w, int coord, std::int64_t trial)
      -> std::optional<ConvexityWitness> {
    w.mode = mode;
    w.coordinate = coord;
    w.trial = trial;
    w.defect = detail::dilation_defect(f, w.y, w.isometry, w.x);
    if (w.defect < -detail::violation_eps(f, w.y)) return w;
    return std::nullopt;
  };

  // Corner sweep: midpoints of interval-endpoint tuples at level 1.
  {
    std::vector<std::vector<double>> corner_vals(d);
    for (int i = 0; i < d; ++i) {
      const auto& iv = algebras[i].interval();
      corner_vals[i] = {iv.hi, iv.lo};
    }
    std::vector<std::vector<double>> corners{{}};
    for (int i = 0; i < d; ++i) {
      std::vector<std::vector<double>> next;
      for (const auto& c : corners)
        for (double v : corner_vals[i]) {
          auto e = c;
          e.push_back(v);
          next.push_back(std::move(e));
        }
      corners = std::move(next);
    }
    for (std::size_t p = 0; p < corners.size(); ++p)
      for (std::size_t q = p + 1; q < corners.size(); ++q) {
        int diff_coord = -1;
        int ndiff = 0;
        for (int i = 0; i < d; ++i)
          if (corners[p][i] != corners[q][i]) {
            diff_coord = i;
            ++ndiff;
          }
        if (ndiff == 0) continue;
        if (mode == ConvexityMode::Separate && ndiff != 1) continue;
        ConvexityWitness w = detail::midpoint_witness(make_scalar_tuple(corners[p]),
                                                      make_scalar_tuple(corners[q]));
        if (auto hit = finish(std::move(w), mode == ConvexityMode::Separate ? diff_coord : -1, -1))
          return hit;
      }
  }

  for (std::int64_t t = 0; t < trials; ++t) {
    auto rng = make_rng(seed, static_cast<std::uint64_t>(t));
    const Eigen::Index n = levels.empty() ? 1 : levels[static_cast<std::size_t>(t) % levels.size()];
    std::uniform_int_distribution<int> coord_dist(0, d - 1);
    const int j = coord_dist(rng);

    auto random_tuple = [&](Eigen::Index lvl) {
      MatrixTuple z;
      z.level = lvl;
      for (int i = 0; i < d; ++i) {
        const auto& iv = algebras[i].interval();
        z.entries[i] = random_hermitian(rng, lvl, iv.lo, iv.hi);
      }
      return z;
    };

    // (a) midpoint test
    {
      MatrixTuple z1 = random_tuple(n);
      MatrixTuple z2 = random_tuple(n);
      if (mode == ConvexityMode::Separate)
        for (int i = 0; i < d; ++i)
          if (i != j) z2.entries[i] = z1.entries[i];
      if (auto hit = finish(detail::midpoint_witness(z1, z2),
                            mode == ConvexityMode::Separate ? j : -1, t))
        return hit;
    }

    // (b) dilation test with top-block embedding
    {
      ConvexityWitness w;
      w.level = n;
      w.x.level = n;
      w.y.level = 2 * n;
      for (int i = 0; i < d; ++i) {
        const auto& iv = algebras[i].interval();
        if (mode == ConvexityMode::Separate && i != j) {
          Matrix xi = random_hermitian(rng, n, iv.lo, iv.hi);
          Matrix zi = random_hermitian(rng, n, iv.lo, iv.hi);
          Matrix y = Matrix::Zero(2 * n, 2 * n);
          y.topLeftCorner(n, n) = xi;
          y.bottomRightCorner(n, n) = zi;
          w.y.entries[i] = y;
          w.x.entries[i] = xi;
        } else {
          Matrix y = random_hermitian(rng, 2 * n, iv.lo, iv.hi);
          w.y.entries[i] = y;
          w.x.entries[i] = y.topLeftCorner(n, n);
        }
      }
      w.isometry = Matrix::Zero(2 * n, n);
      w.isometry.topRows(n) = identity(n);
      if (auto hit = finish(std::move(w), mode == ConvexityMode::Separate ? j : -1, t))
        return hit;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Jensen verifier

struct JensenReport {
  Matrix lhs;  // f(bar(mu))
  Matrix rhs;  // mu(f)
  Matrix gap;  // rhs - lhs
  double min_eig = 0.0;
  double tol = kPsdTol;
  bool holds = false;
};

namespace detail {

inline JensenReport jensen_report(const Matrix& lhs, const Matrix& rhs, double tol) {
  JensenReport r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.gap = rhs - lhs;
  require_hermitian(r.gap, "jensen_verify gap");
  r.min_eig = min_eigenvalue(r.gap);
  r.tol = tol;
  r.holds = r.min_eig >= -tol;
  return r;
}

}  // namespace detail

inline JensenReport jensen_verify(const NCPoly& f, const CFreeFunctional& mu,
                                  double tol = kPsdTol) {
  if (!is_selfadjoint(f, 1e-10)) throw NcError("jensen_verify: f must be selfadjoint");
  Matrix lhs = evaluate_poly(f, barycenter(mu));
  Matrix rhs = cfree_evaluate_poly(mu, f);
  return detail::jensen_report(lhs, rhs, tol);
}

inline JensenReport jensen_verify(const NCPoly& f, const CompressedPointEval& mu,
                                  double tol = kPsdTol) {
  if (!is_selfadjoint(f, 1e-10)) throw NcError("jensen_verify: f must be selfadjoint");
  Matrix lhs = evaluate_poly(f, mu.barycenter());
  Matrix rhs = compress(mu, f);
  return detail::jensen_report(lhs, rhs, tol);
}

// ---------------------------------------------------------------------------
// Remark-direction converse: a separate-mode witness packages into a
// Fubini-type ucp map violating Jensen.

struct JensenCounterexample {
  CompressedPointEval mu;
  JensenReport report;
  DilationChain chain;  // one step: ran(alpha) inside the minimal space
  FubiniReport chain_report;
};

inline JensenCounterexample jensen_counterexample(const NCPoly& f, const ConvexityWitness& w,
                                                  double tol = 1e-9) {
  if (w.mode != ConvexityMode::Separate)
    throw NcError("jensen_counterexample: requires a separate-mode witness");
  FiniteRep rep;
  rep.dim = w.y.level;
  rep.generators = w.y.entries;
  rep.validate();
  CompressedPointEval mu{rep, w.isometry};
  mu.validate();
  if (w.defect >= 0) throw NcError("jensen_counterexample: witness has no violation");

  MinimalPart min = minimal_part(mu);
  JensenCounterexample out;
  out.mu = mu;
  out.report = jensen_verify(f, mu);
  if (out.report.min_eig > w.defect + 1e-7)
    throw NcError("jensen_counterexample: witness failed re-verification");
  out.chain.rep = min.mu.rep;
  out.chain.spaces = {Subspace::from_columns(min.mu.isometry), Subspace::full(min.mu.rep.dim)};
  out.chain_report = verify_fubini_chain(out.chain, tol);
  return out;
}

}  // namespace ncj
