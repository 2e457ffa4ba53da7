// K_w pattern-space decomposition of a minimal Stinespring space, the
// free-product decision procedure, and Fubini dilation chains.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ncjensen/cfree.hpp"

namespace ncj {

// Patterns are alternating index strings ("", "0", "10", ...), digits being
// algebra indices. K_{iw} is grown from K_w by the algebra-i closure.
struct PatternReport {
  struct Entry {
    std::string pattern;
    Eigen::Index dim = 0;
  };
  struct Offender {
    std::string a, b;
    double norm = 0.0;
  };
  std::vector<Entry> patterns;
  std::map<std::string, Matrix> bases;  // orthonormal (Gram-orthonormal for GNS)
  std::vector<Offender> offending;
  double offdiag = 0.0;
  double tol = kPsdTol;
  bool verdict = false;
  int truncation_hits = 0;   // closure operations excluded by GNS truncation
  bool minimal_truncated = false;  // input was cut to its minimal part
  bool degenerate = false;   // Gram rank collapse

  bool has_offender(const std::string& a, const std::string& b) const {
    for (const auto& o : offending)
      if ((o.a == a && o.b == b) || (o.a == b && o.b == a)) return true;
    return false;
  }
};

namespace detail {

inline std::vector<std::string> alternating_patterns(int d, int max_len) {
  std::vector<std::string> out{""};
  std::size_t begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    std::size_t end = out.size();
    for (std::size_t p = begin; p < end; ++p)
      for (int i = 0; i < d; ++i) {
        if (!out[p].empty() && out[p][0] == static_cast<char>('0' + i)) continue;
        out.push_back(static_cast<char>('0' + i) + out[p]);
      }
    begin = end;
  }
  return out;
}

inline void finish_report(PatternReport& rep,
                          const std::function<Matrix(const Matrix&, const Matrix&)>& cross) {
  for (std::size_t a = 0; a < rep.patterns.size(); ++a)
    for (std::size_t b = a + 1; b < rep.patterns.size(); ++b) {
      const Matrix& ba = rep.bases.at(rep.patterns[a].pattern);
      const Matrix& bb = rep.bases.at(rep.patterns[b].pattern);
      if (ba.cols() == 0 || bb.cols() == 0) continue;
      double norm = operator_norm(cross(ba, bb));
      rep.offdiag = std::max(rep.offdiag, norm);
      if (norm > rep.tol)
        rep.offending.push_back({rep.patterns[a].pattern, rep.patterns[b].pattern, norm});
    }
  rep.verdict = rep.offdiag <= rep.tol;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// FiniteRep form: Euclidean subspace calculus on the (minimal part of the)
// representation space.

inline PatternReport pattern_subspaces(const FiniteRep& rep_in, const Subspace& H_in,
                                       int max_len, double tol = kPsdTol) {
  CompressedPointEval as_eval{rep_in, H_in.basis};
  MinimalPart min = minimal_part(as_eval);
  const FiniteRep& rep = min.mu.rep;
  Subspace H{rep.dim, min.mu.isometry};

  PatternReport out;
  out.tol = tol;
  out.minimal_truncated = min.truncated;

  const std::vector<int> algs = rep.algebra_indices();
  const int d = algs.empty() ? 0 : (*std::max_element(algs.begin(), algs.end()) + 1);
  std::map<std::string, Subspace> spaces;
  spaces[""] = H;
  for (const std::string& w : detail::alternating_patterns(d, max_len)) {
    if (!w.empty()) {
      const int i = w[0] - '0';
      const std::string parent = w.substr(1);
      const Subspace& kw = spaces.at(parent);
      Subspace big = closure_under(kw, rep, i);
      spaces[w] = complement_within(big, kw);
    }
    out.patterns.push_back({w, spaces.at(w).dim()});
    out.bases[w] = spaces.at(w).basis;
  }
  detail::finish_report(out, [](const Matrix& a, const Matrix& b) -> Matrix {
    return a.adjoint() * b;
  });
  return out;
}

// ---------------------------------------------------------------------------
// GNS form: subspace calculus in word-coefficient space with the Gram inner
// product. Left multiplication is only defined where the truncated basis can
// absorb the product; excluded operations are counted, not silently wrapped.

namespace detail {

// Gram-orthonormalize the columns of C: returns C' with C'* G C' = I.
// A candidate direction v is numerically null when its Gram norm is tiny
// against the global Gram scale times |v|^2; judging against the block's own
// spectrum would keep pure-noise directions and blow them up to unit length.
inline Matrix orth_gram(const Matrix& C, const Matrix& G) {
  if (C.cols() == 0) return C;
  Matrix M = C.adjoint() * G * C;
  Eigen::SelfAdjointEigenSolver<Matrix> es(M);
  const RealVector& ev = es.eigenvalues();
  const double gscale = std::max(G.cwiseAbs().maxCoeff(), 1e-300);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const double n2 = (C * es.eigenvectors().col(i)).squaredNorm();
    if (ev(i) > std::max(1e-3 * gscale * n2, 1e-13)) keep.push_back(i);
  }
  Matrix out(C.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j)
    out.col(static_cast<Eigen::Index>(j)) =
        C * es.eigenvectors().col(keep[j]) / std::sqrt(ev(keep[j]));
  return out;
}

// Apply the letter (algebra, t^degree) to a coefficient column; nullopt when
// some supported basis word has no in-basis product.
inline std::optional<Vector> act_column(const GnsSpace& g, int algebra, int degree,
                                        const Vector& c) {
  const double support_tol = 1e-11 * std::max(1.0, c.cwiseAbs().maxCoeff());
  Vector out = Vector::Zero(c.size());
  for (Eigen::Index u = 0; u < g.basis_size(); ++u) {
    auto seg = c.segment(u * g.k, g.k);
    if (seg.cwiseAbs().maxCoeff() <= support_tol) continue;
    int target = g.act(algebra, degree, static_cast<int>(u));
    if (target < 0) return std::nullopt;
    out.segment(static_cast<Eigen::Index>(target) * g.k, g.k) += seg;
  }
  return out;
}

}  // namespace detail

inline PatternReport pattern_subspaces(const GnsSpace& g, int max_len, double tol = kPsdTol) {
  PatternReport out;
  out.tol = tol;
  const Matrix& G = g.gram;
  const int d = static_cast<int>(g.degrees.size());

  // K_empty = H: the unit-word block.
  Matrix H = Matrix::Zero(g.space_dim(), g.k);
  const int unit_idx = g.index.at(NCWord{});
  for (Eigen::Index s = 0; s < g.k; ++s) H(unit_idx * g.k + s, s) = 1.0;
  H = detail::orth_gram(H, G);
  if (H.cols() < g.k) out.degenerate = true;

  auto closure_i = [&](const Matrix& base, int i) -> Matrix {
    Matrix cur = base;
    for (;;) {
      std::vector<Vector> extra;
      for (int q = 1; q <= g.degrees[static_cast<std::size_t>(i)]; ++q)
        for (Eigen::Index c = 0; c < cur.cols(); ++c) {
          auto img = detail::act_column(g, i, q, cur.col(c));
          if (img)
            extra.push_back(*img);
          else
            ++out.truncation_hits;
        }
      Matrix cat(cur.rows(), cur.cols() + static_cast<Eigen::Index>(extra.size()));
      cat.leftCols(cur.cols()) = cur;
      for (std::size_t j = 0; j < extra.size(); ++j)
        cat.col(cur.cols() + static_cast<Eigen::Index>(j)) = extra[j];
      Matrix next = detail::orth_gram(cat, G);
      if (next.cols() == cur.cols()) return next;
      cur = next;
    }
  };

  std::map<std::string, Matrix> spaces;
  spaces[""] = H;
  for (const std::string& w : detail::alternating_patterns(d, max_len)) {
    if (!w.empty()) {
      const int i = w[0] - '0';
      const Matrix& kw = spaces.at(w.substr(1));
      Matrix big = closure_i(kw, i);
      // Gram-orthogonal complement of K_w inside its closure; a second
      // projection pass scrubs roundoff left by the first.
      Matrix residual = big - kw * (kw.adjoint() * G * big);
      residual -= kw * (kw.adjoint() * G * residual);
      spaces[w] = detail::orth_gram(residual, G);
    }
    out.patterns.push_back({w, spaces.at(w).cols()});
    out.bases[w] = spaces.at(w);
  }
  detail::finish_report(out, [&G](const Matrix& a, const Matrix& b) -> Matrix {
    return a.adjoint() * G * b;
  });
  return out;
}

struct FreeProductVerdict {
  bool is_free_product = false;
  PatternReport report;
};

inline FreeProductVerdict is_free_product_map(const FiniteRep& rep, const Subspace& H,
                                              int max_len, double tol = kPsdTol) {
  FreeProductVerdict v;
  v.report = pattern_subspaces(rep, H, max_len, tol);
  v.is_free_product = v.report.verdict;
  return v;
}

inline FreeProductVerdict is_free_product_map(const GnsSpace& g, int max_len,
                                              double tol = kPsdTol) {
  FreeProductVerdict v;
  v.report = pattern_subspaces(g, max_len, tol);
  v.is_free_product = v.report.verdict;
  return v;
}

// ---------------------------------------------------------------------------
// Fubini chains

struct FubiniReport {
  bool ok = false;
  // Per step: algebras for which the step is nontrivial (must be <= 1 each).
  std::vector<std::vector<int>> nontrivial;
  std::string failure;

  // Convenience: the single nontrivial coordinate per step, -1 for trivial.
  std::vector<int> step_coordinates() const {
    std::vector<int> out;
    for (const auto& step : nontrivial)
      out.push_back(step.empty() ? -1 : step.front());
    return out;
  }
};

inline FubiniReport verify_fubini_chain(const DilationChain& chain, double tol = 1e-9) {
  FubiniReport rep;
  try {
    chain.validate();
  } catch (const NcError& e) {
    rep.failure = e.what();
    return rep;
  }
  rep.ok = true;
  for (std::size_t step = 0; step + 1 < chain.spaces.size(); ++step) {
    const Subspace& lo = chain.spaces[step];
    const Subspace& hi = chain.spaces[step + 1];
    // Express H_step inside H_{step+1} and compress each generator there.
    Matrix inner = hi.basis.adjoint() * lo.basis;
    Subspace lo_in_hi{hi.dim(), orthonormal_columns(inner)};
    std::vector<int> bad;
    for (const auto& [i, g] : chain.rep.generators) {
      Matrix g_hi = hi.basis.adjoint() * g * hi.basis;
      if (!is_reducing(lo_in_hi, g_hi, tol)) bad.push_back(i);
    }
    if (bad.size() > 1) rep.ok = false;
    rep.nontrivial.push_back(std::move(bad));
  }
  return rep;
}

struct FubiniSearchResult {
  bool found = false;
  DilationChain chain;
  std::vector<int> sequence;
  FubiniReport report;
};

// Breadth-first search over index sequences: H_{t+1} = closure of H_t under
// generator sigma_t; first sequence whose chain verifies wins. The input is
// cut to its minimal part first.
inline FubiniSearchResult find_fubini_chain(const FiniteRep& rep_in, const Subspace& H_in,
                                            int max_steps, double tol = 1e-9) {
  MinimalPart min = minimal_part({rep_in, H_in.basis});
  const FiniteRep& rep = min.mu.rep;
  Subspace H{rep.dim, min.mu.isometry};
  const std::vector<int> algs = rep.algebra_indices();

  std::vector<std::vector<int>> frontier{{}};
  for (int len = 0; len <= max_steps; ++len) {
    for (const auto& seq : frontier) {
      DilationChain chain;
      chain.rep = rep;
      chain.spaces = {H};
      for (int i : seq) chain.spaces.push_back(closure_under(chain.spaces.back(), rep, i));
      if (chain.spaces.back().dim() != rep.dim) continue;
      FubiniReport check = verify_fubini_chain(chain, tol);
      if (check.ok) return {true, std::move(chain), seq, std::move(check)};
    }
    std::vector<std::vector<int>> next;
    for (const auto& seq : frontier)
      for (int i : algs) {
        auto longer = seq;
        longer.push_back(i);
        next.push_back(std::move(longer));
      }
    frontier = std::move(next);
  }
  return {};
}

}  // namespace ncj
