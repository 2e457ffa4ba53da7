// Conditionally free product functionals: the memoized word-moment recursion,
// barycenters, and truncated GNS spaces with their positivity certificate.
#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "ncjensen/cp.hpp"

namespace ncj {

// ---------------------------------------------------------------------------
// CFreeFunctional: per-algebra ucp maps mu_i into M_k and states phi_i.
// The value on a reduced word is determined by the multiplication rule for
// phi-centered alternating words plus the center/scalar expansion.

struct CFreeFunctional {
  std::vector<AlgebraSpec> algebras;
  std::vector<OVMeasure> ucp;     // one per algebra, common target M_k
  std::vector<OVMeasure> states;  // one per algebra, k = 1
  Eigen::Index k = 1;

  struct Memo {
    std::mutex mutex;
    std::map<NCWord, Matrix> table;
  };
  std::shared_ptr<Memo> memo = std::make_shared<Memo>();
  bool use_memo = true;

  std::size_t dims() const { return algebras.size(); }

  void validate() const {
    validate_algebras(algebras);
    if (ucp.size() != algebras.size() || states.size() != algebras.size())
      throw NcError("CFreeFunctional: one ucp map and one state per algebra required");
    for (std::size_t i = 0; i < algebras.size(); ++i) {
      if (!algebras[i].is_interval())
        throw NcError("CFreeFunctional: only interval algebras may be free factors");
      if (ucp[i].k != k) throw NcError("CFreeFunctional: ucp target dimension mismatch");
      if (states[i].k != 1) throw NcError("CFreeFunctional: states must have k = 1");
      ucp[i].validate();
      states[i].validate();
    }
  }
};

namespace detail {

inline void require_reduced(const NCWord& w) {
  for (std::size_t i = 0; i + 1 < w.length(); ++i)
    if (w.letters[i].algebra == w.letters[i + 1].algebra)
      throw NcError("cfree_evaluate: word is not reduced");
  for (const Letter& l : w.letters)
    if (!l.is_poly()) throw NcError("cfree_evaluate: matrix-algebra letters unsupported");
}

inline Matrix cfree_eval_impl(const CFreeFunctional& F, const NCWord& w) {
  if (w.is_unit()) return identity(F.k);
  for (const Letter& l : w.letters)
    if (l.algebra < 0 || l.algebra >= static_cast<int>(F.dims()))
      throw NcError("cfree_evaluate: letter algebra out of range");
  if (w.length() == 1)
    return measure_apply(F.ucp[w.letters[0].algebra], w.letters[0].poly());

  if (F.use_memo) {
    std::lock_guard<std::mutex> lock(F.memo->mutex);
    auto it = F.memo->table.find(w);
    if (it != F.memo->table.end()) return it->second;
  }

  const std::size_t m = w.length();
  std::vector<double> phi(m);
  std::vector<Poly> centered(m);
  for (std::size_t l = 0; l < m; ++l) {
    const Poly& q = w.letters[l].poly();
    phi[l] = state_apply(F.states[w.letters[l].algebra], q);
    centered[l] = q;
    centered[l](0) -= phi[l];
  }

  // All-centered term: the multiplication rule for alternating centered words.
  Matrix result = identity(F.k);
  for (std::size_t l = 0; l < m; ++l)
    result *= measure_apply(F.ucp[w.letters[l].algebra], centered[l]);

  // Remaining 2^m - 1 center/scalar choices; each strictly shortens the word.
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    Complex scalar = 1.0;
    std::vector<Letter> rest;
    for (std::size_t l = 0; l < m; ++l) {
      if (mask & (std::uint64_t{1} << l))
        scalar *= phi[l];
      else
        rest.emplace_back(w.letters[l].algebra, centered[l]);
    }
    if (scalar == Complex{}) continue;
    ReducedWord red = reduce_word(rest);
    result += scalar * red.scalar * cfree_eval_impl(F, red.word);
  }

  if (F.use_memo) {
    std::lock_guard<std::mutex> lock(F.memo->mutex);
    F.memo->table.emplace(w, result);
  }
  return result;
}

}  // namespace detail

inline Matrix cfree_evaluate(const CFreeFunctional& F, const NCWord& w) {
  detail::require_reduced(w);
  return detail::cfree_eval_impl(F, w);
}

inline Matrix cfree_evaluate_poly(const CFreeFunctional& F, const NCPoly& p) {
  Matrix r = Matrix::Zero(F.k, F.k);
  for (const auto& [w, c] : p.terms) r += c * cfree_evaluate(F, w);
  return r;
}

// First moments mu_i(t); each must pass MIN membership for its interval.
inline MatrixTuple barycenter(const CFreeFunctional& F) {
  MatrixTuple x;
  x.level = F.k;
  for (std::size_t i = 0; i < F.dims(); ++i) {
    if (!F.algebras[i].is_interval())
      throw NcError("barycenter: all algebras must be intervals");
    Matrix mean = measure_apply(F.ucp[i], poly_monomial(1));
    const auto& iv = F.algebras[i].interval();
    if (!min_membership(mean, iv.lo, iv.hi, 1e-8))
      throw NcError("barycenter: first moment of algebra " + std::to_string(i) +
                    " escapes its interval (invalid OVMeasure)");
    x.entries[static_cast<int>(i)] = mean;
  }
  return x;
}

// ---------------------------------------------------------------------------
// Truncated GNS space: alternating words of length <= L with monomial payloads
// t^1..t^P_i, Gram blocks mu(u* v) over the word (x) C^k basis.

struct GnsSpace {
  Eigen::Index k = 1;
  int max_len = 0;
  std::vector<int> degrees;  // payload degree bound per algebra
  std::vector<NCWord> words;
  std::map<NCWord, int> index;
  Matrix gram;  // (B*k) x (B*k), Hermitian PSD

  Eigen::Index basis_size() const { return static_cast<Eigen::Index>(words.size()); }
  Eigen::Index space_dim() const { return basis_size() * k; }

  // Left multiplication by the monomial letter (algebra, t^degree) on a basis
  // word; -1 when the product leaves the truncated basis.
  int act(int algebra, int degree, int word_idx) const {
    std::vector<Letter> cat;
    cat.emplace_back(algebra, poly_monomial(degree));
    const NCWord& u = words[static_cast<std::size_t>(word_idx)];
    cat.insert(cat.end(), u.letters.begin(), u.letters.end());
    ReducedWord red = reduce_word(cat);
    auto it = index.find(red.word);
    return it == index.end() ? -1 : it->second;
  }
};

namespace detail {

inline void enumerate_gns_words(const CFreeFunctional& F, const std::vector<int>& degrees,
                                int max_len, NCWord& cur, std::vector<NCWord>& out) {
  out.push_back(cur);
  if (static_cast<int>(cur.length()) == max_len) return;
  const int last = cur.is_unit() ? -1 : cur.letters.front().algebra;
  for (int i = 0; i < static_cast<int>(F.dims()); ++i) {
    if (i == last) continue;
    for (int p = 1; p <= degrees[i]; ++p) {
      NCWord next;
      next.letters.emplace_back(i, poly_monomial(p));
      next.letters.insert(next.letters.end(), cur.letters.begin(), cur.letters.end());
      enumerate_gns_words(F, degrees, max_len, next, out);
    }
  }
}

}  // namespace detail

inline GnsSpace build_gns(const CFreeFunctional& F, int max_len, int max_deg = 0) {
  if (max_len < 0) throw NcError("build_gns: max_len must be >= 0");
  GnsSpace g;
  g.k = F.k;
  g.max_len = max_len;
  for (std::size_t i = 0; i < F.dims(); ++i) {
    int p = max_deg > 0 ? max_deg : std::max<int>(1, static_cast<int>(F.ucp[i].atoms.size()) - 1);
    g.degrees.push_back(p);
  }

  NCWord unit;
  std::vector<NCWord> raw;
  detail::enumerate_gns_words(F, g.degrees, max_len, unit, raw);
  // Sort by length then canonical order; unit word comes first.
  std::sort(raw.begin(), raw.end());
  g.words = std::move(raw);
  for (std::size_t i = 0; i < g.words.size(); ++i)
    g.index[g.words[i]] = static_cast<int>(i);

  const Eigen::Index B = g.basis_size();
  g.gram.resize(B * g.k, B * g.k);
  for (Eigen::Index u = 0; u < B; ++u) {
    for (Eigen::Index v = u; v < B; ++v) {
      ReducedWord prod = word_mul(word_adjoint(g.words[u]), g.words[v]);
      Matrix block = prod.scalar * cfree_evaluate(F, prod.word);
      g.gram.block(u * g.k, v * g.k, g.k, g.k) = block;
      if (v != u) g.gram.block(v * g.k, u * g.k, g.k, g.k) = block.adjoint();
    }
  }

  const double scale = 1.0 + g.gram.cwiseAbs().maxCoeff();
  if (!is_hermitian(g.gram, 1e-9))
    throw NcError("build_gns: Gram matrix is not Hermitian");
  if (min_eigenvalue(g.gram) < -kPsdTol * scale)
    throw NcError("build_gns: Gram matrix fails the complete-positivity certificate");
  return g;
}

}  // namespace ncj
