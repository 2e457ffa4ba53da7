// Word and polynomial algebra over a unital free product of tagged algebras.
//
// Letters carry either a univariate real polynomial in the algebra's
// selfadjoint generator (interval algebras) or a concrete complex matrix
// (matrix algebras). Words are kept in reduced alternating form; polynomials
// are finite coefficient maps over reduced words.
#pragma once

#include <map>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "ncjensen/core.hpp"

namespace ncj {

// ---------------------------------------------------------------------------
// Algebra family

struct IntervalAlgebra {
  double lo = -1.0;
  double hi = 1.0;
};

struct MatrixAlgebra {
  int dim = 1;
};

struct AlgebraSpec {
  int index = 0;
  std::variant<IntervalAlgebra, MatrixAlgebra> kind;

  bool is_interval() const { return std::holds_alternative<IntervalAlgebra>(kind); }
  const IntervalAlgebra& interval() const { return std::get<IntervalAlgebra>(kind); }
  const MatrixAlgebra& matrix() const { return std::get<MatrixAlgebra>(kind); }
};

inline void validate_algebras(const std::vector<AlgebraSpec>& algs) {
  for (std::size_t i = 0; i < algs.size(); ++i) {
    if (algs[i].index != static_cast<int>(i))
      throw NcError("algebra indices must be contiguous from 0");
    if (algs[i].is_interval()) {
      if (!(algs[i].interval().lo < algs[i].interval().hi))
        throw NcError("interval algebra requires lo < hi");
    } else if (algs[i].matrix().dim < 1) {
      throw NcError("matrix algebra requires dim >= 1");
    }
  }
}

// ---------------------------------------------------------------------------
// Univariate real polynomials (dense coefficient vectors, c0 + c1 t + ...)

using Poly = RealVector;

inline Poly poly_constant(double c) {
  Poly p(1);
  p(0) = c;
  return p;
}

inline Poly poly_monomial(int degree, double c = 1.0) {
  Poly p = Poly::Zero(degree + 1);
  p(degree) = c;
  return p;
}

inline Poly poly_trim(const Poly& p) {
  Eigen::Index n = p.size();
  while (n > 1 && p(n - 1) == 0.0) --n;
  return p.head(n);
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r = Poly::Zero(a.size() + b.size() - 1);
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = 0; j < b.size(); ++j) r(i + j) += a(i) * b(j);
  return poly_trim(r);
}

inline double poly_eval(const Poly& p, double t) {
  double r = 0.0;
  for (Eigen::Index i = p.size(); i-- > 0;) r = r * t + p(i);
  return r;
}

// Hermitian functional calculus: q(x) for Hermitian x, by Horner.
inline Matrix poly_eval(const Poly& p, const Matrix& x) {
  Matrix r = Matrix::Zero(x.rows(), x.cols());
  for (Eigen::Index i = p.size(); i-- > 0;)
    r = r * x + p(i) * identity(x.rows());
  return r;
}

// Exactly c*1? Constant extraction is coefficient comparison, never tolerance.
inline std::optional<double> poly_as_constant(const Poly& p) {
  for (Eigen::Index i = 1; i < p.size(); ++i)
    if (p(i) != 0.0) return std::nullopt;
  return p.size() ? p(0) : 0.0;
}

// ---------------------------------------------------------------------------
// Letters and words

struct Letter {
  int algebra = 0;
  std::variant<Poly, Matrix> payload;

  Letter() = default;
  Letter(int alg, Poly p) : algebra(alg), payload(poly_trim(std::move(p))) {}
  Letter(int alg, Matrix m) : algebra(alg), payload(std::move(m)) {}

  bool is_poly() const { return std::holds_alternative<Poly>(payload); }
  const Poly& poly() const { return std::get<Poly>(payload); }
  const Matrix& mat() const { return std::get<Matrix>(payload); }
};

// c such that payload == c * 1, exactly.
inline std::optional<Complex> letter_as_constant(const Letter& l) {
  if (l.is_poly()) {
    if (auto c = poly_as_constant(l.poly())) return Complex(*c, 0.0);
    return std::nullopt;
  }
  const Matrix& m = l.mat();
  const Complex c = m(0, 0);
  if (m != (c * identity(m.rows()))) return std::nullopt;
  return c;
}

inline Letter letter_mul(const Letter& a, const Letter& b) {
  if (a.algebra != b.algebra) throw NcError("letter_mul: algebra mismatch");
  if (a.is_poly() != b.is_poly()) throw NcError("letter_mul: payload kind mismatch");
  if (a.is_poly()) return Letter(a.algebra, poly_mul(a.poly(), b.poly()));
  if (a.mat().cols() != b.mat().rows()) throw NcError("letter_mul: dimension mismatch");
  return Letter(a.algebra, Matrix(a.mat() * b.mat()));
}

inline Letter letter_adjoint(const Letter& l) {
  if (l.is_poly()) return l;  // real coefficients in a selfadjoint generator
  return Letter(l.algebra, Matrix(l.mat().adjoint()));
}

// Canonical ordering: algebra index, payload kind, then coefficient values.
inline int letter_compare(const Letter& a, const Letter& b) {
  if (a.algebra != b.algebra) return a.algebra < b.algebra ? -1 : 1;
  if (a.is_poly() != b.is_poly()) return a.is_poly() ? -1 : 1;
  auto cmp_doubles = [](const double* x, const double* y, Eigen::Index n) -> int {
    for (Eigen::Index i = 0; i < n; ++i)
      if (x[i] != y[i]) return x[i] < y[i] ? -1 : 1;
    return 0;
  };
  if (a.is_poly()) {
    if (a.poly().size() != b.poly().size())
      return a.poly().size() < b.poly().size() ? -1 : 1;
    return cmp_doubles(a.poly().data(), b.poly().data(), a.poly().size());
  }
  if (a.mat().rows() != b.mat().rows()) return a.mat().rows() < b.mat().rows() ? -1 : 1;
  if (a.mat().cols() != b.mat().cols()) return a.mat().cols() < b.mat().cols() ? -1 : 1;
  for (Eigen::Index i = 0; i < a.mat().size(); ++i) {
    const Complex x = a.mat().data()[i], y = b.mat().data()[i];
    if (x.real() != y.real()) return x.real() < y.real() ? -1 : 1;
    if (x.imag() != y.imag()) return x.imag() < y.imag() ? -1 : 1;
  }
  return 0;
}

struct NCWord {
  std::vector<Letter> letters;  // reduced: adjacent algebra indices distinct

  bool is_unit() const { return letters.empty(); }
  std::size_t length() const { return letters.size(); }
};

inline int word_compare(const NCWord& a, const NCWord& b) {
  if (a.length() != b.length()) return a.length() < b.length() ? -1 : 1;
  for (std::size_t i = 0; i < a.length(); ++i)
    if (int c = letter_compare(a.letters[i], b.letters[i])) return c;
  return 0;
}

inline bool operator<(const NCWord& a, const NCWord& b) { return word_compare(a, b) < 0; }
inline bool operator==(const NCWord& a, const NCWord& b) { return word_compare(a, b) == 0; }

struct ReducedWord {
  NCWord word;
  Complex scalar{1.0, 0.0};  // constants extracted during reduction
};

// Normal form: merge adjacent same-algebra letters, pull out exact constants.
inline ReducedWord reduce_word(const std::vector<Letter>& letters) {
  ReducedWord out;
  auto push = [&out](const Letter& l) {
    Letter cur = l;
    for (;;) {
      if (auto c = letter_as_constant(cur)) {
        out.scalar *= *c;
        return;
      }
      if (!out.word.letters.empty() && out.word.letters.back().algebra == cur.algebra) {
        cur = letter_mul(out.word.letters.back(), cur);
        out.word.letters.pop_back();
        continue;
      }
      out.word.letters.push_back(cur);
      return;
    }
  };
  for (const Letter& l : letters) push(l);
  return out;
}

inline ReducedWord word_mul(const NCWord& a, const NCWord& b) {
  std::vector<Letter> cat = a.letters;
  cat.insert(cat.end(), b.letters.begin(), b.letters.end());
  return reduce_word(cat);
}

inline NCWord word_adjoint(const NCWord& w) {
  NCWord r;
  r.letters.reserve(w.length());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    r.letters.push_back(letter_adjoint(*it));
  return r;
}

// ---------------------------------------------------------------------------
// Polynomials over the free product

struct NCPoly {
  std::map<NCWord, Complex> terms;

  NCPoly() = default;
  static NCPoly unit() { return constant(1.0); }
  static NCPoly constant(Complex c) {
    NCPoly p;
    p.add(NCWord{}, c);
    return p;
  }
  static NCPoly from_word(const NCWord& w, Complex coeff = 1.0) {
    NCPoly p;
    p.add(w, coeff);
    return p;
  }

  void add(const NCWord& w, Complex c) {
    if (c == Complex{}) return;
    auto [it, inserted] = terms.emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (std::abs(it->second) == 0.0) terms.erase(it);
    }
  }
};

inline NCPoly operator+(const NCPoly& a, const NCPoly& b) {
  NCPoly r = a;
  for (const auto& [w, c] : b.terms) r.add(w, c);
  return r;
}

inline NCPoly operator-(const NCPoly& a, const NCPoly& b) {
  NCPoly r = a;
  for (const auto& [w, c] : b.terms) r.add(w, -c);
  return r;
}

inline NCPoly operator*(Complex s, const NCPoly& a) {
  NCPoly r;
  for (const auto& [w, c] : a.terms) r.add(w, s * c);
  return r;
}

inline NCPoly operator*(const NCPoly& a, const NCPoly& b) {
  NCPoly r;
  for (const auto& [wa, ca] : a.terms)
    for (const auto& [wb, cb] : b.terms) {
      ReducedWord prod = word_mul(wa, wb);
      r.add(prod.word, ca * cb * prod.scalar);
    }
  return r;
}

inline NCPoly adjoint(const NCPoly& p) {
  NCPoly r;
  for (const auto& [w, c] : p.terms) {
    ReducedWord red = reduce_word(word_adjoint(w).letters);
    r.add(red.word, std::conj(c) * red.scalar);
  }
  return r;
}

inline bool is_selfadjoint(const NCPoly& p, double tol = 1e-12) {
  NCPoly diff = p - adjoint(p);
  double m = 0.0;
  for (const auto& [w, c] : diff.terms) m = std::max(m, std::abs(c));
  return m <= tol;
}

// ---------------------------------------------------------------------------
// Points of MIN(I_1) x ... x MIN(I_d) at a fixed matrix level

struct MatrixTuple {
  Eigen::Index level = 1;
  std::map<int, Matrix> entries;  // algebra index -> Hermitian level x level

  const Matrix& at(int algebra) const {
    auto it = entries.find(algebra);
    if (it == entries.end())
      throw NcError("MatrixTuple: no entry for algebra " + std::to_string(algebra));
    return it->second;
  }
};

inline MatrixTuple make_tuple(std::vector<Matrix> mats) {
  MatrixTuple x;
  x.level = mats.empty() ? 1 : mats[0].rows();
  for (std::size_t i = 0; i < mats.size(); ++i) {
    if (mats[i].rows() != x.level || mats[i].cols() != x.level)
      throw NcError("MatrixTuple: level mismatch");
    x.entries[static_cast<int>(i)] = std::move(mats[i]);
  }
  return x;
}

inline MatrixTuple make_scalar_tuple(const std::vector<double>& vals) {
  std::vector<Matrix> mats;
  for (double v : vals) mats.push_back(Matrix::Constant(1, 1, Complex(v, 0.0)));
  return make_tuple(std::move(mats));
}

inline bool min_membership(const Matrix& x, double lo, double hi, double tol = 1e-10) {
  require_hermitian(x, "min_membership");
  RealVector ev = hermitian_eigenvalues(x);
  return ev.minCoeff() >= lo - tol && ev.maxCoeff() <= hi + tol;
}

inline Matrix evaluate_letter(const Letter& l, const MatrixTuple& x) {
  if (l.is_poly()) return poly_eval(l.poly(), x.at(l.algebra));
  // Matrix-algebra letter: identity representation at matching level.
  if (l.mat().rows() != x.level)
    throw NcError("evaluate: matrix letter dimension does not match tuple level");
  return l.mat();
}

inline Matrix evaluate_word(const NCWord& w, const MatrixTuple& x) {
  Matrix r = identity(x.level);
  for (const Letter& l : w.letters) r *= evaluate_letter(l, x);
  return r;
}

inline Matrix evaluate_poly(const NCPoly& p, const MatrixTuple& x) {
  Matrix r = Matrix::Zero(x.level, x.level);
  for (const auto& [w, c] : p.terms) r += c * evaluate_word(w, x);
  return r;
}

}  // namespace ncj
