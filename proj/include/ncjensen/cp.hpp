// Concrete ucp maps into M_k, Naimark dilation, and numerical subspace
// calculus on finite-dimensional representation spaces.
#pragma once

#include <vector>

#include "ncjensen/ncalg.hpp"

namespace ncj {

// ---------------------------------------------------------------------------
// Operator-valued measures: mu(q) = sum_j q(t_j) Q_j, with sum Q_j = I_k.

struct OVMeasure {
  int algebra = 0;  // IntervalAlgebra index
  double lo = -1.0, hi = 1.0;
  Eigen::Index k = 1;
  struct Atom {
    double t;
    Matrix Q;  // k x k PSD
  };
  std::vector<Atom> atoms;

  void validate(double tol = 1e-8) const {
    Matrix sum = Matrix::Zero(k, k);
    for (const auto& a : atoms) {
      if (a.Q.rows() != k || a.Q.cols() != k) throw NcError("OVMeasure: atom dimension mismatch");
      require_hermitian(a.Q, "OVMeasure atom");
      if (min_eigenvalue(a.Q) < -tol * (1.0 + a.Q.cwiseAbs().maxCoeff()))
        throw NcError("OVMeasure: atom is not PSD");
      if (a.t < lo - tol || a.t > hi + tol) throw NcError("OVMeasure: atom outside interval");
      sum += a.Q;
    }
    if ((sum - identity(k)).cwiseAbs().maxCoeff() > tol)
      throw NcError("OVMeasure: atoms do not sum to the identity");
  }
};

inline Matrix measure_apply(const OVMeasure& m, const Poly& q) {
  Matrix r = Matrix::Zero(m.k, m.k);
  for (const auto& a : m.atoms) r += poly_eval(q, a.t) * a.Q;
  return r;
}

// Scalar measures double as states; convenience constructors.
inline OVMeasure point_mass(int algebra, double lo, double hi, double t, Eigen::Index k = 1) {
  OVMeasure m{algebra, lo, hi, k, {{t, identity(k)}}};
  return m;
}

inline OVMeasure scalar_measure(int algebra, double lo, double hi,
                                const std::vector<double>& nodes,
                                const std::vector<double>& weights) {
  OVMeasure m{algebra, lo, hi, 1, {}};
  for (std::size_t j = 0; j < nodes.size(); ++j)
    m.atoms.push_back({nodes[j], Matrix::Constant(1, 1, Complex(weights[j], 0.0))});
  return m;
}

inline double state_apply(const OVMeasure& phi, const Poly& q) {
  if (phi.k != 1) throw NcError("state_apply: measure has k != 1");
  return measure_apply(phi, q)(0, 0).real();
}

inline double state_mean(const OVMeasure& phi) { return state_apply(phi, poly_monomial(1)); }

// ---------------------------------------------------------------------------
// Choi matrices for maps M_n -> M_k; block (u,v) is mu(E_uv).

struct ChoiMap {
  Eigen::Index n = 1, k = 1;
  Matrix choi;  // (n*k) x (n*k)

  Matrix block(Eigen::Index u, Eigen::Index v) const {
    return choi.block(u * k, v * k, k, k);
  }

  void validate(double tol = 1e-8) const {
    if (choi.rows() != n * k || choi.cols() != n * k) throw NcError("ChoiMap: bad dimensions");
    require_hermitian(choi, "ChoiMap");
    if (min_eigenvalue(choi) < -tol * (1.0 + choi.cwiseAbs().maxCoeff()))
      throw NcError("ChoiMap: Choi matrix not PSD (map not completely positive)");
    Matrix diag = Matrix::Zero(k, k);
    for (Eigen::Index u = 0; u < n; ++u) diag += block(u, u);
    if ((diag - identity(k)).cwiseAbs().maxCoeff() > tol) throw NcError("ChoiMap: not unital");
  }
};

inline Matrix choi_apply(const ChoiMap& c, const Matrix& a) {
  if (a.rows() != c.n || a.cols() != c.n) throw NcError("choi_apply: dimension mismatch");
  Matrix r = Matrix::Zero(c.k, c.k);
  for (Eigen::Index u = 0; u < c.n; ++u)
    for (Eigen::Index v = 0; v < c.n; ++v) r += a(u, v) * c.block(u, v);
  return r;
}

inline ChoiMap choi_identity(Eigen::Index n) {
  ChoiMap c{n, n, Matrix::Zero(n * n, n * n)};
  // block (u,v) = E_uv
  for (Eigen::Index u = 0; u < n; ++u)
    for (Eigen::Index v = 0; v < n; ++v)
      c.choi.block(u * n, v * n, n, n)(u, v) = 1.0;
  return c;
}

inline ChoiMap choi_normalized_trace(Eigen::Index n) {
  ChoiMap c{n, 1, Matrix::Zero(n, n)};
  for (Eigen::Index u = 0; u < n; ++u) c.choi(u, u) = 1.0 / static_cast<double>(n);
  return c;
}

// ---------------------------------------------------------------------------
// Naimark dilation of an OVMeasure: block-diagonal functional calculus
// rep(q) = diag_j(q(t_j) I_k) compressed by V = colstack(Q_j^{1/2}).

struct NaimarkDilation {
  std::vector<double> nodes;
  Eigen::Index k = 1;
  Matrix isometry;  // (k*s) x k

  Matrix rep_apply(const Poly& q) const {
    const Eigen::Index s = static_cast<Eigen::Index>(nodes.size());
    Matrix r = Matrix::Zero(s * k, s * k);
    for (Eigen::Index j = 0; j < s; ++j)
      r.block(j * k, j * k, k, k) = poly_eval(q, nodes[j]) * identity(k);
    return r;
  }

  Matrix compress(const Poly& q) const {
    return isometry.adjoint() * rep_apply(q) * isometry;
  }
};

inline NaimarkDilation naimark_dilate(const OVMeasure& m) {
  if (m.atoms.empty()) throw NcError("naimark_dilate: measure has no atoms");
  NaimarkDilation d;
  d.k = m.k;
  const Eigen::Index s = static_cast<Eigen::Index>(m.atoms.size());
  d.isometry.resize(s * m.k, m.k);
  for (Eigen::Index j = 0; j < s; ++j) {
    d.nodes.push_back(m.atoms[j].t);
    d.isometry.block(j * m.k, 0, m.k, m.k) = psd_sqrt(m.atoms[j].Q);
  }
  return d;
}

// ---------------------------------------------------------------------------
// Finite representations and subspaces

struct FiniteRep {
  Eigen::Index dim = 0;
  std::map<int, Matrix> generators;  // algebra index -> Hermitian dim x dim

  const Matrix& generator(int algebra) const {
    auto it = generators.find(algebra);
    if (it == generators.end())
      throw NcError("FiniteRep: no generator for algebra " + std::to_string(algebra));
    return it->second;
  }

  std::vector<int> algebra_indices() const {
    std::vector<int> idx;
    for (const auto& [i, g] : generators) idx.push_back(i);
    return idx;
  }

  MatrixTuple as_tuple() const {
    MatrixTuple x;
    x.level = dim;
    x.entries = generators;
    return x;
  }

  void validate() const {
    for (const auto& [i, g] : generators) {
      if (g.rows() != dim || g.cols() != dim) throw NcError("FiniteRep: generator dimension mismatch");
      require_hermitian(g, "FiniteRep generator");
    }
  }
};

inline FiniteRep make_rep(std::vector<Matrix> gens) {
  FiniteRep rep;
  rep.dim = gens.empty() ? 0 : gens[0].rows();
  for (std::size_t i = 0; i < gens.size(); ++i) rep.generators[static_cast<int>(i)] = std::move(gens[i]);
  rep.validate();
  return rep;
}

struct Subspace {
  Eigen::Index ambient = 0;
  Matrix basis;  // ambient x r, orthonormal columns

  Eigen::Index dim() const { return basis.cols(); }
  Matrix projector() const { return basis * basis.adjoint(); }

  static Subspace from_columns(const Matrix& cols) {
    return Subspace{cols.rows(), orthonormal_columns(cols)};
  }
  static Subspace span_of(Eigen::Index ambient, const std::vector<Eigen::Index>& coords) {
    Matrix b = Matrix::Zero(ambient, static_cast<Eigen::Index>(coords.size()));
    for (std::size_t j = 0; j < coords.size(); ++j) b(coords[j], static_cast<Eigen::Index>(j)) = 1.0;
    return Subspace{ambient, b};
  }
  static Subspace full(Eigen::Index ambient) { return Subspace{ambient, identity(ambient)}; }
  static Subspace zero(Eigen::Index ambient) { return Subspace{ambient, Matrix(ambient, 0)}; }

  bool contains(const Subspace& other, double tol = 1e-8) const {
    if (other.dim() == 0) return true;
    Matrix residual = other.basis - projector() * other.basis;
    return residual.cwiseAbs().maxCoeff() <= tol;
  }

  bool matches(const Subspace& other, double tol = 1e-10) const {
    if (ambient != other.ambient) return false;
    return (projector() - other.projector()).cwiseAbs().maxCoeff() <= tol;
  }
};

// Hermitian generator: invariance equals reducing, one off-diagonal block.
inline bool is_reducing(const Subspace& s, const Matrix& y, double tol = 1e-9) {
  if (s.dim() == 0 || s.dim() == s.ambient) return true;
  Matrix p = s.projector();
  Matrix off = (identity(s.ambient) - p) * y * p;
  return off.cwiseAbs().maxCoeff() <= tol * (1.0 + y.cwiseAbs().maxCoeff());
}

inline bool is_reducing(const Subspace& s, const FiniteRep& rep, int algebra, double tol = 1e-9) {
  if (s.ambient != rep.dim) throw NcError("is_reducing: ambient dimension mismatch");
  return is_reducing(s, rep.generator(algebra), tol);
}

// Smallest subspace containing s and invariant under y.
inline Subspace closure_under(const Subspace& s, const Matrix& y) {
  Subspace cur = s;
  for (Eigen::Index iter = 0; iter <= s.ambient; ++iter) {
    Matrix cat(cur.ambient, 2 * cur.dim());
    cat << cur.basis, y * cur.basis;
    Subspace next = Subspace::from_columns(cat);
    if (next.dim() == cur.dim()) return cur;
    cur = next;
  }
  return cur;
}

inline Subspace closure_under(const Subspace& s, const FiniteRep& rep, int algebra) {
  return closure_under(s, rep.generator(algebra));
}

// Closure under every generator of the representation (minimal part of a
// compression whose range contains s).
inline Subspace closure_under_all(const Subspace& s, const FiniteRep& rep) {
  Subspace cur = s;
  for (;;) {
    Subspace next = cur;
    for (const auto& [i, g] : rep.generators) next = closure_under(next, g);
    if (next.dim() == cur.dim()) return cur;
    cur = next;
  }
}

inline Subspace complement_within(const Subspace& big, const Subspace& small, double tol = 1e-8) {
  if (!big.contains(small, tol)) throw NcError("complement_within: containment failure");
  Matrix residual = big.basis - small.projector() * big.basis;
  Subspace comp = Subspace::from_columns(residual);
  if (comp.dim() != big.dim() - small.dim())
    throw NcError("complement_within: rank mismatch after projection");
  return comp;
}

// ---------------------------------------------------------------------------
// Compressed point evaluations mu = alpha* delta_x alpha

struct CompressedPointEval {
  FiniteRep rep;
  Matrix isometry;  // N x k, orthonormal columns

  Eigen::Index target_dim() const { return isometry.cols(); }

  void validate(double tol = 1e-10) const {
    rep.validate();
    if (isometry.rows() != rep.dim) throw NcError("CompressedPointEval: isometry dimension mismatch");
    Matrix g = isometry.adjoint() * isometry;
    if ((g - identity(isometry.cols())).cwiseAbs().maxCoeff() > tol)
      throw NcError("CompressedPointEval: columns not orthonormal");
  }

  MatrixTuple barycenter() const {
    MatrixTuple x;
    x.level = target_dim();
    for (const auto& [i, g] : rep.generators)
      x.entries[i] = isometry.adjoint() * g * isometry;
    return x;
  }
};

inline Matrix compress(const FiniteRep& rep, const Matrix& isometry, const NCPoly& p) {
  return isometry.adjoint() * evaluate_poly(p, rep.as_tuple()) * isometry;
}

inline Matrix compress(const CompressedPointEval& mu, const NCPoly& p) {
  return compress(mu.rep, mu.isometry, p);
}

// Restrict the representation to the invariant subspace generated by ran(alpha).
// Reports whether anything was cut (non-minimal input).
struct MinimalPart {
  CompressedPointEval mu;
  bool truncated = false;
};

inline MinimalPart minimal_part(const CompressedPointEval& mu) {
  Subspace range = Subspace::from_columns(mu.isometry);
  Subspace m = closure_under_all(range, mu.rep);
  if (m.dim() == mu.rep.dim) return {mu, false};
  FiniteRep restricted;
  restricted.dim = m.dim();
  for (const auto& [i, g] : mu.rep.generators)
    restricted.generators[i] = m.basis.adjoint() * g * m.basis;
  return {{restricted, m.basis.adjoint() * mu.isometry}, true};
}

// ---------------------------------------------------------------------------
// Dilation chains H_0 <= H_1 <= ... <= H_m = full space

struct DilationChain {
  FiniteRep rep;
  std::vector<Subspace> spaces;

  void validate(double tol = 1e-8) const {
    if (spaces.empty()) throw NcError("DilationChain: empty chain");
    for (const auto& s : spaces)
      if (s.ambient != rep.dim) throw NcError("DilationChain: ambient mismatch");
    for (std::size_t i = 0; i + 1 < spaces.size(); ++i)
      if (!spaces[i + 1].contains(spaces[i], tol))
        throw NcError("DilationChain: nesting violation at step " + std::to_string(i));
    if (spaces.back().dim() != rep.dim)
      throw NcError("DilationChain: final space is not the whole representation space");
  }
};

}  // namespace ncj
