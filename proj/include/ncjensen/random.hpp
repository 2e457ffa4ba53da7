// Seeded random generators for matrices, measures, and c-free instances.
// All randomness is derived from (seed, trial index) so runs are replayable.
#pragma once

#include <cstdint>
#include <random>

#include "ncjensen/cfree.hpp"

namespace ncj {

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t trial) {
  // splitmix64 step over seed ^ golden-ratio-scaled trial index
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t trial = 0) {
  return std::mt19937_64(mix_seed(seed, trial));
}

// Uniform spectrum in [lo,hi] conjugated by the orthogonal factor of a real
// Gaussian matrix; degenerate intervals give constant matrices.
inline Matrix random_hermitian(std::mt19937_64& rng, Eigen::Index n, double lo, double hi) {
  std::uniform_real_distribution<double> spec(lo, hi);
  RealVector d(n);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = spec(rng);
  std::normal_distribution<double> gauss(0.0, 1.0);
  RealMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = gauss(rng);
  Eigen::HouseholderQR<RealMatrix> qr(g);
  RealMatrix q = qr.householderQ();
  return (q * d.asDiagonal() * q.transpose()).cast<Complex>();
}

// Random PSD matrices Q_1..Q_s with sum I_k (conjugate by the inverse square
// root of the raw sum).
inline std::vector<Matrix> random_psd_partition(std::mt19937_64& rng, Eigen::Index k, int s) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Matrix> qs;
  Matrix sum = Matrix::Zero(k, k);
  for (int j = 0; j < s; ++j) {
    Matrix a(k, k);
    for (Eigen::Index r = 0; r < k; ++r)
      for (Eigen::Index c = 0; c < k; ++c) a(r, c) = Complex(gauss(rng), gauss(rng));
    Matrix q = a * a.adjoint() + 1e-3 * identity(k);
    qs.push_back(q);
    sum += q;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(sum);
  Matrix inv_root = es.eigenvectors() *
                    es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal().toDenseMatrix().cast<Complex>() *
                    es.eigenvectors().adjoint();
  for (auto& q : qs) q = (inv_root * q * inv_root).eval();
  return qs;
}

inline std::vector<double> random_distinct_nodes(std::mt19937_64& rng, int s, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> nodes;
  while (static_cast<int>(nodes.size()) < s) {
    double t = u(rng);
    bool ok = true;
    for (double prev : nodes)
      if (std::abs(prev - t) < 1e-3 * (hi - lo)) ok = false;
    if (ok) nodes.push_back(t);
  }
  return nodes;
}

inline OVMeasure random_ovmeasure(std::mt19937_64& rng, int algebra, double lo, double hi,
                                  Eigen::Index k, int max_atoms) {
  std::uniform_int_distribution<int> natoms(1, max_atoms);
  const int s = natoms(rng);
  OVMeasure m{algebra, lo, hi, k, {}};
  auto nodes = random_distinct_nodes(rng, s, lo, hi);
  auto qs = random_psd_partition(rng, k, s);
  for (int j = 0; j < s; ++j) m.atoms.push_back({nodes[j], qs[j]});
  return m;
}

inline CFreeFunctional random_cfree_instance(std::mt19937_64& rng,
                                             const std::vector<AlgebraSpec>& algebras,
                                             Eigen::Index k, int max_atoms) {
  CFreeFunctional F;
  F.algebras = algebras;
  F.k = k;
  for (const auto& a : algebras) {
    const auto& iv = a.interval();
    F.ucp.push_back(random_ovmeasure(rng, a.index, iv.lo, iv.hi, k, max_atoms));
    F.states.push_back(random_ovmeasure(rng, a.index, iv.lo, iv.hi, 1, max_atoms));
  }
  F.validate();
  return F;
}

inline std::vector<AlgebraSpec> interval_family(const std::vector<std::pair<double, double>>& ivs) {
  std::vector<AlgebraSpec> algs;
  for (std::size_t i = 0; i < ivs.size(); ++i)
    algs.push_back({static_cast<int>(i), IntervalAlgebra{ivs[i].first, ivs[i].second}});
  return algs;
}

}  // namespace ncj
