// Shared scalar types, tolerances, and small dense-matrix helpers.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace ncj {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Relative rank cutoff used everywhere a dimension is decided.
inline constexpr double kRankTol = 1e-10;
// PSD slack: eigenvalues above -kPsdTol*(1+norm) count as nonnegative.
inline constexpr double kPsdTol = 1e-8;

struct NcError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

inline double hermiticity_defect(const Matrix& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const Matrix& a, double tol = 1e-10) {
  if (a.rows() != a.cols()) return false;
  if (a.size() == 0) return true;
  return hermiticity_defect(a) <= tol * (1.0 + a.cwiseAbs().maxCoeff());
}

inline void require_hermitian(const Matrix& a, const std::string& what) {
  if (!is_hermitian(a)) throw NcError(what + ": matrix is not Hermitian");
}

inline RealVector hermitian_eigenvalues(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

inline double min_eigenvalue(const Matrix& a) {
  if (a.rows() == 0) return 0.0;
  return hermitian_eigenvalues(a).minCoeff();
}

// Hermitian square root; eigenvalues slightly below zero are clipped,
// anything below -kPsdTol*(1+norm) is an error.
inline Matrix psd_sqrt(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  RealVector ev = es.eigenvalues();
  const double scale = 1.0 + (a.size() ? a.cwiseAbs().maxCoeff() : 0.0);
  RealVector root(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -kPsdTol * scale)
      throw NcError("psd_sqrt: matrix is not positive semidefinite (min eig " +
                    std::to_string(ev(i)) + ")");
    root(i) = std::sqrt(std::max(ev(i), 0.0));
  }
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

// Orthonormal basis of the column space, rank decided at kRankTol * sigma_max.
inline Matrix orthonormal_columns(const Matrix& cols) {
  if (cols.cols() == 0) return Matrix(cols.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(cols, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return Matrix(cols.rows(), 0);
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) >= kRankTol * sv(0)) ++r;
  return svd.matrixU().leftCols(r);
}

inline double operator_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

}  // namespace ncj
