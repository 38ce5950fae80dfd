#include "hypokit/operator_core.hpp"

#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace hypokit {

void require_finite(const Matrix& A, const char* what) {
  if (!A.allFinite()) throw InvalidEntryError(std::string(what) + " has non-finite entries");
}

void require_square(const Matrix& A, const char* what) {
  if (A.rows() != A.cols()) {
    std::ostringstream os;
    os << what << " is " << A.rows() << "x" << A.cols() << ", expected square";
    throw DimensionError(os.str());
  }
}

OperatorDecomposition hermitian_split(const Matrix& C) {
  require_square(C, "C");
  require_finite(C, "C");
  OperatorDecomposition d;
  d.C = C;
  Matrix Cs = C.adjoint();
  d.R = 0.5 * (C + Cs);
  d.J = -0.5 * (C - Cs);
  return d;
}

Matrix matrix_exponential(const Matrix& A, double t) {
  require_square(A, "A");
  require_finite(A, "A");
  if (!std::isfinite(t)) throw InvalidEntryError("time is not finite");
  if (A.size() == 0) return A;
  Matrix At = A * t;
  const double nrm = At.cwiseAbs().colwise().sum().maxCoeff();
  if (nrm > 1e5) {
    std::ostringstream os;
    os << "matrix_exponential: ||A t||_1 = " << nrm << " exceeds the supported range";
    throw RangeError(os.str());
  }
  Matrix E = At.exp();
  if (!E.allFinite()) throw RangeError("matrix_exponential: result overflowed");
  return E;
}

double spectral_norm(const Matrix& A) {
  require_finite(A, "A");
  if (A.size() == 0) return 0.0;
  Matrix G = A.rows() >= A.cols() ? Matrix(A.adjoint() * A) : Matrix(A * A.adjoint());
  G = symmetrize(G);
  Eigen::SelfAdjointEigenSolver<Matrix> es(G, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("spectral_norm: eigensolver failed");
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double max_asymmetry(const Matrix& A) {
  if (A.size() == 0) return 0.0;
  return (A - A.adjoint()).cwiseAbs().maxCoeff();
}

Matrix symmetrize(const Matrix& A) { return 0.5 * (A + A.adjoint()); }

RealVector eigvals_hermitian(const Matrix& A) {
  require_square(A, "A");
  require_finite(A, "A");
  if (A.size() == 0) return RealVector();
  const double scale = A.cwiseAbs().maxCoeff();
  const double asym = max_asymmetry(A);
  if (asym > 1e-8 * scale) {
    std::ostringstream os;
    os << "matrix is not Hermitian: asymmetry " << asym << " vs scale " << scale;
    throw ContractError(os.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(A), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver failed");
  return es.eigenvalues();
}

double min_eig_hermitian(const Matrix& A) {
  RealVector ev = eigvals_hermitian(A);
  if (ev.size() == 0) throw DimensionError("min_eig_hermitian: empty matrix");
  return ev.minCoeff();
}

double max_eig_hermitian(const Matrix& A) {
  RealVector ev = eigvals_hermitian(A);
  if (ev.size() == 0) throw DimensionError("max_eig_hermitian: empty matrix");
  return ev.maxCoeff();
}

Matrix psd_sqrt(const Matrix& R, double clip_tol, double scale) {
  require_square(R, "R");
  require_finite(R, "R");
  if (R.size() == 0) return R;
  if (max_asymmetry(R) > 1e-8 * R.cwiseAbs().maxCoeff())
    throw ContractError("psd_sqrt: R is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(R));
  if (es.info() != Eigen::Success) throw NumericalError("psd_sqrt: eigensolver failed");
  RealVector ev = es.eigenvalues();
  const double nrm = scale > 0 ? scale : ev.cwiseAbs().maxCoeff();
  if (ev.minCoeff() < -clip_tol * nrm) {
    std::ostringstream os;
    os << "psd_sqrt: eigenvalue " << ev.minCoeff() << " below -" << clip_tol << "*||R||";
    throw NotPsdError(os.str());
  }
  for (auto& e : ev)
    if (e <= clip_tol * nrm) e = 0.0;
  RealVector s = ev.cwiseSqrt();
  const Matrix& V = es.eigenvectors();
  Matrix S = V * s.cast<cplx>().asDiagonal() * V.adjoint();
  return symmetrize(S);
}

std::vector<cplx> eigenvalues(const Matrix& A) {
  require_square(A, "A");
  require_finite(A, "A");
  if (A.size() == 0) return {};
  Eigen::ComplexEigenSolver<Matrix> es(A, false);
  if (es.info() != Eigen::Success) {
    std::ostringstream os;
    os << "eigensolver did not converge (n=" << A.rows()
       << ", max|a_ij|=" << A.cwiseAbs().maxCoeff() << ")";
    throw NumericalError(os.str());
  }
  const auto& e = es.eigenvalues();
  return std::vector<cplx>(e.data(), e.data() + e.size());
}

double spectral_abscissa(const Matrix& A) {
  auto ev = eigenvalues(A);
  if (ev.empty()) throw DimensionError("spectral_abscissa: empty matrix");
  double s = -INFINITY;
  for (const auto& z : ev) s = std::max(s, z.real());
  return s;
}

int numerical_rank(const Matrix& A, double rel_tol) {
  if (A.rows() == 0 || A.cols() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(A);
  const RealVector& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) >= rel_tol * sv(0)) ++r;
  return r;
}

Matrix null_space(const Matrix& A, double rel_tol) {
  const Eigen::Index n = A.cols();
  if (A.rows() == 0) return Matrix::Identity(n, n);
  Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeFullV);
  const RealVector& sv = svd.singularValues();
  int r = 0;
  if (sv.size() > 0 && sv(0) > 0.0)
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) >= rel_tol * sv(0)) ++r;
  return svd.matrixV().rightCols(n - r);
}

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b < 9e15 ? std::round(b) : b;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace hypokit
