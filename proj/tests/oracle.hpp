#pragma once
// Reference computations that avoid the library's code paths: Taylor series
// in long double with plain squaring, power iteration, closed 2x2 formulas.

#include <cmath>
#include <complex>

#include <Eigen/Dense>

namespace oracle {

using lcplx = std::complex<long double>;
using LMatrix = Eigen::Matrix<lcplx, Eigen::Dynamic, Eigen::Dynamic>;

inline LMatrix widen(const Eigen::MatrixXcd& A) { return A.cast<lcplx>(); }
inline Eigen::MatrixXcd narrow(const LMatrix& A) { return A.cast<std::complex<double>>(); }

inline long double norm1(const LMatrix& A) {
  long double best = 0;
  for (Eigen::Index j = 0; j < A.cols(); ++j) {
    long double s = 0;
    for (Eigen::Index i = 0; i < A.rows(); ++i) s += std::abs(A(i, j));
    best = std::max(best, s);
  }
  return best;
}

// e^{A t}: scale to norm <= 1/8, 40 Taylor terms, square back.
inline Eigen::MatrixXcd expm(const Eigen::MatrixXcd& A, double t) {
  LMatrix X = widen(A) * lcplx(t);
  int s = 0;
  long double nrm = norm1(X);
  while (nrm > 0.125L) {
    nrm /= 2;
    ++s;
  }
  X /= lcplx(std::ldexp(1.0L, s));
  const Eigen::Index n = A.rows();
  LMatrix E = LMatrix::Identity(n, n), term = LMatrix::Identity(n, n);
  for (int k = 1; k <= 40; ++k) {
    term = (term * X / lcplx(k)).eval();
    E += term;
  }
  for (int i = 0; i < s; ++i) E = (E * E).eval();
  return narrow(E);
}

// sigma_max by power iteration on A*A in long double.
inline double spectral_norm(const Eigen::MatrixXcd& A, int iters = 3000) {
  const LMatrix G = widen(A).adjoint() * widen(A);
  Eigen::Matrix<lcplx, Eigen::Dynamic, 1> v(G.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = lcplx(1.0L + 0.37L * i, 0.11L * i);
  long double lam = 0;
  for (int k = 0; k < iters; ++k) {
    auto w = (G * v).eval();
    const long double nw = std::sqrt(std::abs(w.squaredNorm()));
    if (nw == 0) return 0.0;
    lam = nw / std::sqrt(std::abs(v.squaredNorm()));
    v = w / lcplx(nw);
  }
  return static_cast<double>(std::sqrt(lam));
}

// Eigenvalues of a 2x2 Hermitian matrix, ascending.
inline std::pair<double, double> eig2_hermitian(const Eigen::Matrix2cd& H) {
  const double a = H(0, 0).real(), d = H(1, 1).real();
  const double b = std::abs(H(0, 1));
  const double m = 0.5 * (a + d), r = std::hypot(0.5 * (a - d), b);
  return {m - r, m + r};
}

}  // namespace oracle
