#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hypokit {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Error taxonomy. The CLI maps each class to an exit status.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionError : Error {
  using Error::Error;
};
struct InvalidEntryError : Error {
  using Error::Error;
};
struct ParameterError : Error {
  using Error::Error;
};
struct PreconditionError : Error {
  using Error::Error;
};
struct ContractError : Error {
  using Error::Error;
};
struct NotPsdError : Error {
  using Error::Error;
};
struct RangeError : Error {
  using Error::Error;
};
struct NumericalError : Error {
  using Error::Error;
};
struct NoDecayError : Error {
  using Error::Error;
};

// C = R - J with R Hermitian and J skew-Hermitian.
struct OperatorDecomposition {
  Matrix C;
  Matrix R;
  Matrix J;
};

void require_finite(const Matrix& A, const char* what = "matrix");
void require_square(const Matrix& A, const char* what = "matrix");

OperatorDecomposition hermitian_split(const Matrix& C);

// e^{A t}; Pade scaling-and-squaring.
Matrix matrix_exponential(const Matrix& A, double t);

double spectral_norm(const Matrix& A);

// Smallest eigenvalue of (A + A*)/2.
double min_eig_hermitian(const Matrix& A);
double max_eig_hermitian(const Matrix& A);
RealVector eigvals_hermitian(const Matrix& A);

// Eigenvalues within clip_tol * scale of zero are clipped; scale <= 0 means ||R||.
Matrix psd_sqrt(const Matrix& R, double clip_tol = 1e-10, double scale = -1);

double spectral_abscissa(const Matrix& A);
std::vector<cplx> eigenvalues(const Matrix& A);

double max_asymmetry(const Matrix& A);  // ||A - A*||_max
Matrix symmetrize(const Matrix& A);

// Orthonormal basis of the null space of A, singular values below
// rel_tol * sigma_max count as zero. Returns n x k.
Matrix null_space(const Matrix& A, double rel_tol);
int numerical_rank(const Matrix& A, double rel_tol);

double binom(int n, int k);
double factorial(int n);

}  // namespace hypokit
