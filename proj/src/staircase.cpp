#include "hypokit/staircase.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace hypokit {

namespace {

bool near_threshold(double sv, double thr) { return thr > 0 && sv >= 0.1 * thr && sv <= 10.0 * thr; }

std::vector<int> offsets(const std::vector<int>& dims) {
  std::vector<int> off(dims.size() + 1, 0);
  std::partial_sum(dims.begin(), dims.end(), off.begin() + 1);
  return off;
}

}  // namespace

StaircaseForm build_staircase(const Matrix& R, const Matrix& J, double rank_tol) {
  require_square(R, "R");
  require_square(J, "J");
  require_finite(R, "R");
  require_finite(J, "J");
  if (R.rows() != J.rows()) throw DimensionError("build_staircase: R and J differ in size");
  const int n = static_cast<int>(R.rows());
  if (n == 0) throw DimensionError("build_staircase: empty pair");
  const double normR = spectral_norm(R);
  const double normJ = spectral_norm(J);

  StaircaseForm f;
  // H1 = (ker R)^perp, eigenvectors by decreasing eigenvalue.
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(R));
  if (es.info() != Eigen::Success) throw NumericalError("build_staircase: eigensolver failed");
  const RealVector ev = es.eigenvalues().reverse();
  Matrix Q = es.eigenvectors().rowwise().reverse();
  const double thrR = rank_tol * normR;
  int r = 0;
  for (int i = 0; i < n; ++i) {
    if (ev(i) > thrR) ++r;
    if (near_threshold(std::abs(ev(i)), thrR)) f.ambiguous_rank = true;
  }
  f.block_dims = {r, n - r};

  const double thrJ = rank_tol * normJ;
  for (;;) {
    const int last = f.block_dims.back();
    const int prev = f.block_dims[f.block_dims.size() - 2];
    if (last == 0 || prev == 0) break;
    const int off_last = n - last;
    const int off_prev = off_last - prev;
    const Matrix W = Q.middleCols(off_last, last);
    const Matrix B = W.adjoint() * J * Q.middleCols(off_prev, prev);
    Eigen::JacobiSVD<Matrix> svd(B, Eigen::ComputeFullU);
    const RealVector& sv = svd.singularValues();
    int rho = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
      if (sv(i) > thrJ) ++rho;
      if (near_threshold(sv(i), thrJ)) f.ambiguous_rank = true;
    }
    if (rho == 0) break;
    f.subdiag_min_sv.push_back(sv(rho - 1));
    // image of the subdiagonal block first, then its complement
    Q.middleCols(off_last, last) = W * svd.matrixU();
    f.block_dims.back() = rho;
    f.block_dims.push_back(last - rho);
  }

  f.basis = Q;
  f.J_hat = Q.adjoint() * J * Q;
  f.R_hat = symmetrize(Q.adjoint() * R * Q);
  return f;
}

StaircaseReport verify_staircase(const StaircaseForm& form, const Matrix& R, const Matrix& J,
                                 double tol, double rank_tol) {
  StaircaseReport rep;
  auto fail = [&](const std::string& what, int i, int j, double res) {
    rep.ok = false;
    rep.failures.push_back({what, i, j, res});
  };
  const int n = static_cast<int>(R.rows());
  const Matrix& Q = form.basis;
  const auto& dims = form.block_dims;
  const int s = static_cast<int>(dims.size());
  const double normR = spectral_norm(R);
  const double normJ = spectral_norm(J);

  if (Q.rows() != n || Q.cols() != n || form.J_hat.rows() != n || form.R_hat.rows() != n) {
    fail("shape", -1, -1, 0);
    return rep;
  }
  if (s < 2) fail("block_count", s, -1, 0);
  if (std::accumulate(dims.begin(), dims.end(), 0) != n) fail("dimension_sum", -1, -1, 0);
  for (int d : dims)
    if (d < 0) fail("negative_block", d, -1, 0);
  if (!rep.ok) return rep;

  rep.unitarity = (Q.adjoint() * Q - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (rep.unitarity > 1e-12) fail("unitarity", -1, -1, rep.unitarity);

  const auto off = offsets(dims);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      const bool banned = std::abs(i - j) >= 2 || (i == s - 1 && j == s - 2) || (i == s - 2 && j == s - 1);
      if (!banned || dims[i] == 0 || dims[j] == 0) continue;
      const double v = form.J_hat.block(off[i], off[j], dims[i], dims[j]).cwiseAbs().maxCoeff();
      rep.J_band = std::max(rep.J_band, v);
      if (v > tol * normJ) fail("J_hat_band", i + 1, j + 1, v);
    }

  {
    Matrix Rc = form.R_hat;
    Rc.topLeftCorner(dims[0], dims[0]).setZero();
    rep.R_corner = n > 0 ? Rc.cwiseAbs().maxCoeff() : 0.0;
    if (rep.R_corner > tol * normR) fail("R_hat_corner", 1, 1, rep.R_corner);
  }

  // subdiagonal blocks J_{i,i-1}, i = 2..s-1 (1-based), full row rank
  for (int i = 1; i + 1 < s; ++i) {
    if (dims[i] == 0) continue;
    const Matrix B = form.J_hat.block(off[i], off[i - 1], dims[i], dims[i - 1]);
    Eigen::JacobiSVD<Matrix> svd(B);
    const RealVector& sv = svd.singularValues();
    const double smin = sv.size() >= dims[i] ? sv(dims[i] - 1) : 0.0;
    if (!(smin > rank_tol * normJ)) fail("subdiagonal_rank", i + 1, i, smin);
  }

  const int dim_ker = n - dims[0];
  if (s > dim_ker + 2) fail("block_count_bound", s, dim_ker, 0);

  rep.J_reconstruction = (Q * form.J_hat * Q.adjoint() - J).cwiseAbs().maxCoeff();
  rep.R_reconstruction = (Q * form.R_hat * Q.adjoint() - R).cwiseAbs().maxCoeff();
  if (rep.J_reconstruction > tol * std::max(1.0, normJ)) fail("J_reconstruction", -1, -1, rep.J_reconstruction);
  if (rep.R_reconstruction > tol * std::max(1.0, normR)) fail("R_reconstruction", -1, -1, rep.R_reconstruction);

  {
    RealVector a = eigvals_hermitian(cplx(0, -1) * J);
    RealVector b = eigvals_hermitian(cplx(0, -1) * form.J_hat);
    rep.spectrum = (a - b).cwiseAbs().maxCoeff();
    if (rep.spectrum > 1e-9 * std::max(1.0, normJ)) fail("spectrum", -1, -1, rep.spectrum);
  }

  rep.trailing_nonzero = dims.back() > 0;
  rep.hint = rep.trailing_nonzero ? "not hypocoercive: trailing block is nontrivial"
                                  : "trailing block is zero";
  return rep;
}

json to_json(const StaircaseForm& f) {
  return json{{"block_dims", f.block_dims},
              {"ambiguous_rank", f.ambiguous_rank},
              {"Q", matrix_to_json(f.basis)},
              {"J_hat", matrix_to_json(f.J_hat)},
              {"R_hat", matrix_to_json(f.R_hat)}};
}

json to_json(const StaircaseReport& r) {
  json fails = json::array();
  for (const auto& f : r.failures)
    fails.push_back({{"check", f.check}, {"block_i", f.block_i}, {"block_j", f.block_j}, {"residual", f.residual}});
  return json{{"ok", r.ok},
              {"failures", fails},
              {"unitarity", r.unitarity},
              {"J_band", r.J_band},
              {"R_corner", r.R_corner},
              {"J_reconstruction", r.J_reconstruction},
              {"R_reconstruction", r.R_reconstruction},
              {"spectrum", r.spectrum},
              {"trailing_nonzero", r.trailing_nonzero},
              {"hint", r.hint}};
}

}  // namespace hypokit
