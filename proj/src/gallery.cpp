#include "hypokit/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/rational.hpp>

#include "hypokit/hc_index.hpp"

namespace hypokit {

std::string to_string(ExampleKind k) {
  switch (k) {
    case ExampleKind::ck: return "ck";
    case ExampleKind::ek: return "ek";
    case ExampleKind::remark25_block_family: return "remark25_block_family";
    case ExampleKind::compact_R_family: return "compact_R_family";
    case ExampleKind::ek_blockdiag: return "ek_blockdiag";
    case ExampleKind::ek_rescaled: return "ek_rescaled";
  }
  return "?";
}

ExampleKind example_kind_from_string(const std::string& s) {
  for (ExampleKind k : {ExampleKind::ck, ExampleKind::ek, ExampleKind::remark25_block_family,
                        ExampleKind::compact_R_family, ExampleKind::ek_blockdiag,
                        ExampleKind::ek_rescaled})
    if (to_string(k) == s) return k;
  throw ParameterError("unknown example: " + s);
}

Matrix make_ck(int k) {
  if (k < 1) throw ParameterError("ck: k must be >= 1");
  Matrix C(2, 2);
  C << 0.0, double(k), -double(k), 1.0;
  return C;
}

Matrix make_ek(int k) {
  if (k < 1) throw ParameterError("ek: k must be >= 1");
  Matrix E = Matrix::Zero(k, k);
  for (int i = 0; i + 1 < k; ++i) {
    E(i, i + 1) = 1.0;
    E(i + 1, i) = -1.0;
  }
  E(k - 1, k - 1) = 1.0;
  return E;
}

Matrix block_diag(const std::vector<Matrix>& blocks) {
  Eigen::Index n = 0;
  for (const auto& b : blocks) n += b.rows();
  Matrix A = Matrix::Zero(n, n);
  Eigen::Index off = 0;
  for (const auto& b : blocks) {
    A.block(off, off, b.rows(), b.cols()) = b;
    off += b.rows();
  }
  return A;
}

Matrix make_remark25_blocks(int n_start, int blocks) {
  if (n_start < 1 || blocks < 1) throw ParameterError("remark25_block_family: n_start, blocks must be >= 1");
  std::vector<Matrix> bs;
  for (int n = n_start; n < n_start + blocks; ++n) {
    Matrix B(2, 2);
    B << 1.0 / n, 1.0, -1.0, 1.0;
    bs.push_back(B);
  }
  return block_diag(bs);
}

Matrix make_compact_R(int dim) {
  if (dim < 1) throw ParameterError("compact_R_family: dim must be >= 1");
  Matrix R = Matrix::Zero(dim, dim), J = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) R(i, i) = 1.0 / (i + 1);
  for (int i = 0; i + 1 < dim; ++i) {
    J(i + 1, i) = 1.0;
    J(i, i + 1) = -1.0;
  }
  return R - J;
}

Matrix make_example(const ExampleSpec& spec) {
  switch (spec.kind) {
    case ExampleKind::ck: return make_ck(spec.k);
    case ExampleKind::ek: return make_ek(spec.k);
    case ExampleKind::remark25_block_family: return make_remark25_blocks(spec.n_start, spec.blocks);
    case ExampleKind::compact_R_family: return make_compact_R(spec.dim);
    case ExampleKind::ek_blockdiag:
    case ExampleKind::ek_rescaled: {
      if (spec.k < 1) throw ParameterError("k_max must be >= 1");
      std::vector<Matrix> bs;
      for (int k = 1; k <= spec.k; ++k) {
        Matrix E = make_ek(k);
        if (spec.kind == ExampleKind::ek_rescaled) E *= ek_rescale_factor(k).r;
        bs.push_back(E);
      }
      return block_diag(bs);
    }
  }
  throw ParameterError("unknown example kind");
}

double ck_closed_form_norm(int k, double t) {
  if (k < 1) throw ParameterError("ck_closed_form_norm: k must be >= 1");
  if (t < 0) throw ParameterError("ck_closed_form_norm: t must be >= 0");
  const double delta = std::sqrt(4.0 * k * k - 1.0);
  const double a2 = 1.0 / (4.0 * k * k);
  const double s = std::sin(0.5 * delta * t);
  const double qm1 = a2 * 2.0 * s * s / (1.0 - a2);  // q - 1 without cancellation
  const double q = 1.0 + qm1;
  const double mplus = q + std::sqrt(qm1 * (q + 1.0));
  return std::sqrt(std::exp(-t) * mplus);
}

double ck_kink_time(int k) { return 2.0 * std::numbers::pi / std::sqrt(4.0 * k * k - 1.0); }

CkReport ck_properties(int k) {
  CkReport rep;
  rep.k = k;
  const Matrix C = make_ck(k);

  // eigenvalues (1 +- i sqrt(4k^2-1))/2
  auto ev = eigenvalues(C);
  const double im = 0.5 * std::sqrt(4.0 * k * k - 1.0);
  std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) { return a.imag() < b.imag(); });
  rep.eigenvalue_error = std::max(std::abs(ev[0] - cplx(0.5, -im)), std::abs(ev[1] - cplx(0.5, im)));
  rep.eigenvalues_ok = rep.eigenvalue_error <= 1e-12 * (1.0 + k);

  rep.envelope_constant = std::sqrt((2.0 * k + 1.0) / (2.0 * k - 1.0));
  const int steps = 2000;
  const double tmax = 20.0;
  const Matrix step = matrix_exponential(-C, tmax / steps);
  Matrix P = Matrix::Identity(2, 2);
  rep.max_envelope_ratio = 1.0;
  for (int i = 1; i <= steps; ++i) {
    P = (step * P).eval();
    rep.max_envelope_ratio = std::max(rep.max_envelope_ratio, spectral_norm(P) * std::exp(0.5 * tmax * i / steps));
  }
  rep.envelope_ok = rep.max_envelope_ratio <= rep.envelope_constant + 1e-9;

  // Exact short-time constant in rationals. C_H is a diagonal 0/1 projection,
  // so sqrt(C_H) = C_H and the kernel is spanned by a coordinate vector.
  using Q = boost::rational<long long>;
  Q c[2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = Q(std::llround(C(i, j).real()));
  Q h[2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) h[i][j] = (c[i][j] + c[j][i]) / Q(2);
  const bool projection = h[0][1] == Q(0) && h[0][0] == Q(0) && h[1][1] == Q(1);
  const Q y[2] = {c[0][0], c[1][0]};  // C e1
  Q num(0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) num += y[i] * h[i][j] * y[j];
  const Q cst = num / Q(12);  // 3! * binom(2,1)
  rep.c_num = cst.numerator();
  rep.c_den = cst.denominator();
  rep.c_exact_ok = projection && cst == Q(static_cast<long long>(k) * k, 12);
  return rep;
}

EkReport ek_properties(int k_max) {
  if (k_max < 1 || k_max > 12) throw ParameterError("ek_properties: k_max must be in [1, 12]");
  EkReport rep;
  rep.ok = true;
  rep.min_block_gap = INFINITY;
  std::vector<Matrix> blocks;
  for (int k = 1; k <= k_max; ++k) {
    EkRow row;
    row.k = k;
    const Matrix E = make_ek(k);
    blocks.push_back(E);
    IndexReport ir = index_via_powers(hermitian_split(E), IndexMethod::c_powers_right);
    row.index = ir.index ? *ir.index : -1;
    row.index_ok = row.index == k - 1;
    row.gap = -spectral_abscissa(-E);
    row.gap_ok = row.gap > 0 && row.gap <= 1.0 / k + 1e-12;
    rep.min_block_gap = std::min(rep.min_block_gap, row.gap);
    rep.ok = rep.ok && row.index_ok && row.gap_ok;
    rep.rows.push_back(row);
  }
  rep.blockdiag_gap = -spectral_abscissa(-block_diag(blocks));
  rep.ok = rep.ok && std::abs(rep.blockdiag_gap - rep.min_block_gap) <= 1e-10;
  return rep;
}

RescaleResult ek_rescale_factor(int k, const std::vector<double>& t_grid) {
  const Matrix E = make_ek(k);
  RescaleResult res;
  res.mu = -spectral_abscissa(-E);
  if (!(res.mu > 0)) throw NumericalError("ek_rescale_factor: nonpositive spectral gap");
  std::vector<double> grid = t_grid;
  if (grid.empty()) {
    const int pts = 2001;
    for (int i = 0; i < pts; ++i) grid.push_back(40.0 / res.mu * i / (pts - 1));
  }
  res.c = 0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = spectral_norm(matrix_exponential(-E, grid[i])) * std::exp(res.mu * grid[i]);
    if (v > res.c) {
      res.c = v;
      arg = i;
    }
  }
  res.boundary_warning = grid.size() > 1 && arg == grid.size() - 1;
  res.r = (1.0 + std::log(res.c)) / res.mu;
  res.norm_at_one = spectral_norm(matrix_exponential(-E, res.r));
  return res;
}

double compact_R_partial_min(int m, int dim) {
  const Matrix C = make_compact_R(dim);
  const OperatorDecomposition d = hermitian_split(C);
  return index_via_powers(d, IndexMethod::j_powers, {1e300, m, 1e-10}).per_m_min_eigs.back();
}

}  // namespace hypokit
