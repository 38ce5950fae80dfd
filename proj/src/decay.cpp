#include "hypokit/decay.hpp"

#include <cmath>
#include <sstream>

#include "hypokit/parallel.hpp"

namespace hypokit {

namespace {

bool is_uniform(const std::vector<double>& t) {
  if (t.size() < 8) return false;
  const double dt = (t.back() - t.front()) / double(t.size() - 1);
  if (!(dt > 0)) return false;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (std::abs(t[i] - (t.front() + dt * double(i))) > 1e-12 * std::max(1.0, std::abs(t.back())))
      return false;
  return true;
}

void check_times(const std::vector<double>& times) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || times[i] < 0) throw ParameterError("times must be finite and >= 0");
    if (i > 0 && !(times[i] > times[i - 1])) throw ParameterError("times must be strictly increasing");
  }
}

}  // namespace

DecayCurve propagator_norm_curve(const Matrix& C, const std::vector<double>& times) {
  require_square(C, "C");
  require_finite(C, "C");
  check_times(times);
  DecayCurve curve;
  curve.times = times;
  curve.generator_norm = spectral_norm(C);
  curve.norms.assign(times.size(), 0.0);
  if (is_uniform(times)) {
    // P(t0 + k dt) = P(dt)^k P(t0)
    const double dt = (times.back() - times.front()) / double(times.size() - 1);
    const Matrix step = matrix_exponential(-C, dt);
    Matrix P = matrix_exponential(-C, times.front());
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (i > 0) P = (step * P).eval();
      curve.norms[i] = spectral_norm(P);
    }
  } else {
    parallel_for(times.size(), [&](std::size_t i) {
      curve.norms[i] = spectral_norm(matrix_exponential(-C, times[i]));
    });
  }
  return curve;
}

Matrix q_minus_identity(const Matrix& C, double t) {
  const Eigen::Index n = C.rows();
  const double nc = spectral_norm(C);
  if (2.0 * nc * t <= 1.0) {
    // sum_{j>=1} t^j/j! U_j with U_{j+1} = -(C* U_j + U_j C)
    const Matrix Cs = C.adjoint();
    Matrix U = Matrix::Identity(n, n);
    Matrix S = Matrix::Zero(n, n);
    double coef = 1.0;
    for (int j = 1; j <= 60; ++j) {
      U = (-(Cs * U + U * C)).eval();
      coef *= t / j;
      const Matrix term = coef * U;
      S += term;
      if (term.cwiseAbs().maxCoeff() <= 1e-18 * std::max(S.cwiseAbs().maxCoeff(), 1e-300)) break;
    }
    return symmetrize(S);
  }
  const Matrix P = matrix_exponential(-C, t);
  return symmetrize(P.adjoint() * P - Matrix::Identity(n, n));
}

double g_value(const Matrix& C, const Vector& x, double t) {
  return x.dot(q_minus_identity(C, t) * x).real();
}

double norm_defect(const Matrix& C, double t) {
  if (t == 0.0) return 0.0;
  const double d2 = -max_eig_hermitian(q_minus_identity(C, t));  // 1 - ||P||^2
  const double p = std::sqrt(std::max(0.0, 1.0 - d2));
  return d2 / (1.0 + p);
}

DecayCurve short_time_curve(const Matrix& C, double t_lo, double t_hi, int samples) {
  if (!(t_lo > 0) || !(t_hi > t_lo) || samples < 2) throw ParameterError("short_time_curve: bad grid");
  DecayCurve curve;
  curve.generator_norm = spectral_norm(C);
  for (int i = 0; i < samples; ++i)
    curve.times.push_back(t_lo * std::pow(t_hi / t_lo, double(i) / (samples - 1)));
  curve.defects.assign(samples, 0.0);
  curve.norms.assign(samples, 0.0);
  parallel_for(std::size_t(samples), [&](std::size_t i) {
    curve.defects[i] = norm_defect(C, curve.times[i]);
    curve.norms[i] = 1.0 - curve.defects[i];
  });
  return curve;
}

DecayCurve short_time_curve(const Matrix& C) {
  const double nc = spectral_norm(C);
  if (nc == 0.0) throw NoDecayError("short_time_curve: C = 0");
  return short_time_curve(C, 1e-4 / nc, 3.0 / nc, 200);
}

double short_time_constant(const OperatorDecomposition& dec, int m, double rank_tol) {
  const Eigen::Index n = dec.C.rows();
  if (n == 0) throw DimensionError("short_time_constant: empty operator");
  if (m < 0) throw ParameterError("short_time_constant: m must be >= 0");
  if (m == 0) return min_eig_hermitian(dec.R);

  const double nc = spectral_norm(dec.C);
  const Matrix S = psd_sqrt(dec.R, 1e-8, nc);
  const Matrix Cn = dec.C / nc;  // kernels do not see the scale
  Matrix stack(m * n, n);
  Matrix P = Matrix::Identity(n, n);
  for (int j = 0; j < m; ++j) {
    stack.middleRows(j * n, n) = S * P;
    P = (P * Cn).eval();
  }
  const Matrix B = null_space(stack, rank_tol);
  if (B.cols() == 0) {
    std::ostringstream os;
    os << "short_time_constant: kernel intersection is trivial, so " << m << " is not the index";
    throw ContractError(os.str());
  }
  Matrix Cm = Matrix::Identity(n, n);
  for (int j = 0; j < m; ++j) Cm = (Cm * dec.C).eval();
  const Matrix Mq = Cm.adjoint() * dec.R * Cm;
  const double lam = min_eig_hermitian(B.adjoint() * Mq * B);
  return lam / (factorial(2 * m + 1) * binom(2 * m, m));
}

ShortTimeFit fit_short_time(const DecayCurve& curve, double lo, double hi) {
  const bool have_def = curve.defects.size() == curve.times.size();
  std::vector<double> lt, ld;
  bool any_above = false;
  for (std::size_t i = 0; i < curve.times.size(); ++i) {
    const double d = have_def ? curve.defects[i] : 1.0 - curve.norms[i];
    if (d > hi) any_above = true;
    if (curve.times[i] > 0 && d >= lo && d <= hi) {
      lt.push_back(std::log(curve.times[i]));
      ld.push_back(std::log(d));
    }
  }
  if (lt.empty() && !any_above) throw NoDecayError("fit_short_time: propagator norm stays at 1");
  if (lt.size() < 10) {
    std::ostringstream os;
    os << "fit_short_time: only " << lt.size() << " samples in the fit window";
    throw NumericalError(os.str());
  }
  const double N = double(lt.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lt.size(); ++i) {
    mx += lt[i];
    my += ld[i];
  }
  mx /= N;
  my /= N;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lt.size(); ++i) {
    sxx += (lt[i] - mx) * (lt[i] - mx);
    sxy += (lt[i] - mx) * (ld[i] - my);
  }
  ShortTimeFit fit;
  fit.samples = static_cast<int>(lt.size());
  fit.a_est = sxy / sxx;
  const double b = my - fit.a_est * mx;
  double rss = 0;
  for (std::size_t i = 0; i < lt.size(); ++i) {
    const double e = ld[i] - (b + fit.a_est * lt[i]);
    rss += e * e;
  }
  fit.residual = std::sqrt(rss / N);
  fit.a_rounded = std::max(1, 2 * static_cast<int>(std::lround((fit.a_est - 1.0) / 2.0)) + 1);
  fit.flagged = std::abs(fit.a_est - fit.a_rounded) > 0.2;

  // c from the lower half of the window (in log-defect) with the slope fixed
  // at a_rounded; higher-order terms bias the upper half.
  const double mid = 0.5 * (std::log(lo) + std::log(hi));
  double acc = 0;
  int cnt = 0;
  for (std::size_t i = 0; i < lt.size(); ++i)
    if (ld[i] <= mid) {
      acc += ld[i] - fit.a_rounded * lt[i];
      ++cnt;
    }
  if (cnt < 5) {
    acc = 0;
    cnt = 0;
    for (std::size_t i = 0; i < lt.size(); ++i, ++cnt) acc += ld[i] - fit.a_rounded * lt[i];
  }
  fit.c_est = std::exp(acc / cnt);
  fit.fit_window = {std::exp(*std::min_element(lt.begin(), lt.end())),
                    std::exp(*std::max_element(lt.begin(), lt.end()))};
  return fit;
}

StabilityReport stability_check(const Matrix& C, double t0) {
  if (!(t0 > 0)) throw ParameterError("stability_check: t0 must be > 0");
  StabilityReport s;
  s.norm_at_t0 = spectral_norm(matrix_exponential(-C, t0));
  s.stable = s.norm_at_t0 < 1.0 - 1e-12;
  s.spectral_gap = -spectral_abscissa(-C);
  return s;
}

TaylorSeriesData taylor_U(const Matrix& C, int jmax) {
  require_square(C, "C");
  require_finite(C, "C");
  if (jmax < 1) throw ParameterError("taylor_U: jmax must be >= 1");
  const double nc = spectral_norm(C);
  if (nc > 0 && jmax * std::log(2.0 * nc) > 700.0) throw RangeError("taylor_U: (2||C||)^jmax overflows");
  const Eigen::Index n = C.rows();
  const Matrix Cs = C.adjoint();
  const Matrix R = 0.5 * (C + Cs);
  std::vector<Matrix> Cp(jmax + 1), Ap(jmax + 1);
  Cp[0] = Ap[0] = Matrix::Identity(n, n);
  for (int k = 1; k <= jmax; ++k) {
    Cp[k] = Cp[k - 1] * C;
    Ap[k] = Ap[k - 1] * Cs;
  }
  TaylorSeriesData d;
  d.jmax = jmax;
  d.U.resize(jmax + 1);
  for (int j = 0; j <= jmax; ++j) {
    Matrix U = Matrix::Zero(n, n);
    for (int k = 0; k <= j; ++k) U += binom(j, k) * Ap[k] * Cp[j - k];
    d.U[j] = (j % 2 ? -1.0 : 1.0) * U;
    if (j == 0) continue;
    Matrix V = Matrix::Zero(n, n);
    for (int k = 0; k < j; ++k) V += binom(j - 1, k) * Ap[k] * R * Cp[j - 1 - k];
    V *= (j % 2 ? -2.0 : 2.0);
    const double scale = std::pow(2.0 * std::max(nc, 1e-300), j);
    d.identity_residual = std::max(d.identity_residual, (d.U[j] - V).cwiseAbs().maxCoeff() / scale);
  }
  if (d.identity_residual > 1e-10) {
    std::ostringstream os;
    os << "taylor_U: C_H form of U_j mismatch " << d.identity_residual;
    throw ContractError(os.str());
  }
  return d;
}

double delta_coefficient(int m, int j, int k) {
  return binom(k, m) * binom(j - k - 1, m) / (binom(k + m, m) * binom(j - k - 1 + m, m));
}

SumOfSquaresCheck sum_of_squares_residual(const Matrix& U, const Matrix& V, const Matrix& W, int m,
                                          double t, int jmax) {
  const Eigen::Index n = U.rows();
  for (const Matrix* A : {&U, &V, &W})
    if (A->rows() != n || A->cols() != n) throw DimensionError("sum_of_squares_residual: size mismatch");
  if (m < 0 || jmax < 1 || t < 0) throw ParameterError("sum_of_squares_residual: bad m, t or jmax");
  const double mx = std::max({spectral_norm(U), spectral_norm(V), spectral_norm(W)});
  const double log_tail = jmax * std::log(std::max(mx * t, 1e-300)) - std::lgamma(jmax + 1.0);
  if (mx * t > 0 && log_tail > std::log(1e-13)) {
    std::ostringstream os;
    os << "sum_of_squares_residual: series tail bound " << std::exp(log_tail) << " exceeds 1e-13";
    throw RangeError(os.str());
  }

  const int K = 2 * jmax + 1;
  std::vector<Matrix> Up(K + 1), Wp(K + 1);
  Up[0] = Wp[0] = Matrix::Identity(n, n);
  for (int k = 1; k <= K; ++k) {
    Up[k] = Up[k - 1] * U;
    Wp[k] = Wp[k - 1] * W;
  }
  auto tj_over_fact = [&](int j) { return std::exp(j * std::log(t) - std::lgamma(j + 1.0)); };

  Matrix lhs = Matrix::Zero(n, n);
  for (int j = 1; j <= jmax; ++j)
    for (int k = 0; k <= j - 1; ++k) lhs += tj_over_fact(j) * binom(j - 1, k) * Up[k] * V * Wp[j - k - 1];

  Matrix rhs = Matrix::Zero(n, n);
  for (int j = 0; j <= m; ++j) {
    Matrix A = Matrix::Zero(n, n), B = Matrix::Zero(n, n);
    for (int k = 0; k + j <= K && k <= jmax; ++k) {
      // (2j+1)!/(k+2j+1)! * binom(k+j, j) * t^k
      const double coef = std::exp(std::lgamma(2.0 * j + 2) - std::lgamma(k + 2.0 * j + 2) +
                                   (k > 0 ? k * std::log(t) : 0.0)) *
                          binom(k + j, j);
      A += coef * Up[k + j];
      B += coef * Wp[k + j];
    }
    rhs += std::pow(t, 2 * j + 1) / (factorial(2 * j + 1) * binom(2 * j, j)) * A * V * B;
  }
  SumOfSquaresCheck out;
  for (int j = 2 * m + 3; j <= jmax; ++j)
    for (int k = m + 1; k <= j - m - 2; ++k) {
      const double dlt = delta_coefficient(m + 1, j, k);
      out.max_delta = std::max(out.max_delta, dlt);
      rhs += tj_over_fact(j) * binom(j - 1, k) * dlt * Up[k] * V * Wp[j - k - 1];
    }
  out.residual = n > 0 ? (lhs - rhs).cwiseAbs().maxCoeff() : 0.0;
  return out;
}

std::vector<double> perturbation_coefficients(int m) {
  if (m < 1) throw ParameterError("perturbation_coefficients: m must be >= 1");
  auto c = [m](int l, int k) {
    const int q = m - l;
    if (k == 0) return 1.0;
    return factorial(2 * q + 1) / factorial(k + 2 * q + 1) * binom(k + q, q);
  };
  std::vector<double> b(m + 1, 0.0);
  b[0] = 1.0;
  for (int l = 1; l <= m; ++l) {
    double s = 0;
    for (int r = 0; r < l; ++r) s += ((m - r) % 2 ? -1.0 : 1.0) * c(l, l - r) * b[r];
    b[l] = -s / (((m - l) % 2 ? -1.0 : 1.0) * c(l, 0));
  }
  return b;
}

Vector perturbed_initial(const OperatorDecomposition& dec, int m, const Vector& x0, double tau) {
  if (x0.size() != dec.C.rows()) throw DimensionError("perturbed_initial: x0 has wrong length");
  if (x0.norm() == 0.0) throw PreconditionError("perturbed_initial: x0 must be nonzero");
  const double nc = spectral_norm(dec.C);
  const double cap = std::min(1.0, nc > 0 ? 1.0 / nc : INFINITY);
  if (!(tau >= 0 && tau < cap)) {
    std::ostringstream os;
    os << "perturbed_initial: tau = " << tau << " outside [0, " << cap << ")";
    throw PreconditionError(os.str());
  }
  const auto b = perturbation_coefficients(m);
  Vector x = x0, y = x0;
  double tp = 1.0;
  for (int l = 1; l <= m; ++l) {
    y = dec.C * y;
    tp *= tau;
    x += b[l] * tp * y;
  }
  return x;
}

std::string curve_to_csv(const DecayCurve& c) {
  std::string out = "t,norm\n";
  for (std::size_t i = 0; i < c.times.size(); ++i) out += fmt17(c.times[i]) + "," + fmt17(c.norms[i]) + "\n";
  return out;
}

json to_json(const ShortTimeFit& f) {
  return json{{"a_est", f.a_est},
              {"a_rounded", f.a_rounded},
              {"c_est", f.c_est},
              {"residual", f.residual},
              {"fit_window", json::array({f.fit_window[0], f.fit_window[1]})},
              {"samples", f.samples},
              {"flagged", f.flagged}};
}

json to_json(const StabilityReport& s) {
  return json{{"stable", s.stable}, {"norm_at_t0", s.norm_at_t0}, {"spectral_gap", s.spectral_gap}};
}

}  // namespace hypokit
