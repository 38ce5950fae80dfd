#include "hypokit/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "hypokit/parallel.hpp"
#include "hypokit/random.hpp"

namespace hypokit::lorentz {

double lambda0() {
  return 0.5 - 1.0 / (6.0 * std::sqrt(2.0)) - std::sqrt(7.0 / 16.0 + 1.0 / std::sqrt(8.0)) / 3.0;
}

double kappa_limit() { return (3.0 - std::sqrt(5.0)) / 2.0; }

VelocityOperators build_velocity_operators(int M) {
  if (M < 1) throw DimensionError("build_velocity_operators: M must be >= 1");
  const int n = 2 * M + 1;
  VelocityOperators v;
  v.M = M;
  v.R = Matrix::Identity(n, n);
  v.R(M, M) = 0.0;
  v.J10 = Matrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) v.J10(i, i + 1) = v.J10(i + 1, i) = cplx(0.0, -0.5);
  return v;
}

Matrix modal_generator(double n_abs, int M, double sigma) {
  if (!(sigma > 0)) throw ParameterError("sigma must be > 0");
  const auto v = build_velocity_operators(M);
  return sigma * v.R - n_abs * v.J10;
}

namespace {

// Interior (2M+1)-section of a product built at cutoff M+1.
template <class F>
Matrix section(int M, F&& build) {
  const auto v = build_velocity_operators(M + 1);
  const Matrix X = build(v);
  return X.block(1, 1, 2 * M + 1, 2 * M + 1);
}

}  // namespace

Matrix kappa_operator(int M) {
  if (M < 1) throw DimensionError("kappa_truncated: M must be >= 1");
  return symmetrize(section(M, [](const VelocityOperators& v) {
    return Matrix(v.R + v.J10 * v.R * v.J10.adjoint());
  }));
}

double kappa_truncated(int M) { return min_eig_hermitian(kappa_operator(M)); }

Matrix kappa_block_residual(int M, double kappa) {
  Matrix Y = kappa_operator(M);
  const double a = 0.25 - 0.5 * kappa, b = 1.25 - 0.5 * kappa;
  for (int i = 0; i + 2 <= M; ++i) {
    // forward block on j = i..i+2, mirrored block on j = -i-2..-i
    const int p = M + i, q = M - i;
    Y(p, p) -= a;
    Y(p + 2, p + 2) -= b;
    Y(p, p + 2) -= 0.25;
    Y(p + 2, p) -= 0.25;
    Y(q, q) -= a;
    Y(q - 2, q - 2) -= b;
    Y(q, q - 2) -= 0.25;
    Y(q - 2, q) -= 0.25;
  }
  return Y;
}

Matrix lyapunov_weight(double n_abs, double alpha, int M) {
  if (M < 1) throw DimensionError("lyapunov_weight: M must be >= 1");
  if (!(n_abs > 0)) throw ParameterError("lyapunov_weight: n_abs must be > 0");
  const int n = 2 * M + 1;
  Matrix Y = Matrix::Identity(n, n);
  Y(M, M + 1) = cplx(0.0, -alpha / n_abs);
  Y(M + 1, M) = cplx(0.0, alpha / n_abs);
  return Y;
}

Matrix lyapunov_lhs(double n_abs, double alpha, int M) {
  const Matrix C = modal_generator(n_abs, M);
  const Matrix Y = lyapunov_weight(n_abs, alpha, M);
  return symmetrize(C.adjoint() * Y + Y * C);
}

double lyapunov_margin(double n_abs, double alpha, double lam0, int M) {
  if (n_abs < 1) throw ParameterError("lyapunov_margin: n_abs must be >= 1");
  if (M < 2) throw DimensionError("lyapunov_margin: M must be >= 2");
  if (!(alpha > 0) || alpha >= n_abs) throw PreconditionError("lyapunov_margin: weight is not positive definite (need 0 < alpha < n_abs)");
  const Matrix Y = lyapunov_weight(n_abs, alpha, M);
  return min_eig_hermitian(lyapunov_lhs(n_abs, alpha, M) - 2.0 * lam0 * Y);
}

Matrix essential_block(double n_abs, double alpha, int M) {
  if (M < 3) throw DimensionError("essential_block: M must be >= 3");
  return lyapunov_lhs(n_abs, alpha, M).block(M - 1, M - 1, 4, 4);
}

Matrix essential_block_closed_form(double n_abs, double alpha) {
  const cplx i(0.0, 1.0);
  Matrix Z(4, 4);
  Z << 2.0, 0.0, -alpha / 2, 0.0,
       0.0, alpha, -i * alpha / n_abs, alpha / 2,
       -alpha / 2, i * alpha / n_abs, 2.0 - alpha, 0.0,
       0.0, alpha / 2, 0.0, 2.0;
  return Z;
}

ModalDecayReport modal_propagator_norm(double n_abs, int M, const std::vector<double>& times) {
  if (!(n_abs >= 1)) throw ParameterError("modal_propagator_norm: n_abs must be >= 1");
  ModalDecayReport rep;
  rep.curve = propagator_norm_curve(modal_generator(n_abs, M), times);
  const double pref = std::sqrt((2.0 * n_abs + 1.0) / (2.0 * n_abs - 1.0));
  const double lam0 = lambda0();
  rep.worst_margin = INFINITY;
  rep.worst_sqrt3_margin = INFINITY;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double e = std::exp(-lam0 * times[i]);
    const double bound = std::min(1.0, pref * e);
    const double m = bound - rep.curve.norms[i];
    if (m < rep.worst_margin) {
      rep.worst_margin = m;
      rep.worst_time = times[i];
    }
    rep.worst_sqrt3_margin = std::min(rep.worst_sqrt3_margin, std::sqrt(3.0) * e - rep.curve.norms[i]);
  }
  rep.bound_ok = rep.worst_margin >= -1e-8 && rep.worst_sqrt3_margin >= -1e-8;
  return rep;
}

namespace {

// sum_{j>=k} x^j/j!, by series when e^x would cancel
double exp_tail(double x, int k) {
  if (x < 1.0) {
    double term = 1.0;
    for (int j = 1; j <= k; ++j) term *= x / j;
    double sum = 0.0;
    for (int j = k; j < k + 80 && term > 1e-18 * sum; ++j) {
      sum += term;
      term *= x / (j + 1);
    }
    return sum;
  }
  double s = std::exp(x), term = 1.0;
  for (int j = 0; j < k; ++j) {
    s -= term;
    term *= x / (j + 1);
  }
  return s;
}

template <class F>
double bisect_increasing(F&& f, double target, double lo, double hi, const char* name) {
  double flo = f(lo) - target, fhi = f(hi) - target;
  if (!(flo < 0 && fhi > 0)) {
    std::ostringstream os;
    os << name << ": root not bracketed on [" << lo << ", " << hi << "], f-target = " << flo << ", " << fhi;
    throw NumericalError(os.str());
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid) - target;
    if (fm < 0) lo = mid;
    else hi = mid;
    if (fm == 0.0 || hi - lo <= 1e-15 * hi) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double delta1(double tau) { return exp_tail(4.0 * tau, 2) / (2.0 * tau); }
double delta3(double tau) { return exp_tail(4.0 * tau, 4) / (2.0 * tau * tau * tau); }

double reference_time(double n, double tau, double lam0) {
  return tau / n + std::log1p(1.0 / (n - 0.5)) / (2.0 * lam0);
}

AppendixCConstants appendix_constants(int M, int N_flag) {
  if (M < 32) throw DimensionError("appendix_constants: M must be >= 32");
  AppendixCConstants k;
  k.M = M;
  k.lambda0 = lambda0();
  k.kappa1 = kappa_truncated(M);
  k.kappa3 = min_eig_hermitian(symmetrize(section(M, [](const VelocityOperators& v) {
    const Matrix C = v.R - v.J10;
    return Matrix(v.R + C.adjoint() * v.R * C);
  })));
  k.delta = std::min(k.kappa1 / 5.0, k.kappa3 / 2.0);

  k.tau1 = bisect_increasing(delta1, k.delta, 1e-8, 10.0, "tau1");
  k.tau3 = bisect_increasing(delta3, k.delta / 12.0, 1e-8, 10.0, "tau3");

  // inf ||sqrt(R) J10 x||^2 over unit x with <Rx,x> <= delta, by the dual
  // max_{mu >= 0} lambda_min(A + mu B) - mu delta (exact for two Hermitian forms).
  const Matrix A = symmetrize(section(M, [](const VelocityOperators& v) {
    return Matrix(v.J10.adjoint() * v.R * v.J10);
  }));
  const Matrix B = symmetrize(section(M, [](const VelocityOperators& v) { return Matrix(v.R); }));
  auto dual = [&](double mu) { return min_eig_hermitian(A + mu * B) - mu * k.delta; };
  double lo = 0.0, hi = 64.0;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = dual(x1), f2 = dual(x2);
  while (hi - lo > 1e-10) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = dual(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = dual(x1);
    }
  }
  k.inf_mu = 0.5 * (lo + hi);
  k.inf_RJ = std::max({dual(k.inf_mu), dual(0.0)});
  k.tau2 = std::sqrt(12.0 * k.delta) / (std::sqrt(k.inf_RJ) + std::sqrt(k.delta));

  k.tau = std::min({k.tau1, k.tau2, k.tau3, 1.0});
  k.c1 = k.delta / 12.0;
  k.c2 = k.c1 / std::pow(1.0 + 1.0 / (k.lambda0 * k.tau), 3);

  // t_n decreases in n; r solves t_r = tau.
  auto tn = [&](double n) { return -reference_time(n, k.tau, k.lambda0); };
  double rhi = 2.0;
  while (reference_time(rhi, k.tau, k.lambda0) >= k.tau) {
    rhi *= 2.0;
    if (rhi > 1e15) throw NumericalError("appendix_constants: no r with t_r < tau");
  }
  k.r = bisect_increasing(tn, -k.tau, 1.0, rhi, "r");
  k.r_in_range = N_flag <= 0 || k.r <= N_flag;
  const double t3 = k.tau * k.tau * k.tau;
  const double lhs = (1.0 - k.delta * t3 / (12.0 * k.r)) * std::sqrt(1.0 + 1.0 / (k.r - 0.5)) *
                     std::exp(-k.lambda0 * (k.r - 1.0) / k.r * k.tau);
  k.c3 = (1.0 - lhs) / t3;
  k.c = std::min(k.c2, k.c3);
  return k;
}

double sampled_constrained_min(int M, double delta, int samples, std::uint64_t seed) {
  const auto v = build_velocity_operators(M);
  const Matrix A = symmetrize(v.J10.adjoint() * v.R * v.J10);
  const int n = 2 * M + 1;
  Rng rng(seed);
  double best = INFINITY;
  // Random directions mixed with the j = 0 vector so the constraint is active.
  for (int s = 0; s < samples; ++s) {
    Vector w = rng.unit_vector(n);
    w(M) = 0.0;
    w.normalize();
    const double frac = std::sqrt(delta) * rng.uniform();
    Vector x = Vector::Zero(n);
    x(M) = std::sqrt(1.0 - frac * frac);
    x += frac * w;
    x.normalize();
    const double lam = x.dot(v.R * x).real();
    if (lam > delta) continue;
    best = std::min(best, x.dot(A * x).real());
  }
  return best;
}

namespace {

double upper_cubic(const AppendixCConstants& c, double t) { return 1.0 - c.c * t * t * t; }

}  // namespace

CubicBoundReport cubic_bound_verify(int N, int M, const AppendixCConstants& consts, int samples) {
  if (N < 1 || samples < 2) throw ParameterError("cubic_bound_verify: N >= 1 and samples >= 2 required");
  CubicBoundReport rep;
  rep.worst_margin = INFINITY;
  const double dt = consts.tau / (samples - 1);
  std::vector<double> worst(N, INFINITY), worst_t(N, 0.0);
  std::vector<int> viol(N, 0);
  parallel_for(std::size_t(N), [&](std::size_t idx) {
    const double n = double(idx + 1);
    const Matrix C = modal_generator(n, M);
    const Matrix step = matrix_exponential(-C, dt);
    Matrix P = Matrix::Identity(C.rows(), C.cols());
    for (int s = 0; s < samples; ++s) {
      if (s > 0) P = (step * P).eval();
      const double t = s * dt;
      const double margin = upper_cubic(consts, t) - spectral_norm(P);
      if (margin < worst[idx]) {
        worst[idx] = margin;
        worst_t[idx] = t;
      }
      if (margin < -1e-9) ++viol[idx];
    }
  });
  for (int i = 0; i < N; ++i) {
    rep.violations += viol[i];
    if (worst[i] < rep.worst_margin) {
      rep.worst_margin = worst[i];
      rep.worst_n = i + 1;
      rep.worst_t = worst_t[i];
    }
  }
  rep.endpoint_margin_n1 = norm_defect(modal_generator(1.0, M), consts.tau) -
                           consts.c * consts.tau * consts.tau * consts.tau;
  rep.ok = rep.violations == 0 && rep.endpoint_margin_n1 > 0;
  return rep;
}

namespace {

// Lattice modes n != 0 with max(|n1|,|n2|) <= N, grouped by |n|^2.
std::map<int, std::vector<std::pair<int, int>>> lattice_groups(int N) {
  std::map<int, std::vector<std::pair<int, int>>> g;
  for (int a = -N; a <= N; ++a)
    for (int b = -N; b <= N; ++b)
      if (a != 0 || b != 0) g[a * a + b * b].push_back({a, b});
  return g;
}

}  // namespace

SandwichReport full_propagator_bounds(int N, int M, const AppendixCConstants& consts,
                                      const std::vector<double>& times) {
  if (N < 1) throw ParameterError("full_propagator_bounds: N must be >= 1");
  SandwichReport rep;
  rep.times = times;
  const auto groups = lattice_groups(N);
  std::vector<int> keys;
  for (const auto& [k, v] : groups) keys.push_back(k);
  std::vector<std::vector<double>> norms(keys.size());
  parallel_for(keys.size(), [&](std::size_t g) {
    norms[g] = propagator_norm_curve(modal_generator(std::sqrt(double(keys[g])), M), times).norms;
  });
  rep.worst_upper_margin = INFINITY;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    double sup = std::exp(-t);  // n = 0 mode off the equilibrium
    double arg = 0.0;
    for (std::size_t g = 0; g < keys.size(); ++g)
      if (norms[g][i] > sup) {
        sup = norms[g][i];
        arg = std::sqrt(double(keys[g]));
      }
    const double low = norms[0][i];  // keys[0] == 1: the (1,0) mode
    const double up = upper_cubic(consts, t);
    rep.sup_norm.push_back(sup);
    rep.lower.push_back(low);
    rep.upper.push_back(up);
    rep.argmax_n.push_back(arg);
    rep.worst_upper_margin = std::min(rep.worst_upper_margin, up - sup);
    if (sup < low - 1e-15 || sup > up + 1e-9) rep.ok = false;
  }
  return rep;
}

LorentzField::LorentzField(int N_, int M_) : N(N_), M(M_) {
  if (N < 0 || M < 1) throw DimensionError("LorentzField: need N >= 0 and M >= 1");
  coeffs.assign(std::size_t(2 * N + 1) * (2 * N + 1) * (2 * M + 1), cplx(0.0, 0.0));
}

std::size_t LorentzField::index(int n1, int n2, int j) const {
  if (std::abs(n1) > N || std::abs(n2) > N || std::abs(j) > M) throw ParameterError("LorentzField: index out of range");
  return (std::size_t(n1 + N) * (2 * N + 1) + std::size_t(n2 + N)) * (2 * M + 1) + std::size_t(j + M);
}

double LorentzField::squared_norm() const {
  double s = 0;
  for (const auto& c : coeffs) s += std::norm(c);
  return s;
}

LorentzField random_field(int N, int M, std::uint64_t seed) {
  LorentzField f(N, M);
  Rng rng(seed);
  for (auto& c : f.coeffs) c = rng.complex_normal();
  return f;
}

json to_json(const LorentzField& f) {
  json coeffs = json::array();
  for (int a = -f.N; a <= f.N; ++a)
    for (int b = -f.N; b <= f.N; ++b)
      for (int j = -f.M; j <= f.M; ++j) {
        const cplx c = f.at(a, b, j);
        if (c == cplx(0.0, 0.0)) continue;
        coeffs.push_back({{"n", json::array({a, b})}, {"j", j}, {"re", c.real()}, {"im", c.imag()}});
      }
  return json{{"N", f.N}, {"M", f.M}, {"coeffs", coeffs}};
}

LorentzField field_from_json(const json& j) {
  if (!j.is_object() || !j.contains("N") || !j.contains("M") || !j.contains("coeffs"))
    throw InvalidEntryError("field JSON needs N, M and coeffs");
  if (!j["N"].is_number_integer() || !j["M"].is_number_integer()) throw InvalidEntryError("N and M must be integers");
  LorentzField f(j["N"].get<int>(), j["M"].get<int>());
  if (!j["coeffs"].is_array()) throw InvalidEntryError("coeffs must be an array");
  for (const auto& c : j["coeffs"]) {
    if (!c.contains("n") || !c["n"].is_array() || c["n"].size() != 2 || !c.contains("j"))
      throw InvalidEntryError("coefficient needs n = [n1, n2] and j");
    const double re = c.value("re", 0.0), im = c.value("im", 0.0);
    if (!std::isfinite(re) || !std::isfinite(im)) throw InvalidEntryError("coefficient is not finite");
    f.at(c["n"][0].get<int>(), c["n"][1].get<int>(), c["j"].get<int>()) = cplx(re, im);
  }
  return f;
}

namespace {

// D = diag(e^{-i j theta}); the mode generator is D C_{|n|} D*.
Vector rotation_phases(int M, int n1, int n2) {
  const double th = std::atan2(double(n2), double(n1));
  Vector d(2 * M + 1);
  for (int j = -M; j <= M; ++j) d(j + M) = std::polar(1.0, -j * th);
  return d;
}

Vector mode_vector(const LorentzField& f, int a, int b) {
  const int d = 2 * f.M + 1;
  return Eigen::Map<const Vector>(f.coeffs.data() + f.index(a, b, -f.M), d);
}

// summed directly; ||f||^2 - |f_00,0|^2 cancels once the field has decayed
double off_equilibrium_sq(const LorentzField& f) {
  const std::size_t eq = f.index(0, 0, 0);
  double s = 0;
  for (std::size_t i = 0; i < f.coeffs.size(); ++i)
    if (i != eq) s += std::norm(f.coeffs[i]);
  return s;
}

}  // namespace

SimulationResult simulate(const LorentzField& f0, double t, double sigma) {
  if (!(t >= 0) || !std::isfinite(t)) throw ParameterError("simulate: t must be finite and >= 0");
  for (const auto& c : f0.coeffs)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw InvalidEntryError("simulate: field is not finite");
  SimulationResult res;
  res.t = t;
  res.field = LorentzField(f0.N, f0.M);
  const int M = f0.M;
  const auto groups = lattice_groups(f0.N);
  std::vector<int> keys;
  for (const auto& [k, v] : groups) keys.push_back(k);
  parallel_for(keys.size(), [&](std::size_t g) {
    const Matrix P = matrix_exponential(-modal_generator(std::sqrt(double(keys[g])), M, sigma), t);
    for (const auto& [a, b] : groups.at(keys[g])) {
      const Vector d = rotation_phases(M, a, b);
      const Vector x = d.asDiagonal() * (P * (d.conjugate().asDiagonal() * mode_vector(f0, a, b)));
      std::copy(x.data(), x.data() + x.size(), res.field.coeffs.begin() + long(res.field.index(a, b, -M)));
    }
  });
  const double decay = std::exp(-sigma * t);
  for (int j = -M; j <= M; ++j) res.field.at(0, 0, j) = j == 0 ? f0.at(0, 0, 0) : decay * f0.at(0, 0, j);

  res.initial_distance = std::sqrt(off_equilibrium_sq(f0));
  res.distance = std::sqrt(off_equilibrium_sq(res.field));
  res.bound = std::sqrt(3.0) * std::exp(-lambda0() * t) * res.initial_distance;
  res.mass_drift = std::abs(res.field.at(0, 0, 0) - f0.at(0, 0, 0));
  res.bound_ok = res.distance <= res.bound + 1e-8 && res.mass_drift <= 1e-14;
  return res;
}

std::vector<TrajectoryRow> simulate_trajectory(const LorentzField& f0, const std::vector<double>& times,
                                               double sigma) {
  const int M = f0.M, d = 2 * M + 1;
  for (std::size_t i = 0; i < times.size(); ++i)
    if (!(times[i] >= 0) || (i > 0 && !(times[i] > times[i - 1])))
      throw ParameterError("simulate_trajectory: times must be increasing and >= 0");
  const auto groups = lattice_groups(f0.N);
  std::vector<int> keys;
  for (const auto& [k, v] : groups) keys.push_back(k);
  const double lam0 = lambda0();
  const double init = std::sqrt(off_equilibrium_sq(f0));

  // per-group squared distance at each time
  std::vector<std::vector<double>> sq(keys.size(), std::vector<double>(times.size(), 0.0));
  parallel_for(keys.size(), [&](std::size_t g) {
    const auto& modes = groups.at(keys[g]);
    const Matrix C = modal_generator(std::sqrt(double(keys[g])), M, sigma);
    Matrix X(d, Eigen::Index(modes.size()));
    for (std::size_t m = 0; m < modes.size(); ++m) {
      const auto [a, b] = modes[m];
      X.col(Eigen::Index(m)) = rotation_phases(M, a, b).conjugate().asDiagonal() * mode_vector(f0, a, b);
    }
    if (times.empty()) return;
    Matrix Xt = matrix_exponential(-C, times[0]) * X;
    sq[g][0] = Xt.squaredNorm();
    if (times.size() == 1) return;
    const double dt = (times.back() - times.front()) / double(times.size() - 1);
    bool uniform = true;
    for (std::size_t i = 0; i < times.size(); ++i)
      uniform = uniform && std::abs(times[i] - times[0] - dt * double(i)) <= 1e-12 * std::max(1.0, times.back());
    const Matrix step = uniform ? matrix_exponential(-C, dt) : Matrix();
    for (std::size_t i = 1; i < times.size(); ++i) {
      Xt = uniform ? Matrix(step * Xt) : Matrix(matrix_exponential(-C, times[i]) * X);
      sq[g][i] = Xt.squaredNorm();
    }
  });

  std::vector<TrajectoryRow> rows;
  double zero_mode = 0;
  for (int j = -M; j <= M; ++j)
    if (j != 0) zero_mode += std::norm(f0.at(0, 0, j));
  for (std::size_t i = 0; i < times.size(); ++i) {
    double s = zero_mode * std::exp(-2.0 * sigma * times[i]);
    for (std::size_t g = 0; g < keys.size(); ++g) s += sq[g][i];
    rows.push_back({times[i], std::sqrt(s), std::sqrt(3.0) * std::exp(-lam0 * times[i]) * init, 0.0});
  }
  return rows;
}

std::string trajectory_to_csv(const std::vector<TrajectoryRow>& rows) {
  std::string out = "t,distance,bound\n";
  for (const auto& r : rows) out += fmt17(r.t) + "," + fmt17(r.distance) + "," + fmt17(r.bound) + "\n";
  return out;
}

json to_json(const AppendixCConstants& c) {
  return json{{"M", c.M},         {"kappa1", c.kappa1}, {"kappa3", c.kappa3}, {"delta", c.delta},
              {"tau1", c.tau1},   {"tau2", c.tau2},     {"tau3", c.tau3},     {"tau", c.tau},
              {"c1", c.c1},       {"c2", c.c2},         {"c3", c.c3},         {"c", c.c},
              {"r", c.r},         {"lambda0", c.lambda0}, {"inf_RJ", c.inf_RJ}, {"inf_mu", c.inf_mu},
              {"r_in_range", c.r_in_range}};
}

json to_json(const CubicBoundReport& r) {
  return json{{"ok", r.ok},
              {"worst_margin", r.worst_margin},
              {"worst_n", r.worst_n},
              {"worst_t", r.worst_t},
              {"endpoint_margin_n1", r.endpoint_margin_n1},
              {"violations", r.violations}};
}

}  // namespace hypokit::lorentz
