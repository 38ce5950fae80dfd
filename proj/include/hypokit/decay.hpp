#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hypokit/io.hpp"
#include "hypokit/operator_core.hpp"

namespace hypokit {

struct DecayCurve {
  std::vector<double> times;
  std::vector<double> norms;
  // 1 - norm evaluated without cancellation (series for small ||C|| t); may be empty.
  std::vector<double> defects;
  double generator_norm = 0;
};

struct ShortTimeFit {
  double a_est = 0;
  int a_rounded = 1;
  double c_est = 0;
  double residual = 0;
  std::array<double, 2> fit_window{0, 0};
  int samples = 0;
  bool flagged = false;  // |a_est - a_rounded| > 0.2
};

struct TaylorSeriesData {
  std::vector<Matrix> U;
  int jmax = 0;
  double identity_residual = 0;  // max relative mismatch of the C_H form of U_j
};

struct StabilityReport {
  bool stable = false;
  double norm_at_t0 = 0;
  double spectral_gap = 0;
};

struct SumOfSquaresCheck {
  double residual = 0;
  double max_delta = 0;  // largest Delta^{(m+1)}_{j,k} used
};

DecayCurve propagator_norm_curve(const Matrix& C, const std::vector<double>& times);

// Curve on a logarithmic grid with accurate defects, for short-time fitting.
DecayCurve short_time_curve(const Matrix& C, double t_lo, double t_hi, int samples);
DecayCurve short_time_curve(const Matrix& C);  // [1e-4, 3] / ||C||, 200 points

// g(x;t) = ||e^{-Ct}x||^2 - ||x||^2 without cancellation.
double g_value(const Matrix& C, const Vector& x, double t);
// Q(t) - I = e^{-C*t} e^{-Ct} - I.
Matrix q_minus_identity(const Matrix& C, double t);
// 1 - ||e^{-Ct}||.
double norm_defect(const Matrix& C, double t);

double short_time_constant(const OperatorDecomposition& dec, int m, double rank_tol = 1e-10);

ShortTimeFit fit_short_time(const DecayCurve& curve, double lo = 1e-10, double hi = 1e-2);

StabilityReport stability_check(const Matrix& C, double t0);

TaylorSeriesData taylor_U(const Matrix& C, int jmax);

double delta_coefficient(int m, int j, int k);

SumOfSquaresCheck sum_of_squares_residual(const Matrix& U, const Matrix& V, const Matrix& W, int m,
                                          double t, int jmax);

// b_0..b_m of the perturbed initial value.
std::vector<double> perturbation_coefficients(int m);
Vector perturbed_initial(const OperatorDecomposition& dec, int m, const Vector& x0, double tau);

std::string curve_to_csv(const DecayCurve& c);
json to_json(const ShortTimeFit& f);
json to_json(const StabilityReport& s);

}  // namespace hypokit
