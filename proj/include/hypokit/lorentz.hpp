#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hypokit/decay.hpp"
#include "hypokit/io.hpp"
#include "hypokit/operator_core.hpp"

namespace hypokit::lorentz {

// 1/2 - 1/(6 sqrt 2) - (1/3) sqrt(7/16 + 1/sqrt 8)
double lambda0();
// (3 - sqrt 5)/2
double kappa_limit();

// Velocity index j in [-M, M] sits at row j + M.
struct VelocityOperators {
  int M = 0;
  Matrix R;    // diag, 0 at j = 0
  Matrix J10;  // -(i/2) tridiag(1, 0, 1)
};

VelocityOperators build_velocity_operators(int M);

// sigma R - n J10
Matrix modal_generator(double n_abs, int M, double sigma = 1.0);

// M-section of R + J10 R J10* (built one level wider, then cropped).
Matrix kappa_operator(int M);
double kappa_truncated(int M);

// kappa_operator(M) minus the shifted 3x3 blocks; should be diagonal with entries >= kappa.
Matrix kappa_block_residual(int M, double kappa);

Matrix lyapunov_weight(double n_abs, double alpha, int M);
// C*Y + YC for the modal generator.
Matrix lyapunov_lhs(double n_abs, double alpha, int M);
double lyapunov_margin(double n_abs, double alpha, double lam0, int M);
// Rows/cols j = -1..2 of C*Y + YC, and the closed-form version.
Matrix essential_block(double n_abs, double alpha, int M);
Matrix essential_block_closed_form(double n_abs, double alpha);

struct ModalDecayReport {
  DecayCurve curve;
  double worst_margin = 0;  // min over t of bound - norm
  double worst_time = 0;
  double worst_sqrt3_margin = 0;
  bool bound_ok = false;
};

ModalDecayReport modal_propagator_norm(double n_abs, int M, const std::vector<double>& times);

struct AppendixCConstants {
  int M = 0;
  double kappa1 = 0, kappa3 = 0, delta = 0;
  double tau1 = 0, tau2 = 0, tau3 = 0, tau = 0;
  double c1 = 0, c2 = 0, c3 = 0, c = 0;
  double r = 0;
  double lambda0 = 0;
  double inf_RJ = 0;   // inf of ||sqrt(R) J10 x||^2 over unit x with <Rx,x> <= delta
  double inf_mu = 0;   // maximizing multiplier of the dual
  bool r_in_range = true;
};

double delta1(double tau);
double delta3(double tau);
// t_n = tau/n + ln(1 + 1/(n - 1/2)) / (2 lambda0)
double reference_time(double n, double tau, double lam0);

AppendixCConstants appendix_constants(int M = 128, int N_flag = 0);

// Smallest ||sqrt(R) J10 x||^2 among random unit x with <Rx,x> <= delta.
double sampled_constrained_min(int M, double delta, int samples, std::uint64_t seed);

struct CubicBoundReport {
  bool ok = true;
  double worst_margin = 0;  // min of 1 - c t^3 - ||P_n(t)||
  double worst_n = 0;
  double worst_t = 0;
  double endpoint_margin_n1 = 0;  // at n = 1, t = tau
  int violations = 0;
};

CubicBoundReport cubic_bound_verify(int N, int M, const AppendixCConstants& consts, int samples);

struct SandwichReport {
  bool ok = true;
  std::vector<double> times;
  std::vector<double> sup_norm;  // sup over lattice modes of ||P_n(t)||
  std::vector<double> lower;     // ||P_(1,0)(t)||
  std::vector<double> upper;     // 1 - c t^3
  std::vector<double> argmax_n;
  double worst_upper_margin = 0;
};

SandwichReport full_propagator_bounds(int N, int M, const AppendixCConstants& consts,
                                      const std::vector<double>& times);

struct LorentzField {
  int N = 0;
  int M = 0;
  std::vector<cplx> coeffs;  // ((n1+N)(2N+1) + (n2+N))(2M+1) + (j+M)

  LorentzField() = default;
  LorentzField(int N_, int M_);
  std::size_t index(int n1, int n2, int j) const;
  cplx& at(int n1, int n2, int j) { return coeffs[index(n1, n2, j)]; }
  cplx at(int n1, int n2, int j) const { return coeffs[index(n1, n2, j)]; }
  double squared_norm() const;
};

LorentzField random_field(int N, int M, std::uint64_t seed);
json to_json(const LorentzField& f);
LorentzField field_from_json(const json& j);

struct SimulationResult {
  LorentzField field;
  double t = 0;
  double distance = 0;          // ||f(t) - f_inf||
  double initial_distance = 0;  // ||f0 - f_inf||
  double bound = 0;             // sqrt3 e^{-lambda0 t} ||f0 - f_inf||
  double mass_drift = 0;        // |f_00,0(t) - f_00,0(0)|
  bool bound_ok = false;
};

SimulationResult simulate(const LorentzField& f0, double t, double sigma = 1.0);

struct TrajectoryRow {
  double t, distance, bound, mass_drift;
};
// Uniform grids are advanced by repeated one-step propagators.
std::vector<TrajectoryRow> simulate_trajectory(const LorentzField& f0, const std::vector<double>& times,
                                               double sigma = 1.0);
std::string trajectory_to_csv(const std::vector<TrajectoryRow>& rows);

json to_json(const AppendixCConstants& c);
json to_json(const CubicBoundReport& r);

}  // namespace hypokit::lorentz
