#pragma once

#include <string>
#include <vector>

#include "hypokit/io.hpp"
#include "hypokit/operator_core.hpp"

namespace hypokit {

struct StaircaseForm {
  Matrix basis;                 // Q, columns grouped by block
  std::vector<int> block_dims;  // n_1..n_s, trailing zero allowed
  Matrix J_hat;                 // Q* J Q
  Matrix R_hat;                 // Q* R Q
  bool ambiguous_rank = false;  // a singular value fell within [0.1, 10] x threshold
  std::vector<double> subdiag_min_sv;  // smallest kept singular value per split
};

StaircaseForm build_staircase(const Matrix& R, const Matrix& J, double rank_tol = 1e-10);

struct StaircaseIssue {
  std::string check;
  int block_i = -1;
  int block_j = -1;
  double residual = 0;
};

struct StaircaseReport {
  bool ok = true;
  std::vector<StaircaseIssue> failures;
  double unitarity = 0;
  double J_band = 0;      // largest block outside the allowed pattern
  double R_corner = 0;    // largest entry of R_hat outside the leading block
  double J_reconstruction = 0;
  double R_reconstruction = 0;
  double spectrum = 0;
  bool trailing_nonzero = false;  // H_s != {0}: not hypocoercive
  std::string hint;
};

StaircaseReport verify_staircase(const StaircaseForm& form, const Matrix& R, const Matrix& J,
                                 double tol = 1e-10, double rank_tol = 1e-10);

json to_json(const StaircaseForm& f);
json to_json(const StaircaseReport& r);

}  // namespace hypokit
