#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hypokit/io.hpp"
#include "hypokit/operator_core.hpp"

namespace hypokit {

enum class IndexMethod { c_powers_right, c_powers_left, j_powers, commutators };

inline constexpr std::array<IndexMethod, 4> kAllMethods = {
    IndexMethod::c_powers_right, IndexMethod::c_powers_left, IndexMethod::j_powers,
    IndexMethod::commutators};

std::string to_string(IndexMethod m);
IndexMethod index_method_from_string(const std::string& s);

struct IndexReport {
  std::optional<int> index;  // empty: none up to m_max
  double kappa = 0;
  IndexMethod method = IndexMethod::c_powers_right;
  std::vector<double> per_m_min_eigs;
  // 100 n eps ||S_m||; an index needs lambda_min above both this and the threshold
  std::vector<double> noise_floors;
  int m_max = 0;
  double kappa_threshold = 0;
};

struct IndexOptions {
  double kappa_threshold = -1;  // < 0: 1e-9 * ||C||
  int m_max = -1;               // < 0: n
  double psd_tol = 1e-10;       // accretivity tolerance relative to ||C||
};

double default_kappa_threshold(const Matrix& C);

IndexReport index_via_powers(const OperatorDecomposition& dec, IndexMethod method,
                             const IndexOptions& opt = {});

// The m-th term of each partial sum (used by tests of the vanishing forms).
Matrix index_term(const OperatorDecomposition& dec, IndexMethod method, int m);

int kalman_kernel_defect(const Matrix& R, const Matrix& J, int m, double rank_tol = 1e-10);

struct ObstructionWitness {
  cplx eigenvalue;
  Vector vector;
  double residual_J = 0;
  double residual_R = 0;
};

std::optional<ObstructionWitness> eigenvector_obstruction(const Matrix& R, const Matrix& J,
                                                          double tol = 1e-8);

struct AuditReport {
  std::array<IndexReport, 4> reports;
  std::vector<int> defect_sweep;  // kalman defect for m = 0..m_max
  std::optional<int> rank_index;  // smallest m with defect 0
  std::optional<ObstructionWitness> obstruction;
  bool agree = false;
  std::optional<int> index() const { return reports[0].index; }
};

AuditReport equivalence_audit(const OperatorDecomposition& dec, const IndexOptions& opt = {},
                              double rank_tol = 1e-10);

json to_json(const IndexReport& r);
json to_json(const ObstructionWitness& w);
json to_json(const AuditReport& a);

}  // namespace hypokit
