#pragma once

#include <string>
#include <vector>

#include "hypokit/operator_core.hpp"

namespace hypokit {

enum class ExampleKind { ck, ek, remark25_block_family, compact_R_family, ek_blockdiag, ek_rescaled };

std::string to_string(ExampleKind k);
ExampleKind example_kind_from_string(const std::string& s);

struct ExampleSpec {
  ExampleKind kind = ExampleKind::ck;
  int k = 1;        // ck, ek; k_max for ek_blockdiag / ek_rescaled
  int n_start = 1;  // first block parameter of remark25_block_family
  int blocks = 1;   // remark25_block_family block count
  int dim = 4;      // compact_R_family
};

Matrix make_example(const ExampleSpec& spec);

Matrix make_ck(int k);
Matrix make_ek(int k);
Matrix make_remark25_blocks(int n_start, int blocks);
Matrix make_compact_R(int dim);
Matrix block_diag(const std::vector<Matrix>& blocks);

// ||e^{-C_k t}|| from the explicit 2x2 formula.
double ck_closed_form_norm(int k, double t);
double ck_kink_time(int k);

struct CkReport {
  int k = 0;
  bool eigenvalues_ok = false;
  double eigenvalue_error = 0;
  bool envelope_ok = false;
  double max_envelope_ratio = 0;  // max_t ||P(t)|| e^{t/2}
  double envelope_constant = 0;   // sqrt((2k+1)/(2k-1))
  long long c_num = 0, c_den = 1;  // exact short-time constant
  bool c_exact_ok = false;
  bool ok() const { return eigenvalues_ok && envelope_ok && c_exact_ok; }
};
CkReport ck_properties(int k);

struct EkRow {
  int k = 0;
  int index = -1;  // -1: none up to m_max
  double gap = 0;
  bool index_ok = false;
  bool gap_ok = false;
};
struct EkReport {
  std::vector<EkRow> rows;
  double blockdiag_gap = 0;
  double min_block_gap = 0;
  bool ok = false;
};
EkReport ek_properties(int k_max);

struct RescaleResult {
  double mu = 0;
  double c = 0;
  double r = 0;
  double norm_at_one = 0;  // ||e^{-r E_k}||
  bool boundary_warning = false;
};
// Empty grid selects [0, 40/mu] with 2001 points.
RescaleResult ek_rescale_factor(int k, const std::vector<double>& t_grid = {});

// lambda_min of sum_{j<=m} J^j R (J*)^j for the compact-R truncation of size dim.
double compact_R_partial_min(int m, int dim);

}  // namespace hypokit
