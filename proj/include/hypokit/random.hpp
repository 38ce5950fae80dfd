#pragma once

#include <cstdint>
#include <random>

#include "hypokit/operator_core.hpp"

namespace hypokit {

// mt19937_64 with the uniform/normal transforms spelled out, so streams are
// identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }
  double normal();
  cplx complex_normal() { return {normal(), normal()}; }
  int integer(int lo, int hi) { return lo + int(eng_() % std::uint64_t(hi - lo + 1)); }
  Matrix gaussian(Eigen::Index r, Eigen::Index c, double scale = 1.0);
  Vector unit_vector(Eigen::Index n);
  Matrix unitary(Eigen::Index n);

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0;
};

struct RandomInstance {
  Matrix R;
  Matrix J;
  Matrix C;  // R - J
  int rank_R = 0;
  bool obstructed = false;  // built with a J-eigenvector inside ker R
};

// R = G*G (optionally rank deficient), J = (S - S*)/2 with Gaussian G, S.
// With probability p_obstructed the pair is rotated so that ker R holds a
// J-eigenvector.
RandomInstance random_accretive(Rng& rng, int n, double p_rank_deficient = 0.5,
                                double p_obstructed = 0.0);

}  // namespace hypokit
