#include "hypokit/random.hpp"

#include <cmath>
#include <numbers>

namespace hypokit {

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double rad = std::sqrt(-2.0 * std::log(u1));
  spare_ = rad * std::sin(2.0 * std::numbers::pi * u2);
  have_spare_ = true;
  return rad * std::cos(2.0 * std::numbers::pi * u2);
}

Matrix Rng::gaussian(Eigen::Index r, Eigen::Index c, double scale) {
  Matrix A(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) A(i, j) = scale * complex_normal();
  return A;
}

Vector Rng::unit_vector(Eigen::Index n) {
  Vector v = gaussian(n, 1);
  return v / v.norm();
}

Matrix Rng::unitary(Eigen::Index n) {
  Eigen::HouseholderQR<Matrix> qr(gaussian(n, n));
  Matrix Q = qr.householderQ();
  return Q;
}

RandomInstance random_accretive(Rng& rng, int n, double p_rank_deficient, double p_obstructed) {
  RandomInstance inst;
  const double s = 1.0 / std::sqrt(2.0 * n);
  Matrix G = rng.gaussian(n, n, s);
  if (rng.uniform() < p_rank_deficient) {
    const int r = rng.integer(0, n - 1);
    Eigen::JacobiSVD<Matrix> svd(G, Eigen::ComputeFullU | Eigen::ComputeFullV);
    RealVector sv = svd.singularValues();
    for (int i = r; i < n; ++i) sv(i) = 0.0;
    G = svd.matrixU() * sv.cast<cplx>().asDiagonal() * svd.matrixV().adjoint();
  }
  Matrix S = rng.gaussian(n, n, s);
  inst.R = symmetrize(G.adjoint() * G);
  inst.J = 0.5 * (S - S.adjoint());

  if (n >= 2 && rng.uniform() < p_obstructed) {
    // Block-diagonal pair: a 1x1 skew block with R = 0 there, the rest generic.
    Matrix R = Matrix::Zero(n, n), J = Matrix::Zero(n, n);
    const Eigen::Index m = n - 1;
    R.bottomRightCorner(m, m) = inst.R.topLeftCorner(m, m);
    J.bottomRightCorner(m, m) = inst.J.topLeftCorner(m, m);
    J(0, 0) = cplx(0.0, rng.normal());
    const Matrix Q = rng.unitary(n);
    inst.R = symmetrize(Q * R * Q.adjoint());
    inst.J = Q * J * Q.adjoint();
    inst.J = 0.5 * (inst.J - inst.J.adjoint());
    inst.obstructed = true;
  }
  inst.C = inst.R - inst.J;
  inst.rank_R = numerical_rank(inst.R, 1e-10);
  return inst;
}

}  // namespace hypokit
