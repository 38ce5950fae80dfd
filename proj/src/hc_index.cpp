#include "hypokit/hc_index.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "hypokit/parallel.hpp"

namespace hypokit {

std::string to_string(IndexMethod m) {
  switch (m) {
    case IndexMethod::c_powers_right: return "c_powers_right";
    case IndexMethod::c_powers_left: return "c_powers_left";
    case IndexMethod::j_powers: return "j_powers";
    case IndexMethod::commutators: return "commutators";
  }
  return "?";
}

IndexMethod index_method_from_string(const std::string& s) {
  for (IndexMethod m : kAllMethods)
    if (to_string(m) == s) return m;
  throw ParameterError("unknown index method: " + s);
}

double default_kappa_threshold(const Matrix& C) { return 1e-9 * spectral_norm(C); }

namespace {

// Generates the terms of one partial sum in order m = 0, 1, 2, ...
class TermSequence {
 public:
  TermSequence(const OperatorDecomposition& dec, IndexMethod method) : dec_(dec), method_(method) {
    const Eigen::Index n = dec.C.rows();
    switch (method) {
      case IndexMethod::c_powers_right:
      case IndexMethod::c_powers_left:
      case IndexMethod::j_powers:
        P_ = Matrix::Identity(n, n);
        break;
      case IndexMethod::commutators:
        P_ = psd_sqrt(dec.R, 1e-8, spectral_norm(dec.C));
        break;
    }
  }

  Matrix next() {
    Matrix T;
    switch (method_) {
      case IndexMethod::c_powers_right:
        T = P_.adjoint() * dec_.R * P_;
        P_ = (P_ * dec_.C).eval();
        break;
      case IndexMethod::c_powers_left:
        T = P_ * dec_.R * P_.adjoint();
        P_ = (dec_.C * P_).eval();
        break;
      case IndexMethod::j_powers:
        T = P_ * dec_.R * P_.adjoint();
        P_ = (dec_.J * P_).eval();
        break;
      case IndexMethod::commutators:
        T = P_.adjoint() * P_;
        P_ = (dec_.J * P_ - P_ * dec_.J).eval();
        break;
    }
    return symmetrize(T);
  }

 private:
  const OperatorDecomposition& dec_;
  IndexMethod method_;
  Matrix P_;
};

void check_accretive(const OperatorDecomposition& dec, double psd_tol) {
  const double lam = min_eig_hermitian(dec.R);
  const double scale = std::max(spectral_norm(dec.C), 1e-300);
  if (lam < -psd_tol * scale) {
    std::ostringstream os;
    os << "operator is not accretive: lambda_min(C_H) = " << lam;
    throw PreconditionError(os.str());
  }
}

}  // namespace

Matrix index_term(const OperatorDecomposition& dec, IndexMethod method, int m) {
  if (m < 0) throw ParameterError("index_term: m must be >= 0");
  TermSequence seq(dec, method);
  Matrix T;
  for (int j = 0; j <= m; ++j) T = seq.next();
  return T;
}

IndexReport index_via_powers(const OperatorDecomposition& dec, IndexMethod method,
                             const IndexOptions& opt) {
  require_square(dec.C, "C");
  const Eigen::Index n = dec.C.rows();
  if (n == 0) throw DimensionError("index_via_powers: empty operator");
  check_accretive(dec, opt.psd_tol);

  IndexReport rep;
  rep.method = method;
  rep.kappa_threshold = opt.kappa_threshold < 0 ? default_kappa_threshold(dec.C) : opt.kappa_threshold;
  if (!(rep.kappa_threshold > 0)) throw ParameterError("kappa_threshold must be positive");
  rep.m_max = opt.m_max < 0 ? static_cast<int>(n) : opt.m_max;

  TermSequence seq(dec, method);
  Matrix S = Matrix::Zero(n, n);
  for (int m = 0; m <= rep.m_max; ++m) {
    S += seq.next();
    const double lam = min_eig_hermitian(S);
    // below n eps ||S_m|| the eigensolver cannot tell lam from zero
    const double floor = 100.0 * double(n) * std::numeric_limits<double>::epsilon() * spectral_norm(S);
    rep.per_m_min_eigs.push_back(lam);
    rep.noise_floors.push_back(floor);
    if (lam >= rep.kappa_threshold && lam >= floor) {
      rep.index = m;
      rep.kappa = lam;
      break;
    }
  }
  return rep;
}

int kalman_kernel_defect(const Matrix& R, const Matrix& J, int m, double rank_tol) {
  require_square(R, "R");
  require_square(J, "J");
  if (R.rows() != J.rows()) throw DimensionError("kalman_kernel_defect: R and J differ in size");
  if (m < 0) throw ParameterError("kalman_kernel_defect: m must be >= 0");
  const Eigen::Index n = R.rows();
  // Kernels are invariant under positive rescaling of sqrt(R) and J.
  Matrix S = psd_sqrt(R, 1e-8, std::max(spectral_norm(R), spectral_norm(J)));
  const double ns = spectral_norm(S);
  if (ns == 0.0) return static_cast<int>(n);
  S /= ns;
  Matrix Js = J.adjoint();
  const double nj = spectral_norm(J);
  if (nj > 0) Js /= nj;

  Matrix stack((m + 1) * n, n);
  Matrix block = S;
  for (int j = 0; j <= m; ++j) {
    stack.middleRows(j * n, n) = block;
    block = (block * Js).eval();
  }
  return static_cast<int>(n) - numerical_rank(stack, rank_tol);
}

std::optional<ObstructionWitness> eigenvector_obstruction(const Matrix& R, const Matrix& J,
                                                          double tol) {
  require_square(R, "R");
  require_square(J, "J");
  if (R.rows() != J.rows()) throw DimensionError("eigenvector_obstruction: R and J differ in size");
  const Eigen::Index n = R.rows();
  if (n == 0) return std::nullopt;

  // J = iH with H Hermitian.
  Matrix H = symmetrize(cplx(0, -1) * J);
  Eigen::SelfAdjointEigenSolver<Matrix> es(H);
  if (es.info() != Eigen::Success) throw NumericalError("eigenvector_obstruction: eigensolver failed");
  const RealVector& h = es.eigenvalues();
  const Matrix& V = es.eigenvectors();
  const double normJ = h.cwiseAbs().maxCoeff();
  const double scale = std::max(spectral_norm(R), normJ);
  const double cluster_tol = 1e-8 * normJ;

  std::optional<ObstructionWitness> best;
  double best_ratio = INFINITY;
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && h(end) - h(end - 1) <= cluster_tol) ++end;
    const Matrix Vc = V.middleCols(start, end - start);
    Eigen::JacobiSVD<Matrix> svd(R * Vc, Eigen::ComputeFullV);
    const RealVector& sv = svd.singularValues();
    const Eigen::Index k = Vc.cols();
    const double smin = sv(k - 1);
    if (smin <= tol * scale) {
      const double ratio = scale > 0 ? smin / scale : 0.0;
      if (ratio < best_ratio) {
        best_ratio = ratio;
        ObstructionWitness w;
        w.vector = Vc * svd.matrixV().col(k - 1);
        w.vector.normalize();
        w.eigenvalue = w.vector.dot(J * w.vector);  // v* J v
        w.residual_J = (J * w.vector - w.eigenvalue * w.vector).norm();
        w.residual_R = (R * w.vector).norm();
        best = w;
      }
    }
    start = end;
  }
  return best;
}

AuditReport equivalence_audit(const OperatorDecomposition& dec, const IndexOptions& opt,
                              double rank_tol) {
  AuditReport a;
  parallel_for(kAllMethods.size(),
               [&](std::size_t i) { a.reports[i] = index_via_powers(dec, kAllMethods[i], opt); });
  a.agree = true;
  for (const auto& r : a.reports) a.agree = a.agree && r.index == a.reports[0].index;
  const int m_max = a.reports[0].m_max;
  for (int m = 0; m <= m_max; ++m) {
    const int d = kalman_kernel_defect(dec.R, dec.J, m, rank_tol);
    a.defect_sweep.push_back(d);
    if (d == 0 && !a.rank_index) a.rank_index = m;
  }
  a.obstruction = eigenvector_obstruction(dec.R, dec.J);
  return a;
}

json to_json(const IndexReport& r) {
  json j;
  j["method"] = to_string(r.method);
  j["index"] = r.index ? json(*r.index) : json("none-up-to-m_max");
  j["kappa"] = r.kappa;
  j["kappa_threshold"] = r.kappa_threshold;
  j["m_max"] = r.m_max;
  j["per_m_min_eigs"] = r.per_m_min_eigs;
  j["noise_floors"] = r.noise_floors;
  return j;
}

json to_json(const ObstructionWitness& w) {
  return json{{"eigenvalue", json::array({w.eigenvalue.real(), w.eigenvalue.imag()})},
              {"vector", vector_to_json(w.vector)},
              {"residual_J", w.residual_J},
              {"residual_R", w.residual_R}};
}

json to_json(const AuditReport& a) {
  json idx = json::object(), kap = json::object(), eigs = json::object();
  for (const auto& r : a.reports) {
    const std::string name = to_string(r.method);
    idx[name] = r.index ? json(*r.index) : json("none-up-to-m_max");
    kap[name] = r.index ? json(r.kappa) : json(nullptr);
    eigs[name] = r.per_m_min_eigs;
  }
  json j;
  j["index_per_method"] = idx;
  j["kappa_per_method"] = kap;
  j["per_m_min_eigs"] = eigs;
  j["defect_sweep"] = a.defect_sweep;
  j["rank_index"] = a.rank_index ? json(*a.rank_index) : json(nullptr);
  j["obstruction"] = a.obstruction ? to_json(*a.obstruction) : json(nullptr);
  j["agree"] = a.agree;
  return j;
}

}  // namespace hypokit
