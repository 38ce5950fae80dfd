#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hypokit/decay.hpp"
#include "hypokit/gallery.hpp"
#include "hypokit/hc_index.hpp"
#include "hypokit/io.hpp"
#include "hypokit/lorentz.hpp"
#include "hypokit/staircase.hpp"

namespace py = pybind11;
using namespace hypokit;
namespace lz = hypokit::lorentz;

namespace {

// Reports cross the boundary as JSON text; the package decodes them.
std::string text(const json& j) { return dump_json(j, -1); }

}  // namespace

PYBIND11_MODULE(_hypokit, m) {
  m.doc() = "hypocoercivity analysis core";

  auto base = py::register_exception<Error>(m, "HypokitError");
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<InvalidEntryError>(m, "InvalidEntryError", base.ptr());
  py::register_exception<ParameterError>(m, "ParameterError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<ContractError>(m, "ContractError", base.ptr());
  py::register_exception<NotPsdError>(m, "NotPsdError", base.ptr());
  py::register_exception<RangeError>(m, "RangeError", base.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
  py::register_exception<NoDecayError>(m, "NoDecayError", base.ptr());

  m.def("hermitian_split", [](const Matrix& C) {
    const auto d = hermitian_split(C);
    return py::make_tuple(d.R, d.J);
  });
  m.def("matrix_exponential", &matrix_exponential, py::arg("A"), py::arg("t"));
  m.def("spectral_norm", &spectral_norm);
  m.def("min_eig_hermitian", &min_eig_hermitian);

  m.def(
      "index_via_powers_json",
      [](const Matrix& C, const std::string& method, double kappa_threshold, int m_max) {
        return text(to_json(index_via_powers(hermitian_split(C), index_method_from_string(method),
                                             {kappa_threshold, m_max, 1e-10})));
      },
      py::arg("C"), py::arg("method") = "c_powers_right", py::arg("kappa_threshold") = -1.0, py::arg("m_max") = -1);
  m.def(
      "equivalence_audit_json",
      [](const Matrix& C, double kappa_threshold, int m_max, double rank_tol) {
        return text(to_json(equivalence_audit(hermitian_split(C), {kappa_threshold, m_max, 1e-10}, rank_tol)));
      },
      py::arg("C"), py::arg("kappa_threshold") = -1.0, py::arg("m_max") = -1, py::arg("rank_tol") = 1e-10);
  m.def("kalman_kernel_defect", &kalman_kernel_defect, py::arg("R"), py::arg("J"), py::arg("m"),
        py::arg("rank_tol") = 1e-10);

  m.def(
      "staircase_json",
      [](const Matrix& R, const Matrix& J, double rank_tol) {
        const auto f = build_staircase(R, J, rank_tol);
        json out = to_json(f);
        out["verification"] = to_json(verify_staircase(f, R, J, 1e-10, rank_tol));
        return text(out);
      },
      py::arg("R"), py::arg("J"), py::arg("rank_tol") = 1e-10);

  m.def("propagator_norms", [](const Matrix& C, const std::vector<double>& times) {
    return propagator_norm_curve(C, times).norms;
  });
  m.def("norm_defect", &norm_defect);
  m.def(
      "short_time_constant", [](const Matrix& C, int mm) { return short_time_constant(hermitian_split(C), mm); },
      py::arg("C"), py::arg("m"));
  m.def("fit_short_time_json", [](const Matrix& C) { return text(to_json(fit_short_time(short_time_curve(C)))); });
  m.def("stability_json", [](const Matrix& C, double t0) { return text(to_json(stability_check(C, t0))); });

  m.def(
      "example",
      [](const std::string& kind, int k, int n_start, int blocks, int dim) {
        return make_example({example_kind_from_string(kind), k, n_start, blocks, dim});
      },
      py::arg("kind"), py::arg("k") = 1, py::arg("n_start") = 1, py::arg("blocks") = 1, py::arg("dim") = 4);
  m.def("ck_closed_form_norm", &ck_closed_form_norm);

  auto l = m.def_submodule("lorentz", "Lorentz kinetic model");
  l.def("lambda0", &lz::lambda0);
  l.def("kappa_truncated", &lz::kappa_truncated);
  l.def("lyapunov_margin", &lz::lyapunov_margin, py::arg("n_abs"), py::arg("alpha"), py::arg("lambda0"),
        py::arg("M"));
  l.def("modal_generator", &lz::modal_generator, py::arg("n_abs"), py::arg("M"), py::arg("sigma") = 1.0);
  l.def(
      "appendix_constants_json", [](int M) { return text(lz::to_json(lz::appendix_constants(M))); },
      py::arg("M") = 128);
  l.def(
      "simulate_distances",
      [](int N, int M, std::uint64_t seed, const std::vector<double>& times) {
        std::vector<double> d;
        for (const auto& r : lz::simulate_trajectory(lz::random_field(N, M, seed), times)) d.push_back(r.distance);
        return d;
      },
      py::arg("N"), py::arg("M"), py::arg("seed"), py::arg("times"));
}
