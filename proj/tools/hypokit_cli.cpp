// hypokit command-line front end.
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <utility>

#include "CLI11.hpp"
#include "hypokit/decay.hpp"
#include "hypokit/gallery.hpp"
#include "hypokit/hc_index.hpp"
#include "hypokit/io.hpp"
#include "hypokit/lorentz.hpp"
#include "hypokit/staircase.hpp"

using namespace hypokit;

namespace {

struct Options {
  std::string input, output, format = "json";
  double tol_rank = 1e-10;
  double tol_kappa = -1;
  int m_max = -1;
  double tmax = 3.0;
  int steps = 300;
  int M = -1;
  int N = -1;
  std::uint64_t seed = 0;
  // gallery
  std::string example = "ck";
  int k = 1, n_start = 1, blocks = 1, dim = 4;
};

struct PropertyViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const Options& o, const std::string& text) {
  if (o.output.empty()) std::cout << text;
  else write_text_file(o.output, text);
}

void emit_json(const Options& o, const json& j) { emit(o, dump_json(j) + "\n"); }

Matrix load_matrix(const Options& o) {
  if (o.input.empty()) throw ParameterError("--input is required");
  return matrix_from_json(json::parse(read_text_file(o.input)));
}

IndexOptions index_options(const Options& o) { return {o.tol_kappa, o.m_max, 1e-10}; }

void run_analyze(const Options& o) {
  const Matrix C = load_matrix(o);
  const auto dec = hermitian_split(C);
  const AuditReport audit = equivalence_audit(dec, index_options(o), o.tol_rank);
  json out = to_json(audit);
  const double nc = spectral_norm(C);
  out["stability"] = to_json(stability_check(C, nc > 0 ? 10.0 / nc : 1.0));
  if (audit.index()) {
    const int m = *audit.index();
    out["short_time_constant"] = short_time_constant(dec, m, o.tol_rank);
    try {
      out["short_time_fit"] = to_json(fit_short_time(short_time_curve(C)));
    } catch (const Error& e) {
      out["short_time_fit"] = json{{"error", e.what()}};
    }
  } else {
    out["short_time_constant"] = nullptr;
    out["short_time_fit"] = nullptr;
  }
  emit_json(o, out);
  if (!audit.agree) throw PropertyViolation("index methods disagree");
}

void run_staircase(const Options& o) {
  const Matrix C = load_matrix(o);
  const auto dec = hermitian_split(C);
  const StaircaseForm f = build_staircase(dec.R, dec.J, o.tol_rank);
  const StaircaseReport rep = verify_staircase(f, dec.R, dec.J, 1e-10, o.tol_rank);
  json out = to_json(f);
  out["verification"] = to_json(rep);
  emit_json(o, out);
  if (!rep.ok) throw PropertyViolation("staircase invariants violated");
}

void run_decay(const Options& o) {
  const Matrix C = load_matrix(o);
  if (o.steps < 1 || !(o.tmax > 0)) throw ParameterError("--steps must be >= 1 and --tmax > 0");
  std::vector<double> t(o.steps + 1);
  for (int i = 0; i <= o.steps; ++i) t[i] = o.tmax * i / o.steps;
  const DecayCurve curve = propagator_norm_curve(C, t);
  if (o.format == "csv") {
    emit(o, curve_to_csv(curve));
    return;
  }
  json out{{"times", curve.times}, {"norms", curve.norms}, {"generator_norm", curve.generator_norm}};
  try {
    out["short_time_fit"] = to_json(fit_short_time(short_time_curve(C)));
  } catch (const Error& e) {
    out["short_time_fit"] = json{{"error", e.what()}};
  }
  emit_json(o, out);
}

void run_gallery(const Options& o) {
  ExampleSpec spec;
  spec.kind = example_kind_from_string(o.example);
  spec.k = o.k;
  spec.n_start = o.n_start;
  spec.blocks = o.blocks;
  spec.dim = o.dim;
  emit_json(o, matrix_to_json(make_example(spec)));
}

void run_lorentz(const Options& o, const std::string& sub) {
  namespace lz = hypokit::lorentz;
  if (sub == "kappa") {
    const int M = o.M < 0 ? 200 : o.M;
    emit_json(o, json{{"M", M}, {"kappa", lz::kappa_truncated(M)}, {"limit", lz::kappa_limit()}});
  } else if (sub == "lyapunov") {
    const int M = o.M < 0 ? 64 : o.M;
    const int N = o.N < 0 ? 50 : o.N;
    const double lam0 = lz::lambda0();
    json margins = json::array();
    double worst = INFINITY;
    for (int n = 1; n <= N; ++n) {
      const double m = lz::lyapunov_margin(n, 0.5, lam0, M);
      worst = std::min(worst, m);
      margins.push_back({{"n", n}, {"margin", m}});
    }
    const double z1 = min_eig_hermitian(lz::essential_block(1.0, 0.5, std::max(M, 3)));
    emit_json(o, json{{"M", M}, {"lambda0", lam0}, {"margins", margins}, {"worst_margin", worst},
                      {"Z1_min_eig", z1}, {"three_lambda0", 3 * lam0}});
    if (worst < -1e-10) throw PropertyViolation("Lyapunov inequality fails at this truncation");
  } else if (sub == "constants") {
    const int M = o.M < 0 ? 128 : o.M;
    emit_json(o, lz::to_json(lz::appendix_constants(M, o.N < 0 ? 0 : o.N)));
  } else if (sub == "verify") {
    const int M = o.M < 0 ? 64 : o.M;
    const int N = o.N < 0 ? 20 : o.N;
    const auto consts = lz::appendix_constants(128);
    const auto rep = lz::cubic_bound_verify(N, M, consts, std::max(2, o.steps < 0 ? 60 : std::min(o.steps, 2000)));
    emit_json(o, json{{"constants", lz::to_json(consts)}, {"report", lz::to_json(rep)}});
    if (!rep.ok) throw PropertyViolation("cubic short-time bound violated");
  } else if (sub == "simulate") {
    lz::LorentzField f0;
    if (!o.input.empty()) f0 = lz::field_from_json(json::parse(read_text_file(o.input)));
    else f0 = lz::random_field(o.N < 0 ? 16 : o.N, o.M < 0 ? 32 : o.M, o.seed);
    if (o.steps < 1 || !(o.tmax > 0)) throw ParameterError("--steps must be >= 1 and --tmax > 0");
    std::vector<double> t(o.steps + 1);
    for (int i = 0; i <= o.steps; ++i) t[i] = o.tmax * i / o.steps;
    const auto rows = lz::simulate_trajectory(f0, t);
    if (o.format == "json") {
      json arr = json::array();
      for (const auto& r : rows) arr.push_back({{"t", r.t}, {"distance", r.distance}, {"bound", r.bound}});
      emit_json(o, json{{"N", f0.N}, {"M", f0.M}, {"rows", arr}});
    } else {
      emit(o, lz::trajectory_to_csv(rows));
    }
    for (const auto& r : rows)
      if (r.distance > r.bound + 1e-8) throw PropertyViolation("decay bound violated");
  } else {
    throw ParameterError("unknown lorentz subcommand: " + sub);
  }
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--input", o.input, "input JSON file");
  sub->add_option("--output", o.output, "output file (default stdout)");
  sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--tol-rank", o.tol_rank, "relative rank tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--tol-kappa", o.tol_kappa, "coercivity threshold (default 1e-9 ||C||)")->check(CLI::PositiveNumber);
  sub->add_option("--m-max", o.m_max, "largest index tried (default n)")->check(CLI::NonNegativeNumber);
  sub->add_option("--tmax", o.tmax, "final time")->check(CLI::PositiveNumber);
  sub->add_option("--steps", o.steps, "number of time steps")->check(CLI::PositiveNumber);
  sub->add_option("--M", o.M, "velocity cutoff")->check(CLI::PositiveNumber);
  sub->add_option("--N", o.N, "spatial cutoff")->check(CLI::NonNegativeNumber);
  sub->add_option("--seed", o.seed, "random seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hypocoercivity analysis toolkit"};
  app.require_subcommand(1);
  Options o;
  auto* analyze = app.add_subcommand("analyze", "index audit, stability and short-time fit");
  auto* stair = app.add_subcommand("staircase", "staircase form of (J, R)");
  auto* decay = app.add_subcommand("decay", "propagator norm curve");
  auto* gallery = app.add_subcommand("gallery", "emit an example matrix");
  auto* lor = app.add_subcommand("lorentz", "Lorentz kinetic model");
  for (auto* s : {analyze, stair, decay, gallery}) add_common(s, o);
  gallery->add_option("--example", o.example, "ck, ek, remark25_block_family, compact_R_family, ek_blockdiag, ek_rescaled");
  gallery->add_option("--k", o.k, "k (or k_max)");
  gallery->add_option("--n-start", o.n_start, "first remark25 block parameter");
  gallery->add_option("--blocks", o.blocks, "remark25 block count");
  gallery->add_option("--dim", o.dim, "compact_R dimension");
  lor->require_subcommand(1);
  std::string lsub;
  const std::pair<const char*, const char*> lsubs[] = {
      {"kappa", "coercivity constant of the truncated modal generator"},
      {"lyapunov", "modal Lyapunov margins"},
      {"constants", "explicit short-time constants"},
      {"verify", "check the cubic short-time bound on modes"},
      {"simulate", "distance to equilibrium along a trajectory"}};
  for (const auto& [name, help] : lsubs) {
    auto* s = lor->add_subcommand(name, help);
    add_common(s, o);
    s->callback([&lsub, name] { lsub = name; });
  }
  // simulate and verify have their own --steps/--tmax defaults
  bool steps_set = false;
  try {
    app.parse(argc, argv);
    for (auto* s : lor->get_subcommands()) steps_set = steps_set || s->count("--steps") > 0;
    // curve outputs default to CSV
    if (*decay && decay->count("--format") == 0) o.format = "csv";
    if (lsub == "simulate" && lor->get_subcommand("simulate")->count("--format") == 0) o.format = "csv";
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (*analyze) run_analyze(o);
    else if (*stair) run_staircase(o);
    else if (*decay) run_decay(o);
    else if (*gallery) run_gallery(o);
    else if (*lor) {
      if (lsub == "simulate") {
        if (lor->get_subcommand("simulate")->count("--tmax") == 0) o.tmax = 30.0;
        if (!steps_set) o.steps = 19;
      }
      if (lsub == "verify" && !steps_set) o.steps = 60;
      run_lorentz(o, lsub);
    }
  } catch (const PropertyViolation& e) {
    std::cerr << "property violation: " << e.what() << "\n";
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const RangeError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const NoDecayError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
