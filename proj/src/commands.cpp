// Copyright 2026 The ebchannel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ebc/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "ebc/sampling.hpp"

namespace ebc::cli {

namespace {

// Absolute thresholds for identities that hold exactly in exact arithmetic.
constexpr double kIdentityTol = 1e-10;
constexpr double kRoundTripTol = 1e-12;
constexpr double kConvergenceTol = 1e-6;
constexpr double kWitnessTol = 1e-8;
// The exhaustive primitivity oracle sweeps up to r^2 - 2r + 3 iterates.
constexpr std::size_t kOracleMaxPairs = 8;

json complex_list(const std::vector<Complex>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(json::array({v.real(), v.imag()}));
  return out;
}

json vector_to_json(const RealVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

template <typename T>
json optional_to_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

std::string format_complex(const Complex& z) {
  std::ostringstream os;
  os << std::setprecision(6) << z.real();
  if (z.imag() != 0.0) os << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

template <typename T>
std::string format_optional(const std::optional<T>& v) {
  if (!v) return "-";
  std::ostringstream os;
  os << std::boolalpha << *v;
  return os.str();
}

// ---------------------------------------------------------------------------
// Check bookkeeping for verify

class CheckLog {
 public:
  explicit CheckLog(std::string channel) : channel_(std::move(channel)) {}

  void record(std::string name, bool passed, std::string detail = {}) {
    results_.push_back({channel_, std::move(name), passed, std::move(detail)});
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::string channel_;
  std::vector<CheckResult> results_;
};

std::string describe(double value) {
  std::ostringstream os;
  os << std::setprecision(3) << value;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// build

ChannelDocument build_document(const BuildArgs& args) {
  const auto require_n = [&]() -> Eigen::Index {
    if (!args.n || *args.n < 1) {
      throw Error(ErrorKind::InvalidArgument, "'" + args.kind + "' needs --n N with N >= 1");
    }
    return static_cast<Eigen::Index>(*args.n);
  };

  if (args.kind == "depolarizing") {
    const auto n = require_n();
    return to_document(channel::depolarizing(n),
                       {{"builder", "depolarizing"}, {"n", std::to_string(n)}});
  }
  if (args.kind == "diag") {
    const auto n = require_n();
    return to_document(channel::map_to_diagonal(n),
                       {{"builder", "diag"}, {"n", std::to_string(n)}});
  }
  if (args.kind == "qc") {
    if (args.stochastic_file.empty()) {
      throw Error(ErrorKind::InvalidArgument, "'qc' needs --stochastic FILE");
    }
    const auto s = parse_stochastic_file(read_file(args.stochastic_file));
    return to_document(channel::qc_from_stochastic(s),
                       {{"builder", "qc"}, {"source", args.stochastic_file}});
  }
  if (args.kind == "from-kraus") {
    if (args.kraus_file.empty()) {
      throw Error(ErrorKind::InvalidArgument, "'from-kraus' needs --kraus FILE");
    }
    const auto kraus = parse_kraus_file(read_file(args.kraus_file));
    return to_document(channel::holevo_from_rank_one_kraus(kraus),
                       {{"builder", "from-kraus"}, {"source", args.kraus_file}});
  }
  throw Error(ErrorKind::InvalidArgument,
              "unknown kind '" + args.kind + "' (expected depolarizing, diag, qc, from-kraus)");
}

int run_build(const BuildArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const std::string text = emit_document(build_document(args));
    if (args.output_file.empty()) {
      out << text;
    } else {
      std::ofstream file(args.output_file, std::ios::binary);
      if (!file) throw Error(ErrorKind::InvalidArgument, "cannot write '" + args.output_file + "'");
      file << text;
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "build: " << e.what() << "\n";
    return kExitInputError;
  }
}

// ---------------------------------------------------------------------------
// analyze

AnalysisReport analyze(const channel::HolevoForm& phi, const primitivity::Options& options) {
  const Tolerances& tol = options.tol;
  AnalysisReport report;
  report.tolerances = tol;
  report.subset_cap = options.subset_cap;

  const auto s = channel::stochastic_rep(phi, tol);
  report.stochastic_matrix = s.matrix();
  report.column_sum_residual = s.column_sum_residual();
  report.spectrum = channel::compare_nonzero_spectrum(phi, tol);
  report.primitivity = primitivity::channel_primitivity_index(phi, options);

  const auto fp = channel::fixed_point(phi, tol);
  report.fixed_point = fp.state.value();
  report.stationary = fp.stationary;
  report.fixed_point_unique = fp.unique;
  report.fixed_point_residual = fp.residual;

  const auto factors = channel::factorization(phi);
  report.factorization_residual_ab = max_abs(factors.a * factors.b - channel::natural_rep(phi));
  report.factorization_residual_ba =
      max_abs(RealMatrix((factors.b * factors.a).real()) - s.matrix());
  report.rank_bounds = primitivity::holevo_rank_bounds(phi, tol);

  auto& failures = report.failures;
  if (report.column_sum_residual > tol.stochastic_tol) failures.push_back("column sums of S");
  if (!report.spectrum.matched) failures.push_back("non-zero spectra of [Phi] and S differ");
  if (report.fixed_point_residual > kIdentityTol) failures.push_back("fixed point residual");
  if (report.factorization_residual_ab > kIdentityTol ||
      report.factorization_residual_ba > kIdentityTol) {
    failures.push_back("factorization [Phi] = AB, S = BA");
  }
  const auto& prim = report.primitivity;
  if (prim.channel_primitive && prim.q_method == primitivity::QMethod::Exact) {
    if (prim.window_violation || !prim.q_index) {
      failures.push_back("no strictly positive iterate inside the q window");
    } else {
      if (!prim.bound_abs_diff_ok.value_or(false)) failures.push_back("|q - p| > 1");
      if (!prim.holevo_rank_bound_ok.value_or(false)) failures.push_back("q > r^2 - 2r + 3");
      if (prim.monotone_after_q == false) failures.push_back("positivity lost after q");
    }
  }
  if (report.rank_bounds.lower > report.rank_bounds.upper) {
    failures.push_back("rank of [Phi] exceeds r");
  }
  return report;
}

json report_to_json(const AnalysisReport& report) {
  const auto& prim = report.primitivity;
  json q_window = nullptr;
  if (prim.q_window_low && prim.q_window_high) {
    q_window = json::array({*prim.q_window_low, *prim.q_window_high});
  }
  return {
      {"tolerances_used", tolerances_to_json(report.tolerances)},
      {"subset_cap", report.subset_cap},
      {"stochastic_matrix", matrix_to_json(report.stochastic_matrix)},
      {"column_sum_residual", report.column_sum_residual},
      {"spectrum_comparison",
       {{"channel_nonzero", complex_list(report.spectrum.channel_nonzero)},
        {"matrix_nonzero", complex_list(report.spectrum.matrix_nonzero)},
        {"max_pair_distance", report.spectrum.max_pair_distance},
        {"matched", report.spectrum.matched}}},
      {"primitivity",
       {{"s_primitive", prim.s_primitive},
        {"sum_R_pd", prim.sum_R_pd},
        {"channel_primitive", prim.channel_primitive},
        {"p_index", optional_to_json(prim.p_index)},
        {"q_index", optional_to_json(prim.q_index)},
        {"bound_abs_diff_ok", optional_to_json(prim.bound_abs_diff_ok)},
        {"holevo_rank_bound_ok", optional_to_json(prim.holevo_rank_bound_ok)},
        {"q_method", prim.q_method == primitivity::QMethod::Exact ? "exact" : "bounds-only"},
        {"q_window", q_window},
        {"monotone_after_q", optional_to_json(prim.monotone_after_q)}}},
      {"fixed_point",
       {{"rho", matrix_to_json(report.fixed_point)},
        {"stationary", vector_to_json(report.stationary)},
        {"unique", report.fixed_point_unique},
        {"residual", report.fixed_point_residual}}},
      {"factorization",
       {{"ab_residual", report.factorization_residual_ab},
        {"ba_residual", report.factorization_residual_ba}}},
      {"holevo_rank_bounds",
       {{"lower", report.rank_bounds.lower},
        {"upper", report.rank_bounds.upper},
        {"q_upper_from_rank", report.rank_bounds.q_upper_from_rank}}},
      {"consistency", {{"ok", report.failures.empty()}, {"failures", report.failures}}},
  };
}

std::string report_to_text(const AnalysisReport& report) {
  std::ostringstream os;
  os << std::setprecision(6);
  const auto& s = report.stochastic_matrix;
  os << "Stochastic matrix S (" << s.rows() << "x" << s.cols() << "):\n";
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    os << "  ";
    for (Eigen::Index j = 0; j < s.cols(); ++j) os << std::setw(12) << s(i, j);
    os << "\n";
  }
  os << "  column sum residual: " << report.column_sum_residual << "\n\n";

  os << "Non-zero spectrum\n  [Phi]:";
  for (const auto& z : report.spectrum.channel_nonzero) os << " " << format_complex(z);
  os << "\n  S:    ";
  for (const auto& z : report.spectrum.matrix_nonzero) os << " " << format_complex(z);
  os << "\n  max pair distance: " << report.spectrum.max_pair_distance
     << (report.spectrum.matched ? " (matched)" : " (NOT matched)") << "\n\n";

  const auto& prim = report.primitivity;
  os << std::boolalpha << "Primitivity\n"
     << "  S primitive:        " << prim.s_primitive << "\n"
     << "  sum R_k pos. def.:  " << prim.sum_R_pd << "\n"
     << "  channel primitive:  " << prim.channel_primitive << "\n"
     << "  p(S):               " << format_optional(prim.p_index) << "\n"
     << "  q(Phi):             " << format_optional(prim.q_index);
  if (prim.q_method == primitivity::QMethod::BoundsOnly) {
    os << " (bounds only: " << *prim.q_window_low << ".." << *prim.q_window_high << ")";
  }
  os << "\n  |q - p| <= 1:       " << format_optional(prim.bound_abs_diff_ok) << "\n"
     << "  q <= r^2 - 2r + 3:  " << format_optional(prim.holevo_rank_bound_ok) << "\n\n";

  os << "Fixed point" << (report.fixed_point_unique ? "" : " (not unique)") << "\n";
  for (Eigen::Index i = 0; i < report.fixed_point.rows(); ++i) {
    os << "  ";
    for (Eigen::Index j = 0; j < report.fixed_point.cols(); ++j) {
      os << std::setw(14) << format_complex(report.fixed_point(i, j));
    }
    os << "\n";
  }
  os << "  stationary:";
  for (Eigen::Index k = 0; k < report.stationary.size(); ++k) os << " " << report.stationary(k);
  os << "\n  residual: " << report.fixed_point_residual << "\n\n";

  os << "Factorization residuals: |AB - [Phi]| = " << report.factorization_residual_ab
     << ", |BA - S| = " << report.factorization_residual_ba << "\n";
  os << "Holevo rank bounds: " << report.rank_bounds.lower << " <= rank <= "
     << report.rank_bounds.upper << "; q <= " << report.rank_bounds.q_upper_from_rank << "\n\n";

  if (report.failures.empty()) {
    os << "Consistency: ok\n";
  } else {
    os << "Consistency: FAILED\n";
    for (const auto& f : report.failures) os << "  - " << f << "\n";
  }
  return os.str();
}

int run_analyze(const AnalyzeArgs& args, std::ostream& out, std::ostream& err) {
  if (args.format != "text" && args.format != "machine") {
    err << "analyze: --format must be text or machine\n";
    return kExitInputError;
  }
  primitivity::Options options;
  if (args.psd_tol) options.tol.psd_tol = *args.psd_tol;
  if (args.zero_eig_tol) options.tol.zero_eig_tol = *args.zero_eig_tol;
  if (args.match_tol) options.tol.match_tol = *args.match_tol;

  std::optional<channel::HolevoForm> phi;
  try {
    options.tol.validate();
    phi = parse_channel_document(read_file(args.channel_file), options.tol);
  } catch (const Error& e) {
    err << "analyze: " << e.what() << "\n";
    return kExitInputError;
  }

  try {
    const AnalysisReport report = analyze(*phi, options);
    if (args.format == "machine") {
      out << report_to_json(report).dump(2) << "\n";
    } else {
      out << report_to_text(report);
    }
    return report.failures.empty() ? kExitOk : kExitConsistencyFailure;
  } catch (const Error& e) {
    err << "analyze: " << e.what() << "\n";
    return kExitConsistencyFailure;
  }
}

// ---------------------------------------------------------------------------
// iterate

Trajectory iterate(const channel::HolevoForm& phi, const channel::DensityMatrix& rho,
                   std::size_t steps, const Tolerances& tol) {
  if (rho.dim() != phi.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "state dimension does not match the channel");
  }
  Trajectory out{channel::fixed_point(phi, tol), {}};
  const ComplexMatrix& target = out.fixed_point.state.value();
  const RealMatrix s = channel::stochastic_rep(phi, tol).matrix();
  const auto r = static_cast<Eigen::Index>(phi.size());

  RealVector weights(r);
  for (Eigen::Index k = 0; k < r; ++k) {
    weights(k) = (phi.effect(static_cast<std::size_t>(k)).transpose().cwiseProduct(rho.value()))
                     .sum()
                     .real();
  }

  ComplexMatrix state = rho.value();
  out.records.push_back({0, state, max_abs(state - target), std::nullopt, 0.0});
  for (std::size_t t = 1; t <= steps; ++t) {
    state = channel::apply_linear(phi, state);
    if (t > 1) weights = s * weights;
    ComplexMatrix mixture = ComplexMatrix::Zero(phi.dim(), phi.dim());
    for (Eigen::Index k = 0; k < r; ++k) {
      mixture += weights(k) * phi.state(static_cast<std::size_t>(k));
    }
    out.records.push_back({t, state, max_abs(state - target), weights, max_abs(state - mixture)});
  }
  return out;
}

int run_iterate(const IterateArgs& args, std::ostream& out, std::ostream& err) {
  if (args.steps < 1) {
    err << "iterate: --steps must be at least 1\n";
    return kExitInputError;
  }
  std::optional<channel::HolevoForm> phi;
  std::optional<channel::DensityMatrix> rho;
  try {
    phi = parse_channel_document(read_file(args.channel_file));
    rho = parse_state_file(read_file(args.state_file));
    if (rho->dim() != phi->dim()) {
      throw Error(ErrorKind::DimensionMismatch, "state dimension does not match the channel");
    }
  } catch (const Error& e) {
    err << "iterate: " << e.what() << "\n";
    return kExitInputError;
  }

  try {
    const auto trajectory = iterate(*phi, *rho, static_cast<std::size_t>(args.steps));
    out << json{{"kind", "fixed_point"},
                {"rho", matrix_to_json(trajectory.fixed_point.state.value())},
                {"unique", trajectory.fixed_point.unique}}
               .dump()
        << "\n";
    bool agree = true;
    for (const auto& rec : trajectory.records) {
      json line = {{"kind", "step"},
                   {"step", rec.step},
                   {"state", matrix_to_json(rec.state)},
                   {"distance_to_fixed_point", rec.distance_to_fixed_point}};
      if (rec.weights) {
        line["weights"] = vector_to_json(*rec.weights);
        line["weights_residual"] = rec.weights_residual;
        agree = agree && rec.weights_residual <= kIdentityTol;
      }
      out << line.dump() << "\n";
    }
    return agree ? kExitOk : kExitConsistencyFailure;
  } catch (const Error& e) {
    err << "iterate: " << e.what() << "\n";
    return kExitConsistencyFailure;
  }
}

// ---------------------------------------------------------------------------
// verify

std::vector<CheckResult> verify_channel(const channel::HolevoForm& phi, const std::string& label,
                                        const VerifySettings& settings) {
  using namespace channel;
  const Tolerances& tol = settings.options.tol;
  sampling::Rng rng(settings.seed);
  CheckLog log(label);
  const Eigen::Index n = phi.dim();
  const std::size_t r = phi.size();

  // POVM closure of the form and of its iterates.
  {
    ComplexMatrix sum = ComplexMatrix::Zero(n, n);
    for (const auto& pair : phi.pairs()) sum += pair.effect;
    double worst = max_abs(sum - ComplexMatrix::Identity(n, n));
    bool ok = worst <= tol.stochastic_tol;
    for (std::size_t m = 1; m <= 4; ++m) {
      const auto g = iterated_form(phi, m);
      ComplexMatrix gsum = ComplexMatrix::Zero(n, n);
      for (const auto& pair : g.pairs()) gsum += pair.effect;
      const double dev = max_abs(gsum - ComplexMatrix::Identity(n, n));
      worst = std::max(worst, dev);
      ok = ok && dev <= kIdentityTol;
    }
    log.record("povm_closure", ok, "max deviation " + describe(worst));
  }

  const ComplexMatrix rep = natural_rep(phi);
  {
    double worst = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < settings.random_operators; ++i) {
      const ComplexMatrix x = sampling::gaussian_matrix(n, n, rng);
      const double res = max_abs(ComplexMatrix(vec(apply_linear(phi, x)) - rep * vec(x)));
      worst = std::max(worst, res);
      ok = ok && res <= kIdentityTol * (1.0 + max_abs(x));
    }
    log.record("linear_extension", ok, "max residual " + describe(worst));
  }

  {
    const double res = max_abs(choi(phi) - choi_from_pairs(phi));
    log.record("choi_two_formulas", res <= kIdentityTol, "residual " + describe(res));
  }

  const auto s = stochastic_rep(phi, tol);
  {
    const auto f = factorization(phi);
    const double ab = max_abs(f.a * f.b - rep);
    const double ba = max_abs(ComplexMatrix(f.b * f.a) - ComplexMatrix(s.matrix().cast<Complex>()));
    log.record("factorization", ab <= kIdentityTol && ba <= kIdentityTol,
               "AB " + describe(ab) + ", BA " + describe(ba));
  }

  log.record("stochastic_columns", s.column_sum_residual() <= tol.stochastic_tol,
             "residual " + describe(s.column_sum_residual()));

  {
    const auto g3 = iterated_form(phi, 3);
    double worst = 0.0;
    for (std::size_t i = 0; i < settings.random_states; ++i) {
      const auto rho = sampling::random_density(n, rng);
      worst = std::max(worst, max_abs(ComplexMatrix(apply(g3, rho).value() -
                                                    apply_power(phi, rho.value(), 3))));
    }
    log.record("iterated_form", worst <= kIdentityTol, "max residual " + describe(worst));
  }

  const auto verdict = stochastic::primitivity_index(s, tol);
  {
    const auto fp = fixed_point(phi, tol);
    bool ok = fp.residual <= kIdentityTol;
    std::string detail = "residual " + describe(fp.residual);
    if (verdict.primitive) {
      const std::size_t cap = 10 * static_cast<std::size_t>(*verdict.index) + 200;
      for (std::size_t i = 0; i < settings.random_states; ++i) {
        ComplexMatrix x = sampling::random_density(n, rng).value();
        for (std::size_t t = 0; t < cap; ++t) x = apply_linear(phi, x);
        const double d = max_abs(ComplexMatrix(x - fp.state.value()));
        if (d > kConvergenceTol) {
          ok = false;
          detail += "; no convergence within " + std::to_string(cap) + " steps (" + describe(d) + ")";
          break;
        }
      }
    }
    log.record("fixed_point", ok, detail);

    const auto& pi = fp.stationary;
    const double stat_res = (s.matrix() * pi - pi).cwiseAbs().maxCoeff();
    bool stat_ok = stat_res <= kIdentityTol && pi.minCoeff() >= 0.0 &&
                   std::abs(pi.sum() - 1.0) <= kIdentityTol;
    if (verdict.primitive) stat_ok = stat_ok && fp.unique && pi.minCoeff() > 0.0;
    log.record("stationary_distribution", stat_ok, "residual " + describe(stat_res));
  }

  {
    const auto cmp = compare_nonzero_spectrum(phi, tol);
    log.record("nonzero_spectrum", cmp.matched,
               std::to_string(cmp.channel_nonzero.size()) + " vs " +
                   std::to_string(cmp.matrix_nonzero.size()) + " values, distance " +
                   describe(cmp.max_pair_distance));
  }

  {
    const auto bounds = primitivity::holevo_rank_bounds(phi, tol);
    log.record("holevo_rank_bounds", bounds.lower >= 1 && bounds.lower <= bounds.upper,
               std::to_string(bounds.lower) + " <= " + std::to_string(bounds.upper));
  }

  {
    // Quantum-classical round trip on this channel's own S.
    const bool rows_nonzero = (s.matrix().rowwise().maxCoeff().array() > 0.0).all();
    if (rows_nonzero) {
      const auto back = stochastic_rep(qc_from_stochastic(s, tol), tol);
      const double res = max_abs(RealMatrix(back.matrix() - s.matrix()));
      log.record("qc_round_trip", res <= kRoundTripTol, "residual " + describe(res));
    }
  }

  if (r > settings.options.subset_cap) return log.take();

  const bool primitive = primitivity::is_primitive_channel(phi, tol);
  const bool sum_pd = primitivity::sum_R_positive_definite(phi, tol);
  if (r <= kOracleMaxPairs) {
    const std::size_t sweep = r * r - 2 * r + 3;
    bool oracle = false;
    for (std::size_t m = 1; m <= sweep && !oracle; ++m) {
      oracle = primitivity::strictly_positive_at(phi, m, settings.options).positive;
    }
    log.record("primitivity_equivalence", oracle == primitive,
               std::string("criterion ") + (primitive ? "true" : "false") + ", oracle " +
                   (oracle ? "true" : "false"));
  }

  const auto report = primitivity::channel_primitivity_index(phi, settings.options);
  std::size_t max_m = 3;
  if (primitive) {
    bool ok = report.q_index.has_value() && !report.window_violation &&
              report.bound_abs_diff_ok.value_or(false) &&
              report.holevo_rank_bound_ok.value_or(false) && report.monotone_after_q != false;
    auto full = settings.options;
    full.full_range = true;
    const auto full_report = primitivity::channel_primitivity_index(phi, full);
    ok = ok && full_report.q_index == report.q_index;
    log.record("index_window", ok,
               "p " + format_optional(report.p_index) + ", q " + format_optional(report.q_index));
    if (report.q_index) max_m = static_cast<std::size_t>(*report.q_index) + 1;

    bool all_pd = sum_pd;
    for (const auto& pair : phi.pairs()) all_pd = all_pd && is_pd(pair.effect, tol);
    if (all_pd) {
      log.record("pd_effects_index_one", report.p_index == 1U && report.q_index == 1U);
    }
  }

  {
    bool ok = true;
    std::string detail;
    for (std::size_t m = 1; m <= max_m; ++m) {
      const auto check = primitivity::strictly_positive_at(phi, m, settings.options);
      if (!check.positive) {
        const auto& w = *check.witness;
        const double value = primitivity::witness_value(phi, m, w);
        if (w.subset.empty() || value > kWitnessTol) {
          ok = false;
          detail = "m=" + std::to_string(m) + " witness value " + describe(value);
        }
      } else {
        for (std::size_t i = 0; i < settings.pure_state_samples; ++i) {
          const ComplexMatrix out = apply_power(phi, outer(sampling::random_pure_state(n, rng)), m);
          const auto eig = eig_hermitian(out, tol);
          if (!(eig.eigenvalues(n - 1) > 0.0)) {
            ok = false;
            detail = "m=" + std::to_string(m) + " singular output for a sampled state";
            break;
          }
        }
      }
    }
    log.record("witness_soundness", ok, detail);
  }

  {
    // The full index set is a witness exactly when sum_k R_k is singular.
    const auto check = primitivity::strictly_positive_at(phi, 1, settings.options);
    log.record("singular_state_sum", sum_pd || !check.positive,
               sum_pd ? "sum R_k positive definite" : "sum R_k singular");
  }
  return log.take();
}

std::vector<CheckResult> verify_primitives(const VerifySettings& settings) {
  const Tolerances& tol = settings.options.tol;
  sampling::Rng rng(settings.seed ^ 0x9e3779b97f4a7c15ULL);
  CheckLog log("primitives");

  {
    double worst = 0.0;
    double spectrum_gap = 0.0;
    for (int i = 0; i < 20; ++i) {
      const ComplexMatrix h = sampling::random_hermitian(4, rng);
      const auto eig = eig_hermitian(h, tol);
      const ComplexMatrix back =
          eig.eigenvectors * eig.eigenvalues.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();
      worst = std::max(worst, max_abs(ComplexMatrix(back - h)) / (1.0 + max_abs(h)));
      std::vector<Complex> herm(eig.eigenvalues.data(), eig.eigenvalues.data() + 4);
      spectrum_gap =
          std::max(spectrum_gap, channel::pair_multisets(eig_general(h), herm).max_distance);
    }
    log.record("hermitian_reconstruction", worst <= kIdentityTol, "residual " + describe(worst));
    log.record("general_vs_hermitian_spectrum", spectrum_gap <= tol.match_tol,
               "distance " + describe(spectrum_gap));
  }

  {
    bool ok = true;
    for (int i = 0; i < 20 && ok; ++i) {
      const ComplexMatrix h1 = sampling::random_psd(4, 2, rng);
      const ComplexMatrix h2 = sampling::random_psd(4, 1, rng);
      const ComplexMatrix k = kernel_psd(h1 + h2, tol);
      const ComplexMatrix k1 = kernel_psd(h1, tol);
      const ComplexMatrix k2 = kernel_psd(h2, tol);
      // dim(K1 ∩ K2) = dim K1 + dim K2 - dim(K1 + K2).
      ComplexMatrix joined(4, k1.cols() + k2.cols());
      joined << k1, k2;
      const auto expected = static_cast<Eigen::Index>(k1.cols() + k2.cols()) -
                            static_cast<Eigen::Index>(numerical_rank(joined, 1e-8));
      ok = k.cols() == expected && max_abs(ComplexMatrix(h1 * k)) <= 1e-7 &&
           max_abs(ComplexMatrix(h2 * k)) <= 1e-7;
    }
    log.record("kernel_of_sum", ok);
  }

  {
    bool ok = true;
    for (int i = 0; i < 50 && ok; ++i) {
      const Eigen::Index r = 2 + static_cast<Eigen::Index>(i % 5);
      const RealMatrix a = sampling::random_stochastic(r, rng, 0.6).matrix();
      const auto verdict = stochastic::primitivity_index(a, tol.stochastic_tol);
      ok = verdict.primitive == stochastic::is_primitive(a, tol.stochastic_tol);
      if (!verdict.primitive) continue;
      const std::uint64_t m = *verdict.index;
      ok = ok && m <= stochastic::wielandt_bound(static_cast<std::uint64_t>(r));
      const auto base = stochastic::BoolMatrix::pattern(a, tol.stochastic_tol);
      stochastic::BoolMatrix power = base;
      for (std::uint64_t t = 1; t + 1 < m; ++t) power = power * base;
      if (m >= 2) ok = ok && !power.all();
      RealVector x = RealVector::Zero(r);
      x(static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(r))) = 1.0;
      for (std::uint64_t t = 0; t < m; ++t) x = a * x;
      ok = ok && x.minCoeff() > 0.0;
    }
    log.record("primitivity_index_properties", ok);
  }

  {
    bool ok = true;
    for (int i = 0; i < 20 && ok; ++i) {
      const Eigen::Index r = 2 + static_cast<Eigen::Index>(i % 4);
      const auto s = sampling::random_stochastic(r, rng, 0.3);
      if (!stochastic::is_primitive(s, tol)) continue;
      const auto st = stochastic::stationary_distribution(s, tol);
      const std::uint64_t steps = 4 * stochastic::wielandt_bound(static_cast<std::uint64_t>(r)) + 100;
      RealMatrix power = RealMatrix::Identity(r, r);
      for (std::uint64_t t = 0; t < steps; ++t) power = s.matrix() * power;
      for (Eigen::Index j = 0; j < r; ++j) {
        ok = ok && (power.col(j) - st.pi).cwiseAbs().maxCoeff() <= kConvergenceTol;
      }
      ok = ok && st.unique;
    }
    log.record("stationary_power_iteration", ok);
  }
  return log.take();
}

int run_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  VerifySettings settings;
  settings.seed = args.seed;
  std::vector<CheckResult> results;

  if (!args.channel_file.empty() && args.random_count) {
    err << "verify: give either FILE or --random N, not both\n";
    return kExitInputError;
  }
  if (args.channel_file.empty() && !args.random_count) {
    err << "verify: give FILE or --random N\n";
    return kExitInputError;
  }

  if (!args.channel_file.empty()) {
    std::optional<ChannelDocument> doc;
    try {
      doc = parse_document(read_file(args.channel_file));
    } catch (const Error& e) {
      err << "verify: " << e.what() << "\n";
      return kExitInputError;
    }
    results = verify_primitives(settings);
    try {
      const auto phi = channel::HolevoForm::create(doc->n, doc->pairs, settings.options.tol);
      auto more = verify_channel(phi, args.channel_file, settings);
      results.insert(results.end(), more.begin(), more.end());
    } catch (const Error& e) {
      results.push_back({args.channel_file, "validation", false, e.what()});
    }
  } else {
    if (*args.random_count < 0) {
      err << "verify: --random needs a nonnegative count\n";
      return kExitInputError;
    }
    results = verify_primitives(settings);
    sampling::Rng rng(args.seed);
    for (std::int64_t i = 0; i < *args.random_count; ++i) {
      const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng() % 2);
      const std::size_t r = 1 + static_cast<std::size_t>(rng() % 5);
      const auto phi = sampling::random_structured_form(n, r, rng);
      VerifySettings local = settings;
      local.seed = rng();
      const std::string label = "random#" + std::to_string(i) + " (n=" + std::to_string(n) +
                                ", r=" + std::to_string(r) + ")";
      try {
        auto more = verify_channel(phi, label, local);
        results.insert(results.end(), more.begin(), more.end());
      } catch (const Error& e) {
        results.push_back({label, "exception", false, e.what()});
      }
    }
  }

  json failures = json::array();
  for (const auto& res : results) {
    out << (res.passed ? "PASS " : "FAIL ") << res.channel << " :: " << res.name;
    if (!res.detail.empty()) out << " (" << res.detail << ")";
    out << "\n";
    if (!res.passed) {
      failures.push_back({{"channel", res.channel}, {"check", res.name}, {"detail", res.detail}});
    }
  }
  out << json{{"checks", results.size()}, {"failed", failures.size()}, {"failures", failures}}.dump()
      << "\n";
  return failures.empty() ? kExitOk : kExitConsistencyFailure;
}

}  // namespace ebc::cli
