#include "commands.hpp"

#include <mpfr.h>

#include <chrono>
#include <sstream>

#include "cubicosc/oracle.hpp"
#include "cubicosc/scatter.hpp"
#include "cubicosc/wavefn.hpp"

#ifndef CUBICOSC_VERSION
#define CUBICOSC_VERSION "unknown"
#endif

namespace cubicosc::cli {

using nlohmann::ordered_json;

namespace {

constexpr double kOracleTolerance = 1e-5;

mp::Precision precision_of(const RunConfig& c) {
  mp::Precision p{c.digits, 4};
  p.validate();
  return p;
}

ProblemSpec spec_of(const RunConfig& c) {
  return ProblemSpec::from_polar(c.kappa, c.lambda_mod, c.lambda_arg, precision_of(c));
}

ProblemSpec spec_of(const RunConfig& c, const std::string& kappa, const std::string& mod, const std::string& arg) {
  return ProblemSpec::from_polar(kappa, mod, arg, precision_of(c));
}

Real tolerance_of(const RunConfig& c) {
  if (c.tol.empty()) return Real(0);
  try {
    return Real(c.tol);
  } catch (const std::exception&) {
    throw DomainError("bad tolerance: " + c.tol);
  }
}

double to_double(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DomainError(std::string("bad ") + what + ": " + s);
  }
}

// Levels 1..n at the configured arg lambda, followed from arg lambda = pi/2.
std::vector<spectrum::EigenResult> levels_at(const RunConfig& c, const std::string& kappa, const std::string& mod,
                                             const std::string& arg, int levels) {
  const double target = to_double(arg, "arg lambda / pi");
  std::vector<std::string> grid;
  for (const auto& g : table_arg_grid()) {
    if (std::stod(g) >= target) grid.push_back(g);
  }
  if (grid.empty() || std::stod(grid.back()) != target) grid.push_back(arg);
  spectrum::TraceOptions opts;
  opts.precision = precision_of(c);
  opts.tol = tolerance_of(c);
  const auto table = spectrum::trace_levels(kappa, mod, levels, grid, opts);
  std::vector<spectrum::EigenResult> out;
  for (const auto& row : table.rows) {
    if (row.arg_over_pi == grid.back()) out.push_back(row.result);
  }
  return out;
}

ordered_json eigen_json(const spectrum::EigenResult& r, int digits) {
  ordered_json j;
  j["E"] = json_complex(r.E, digits);
  j["residual"] = json_number(r.residual, 3);
  j["relative_residual"] = json_number(r.relative_residual, 3);
  j["error_estimate"] = json_number(r.error_estimate, 3);
  j["iterations"] = r.iterations;
  j["seed"] = json_complex(r.seed_used, digits);
  return j;
}

ordered_json oracle_check(const std::string& kappa, const std::string& mod, const std::string& arg, const Complex& E,
                          int digits, bool& agrees) {
  const auto osc = oracle::Oscillator::from_polar(to_double(kappa, "kappa"), to_double(mod, "|lambda|"),
                                                  to_double(arg, "arg lambda / pi"));
  const auto shot = oracle::shoot_eigenvalue(osc, E.to_std());
  const double diff = std::abs(shot.E - E.to_std()) / std::abs(E.to_std());
  agrees = diff <= kOracleTolerance;
  ordered_json j;
  j["E_oracle"] = {{"re", json_number(shot.E.real(), std::min(digits, 12))},
                   {"im", json_number(shot.E.imag(), std::min(digits, 12))}};
  j["relative_difference"] = json_number(diff, 3);
  j["tolerance"] = kOracleTolerance;
  j["agrees"] = agrees;
  j["unstable_shot"] = shot.unstable;
  return j;
}

std::vector<spectrum::EigenResult> solve_requested(const RunConfig& c) {
  const auto spec = spec_of(c);
  mp::PrecisionScope scope(c.digits);
  std::vector<spectrum::EigenResult> out;
  if (c.seeds.empty()) return levels_at(c, c.kappa, c.lambda_mod, c.lambda_arg, c.levels);
  for (const auto& s : c.seeds) out.push_back(spectrum::find_eigenvalue(spec, parse_seed(s), tolerance_of(c)));
  return out;
}

RunOutput run_eigen(const RunConfig& c, bool always_verify) {
  const int digits = output_digits(c.digits);
  mp::PrecisionScope scope(c.digits);
  RunOutput out;
  ordered_json list = ordered_json::array();
  Table t{{"level", "re_E", "im_E", "relative_residual"}, {}};
  int k = 0;
  for (const auto& r : solve_requested(c)) {
    ++k;
    auto j = eigen_json(r, digits);
    if (c.seeds.empty()) j["level"] = k;
    if (c.verify || always_verify) {
      bool agrees = false;
      j["oracle"] = oracle_check(c.kappa, c.lambda_mod, c.lambda_arg, r.E, digits, agrees);
      out.verification_failed = out.verification_failed || !agrees;
    }
    list.push_back(j);
    t.rows.push_back({std::to_string(k), format_number(r.E.re, digits), format_number(r.E.im, digits),
                      format_number(r.relative_residual, 3)});
  }
  out.document["eigenvalues"] = list;
  out.table = t;
  return out;
}

RunOutput run_trace(const RunConfig& c) {
  const int digits = output_digits(c.digits);
  mp::PrecisionScope scope(c.digits);
  spectrum::TraceOptions opts;
  opts.precision = precision_of(c);
  opts.tol = tolerance_of(c);
  for (const auto& s : c.seeds) opts.seeds.push_back(parse_seed(s));
  const auto grid = c.grid.empty() ? table_arg_grid() : c.grid;
  const auto table = spectrum::trace_levels(c.kappa, c.lambda_mod, c.levels, grid, opts);
  RunOutput out;
  ordered_json rows = ordered_json::array();
  Table t{{"lambda_mod", "arg_over_pi", "level", "re_E", "im_E"}, {}};
  for (const auto& row : table.rows) {
    auto j = eigen_json(row.result, digits);
    j["arg_over_pi"] = row.arg_over_pi;
    j["level"] = row.level;
    if (c.verify) {
      bool agrees = false;
      j["oracle"] = oracle_check(c.kappa, c.lambda_mod, row.arg_over_pi, row.result.E, digits, agrees);
      out.verification_failed = out.verification_failed || !agrees;
    }
    rows.push_back(j);
    t.rows.push_back({c.lambda_mod, row.arg_over_pi, std::to_string(row.level),
                      format_number(row.result.E.re, digits), format_number(row.result.E.im, digits)});
  }
  out.document["rows"] = rows;
  out.table = t;
  return out;
}

Complex ground_energy(const RunConfig& c, const std::string& kappa, const std::string& mod, const std::string& arg) {
  return levels_at(c, kappa, mod, arg, 1).front().E;
}

ordered_json state_json(const wavefn::Eigenstate& st, int digits) {
  ordered_json j;
  j["E"] = json_complex(st.E, digits);
  j["A1"] = json_complex(st.A1, digits);
  j["A2"] = json_complex(st.A2, digits);
  j["N"] = json_number(st.N, digits);
  j["x_switch_pos"] = json_number(st.x_switch_pos(), 6);
  j["x_switch_neg"] = json_number(st.x_switch_neg(), 6);
  j["handover_mismatch_pos"] = json_number(st.right.handover_mismatch, 3);
  j["handover_mismatch_neg"] = json_number(st.left.handover_mismatch, 3);
  j["right_phase_residual"] = json_number(st.mixing.right_residual, 3);
  j["left_phase_residual"] = json_number(st.mixing.left_residual, 3);
  j["norm_integral"] = json_number(wavefn::norm_integral(st), 12);
  return j;
}

std::vector<double> x_grid(const RunConfig& c) {
  if (c.xpoints < 2 || !(c.xmax > c.xmin)) throw DomainError("x grid needs xpoints >= 2 and xmax > xmin");
  std::vector<double> g;
  for (int k = 0; k < c.xpoints; ++k) g.push_back(c.xmin + (c.xmax - c.xmin) * k / (c.xpoints - 1));
  return g;
}

RunOutput run_wavefn(const RunConfig& c) {
  const int digits = output_digits(c.digits);
  const auto spec = spec_of(c);
  mp::PrecisionScope scope(c.digits);
  const Complex E = c.seeds.empty() ? ground_energy(c, c.kappa, c.lambda_mod, c.lambda_arg) : parse_seed(c.seeds.front());
  const auto st = wavefn::Eigenstate::build(spec, E);
  RunOutput out;
  out.document["state"] = state_json(st, digits);
  Table t{{"x", "re_psi", "im_psi", "abs2_psi"}, {}};
  for (double x : x_grid(c)) {
    const auto p = st.psi(x);
    t.rows.push_back({format_number(x, digits), format_number(p.real(), digits), format_number(p.imag(), digits),
                      format_number(std::norm(p), digits)});
  }
  out.table = t;
  return out;
}

void scatter_into(const RunConfig& c, const ProblemSpec& spec, RunOutput& out) {
  const int digits = output_digits(c.digits);
  auto curve = scatter::phase_shift_curve(spec, scatter::linear_grid(c.emin, c.emax, c.points));
  scatter::time_delay_curve(curve);
  mp::PrecisionScope scope(c.digits);
  Real worst(0);
  int poles = 0;
  Table t{{"E", "re_S", "im_S", "delta", "time_delay"}, {}};
  double peak = 0;
  for (std::size_t k = 0; k < curve.E.size(); ++k) {
    worst = mp::max(worst, mp::abs(mp::abs(curve.S[k]) - 1));
    poles += curve.near_pole[k] ? 1 : 0;
    peak = std::max(peak, curve.time_delay[k]);
    t.rows.push_back({format_number(curve.E[k], digits), format_number(curve.S[k].re, digits),
                      format_number(curve.S[k].im, digits), format_number(curve.delta[k], digits),
                      format_number(curve.time_delay[k], digits)});
  }
  ordered_json res = ordered_json::array();
  for (const auto& r : scatter::resonances_from_curve(curve, 0.1 * peak)) {
    ordered_json j;
    j["E_peak"] = json_number(r.E_peak, digits);
    j["width"] = json_number(r.width, 6);
    j["time_delay"] = json_number(r.time_delay, digits);
    j["gamow"] = eigen_json(r.gamow, digits);
    res.push_back(j);
  }
  out.document["units"] = "hbar = 1, 2m = 1";
  out.document["max_unitarity_deviation"] = json_number(worst, 3);
  out.document["near_pole_points"] = poles;
  out.document["unwrap_refinements"] = curve.refinements;
  out.document["stencil_step"] = json_number(curve.stencil_step, digits);
  out.document["resonance_threshold"] = json_number(0.1 * peak, digits);
  out.document["resonances"] = res;
  out.table = t;
}

RunOutput run_scatter(const RunConfig& c) {
  RunOutput out;
  scatter_into(c, spec_of(c), out);
  return out;
}

RunOutput reproduce_spectrum(const RunConfig& c, const std::string& kappa) {
  const int digits = output_digits(c.digits);
  mp::PrecisionScope scope(c.digits);
  spectrum::TraceOptions opts;
  opts.precision = precision_of(c);
  opts.tol = tolerance_of(c);
  RunOutput out;
  Table t{{"lambda_mod", "arg_over_pi", "level", "re_E", "im_E"}, {}};
  ordered_json rows = ordered_json::array();
  auto grid = table_arg_grid();
  for (const char* mod : {"0.1", "1", "10"}) {
    const auto table = spectrum::trace_levels(kappa, mod, 3, grid, opts);
    // Rows come out from pi/2 downward; the published layout runs upward.
    for (auto it = grid.rbegin(); it != grid.rend(); ++it) {
      for (const auto& row : table.rows) {
        if (row.arg_over_pi != *it) continue;
        auto j = eigen_json(row.result, digits);
        j["lambda_mod"] = mod;
        j["arg_over_pi"] = row.arg_over_pi;
        j["level"] = row.level;
        if (c.verify) {
          bool agrees = false;
          j["oracle"] = oracle_check(kappa, mod, row.arg_over_pi, row.result.E, digits, agrees);
          out.verification_failed = out.verification_failed || !agrees;
        }
        rows.push_back(j);
        t.rows.push_back({mod, row.arg_over_pi, std::to_string(row.level), format_number(row.result.E.re, digits),
                          format_number(row.result.E.im, digits)});
      }
    }
  }
  out.document["kappa"] = kappa;
  out.document["rows"] = rows;
  out.table = t;
  return out;
}

const std::vector<std::string>& state_args() {
  static const std::vector<std::string> args = {"0", "0.25", "0.5"};
  return args;
}

RunOutput reproduce_states(const RunConfig& c, const std::string& kappa) {
  const int digits = output_digits(c.digits);
  mp::PrecisionScope scope(c.digits);
  RunOutput out;
  Table t{{"arg_over_pi", "re_E", "im_E", "re_A1", "im_A1", "re_A2", "im_A2", "N"}, {}};
  ordered_json blocks = ordered_json::array();
  for (const auto& arg : state_args()) {
    const auto spec = spec_of(c, kappa, "1", arg);
    const auto st = wavefn::Eigenstate::build(spec, ground_energy(c, kappa, "1", arg));
    auto j = state_json(st, digits);
    j["arg_over_pi"] = arg;
    blocks.push_back(j);
    t.rows.push_back({arg, format_number(st.E.re, digits), format_number(st.E.im, digits),
                      format_number(st.A1.re, digits), format_number(st.A1.im, digits),
                      format_number(st.A2.re, digits), format_number(st.A2.im, digits),
                      format_number(st.N, digits)});
  }
  out.document["kappa"] = kappa;
  out.document["lambda_mod"] = "1";
  out.document["states"] = blocks;
  out.table = t;
  return out;
}

RunOutput reproduce_densities(const RunConfig& c, const std::string& kappa) {
  const int digits = output_digits(c.digits);
  mp::PrecisionScope scope(c.digits);
  RunOutput out;
  Table t{{"x"}, {}};
  std::vector<wavefn::Eigenstate> states;
  ordered_json blocks = ordered_json::array();
  for (const auto& arg : state_args()) {
    const auto spec = spec_of(c, kappa, "1", arg);
    states.push_back(wavefn::Eigenstate::build(spec, ground_energy(c, kappa, "1", arg)));
    t.header.push_back("abs2_psi_arg" + arg);
    auto j = state_json(states.back(), digits);
    j["arg_over_pi"] = arg;
    blocks.push_back(j);
  }
  for (double x : x_grid(c)) {
    std::vector<std::string> row{format_number(x, digits)};
    for (const auto& st : states) row.push_back(format_number(std::norm(st.psi(x)), digits));
    t.rows.push_back(row);
  }
  out.document["kappa"] = kappa;
  out.document["states"] = blocks;
  out.table = t;
  return out;
}

RunOutput run_reproduce(const RunConfig& c) {
  const auto& t = c.target;
  if (t == "table1") return reproduce_spectrum(c, "1");
  if (t == "table2") return reproduce_spectrum(c, "0");
  if (t == "table3") return reproduce_states(c, "1");
  if (t == "table4") return reproduce_states(c, "0");
  if (t == "fig1") return reproduce_densities(c, "1");
  if (t == "fig2") return reproduce_densities(c, "0");
  if (t == "fig3" || t == "fig4") {
    RunOutput out;
    scatter_into(c, spec_of(c, "0", "2", "0"), out);
    return out;
  }
  throw DomainError("unknown reproduce target '" + t + "' (table1..table4, fig1..fig4)");
}

}  // namespace

Complex parse_seed(const std::string& text) {
  const auto comma = text.find(',');
  const std::string re = text.substr(0, comma);
  const std::string im = comma == std::string::npos ? "0" : text.substr(comma + 1);
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t");
    const auto b = s.find_last_not_of(" \t");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  try {
    return {Real(trim(re)), Real(trim(im))};
  } catch (const std::exception&) {
    throw DomainError("bad seed '" + text + "': expected \"re,im\"");
  }
}

ordered_json provenance(const RunConfig& config) {
  ordered_json p;
  p["program"] = "cubicosc";
  p["version"] = CUBICOSC_VERSION;
  p["mpfr"] = mpfr_get_version();
  p["config"] = to_json(config);
  return p;
}

RunOutput run(const RunConfig& c) {
  const auto start = std::chrono::steady_clock::now();
  RunOutput out;
  if (c.command == "eigen") {
    out = run_eigen(c, false);
  } else if (c.command == "verify") {
    out = run_eigen(c, true);
  } else if (c.command == "trace") {
    out = run_trace(c);
  } else if (c.command == "wavefn") {
    out = run_wavefn(c);
  } else if (c.command == "scatter") {
    out = run_scatter(c);
  } else if (c.command == "reproduce") {
    out = run_reproduce(c);
  } else {
    throw DomainError("unknown command '" + c.command + "'");
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ordered_json doc = provenance(c);
  for (auto& [k, v] : out.document.items()) doc[k] = v;
  doc["timing_seconds"] = json_number(seconds, 4);
  out.document = std::move(doc);
  return out;
}

void emit(const RunConfig& c, const RunOutput& out) {
  const std::string fmt = c.effective_format();
  if (fmt == "csv") {
    if (!out.table) throw DomainError("command '" + c.command + "' has no CSV form");
    std::ostringstream s;
    write_csv(s, *out.table, out.document);
    write_artifact(c.output, s.str());
  } else if (fmt == "json") {
    write_artifact(c.output, out.document.dump(2) + "\n");
  } else {
    throw DomainError("unknown format '" + fmt + "' (json or csv)");
  }
  if (!c.json_output.empty()) write_artifact(c.json_output, out.document.dump(2) + "\n");
}

}  // namespace cubicosc::cli
