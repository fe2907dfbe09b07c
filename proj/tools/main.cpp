// cubicosc: eigenvalues, eigenfunctions and scattering of
// H = -d^2/dx^2 + kappa x^2/4 - lambda x^3.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "commands.hpp"
#include "cubicosc/oracle.hpp"

using namespace cubicosc;
using namespace cubicosc::cli;

namespace {

enum Exit { kOk = 0, kInvalid = 2, kNoConvergence = 3, kIo = 4 };

struct Flags {
  RunConfig cfg;
  std::string config_file;
  std::string dump_config;
  std::vector<std::pair<std::string, CLI::Option*>> given;
};

template <class T>
CLI::Option* opt(CLI::App* sub, Flags& f, const std::string& name, T& field, const std::string& help) {
  auto* o = sub->add_option(name, field, help);
  f.given.emplace_back(sub->get_name(), o);
  return o;
}

void add_common(CLI::App* sub, Flags& f) {
  auto& c = f.cfg;
  opt(sub, f, "--kappa", c.kappa, "harmonic coefficient kappa");
  opt(sub, f, "--lambda-mod", c.lambda_mod, "|lambda|");
  opt(sub, f, "--lambda-arg", c.lambda_arg, "arg lambda in units of pi, in [0, 1/2]");
  opt(sub, f, "--digits", c.digits, "working precision in decimal digits (default $CUBICOSC_DIGITS or 64)");
  opt(sub, f, "--tol", c.tol, "eigenvalue tolerance (default 10^(-digits/2))");
  opt(sub, f, "--output,-o", c.output, "output path, - for stdout");
  opt(sub, f, "--format", c.format, "json or csv");
  opt(sub, f, "--json", c.json_output, "also write the JSON result document here");
  f.given.emplace_back(sub->get_name(), sub->add_flag("--verify", c.verify, "cross-check eigenvalues by shooting"));
  sub->add_option("--config", f.config_file, "JSON run file; flags override its values");
  sub->add_option("--dump-config", f.dump_config, "write the merged run file here (- for stdout) and exit");
}

// Copies every flag given on the command line over the run-file values.
RunConfig merge(const Flags& f, const std::string& command, RunConfig base) {
  base.command = command;
  const RunConfig& cli = f.cfg;
  for (const auto& [sub, o] : f.given) {
    if (sub != command || o->count() == 0) continue;
    const std::string n = o->get_name();
    if (n == "--kappa") base.kappa = cli.kappa;
    else if (n == "--lambda-mod") base.lambda_mod = cli.lambda_mod;
    else if (n == "--lambda-arg") base.lambda_arg = cli.lambda_arg;
    else if (n == "--digits") base.digits = cli.digits;
    else if (n == "--tol") base.tol = cli.tol;
    else if (n == "--output") base.output = cli.output;
    else if (n == "--format") base.format = cli.format;
    else if (n == "--json") base.json_output = cli.json_output;
    else if (n == "--verify") base.verify = cli.verify;
    else if (n == "--seed") base.seeds = cli.seeds;
    else if (n == "--levels") base.levels = cli.levels;
    else if (n == "--grid") base.grid = cli.grid;
    else if (n == "--emin") base.emin = cli.emin;
    else if (n == "--emax") base.emax = cli.emax;
    else if (n == "--points") base.points = cli.points;
    else if (n == "--xmin") base.xmin = cli.xmin;
    else if (n == "--xmax") base.xmax = cli.xmax;
    else if (n == "--xpoints") base.xpoints = cli.xpoints;
    else if (n == "--target") base.target = cli.target;
  }
  return base;
}

RunConfig load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read run file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("run file " + path + " is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

int fail(Exit code, const std::string& what) {
  std::cerr << "cubicosc: " << what << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cubic anharmonic oscillator: eigenvalues, eigenfunctions, scattering"};
  app.require_subcommand(1);
  Flags f;
  try {
    f.cfg.digits = default_digits();
  } catch (const Error& e) {
    return fail(kInvalid, e.what());
  }

  auto* eigen = app.add_subcommand("eigen", "solve for eigenvalues (Gamow energies for real lambda)");
  auto* verify = app.add_subcommand("verify", "eigenvalues cross-checked against the shooting oracle");
  auto* trace = app.add_subcommand("trace", "follow levels along an arg lambda grid");
  auto* wave = app.add_subcommand("wavefn", "normalized eigenfunction and its samples");
  auto* scat = app.add_subcommand("scatter", "S(E), phase shift and time delay for real lambda");
  auto* repro = app.add_subcommand("reproduce", "built-in presets for the published tables and figures");
  for (auto* sub : {eigen, verify, trace, wave, scat, repro}) add_common(sub, f);
  for (auto* sub : {eigen, verify, trace, wave}) {
    opt(sub, f, "--seed", f.cfg.seeds, "starting energy \"re,im\" (repeatable)");
  }
  for (auto* sub : {eigen, verify, trace}) opt(sub, f, "--levels", f.cfg.levels, "number of levels");
  opt(trace, f, "--grid", f.cfg.grid, "arg lambda / pi values, starting point first")->delimiter(',');
  for (auto* sub : {scat, repro}) {
    opt(sub, f, "--emin", f.cfg.emin, "lowest energy");
    opt(sub, f, "--emax", f.cfg.emax, "highest energy");
    opt(sub, f, "--points", f.cfg.points, "energy grid points");
  }
  for (auto* sub : {wave, repro}) {
    opt(sub, f, "--xmin", f.cfg.xmin, "left end of the x grid");
    opt(sub, f, "--xmax", f.cfg.xmax, "right end of the x grid");
    opt(sub, f, "--xpoints", f.cfg.xpoints, "x grid points");
  }
  std::string table;
  std::string figure;
  auto* table_opt = repro->add_option("--table", table, "1, 2, 3 or 4");
  auto* figure_opt = repro->add_option("--figure", figure, "1, 2, 3 or 4");
  table_opt->excludes(figure_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalid;
  }

  const auto* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  try {
    RunConfig base = f.config_file.empty() ? RunConfig{} : load_file(f.config_file);
    if (f.config_file.empty()) base.digits = default_digits();
    RunConfig cfg = merge(f, command, base);
    if (command == "reproduce") {
      if (!table.empty()) cfg.target = "table" + table;
      if (!figure.empty()) cfg.target = "fig" + figure;
      if (cfg.target.empty()) return fail(kInvalid, "reproduce needs --table or --figure");
    }
    const std::string fmt = cfg.effective_format();
    if (fmt != "json" && fmt != "csv") return fail(kInvalid, "unknown format '" + fmt + "' (json or csv)");
    if (!f.dump_config.empty()) {
      write_artifact(f.dump_config, to_json(cfg).dump(2) + "\n");
      return kOk;
    }
    const auto out = run(cfg);
    emit(cfg, out);
    if (out.verification_failed) return fail(kNoConvergence, "oracle disagrees with the series solution");
    return kOk;
  } catch (const IoError& e) {
    return fail(kIo, e.what());
  } catch (const ConvergenceError& e) {
    return fail(kNoConvergence, e.what());
  } catch (const ConsistencyError& e) {
    return fail(kNoConvergence, e.what());
  } catch (const oracle::OracleError& e) {
    return fail(kNoConvergence, std::string("oracle: ") + e.what());
  } catch (const Error& e) {
    return fail(kInvalid, e.what());
  } catch (const std::exception& e) {
    return fail(kInvalid, e.what());
  }
}
