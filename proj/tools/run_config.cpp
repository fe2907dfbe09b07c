#include "run_config.hpp"

#include <cstdlib>
#include <set>

#include "cubicosc/errors.hpp"

namespace cubicosc::cli {

using nlohmann::json;
using nlohmann::ordered_json;

std::string RunConfig::effective_format() const {
  if (!format.empty()) return format;
  if (command == "eigen" || command == "trace" || command == "verify") return "json";
  return "csv";
}

ordered_json to_json(const RunConfig& c) {
  ordered_json j;
  j["command"] = c.command;
  j["kappa"] = c.kappa;
  j["lambda_mod"] = c.lambda_mod;
  j["lambda_arg"] = c.lambda_arg;
  j["digits"] = c.digits;
  j["tol"] = c.tol;
  j["seeds"] = c.seeds;
  j["levels"] = c.levels;
  j["grid"] = c.grid;
  j["emin"] = c.emin;
  j["emax"] = c.emax;
  j["points"] = c.points;
  j["xmin"] = c.xmin;
  j["xmax"] = c.xmax;
  j["xpoints"] = c.xpoints;
  j["target"] = c.target;
  j["verify"] = c.verify;
  j["output"] = c.output;
  j["format"] = c.format;
  j["json_output"] = c.json_output;
  return j;
}

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw DomainError("run file must hold a JSON object");
  static const std::set<std::string> known = {"command", "kappa",  "lambda_mod", "lambda_arg", "digits",
                                              "tol",     "seeds",  "levels",     "grid",       "emin",
                                              "emax",    "points", "xmin",       "xmax",       "xpoints",
                                              "target",  "verify", "output",     "format",     "json_output"};
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw DomainError("unknown key in run file: " + key);
  }
  RunConfig c;
  c.digits = default_digits();
  try {
    auto get = [&](const char* key, auto& field) {
      if (j.contains(key)) j.at(key).get_to(field);
    };
    get("command", c.command);
    get("kappa", c.kappa);
    get("lambda_mod", c.lambda_mod);
    get("lambda_arg", c.lambda_arg);
    get("digits", c.digits);
    get("tol", c.tol);
    get("seeds", c.seeds);
    get("levels", c.levels);
    get("grid", c.grid);
    get("emin", c.emin);
    get("emax", c.emax);
    get("points", c.points);
    get("xmin", c.xmin);
    get("xmax", c.xmax);
    get("xpoints", c.xpoints);
    get("target", c.target);
    get("verify", c.verify);
    get("output", c.output);
    get("format", c.format);
    get("json_output", c.json_output);
  } catch (const json::exception& e) {
    throw DomainError(std::string("bad run file: ") + e.what());
  }
  return c;
}

int default_digits() {
  const char* env = std::getenv("CUBICOSC_DIGITS");
  if (!env || !*env) return 64;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 16 || v > 10000) throw DomainError(std::string("bad CUBICOSC_DIGITS: ") + env);
  return static_cast<int>(v);
}

std::vector<std::string> table_arg_grid() {
  return {"0.5", "0.45", "0.4", "0.35", "0.3", "0.25", "0.2", "0.15", "0.1", "0.05", "0"};
}

}  // namespace cubicosc::cli
