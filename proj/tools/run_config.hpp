#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace cubicosc::cli {

/// Everything a run needs. Serializes to the JSON run-file format read by
/// --config and written by --dump-config.
struct RunConfig {
  std::string command;
  std::string kappa = "1";
  std::string lambda_mod = "1";
  std::string lambda_arg = "0";  // in units of pi
  int digits = 64;
  /// Eigenvalue tolerance; empty selects 10^(-digits/2).
  std::string tol;
  /// "re,im" or "re".
  std::vector<std::string> seeds;
  int levels = 1;
  /// arg lambda / pi values for trace, first entry is the starting point.
  std::vector<std::string> grid;
  double emin = 0.01;
  double emax = 12;
  int points = 600;
  double xmin = -4;
  double xmax = 6;
  int xpoints = 201;
  /// reproduce target: "table1".."table4", "fig1".."fig4".
  std::string target;
  bool verify = false;
  /// "-" is stdout.
  std::string output = "-";
  /// "json" or "csv"; empty picks the command's natural format.
  std::string format;
  /// Optional second artifact: the JSON document when the main output is CSV.
  std::string json_output;

  [[nodiscard]] std::string effective_format() const;
};

nlohmann::ordered_json to_json(const RunConfig& c);
/// Missing keys keep their defaults; unknown keys are an error.
RunConfig config_from_json(const nlohmann::json& j);

/// Default digits: $CUBICOSC_DIGITS if set, else 64.
int default_digits();

/// arg lambda / pi grid 0.5, 0.45, ..., 0 as exact decimal strings.
std::vector<std::string> table_arg_grid();

}  // namespace cubicosc::cli
