#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cubicosc/problem.hpp"

namespace cubicosc::cli {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Significant digits for emitted numbers: min(working digits - 4, 15).
int output_digits(int working_digits);

std::string format_number(const Real& x, int digits);
std::string format_number(double x, int digits);

/// A JSON number rounded to `digits` significant digits.
nlohmann::ordered_json json_number(const Real& x, int digits);
nlohmann::ordered_json json_number(double x, int digits);
/// {"re": ..., "im": ...}
nlohmann::ordered_json json_complex(const Complex& z, int digits);

/// '#'-prefixed provenance lines, then the header row and data rows.
void write_csv(std::ostream& out, const Table& table, const nlohmann::ordered_json& provenance);

/// Writes to a file, or to stdout for "-". Throws IoError.
void write_artifact(const std::string& path, const std::string& content);

}  // namespace cubicosc::cli
