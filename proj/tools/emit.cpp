#include "emit.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>

namespace cubicosc::cli {

int output_digits(int working_digits) { return std::max(1, std::min(working_digits - 4, 15)); }

std::string format_number(const Real& x, int digits) { return x.str(digits); }

std::string format_number(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

nlohmann::ordered_json json_number(const Real& x, int digits) { return std::stod(x.str(digits)); }

nlohmann::ordered_json json_number(double x, int digits) { return std::stod(format_number(x, digits)); }

nlohmann::ordered_json json_complex(const Complex& z, int digits) {
  nlohmann::ordered_json j;
  j["re"] = json_number(z.re, digits);
  j["im"] = json_number(z.im, digits);
  return j;
}

void write_csv(std::ostream& out, const Table& table, const nlohmann::ordered_json& provenance) {
  out << "# " << provenance.value("program", "") << " " << provenance.value("version", "") << "\n";
  out << "# config: " << provenance["config"].dump() << "\n";
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) out << (k ? "," : "") << cells[k];
    out << "\n";
  };
  line(table.header);
  for (const auto& r : table.rows) line(r);
}

void write_artifact(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream f(path);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << content;
  if (!f) throw IoError("write to " + path + " failed");
}

}  // namespace cubicosc::cli
