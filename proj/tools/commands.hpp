#pragma once

#include <optional>

#include "emit.hpp"
#include "run_config.hpp"

namespace cubicosc::cli {

struct RunOutput {
  nlohmann::ordered_json document;
  std::optional<Table> table;
  /// verify found a disagreement beyond tolerance.
  bool verification_failed = false;
};

/// Executes the configured command. Library exceptions propagate.
RunOutput run(const RunConfig& config);

/// Writes the artifacts of a finished run as the config asks.
void emit(const RunConfig& config, const RunOutput& out);

nlohmann::ordered_json provenance(const RunConfig& config);

/// "re,im" or "re".
Complex parse_seed(const std::string& text);

}  // namespace cubicosc::cli
