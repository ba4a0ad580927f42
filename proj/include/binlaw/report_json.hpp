#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "binlaw/conformance.hpp"
#include "binlaw/tally.hpp"

namespace binlaw {

// Everything one analysis run produces. This is the object the CLI emits
// as JSON and the shape other tools should parse.
struct AnalysisReport {
  BinSchemeSpec scheme;
  BinTally tally;
  std::vector<double> proportions;
  std::vector<CycleProportions> per_cycle;  // empty unless requested
  ConformanceReport conformance;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> generator;
};

nlohmann::json to_json(const BinSchemeSpec& spec);
BinSchemeSpec scheme_from_json(const nlohmann::json& j);

nlohmann::json to_json(const AnalysisReport& report);
AnalysisReport report_from_json(const nlohmann::json& j);

}  // namespace binlaw
