#include "binlaw/report_json.hpp"

#include "binlaw/generate.hpp"
#include "binlaw/version.hpp"

namespace binlaw {

using nlohmann::json;

json to_json(const BinSchemeSpec& spec) {
  json expansion;
  if (spec.is_constant()) {
    expansion = {{"type", "constant"}, {"factor", spec.constant_factor()}};
  } else {
    expansion = {{"type", "vector"}, {"factors", spec.factor_vector()}};
  }
  return {{"bins", spec.bins},
          {"expansion", expansion},
          {"start", spec.start},
          {"width", spec.width}};
}

BinSchemeSpec scheme_from_json(const json& j) {
  BinSchemeSpec spec;
  spec.bins = j.at("bins").get<int>();
  spec.start = j.at("start").get<double>();
  spec.width = j.at("width").get<double>();
  const auto& e = j.at("expansion");
  if (e.at("type") == "constant") {
    spec.expansion = ConstantExpansion{e.at("factor").get<double>()};
  } else {
    spec.expansion = VectorExpansion{e.at("factors").get<std::vector<double>>()};
  }
  return spec;
}

namespace {

json source_to_json(const TheorySource& s) {
  const char* kind = nullptr;
  switch (s.kind) {
    case TheorySource::Kind::general_law: kind = "general_law"; break;
    case TheorySource::Kind::benford_first: kind = "benford_first"; break;
    case TheorySource::Kind::benford_second: kind = "benford_second"; break;
    case TheorySource::Kind::flat_limit: kind = "flat_limit"; break;
    case TheorySource::Kind::custom: kind = "custom"; break;
  }
  return {{"kind", kind},
          {"bins", s.bins},
          {"factor", s.factor},
          {"f_avg_based", s.f_avg_based}};
}

TheorySource source_from_json(const json& j) {
  TheorySource s;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "general_law") s.kind = TheorySource::Kind::general_law;
  else if (kind == "benford_first") s.kind = TheorySource::Kind::benford_first;
  else if (kind == "benford_second") s.kind = TheorySource::Kind::benford_second;
  else if (kind == "flat_limit") s.kind = TheorySource::Kind::flat_limit;
  else s.kind = TheorySource::Kind::custom;
  s.bins = j.at("bins").get<int>();
  s.factor = j.at("factor").get<double>();
  s.f_avg_based = j.at("f_avg_based").get<bool>();
  return s;
}

}  // namespace

json to_json(const AnalysisReport& report) {
  json counts = json::object();
  for (const auto& [cycle, v] : report.tally.per_cycle_counts)
    counts[std::to_string(cycle)] = v;

  json per_cycle = json::array();
  for (const auto& cp : report.per_cycle)
    per_cycle.push_back({{"cycle", cp.cycle_index},
                         {"proportions", cp.proportions},
                         {"count", cp.count}});

  const std::uint64_t in_range = report.tally.in_range_count();
  const std::uint64_t positive =
      in_range + report.tally.below_range + report.tally.above_range;

  json meta = {{"version", kVersion}, {"rng", kRngAlgorithm}};
  if (report.seed) meta["seed"] = *report.seed;
  if (report.generator) meta["generator"] = *report.generator;

  return {{"scheme", to_json(report.scheme)},
          {"counts", counts},
          {"proportions", report.proportions},
          {"per_cycle", per_cycle},
          {"coverage", positive ? static_cast<double>(in_range) / positive : 0.0},
          {"exclusions",
           {{"below_range", report.tally.below_range},
            {"above_range", report.tally.above_range},
            {"nonpositive", report.tally.excluded_nonpositive}}},
          {"theory",
           {{"source", source_to_json(report.conformance.source)},
            {"vector", report.conformance.theoretical}}},
          {"metrics",
           {{"mad", report.conformance.metrics.mad},
            {"max_abs_dev", report.conformance.metrics.max_abs_dev},
            {"ssd", report.conformance.metrics.ssd}}},
          {"verdict",
           {{"classification", report.conformance.verdict == Verdict::conforming
                                   ? "conforming"
                                   : "non_conforming"},
            {"metric", "mad"},
            {"threshold", report.conformance.threshold}}},
          {"meta", meta}};
}

AnalysisReport report_from_json(const json& j) {
  AnalysisReport r;
  r.scheme = scheme_from_json(j.at("scheme"));
  r.tally.scheme = r.scheme;
  for (const auto& [key, v] : j.at("counts").items())
    r.tally.per_cycle_counts[std::stoll(key)] = v.get<std::vector<std::uint64_t>>();
  const auto& ex = j.at("exclusions");
  r.tally.below_range = ex.at("below_range").get<std::uint64_t>();
  r.tally.above_range = ex.at("above_range").get<std::uint64_t>();
  r.tally.excluded_nonpositive = ex.at("nonpositive").get<std::uint64_t>();
  r.proportions = j.at("proportions").get<std::vector<double>>();
  for (const auto& cp : j.at("per_cycle")) {
    CycleProportions c;
    c.cycle_index = cp.at("cycle").get<std::int64_t>();
    c.proportions = cp.at("proportions").get<std::vector<double>>();
    c.count = cp.at("count").get<std::uint64_t>();
    r.per_cycle.push_back(std::move(c));
  }
  r.conformance.scheme = r.scheme;
  r.conformance.empirical = r.proportions;
  r.conformance.theoretical = j.at("theory").at("vector").get<std::vector<double>>();
  r.conformance.source = source_from_json(j.at("theory").at("source"));
  const auto& m = j.at("metrics");
  r.conformance.metrics.mad = m.at("mad").get<double>();
  r.conformance.metrics.max_abs_dev = m.at("max_abs_dev").get<double>();
  r.conformance.metrics.ssd = m.at("ssd").get<double>();
  const auto& v = j.at("verdict");
  r.conformance.threshold = v.at("threshold").get<double>();
  r.conformance.verdict = v.at("classification") == "conforming" ? Verdict::conforming
                                                                 : Verdict::non_conforming;
  r.conformance.sample_size = j.at("counts").is_object() ? r.tally.in_range_count() +
                                                               r.tally.below_range +
                                                               r.tally.above_range
                                                         : 0;
  r.conformance.coverage = j.at("coverage").get<double>();
  if (j.at("meta").contains("seed")) r.seed = j.at("meta").at("seed").get<std::uint64_t>();
  if (j.at("meta").contains("generator"))
    r.generator = j.at("meta").at("generator").get<std::string>();
  return r;
}

}  // namespace binlaw
