#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "binlaw/generate.hpp"
#include "binlaw/report_json.hpp"
#include "binlaw/tally.hpp"
#include "binlaw/version.hpp"

using namespace binlaw;

namespace {

AnalysisReport sample_report() {
  AnalysisReport r;
  r.scheme = {4, ConstantExpansion{8.0}, 0.0, 0.0008};
  r.tally = tally(r.scheme, sample_kx(0, 6, 20000, 42));
  r.proportions = proportions(r.tally);
  r.per_cycle = per_cycle_proportions(r.tally, 500);
  TheorySource src;
  auto law = matching_law(r.scheme, src);
  const double coverage = static_cast<double>(r.tally.in_range_count()) /
                          static_cast<double>(r.tally.total_count());
  r.conformance =
      make_report(r.scheme, r.proportions, law, src, r.tally.total_count(), coverage);
  r.seed = 42;
  r.generator = "kx(0,6)";
  return r;
}

}  // namespace

TEST_CASE("scheme json round-trips") {
  const BinSchemeSpec constant{4, ConstantExpansion{8.0}, 0.0, 0.0008};
  CHECK(scheme_from_json(to_json(constant)) == constant);

  const BinSchemeSpec vec{6, VectorExpansion{{2.37, 3.08, 1.55}}, 0.5, 0.037};
  CHECK(scheme_from_json(to_json(vec)) == vec);
}

TEST_CASE("analysis report json round-trips to the same values") {
  const auto r = sample_report();
  const auto j = to_json(r);
  const auto back = report_from_json(j);

  CHECK(back.scheme == r.scheme);
  CHECK(back.tally.per_cycle_counts == r.tally.per_cycle_counts);
  CHECK(back.tally.below_range == r.tally.below_range);
  CHECK(back.tally.above_range == r.tally.above_range);
  CHECK(back.tally.excluded_nonpositive == r.tally.excluded_nonpositive);
  CHECK(back.proportions == r.proportions);
  REQUIRE(back.per_cycle.size() == r.per_cycle.size());
  for (std::size_t i = 0; i < r.per_cycle.size(); ++i) {
    CHECK(back.per_cycle[i].cycle_index == r.per_cycle[i].cycle_index);
    CHECK(back.per_cycle[i].proportions == r.per_cycle[i].proportions);
    CHECK(back.per_cycle[i].count == r.per_cycle[i].count);
  }
  CHECK(back.conformance.theoretical == r.conformance.theoretical);
  CHECK(back.conformance.metrics.mad == r.conformance.metrics.mad);
  CHECK(back.conformance.metrics.max_abs_dev == r.conformance.metrics.max_abs_dev);
  CHECK(back.conformance.metrics.ssd == r.conformance.metrics.ssd);
  CHECK(back.conformance.verdict == r.conformance.verdict);
  CHECK(back.conformance.threshold == r.conformance.threshold);
  CHECK(back.conformance.source.kind == r.conformance.source.kind);
  CHECK(back.conformance.source.factor == r.conformance.source.factor);
  CHECK(back.seed == r.seed);
  CHECK(back.generator == r.generator);

  // serializing twice is stable
  CHECK(to_json(back).dump() == j.dump());
}

TEST_CASE("report json carries schema fields") {
  const auto j = to_json(sample_report());
  for (const char* key : {"scheme", "counts", "proportions", "per_cycle", "coverage",
                          "exclusions", "theory", "metrics", "verdict", "meta"})
    CHECK(j.contains(key));
  CHECK(j["meta"]["version"] == kVersion);
  CHECK(j["meta"]["rng"] == kRngAlgorithm);
  CHECK(j["verdict"]["metric"] == "mad");
  CHECK(j["coverage"].get<double>() > 0.99);
}
