#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "binlaw/generate.hpp"
#include "binlaw/scheme.hpp"
#include "binlaw/tally.hpp"
#include "binlaw/theory.hpp"

using namespace binlaw;

namespace {

BinSchemeSpec constant_scheme(int bins, double factor, double start, double width) {
  return {bins, ConstantExpansion{factor}, start, width};
}

// Linear-scan reference: walks cycles from 0 using the closed-form layout,
// finds the containing cycle, then finds the rank by comparing bin edges.
AssignResult brute_assign(const BinSchemeSpec& spec, double x) {
  if (x < spec.start) return {AssignResult::Kind::below_range, {}};
  for (std::int64_t c = 0;; ++c) {
    if (!spec.is_constant() && c > *spec.last_cycle())
      return {AssignResult::Kind::above_range, {}};
    const CycleLayout lay = layout(spec, c);
    if (x >= lay.cycle_end(spec.bins)) continue;
    for (int d = 1; d <= spec.bins; ++d)
      if (x < lay.cycle_start + d * lay.bin_width)
        return {AssignResult::Kind::assigned, {c, d}};
    return {AssignResult::Kind::assigned, {c, spec.bins}};
  }
}

bool same_assignment(const AssignResult& a, const AssignResult& b) {
  if (a.kind != b.kind) return false;
  if (a.kind != AssignResult::Kind::assigned) return true;
  return a.bin == b.bin;
}

bool same_counts(const BinTally& a, const BinTally& b) {
  return a.per_cycle_counts == b.per_cycle_counts && a.below_range == b.below_range &&
         a.above_range == b.above_range && a.excluded_nonpositive == b.excluded_nonpositive;
}

}  // namespace

TEST_CASE("assign: hand-enumerated (D=3, F=2, S=0, W=1)") {
  const auto spec = constant_scheme(3, 2, 0, 1);

  auto r = assign(spec, 2.5);
  REQUIRE(r.kind == AssignResult::Kind::assigned);
  CHECK(r.bin == BinAssignment{0, 3});

  r = assign(spec, 3.0);  // boundary goes to the upper bin
  REQUIRE(r.kind == AssignResult::Kind::assigned);
  CHECK(r.bin == BinAssignment{1, 1});

  r = assign(spec, 20.999);  // cycle 2 is [9,21) with bins [9,13),[13,17),[17,21)
  REQUIRE(r.kind == AssignResult::Kind::assigned);
  CHECK(r.bin == BinAssignment{2, 3});

  CHECK(assign(constant_scheme(3, 2, 1, 1), 0.5).kind == AssignResult::Kind::below_range);
  CHECK_THROWS_AS(assign(spec, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(assign(spec, -2.0), std::invalid_argument);
}

TEST_CASE("assign: agrees exactly with the linear-scan reference") {
  std::mt19937_64 rng(991);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const BinSchemeSpec specs[] = {
      constant_scheme(3, 2, 0, 1),
      constant_scheme(4, 8, 0, 0.0008),
      constant_scheme(9, 10, 0.033, 0.07),
      constant_scheme(7, 1, 0, 0.5),
      constant_scheme(5, 1.18, 2.5, 0.037),
      {6, VectorExpansion{{2.37, 3.08, 1.55, 4.17, 1.18, 2.35}}, 0.0, 0.037},
  };
  for (const auto& spec : specs) {
    for (int i = 0; i < 10000; ++i) {
      // log-uniform over ~9 decades plus a band below start to hit below_range
      const double x = std::pow(10.0, -3.0 + 9.0 * unit(rng));
      CAPTURE(x);
      CHECK(same_assignment(assign(spec, x), brute_assign(spec, x)));
    }
  }
}

TEST_CASE("assign: huge values stay in range under constant expansion") {
  const auto spec = constant_scheme(3, 2, 0, 1);
  const auto r = assign(spec, 1e300);
  REQUIRE(r.kind == AssignResult::Kind::assigned);
  CHECK(same_assignment(r, brute_assign(spec, 1e300)));
}

TEST_CASE("tally: single values and nonpositive exclusion") {
  const auto spec = constant_scheme(3, 2, 0, 1);

  auto t = tally_serial(spec, std::vector<double>{0.5});
  CHECK(t.per_cycle_counts.at(0) == std::vector<std::uint64_t>{1, 0, 0});
  CHECK(t.excluded_nonpositive == 0);

  t = tally_serial(spec, std::vector<double>{-1.0, 0.5});
  CHECK(t.excluded_nonpositive == 1);
  CHECK(t.per_cycle_counts.at(0) == std::vector<std::uint64_t>{1, 0, 0});
  CHECK(t.total_count() == 2);
}

TEST_CASE("tally: counts partition the input exactly") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> span(-5.0, 5000.0);
  std::vector<double> data(20000);
  for (auto& x : data) x = span(rng);
  data.push_back(0.0);

  SUBCASE("constant expansion has no above_range") {
    const auto t = tally_serial(constant_scheme(4, 3, 2.0, 0.01), data);
    CHECK(t.total_count() == data.size());
    CHECK(t.above_range == 0);
    CHECK(t.below_range > 0);
    CHECK(t.excluded_nonpositive > 0);
  }
  SUBCASE("vector expansion counts the overflow") {
    const BinSchemeSpec spec{4, VectorExpansion{{2, 2}}, 2.0, 0.01};
    const auto t = tally_serial(spec, data);
    CHECK(t.total_count() == data.size());
    CHECK(t.above_range > 0);
  }
}

TEST_CASE("parallel tally equals the serial reference bit-for-bit") {
  auto data = sample_kx(0.0, 6.0, 300000, 7);
  data.push_back(-3.0);
  data.push_back(0.0);
  for (const auto& spec :
       {constant_scheme(4, 8, 0, 0.0008), constant_scheme(9, 10, 0.033, 0.07),
        BinSchemeSpec{5, VectorExpansion{{2, 3, 4, 2, 5, 3, 6, 3, 5, 7}}, 0.0, 0.007}}) {
    const auto serial = tally_serial(spec, data);
    const auto parallel = tally(spec, data);
    CHECK(same_counts(serial, parallel));
    CHECK(serial.total_count() == data.size());
  }
}

TEST_CASE("merge is additive and rejects mismatched schemes") {
  const auto spec = constant_scheme(3, 2, 0, 1);
  auto a = tally_serial(spec, std::vector<double>{0.5, 1.5, 7.0});
  const auto b = tally_serial(spec, std::vector<double>{2.7, -1.0});
  const auto whole = tally_serial(spec, std::vector<double>{0.5, 1.5, 7.0, 2.7, -1.0});
  a.merge(b);
  CHECK(same_counts(a, whole));

  auto other = tally_serial(constant_scheme(4, 2, 0, 1), std::vector<double>{1.0});
  CHECK_THROWS_AS(other.merge(a), std::invalid_argument);
}

TEST_CASE("proportions") {
  const auto spec = constant_scheme(4, 2, 0, 1);
  BinTally t;
  t.scheme = spec;

  SUBCASE("uniform counts") {
    t.per_cycle_counts[0] = {1, 1, 1, 1};
    const auto p = proportions(t);
    CHECK(p == std::vector<double>{0.25, 0.25, 0.25, 0.25});
  }
  SUBCASE("ranks aggregate across cycles") {
    t.scheme = constant_scheme(3, 2, 0, 1);
    t.per_cycle_counts[0] = {3, 1, 0};
    t.per_cycle_counts[1] = {1, 2, 1};
    const auto p = proportions(t);
    CHECK(p == std::vector<double>{0.5, 0.375, 0.125});
  }
  SUBCASE("no in-range values is an error") {
    t.below_range = 5;
    CHECK_THROWS_AS(proportions(t), empty_data_error);
  }
  SUBCASE("sums to one on real data") {
    const auto big = tally(constant_scheme(7, 3, 0, 0.0008), sample_kx(0, 6, 50000, 3));
    const auto p = proportions(big);
    double s = 0;
    for (double v : p) s += v;
    CHECK(std::abs(s - 1.0) < 1e-9);
  }
}

TEST_CASE("per-cycle proportions") {
  BinTally t;
  t.scheme = constant_scheme(3, 2, 0, 1);
  t.per_cycle_counts[2] = {2, 1, 1};
  t.per_cycle_counts[5] = {1, 0, 0};

  const auto rows = per_cycle_proportions(t, 2);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].cycle_index == 2);
  CHECK(rows[0].proportions == std::vector<double>{0.5, 0.25, 0.25});
  CHECK(rows[0].count == 4);

  CHECK(per_cycle_proportions(t, 100).empty());
  CHECK(per_cycle_proportions(t, 1).size() == 2);
  CHECK_THROWS_AS(per_cycle_proportions(t, 0), std::invalid_argument);
}

TEST_CASE("scale_data") {
  CHECK(scale_data(std::vector<double>{1, 2, 3}, 2.0) == std::vector<double>{2, 4, 6});
  CHECK(scale_data(std::vector<double>{5}, 1.0) == std::vector<double>{5});
  CHECK_THROWS_AS(scale_data(std::vector<double>{1}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(scale_data(std::vector<double>{1}, -2.0), std::invalid_argument);
}

// --- statistical behavior on the reference distributions ---

TEST_CASE("reciprocal sample over (1,1e6): scheme-A proportions match the table row") {
  const auto data = sample_kx(0, 6, 1000000, 42);
  const auto p = proportions(tally(constant_scheme(4, 8, 0, 0.0008), data));
  const std::vector<double> row{0.493, 0.217, 0.163, 0.127};
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(p[i] - row[i]) < 0.015);
}

TEST_CASE("lognormal(5,1) sample: scheme-B proportions match the table row") {
  const auto data = sample_lognormal(5, 1, 1000000, 42);
  const auto p = proportions(tally(constant_scheme(7, 3, 0, 0.0008), data));
  const std::vector<double> row{0.231, 0.181, 0.149, 0.132, 0.114, 0.102, 0.091};
  for (std::size_t i = 0; i < row.size(); ++i) CHECK(std::abs(p[i] - row[i]) < 0.015);
}

TEST_CASE("statistical scale invariance on a long reciprocal sample") {
  const auto data = sample_kx(0, 8, 100000, 11);
  const auto spec = constant_scheme(9, 10, 0, 0.0005);
  const auto base = proportions(tally(spec, data));
  for (double k : {0.007, 3.0, 1234.0}) {
    const auto scaled = proportions(tally(spec, scale_data(data, k)));
    for (std::size_t i = 0; i < base.size(); ++i) CHECK(std::abs(base[i] - scaled[i]) < 0.02);
  }
}

TEST_CASE("first-bin share grows with the inflation factor") {
  const auto data = sample_lognormal(9.3, 1.7, 100000, 5);
  double prev = 0.0;
  for (int f = 1; f <= 12; ++f) {
    const auto p = proportions(tally(constant_scheme(7, f, 0, 0.0039), data));
    CHECK(p[0] >= prev - 0.01);
    prev = p[0];
  }
}

TEST_CASE("per-cycle development: steady reciprocal vs drifting lognormal") {
  const auto spec = constant_scheme(9, 10, 0, 0.0005);

  SUBCASE("long-range reciprocal holds the digit law in every full cycle") {
    const auto data = sample_kx(0, 10, 200000, 8);
    const auto rows = per_cycle_proportions(tally(spec, data), data.size() / 12);
    REQUIRE(rows.size() >= 5);
    int checked = 0;
    for (const auto& row : rows) {
      for (int d = 1; d <= 9; ++d)
        CHECK(std::abs(row.proportions[static_cast<std::size_t>(d - 1)] - benford(10, d)) < 0.02);
      ++checked;
    }
    CHECK(checked >= 5);
  }
  SUBCASE("lognormal cycles drift from flat to skewed") {
    const auto data = sample_lognormal(9.3, 1.7, 200000, 8);
    const auto rows = per_cycle_proportions(tally(spec, data), 1000);
    REQUIRE(rows.size() >= 3);
    const auto spread = [](const CycleProportions& cp) {
      double lo = 1.0, hi = 0.0;
      for (double p : cp.proportions) {
        lo = std::min(lo, p);
        hi = std::max(hi, p);
      }
      return hi - lo;
    };
    CHECK(spread(rows.front()) < spread(rows.back()));
  }
}
