#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "binlaw/scheme.hpp"

using namespace binlaw;

namespace {

BinSchemeSpec constant_scheme(int bins, double factor, double start, double width) {
  return {bins, ConstantExpansion{factor}, start, width};
}

}  // namespace

TEST_CASE("validate_scheme accepts the reference schemes") {
  CHECK(validate_scheme(constant_scheme(4, 8, 0, 0.0008)).ok());
  CHECK(validate_scheme(constant_scheme(7, 3, 0, 0.0008)).ok());
  CHECK(validate_scheme({9, VectorExpansion{{1, 1, 10}}, 0.5, 0.07}).ok());
  CHECK(validate_scheme({3, VectorExpansion{{}}, 20.0, 20.0}).ok());  // single cycle
}

TEST_CASE("validate_scheme reports each violated invariant") {
  CHECK(!validate_scheme(constant_scheme(0, 2, 0, 1)).ok());
  CHECK(validate_scheme(constant_scheme(0, 2, 0, 1)).violations ==
        std::vector<std::string>{"bins >= 1"});
  CHECK(validate_scheme(constant_scheme(3, 2, 0, 0)).violations ==
        std::vector<std::string>{"width > 0"});
  CHECK(validate_scheme(constant_scheme(3, 2, -1, 1)).violations ==
        std::vector<std::string>{"start >= 0"});
  CHECK(!validate_scheme(constant_scheme(3, 0, 0, 1)).ok());
  CHECK(!validate_scheme({3, VectorExpansion{{2, -1, 3}}, 0, 1}).ok());

  const auto multi = validate_scheme(constant_scheme(0, 2, 0, -1));
  CHECK(multi.violations.size() == 2);
  CHECK_THROWS_AS(require_valid(constant_scheme(0, 2, 0, 1)), std::invalid_argument);
}

TEST_CASE("layout closed forms") {
  // hand-enumerated: cycle 0 of (D=3,F=2,S=0,W=1) is [0,1),[1,2),[2,3)
  auto l1 = layout(constant_scheme(3, 2, 0, 1), 1);
  CHECK(l1.cycle_start == 3.0);
  CHECK(l1.bin_width == 2.0);

  auto l0 = layout(constant_scheme(3, 2, 0, 1), 0);
  CHECK(l0.cycle_start == 0.0);
  CHECK(l0.bin_width == 1.0);

  auto flat = layout(constant_scheme(3, 1, 0, 1), 5);
  CHECK(flat.cycle_start == 15.0);
  CHECK(flat.bin_width == 1.0);
}

TEST_CASE("layout of vector schemes walks the factor list") {
  BinSchemeSpec spec{2, VectorExpansion{{2, 5}}, 1.0, 0.5};
  CHECK(layout(spec, 0).cycle_start == 1.0);
  CHECK(layout(spec, 0).bin_width == 0.5);
  CHECK(layout(spec, 1).cycle_start == 2.0);
  CHECK(layout(spec, 1).bin_width == 1.0);
  CHECK(layout(spec, 2).cycle_start == 4.0);
  CHECK(layout(spec, 2).bin_width == 5.0);
  CHECK_THROWS_AS(layout(spec, 3), std::out_of_range);
  CHECK_THROWS_AS(layout(spec, -1), std::out_of_range);
}

TEST_CASE("contiguity: each cycle ends exactly where the next begins") {
  SUBCASE("integer-exact inputs match exactly") {
    const auto spec = constant_scheme(3, 2, 0, 1);
    for (std::int64_t c = 0; c < 40; ++c) {
      const auto cur = layout(spec, c);
      const auto nxt = layout(spec, c + 1);
      CHECK(cur.cycle_start + spec.bins * cur.bin_width == nxt.cycle_start);
    }
  }
  SUBCASE("fractional inputs match to 1e-12 of scale") {
    for (const auto& spec : {constant_scheme(4, 8, 0, 0.0008), constant_scheme(7, 3, 0.033, 0.07),
                             constant_scheme(9, 1.5, 5, 311)}) {
      for (std::int64_t c = 0; c < 60; ++c) {
        const auto cur = layout(spec, c);
        const auto nxt = layout(spec, c + 1);
        const double end = cur.cycle_start + spec.bins * cur.bin_width;
        CHECK(std::abs(end - nxt.cycle_start) <= 1e-12 * nxt.cycle_start);
      }
    }
  }
  SUBCASE("vector schemes are contiguous too") {
    BinSchemeSpec spec{5, VectorExpansion{{2, 3, 4, 2, 5, 3, 6, 3, 5, 7}}, 0.0, 0.007};
    for (std::int64_t c = 0; c <= 9; ++c) {
      const auto cur = layout(spec, c);
      const auto nxt = layout(spec, c + 1);
      const double end = cur.cycle_start + spec.bins * cur.bin_width;
      CHECK(std::abs(end - nxt.cycle_start) <= 1e-12 * std::max(1.0, nxt.cycle_start));
    }
  }
}

TEST_CASE("bin width is nondecreasing when all factors >= 1, constant when F = 1") {
  const auto grow = constant_scheme(6, 1.2, 0, 0.25);
  const auto flat = constant_scheme(6, 1.0, 0, 0.25);
  for (std::int64_t c = 0; c < 50; ++c) {
    CHECK(layout(grow, c + 1).bin_width >= layout(grow, c).bin_width);
    CHECK(layout(flat, c).bin_width == 0.25);
  }
}

TEST_CASE("cycle_start is strictly increasing") {
  for (const auto& spec : {constant_scheme(4, 8, 0, 0.0008), constant_scheme(3, 0.5, 1, 2)}) {
    double prev = -1;
    for (std::int64_t c = 0; c < 30; ++c) {
      const double s = layout(spec, c).cycle_start;
      CHECK(s > prev);
      prev = s;
    }
  }
}
