#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "binlaw/scheme.hpp"

namespace binlaw {

// Thrown when an operation needs at least one in-range value and has none.
struct empty_data_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BinAssignment {
  std::int64_t cycle_index = 0;
  int rank = 1;  // in [1, bins]
  bool operator==(const BinAssignment&) const = default;
};

struct AssignResult {
  enum class Kind { assigned, below_range, above_range };
  Kind kind = Kind::assigned;
  BinAssignment bin;  // meaningful only when kind == assigned
};

// Maps x > 0 to the unique half-open bin [lo, hi) containing it. Boundary
// values belong to the upper bin. below_range when x < start; above_range
// only past the final cycle of a vector scheme. Throws on x <= 0.
AssignResult assign(const BinSchemeSpec& spec, double x);

struct BinTally {
  BinSchemeSpec scheme;
  std::map<std::int64_t, std::vector<std::uint64_t>> per_cycle_counts;
  std::uint64_t below_range = 0;
  std::uint64_t above_range = 0;
  std::uint64_t excluded_nonpositive = 0;

  std::uint64_t in_range_count() const;
  // in-range + below + above + nonpositive; equals the input size.
  std::uint64_t total_count() const;
  // Counts aggregated by rank across all cycles (length bins).
  std::vector<std::uint64_t> rank_totals() const;
  // Adds other's counts into this tally. Schemes must match.
  void merge(const BinTally& other);
};

// Single-threaded reference tally. Counts conserve the input size.
BinTally tally_serial(const BinSchemeSpec& spec, std::span<const double> data);

// Parallel tally: the input is partitioned across threads, per-thread
// tallies are merged by addition. Counts are integers, so the result is
// bit-identical to tally_serial for any thread count.
BinTally tally(const BinSchemeSpec& spec, std::span<const double> data);

// Aggregate rank proportions; throws empty_data_error when nothing is in range.
std::vector<double> proportions(const BinTally& tally);

struct CycleProportions {
  std::int64_t cycle_index = 0;
  std::vector<double> proportions;
  std::uint64_t count = 0;
};

inline constexpr std::uint64_t kDefaultPerCycleMinCount = 100;

// Per-cycle rank proportions for cycles holding at least min_count values,
// in cycle order.
std::vector<CycleProportions> per_cycle_proportions(
    const BinTally& tally, std::uint64_t min_count = kDefaultPerCycleMinCount);

// Elementwise multiplication by K > 0.
std::vector<double> scale_data(std::span<const double> data, double k);

}  // namespace binlaw
