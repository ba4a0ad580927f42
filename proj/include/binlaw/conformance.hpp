#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "binlaw/scheme.hpp"

namespace binlaw {

inline constexpr double kDefaultMadThreshold = 0.010;

struct CompareMetrics {
  double mad = 0.0;          // mean |e_d - t_d|
  double max_abs_dev = 0.0;  // max |e_d - t_d|
  double ssd = 0.0;          // sum (e_d - t_d)^2
};

// Distance between two equal-length proportion vectors.
CompareMetrics compare(std::span<const double> empirical, std::span<const double> theoretical);

enum class Verdict { conforming, non_conforming };

inline Verdict classify(double mad, double threshold) {
  return mad <= threshold ? Verdict::conforming : Verdict::non_conforming;
}

// Which theoretical vector a report was compared against.
struct TheorySource {
  enum class Kind { general_law, benford_first, benford_second, flat_limit, custom };
  Kind kind = Kind::general_law;
  int bins = 0;          // D (general_law, flat_limit) or base (benford_*)
  double factor = 0.0;   // F for general_law
  // Set when `factor` is the mean of a varying factor vector. Such a
  // comparison is a diagnostic only; no law is claimed for varying factors.
  bool f_avg_based = false;

  std::string describe() const;
};

struct ConformanceReport {
  BinSchemeSpec scheme;
  std::vector<double> empirical;
  std::vector<double> theoretical;
  TheorySource source;
  CompareMetrics metrics;
  Verdict verdict = Verdict::non_conforming;
  double threshold = kDefaultMadThreshold;
  std::uint64_t sample_size = 0;  // positive values that entered the tally
  double coverage = 0.0;          // fraction of those that fell in range
};

ConformanceReport make_report(const BinSchemeSpec& scheme, std::vector<double> empirical,
                              std::vector<double> theoretical, TheorySource source,
                              std::uint64_t sample_size, double coverage,
                              double threshold = kDefaultMadThreshold);

// Theoretical vector matching a scheme: general_law(D, F) for constant
// factors (flat_limit when F == 1), general_law(D, mean factor) with the
// f_avg caveat for vector schemes.
std::vector<double> matching_law(const BinSchemeSpec& scheme, TheorySource& source_out);

// Leading digit of x in the given base; scale-free. Values whose mantissa
// lands within rounding error of a base power snap upward, consistent with
// half-open bins.
int first_significant_digit(double x, int base = 10);

// Second digit of the significand, in [0, base-1].
int second_significant_digit(double x, int base = 10);

// Vector scheme realizing second-order digit structure in the given base:
// D = base bins and the periodic factor pattern {1 x (base-2), base},
// repeated `periods` times. Start/width follow the standardization defaults
// unless overridden.
BinSchemeSpec second_order_scheme(int base, int periods = 8, double start = 0.0,
                                  double width = 0.0005);

// Arithmetic mean of a factor vector.
double f_avg(std::span<const double> factors);

}  // namespace binlaw
