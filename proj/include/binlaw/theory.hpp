#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace binlaw {

// Limiting rank proportions of the reciprocal density under an infinitely
// expanding bin scheme:
//   P(d) = ln((D + d(F-1)) / (D + (d-1)(F-1))) / ln(F)   for F != 1
//   P(d) = 1/D                                           for F == 1
// The F == 1 value is the analytic continuation of the F > 1 form, returned
// by an explicit branch. Requires D >= 1, F > 0, 1 <= d <= D.
double general_law(int bins, double factor, int rank);
std::vector<double> general_law_vector(int bins, double factor);

// First-significant-digit law: log_base(1 + 1/d), d in [1, base-1].
double benford(int base, int digit);
std::vector<double> benford_vector(int base);

// Second-significant-digit law; entry s in [0, base-1] is
// sum over first digits f of log_base(1 + 1/(f*base + s)).
std::vector<double> benford_second_order(int base);

// Rank proportions of the reciprocal density measured through a scheme of
// `cycles` expanding cycles (cycles = 1 is the single, non-expanding cycle):
//   S_N(d) = sum_{j=0}^{N-1} ln((p_j + d F^j)/(p_j + (d-1) F^j)) / ln(p_N)
// with prefix p_j = 1 + D (F^j - 1)/(F - 1). Large-j terms are evaluated
// after dividing through by F^j, which stays finite for any cycle count.
double series_SN(int bins, double factor, int rank, std::int64_t cycles);
std::vector<double> series_vector(int bins, double factor, std::int64_t cycles);

// Closed forms for one and two expansions; equal to series_SN at N = 2, 3.
double once_expanding(int bins, double factor, int rank);
double twice_expanding(int bins, double factor, int rank);

// Proportions of the reciprocal density on (a, b) over the segments defined
// by `cuts` (strictly increasing, cuts.front() == a, cuts.back() == b):
// entry i = ln(cuts[i+1]/cuts[i]) / ln(b/a).
std::vector<double> kx_segment_proportions(double a, double b, std::span<const double> cuts);

struct ConvergenceProfile {
  std::int64_t cycles_reached = 0;  // smallest N meeting tolerance, else max_cycles
  double max_abs_gap = 0.0;         // gap achieved at cycles_reached
  bool converged = false;
};

// Scans N = 1..max_cycles for max_d |S_N(d) - general_law(d)| <= tolerance.
ConvergenceProfile convergence_profile(int bins, double factor, double tolerance,
                                       std::int64_t max_cycles = 10000);

}  // namespace binlaw
