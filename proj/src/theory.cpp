#include "binlaw/theory.hpp"

#include <cmath>
#include <stdexcept>

namespace binlaw {

namespace {

void check_law_params(int bins, double factor, int rank) {
  if (bins < 1) throw std::invalid_argument("bins >= 1 required");
  if (!(factor > 0.0) || !std::isfinite(factor))
    throw std::invalid_argument("factor > 0 required");
  if (rank < 1 || rank > bins) throw std::invalid_argument("rank must be in [1, bins]");
}

// ln(F^N) evaluated as N * log1p(F-1); precise near F = 1.
double pow_log(double factor, double n) { return n * std::log1p(factor - 1.0); }

// One series term, j >= 0:
//   ln((p_j + d F^j) / (p_j + (d-1) F^j)),  p_j = 1 + D (F^j - 1)/(F - 1).
// For F > 1 both sides are divided by F^j first; the difference of the two
// logs then telescopes to log1p(1/g) with
//   g = (d-1) + F^-j - D expm1(-j ln F)/(F-1)
// whose three addends are all nonnegative, so no cancellation occurs.
double series_term(int bins, double factor, int rank, double j) {
  if (factor == 1.0) return std::log1p(1.0 / (static_cast<double>(bins) * j + rank));
  const double lf = std::log1p(factor - 1.0);
  if (factor > 1.0) {
    const double g = (rank - 1) + std::exp(-j * lf) - bins * std::expm1(-j * lf) / (factor - 1.0);
    return std::log1p(1.0 / g);
  }
  // F < 1: F^j decays, direct evaluation is stable.
  const double fj = std::exp(j * lf);
  const double prefix = 1.0 + bins * std::expm1(j * lf) / (factor - 1.0);
  return std::log1p(fj / (prefix + (rank - 1) * fj));
}

// ln(1 + D (F^N - 1)/(F - 1)), switching to log space once F^N overflows.
double series_denominator(int bins, double factor, double n) {
  if (factor == 1.0) return std::log1p(static_cast<double>(bins) * n);
  const double t = pow_log(factor, n);
  if (t < 700.0)  // expm1 overflows just above exp(709)
    return std::log1p(bins * std::expm1(t) / (factor - 1.0));
  const double c = bins / (factor - 1.0);
  return t + std::log(c) + std::log1p((1.0 - c) / c * std::exp(-t));
}

struct KahanSum {
  double sum = 0.0, carry = 0.0;
  void add(double term) {
    const double y = term - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

double general_law(int bins, double factor, int rank) {
  check_law_params(bins, factor, rank);
  if (factor == 1.0) return 1.0 / bins;
  // Numerator rewritten with log1p: the two arguments differ by exactly F-1.
  const double num = std::log1p((factor - 1.0) / (bins + (rank - 1) * (factor - 1.0)));
  return num / std::log1p(factor - 1.0);
}

std::vector<double> general_law_vector(int bins, double factor) {
  std::vector<double> v(static_cast<std::size_t>(bins));
  for (int d = 1; d <= bins; ++d) v[d - 1] = general_law(bins, factor, d);
  return v;
}

double benford(int base, int digit) {
  if (base < 2) throw std::invalid_argument("base >= 2 required");
  if (digit < 1 || digit > base - 1)
    throw std::invalid_argument("digit must be in [1, base-1]");
  return std::log1p(1.0 / digit) / std::log(static_cast<double>(base));
}

std::vector<double> benford_vector(int base) {
  std::vector<double> v(static_cast<std::size_t>(base - 1));
  for (int d = 1; d < base; ++d) v[d - 1] = benford(base, d);
  return v;
}

std::vector<double> benford_second_order(int base) {
  if (base < 2) throw std::invalid_argument("base >= 2 required");
  const double lb = std::log(static_cast<double>(base));
  std::vector<double> v(static_cast<std::size_t>(base));
  for (int s = 0; s < base; ++s) {
    KahanSum acc;
    for (int f = 1; f < base; ++f) acc.add(std::log1p(1.0 / (f * base + s)));
    v[static_cast<std::size_t>(s)] = acc.sum / lb;
  }
  return v;
}

double series_SN(int bins, double factor, int rank, std::int64_t cycles) {
  check_law_params(bins, factor, rank);
  if (cycles < 1) throw std::invalid_argument("cycles >= 1 required");
  KahanSum num;
  for (std::int64_t j = 0; j < cycles; ++j)
    num.add(series_term(bins, factor, rank, static_cast<double>(j)));
  return num.sum / series_denominator(bins, factor, static_cast<double>(cycles));
}

std::vector<double> series_vector(int bins, double factor, std::int64_t cycles) {
  std::vector<double> v(static_cast<std::size_t>(bins));
  for (int d = 1; d <= bins; ++d) v[d - 1] = series_SN(bins, factor, d, cycles);
  return v;
}

double once_expanding(int bins, double factor, int rank) {
  check_law_params(bins, factor, rank);
  const double d = rank, D = bins, f = factor;
  const double num = std::log1p(1.0 / d) + std::log((1 + D + d * f) / (1 + D + (d - 1) * f));
  return num / std::log(1 + D + D * f);
}

double twice_expanding(int bins, double factor, int rank) {
  check_law_params(bins, factor, rank);
  const double d = rank, D = bins, f = factor;
  const double f2 = f * f;
  const double num = std::log1p(1.0 / d) +
                     std::log((1 + D + d * f) / (1 + D + (d - 1) * f)) +
                     std::log((1 + D + D * f + d * f2) / (1 + D + D * f + (d - 1) * f2));
  return num / std::log(1 + D + D * f + D * f2);
}

std::vector<double> kx_segment_proportions(double a, double b, std::span<const double> cuts) {
  if (!(a > 0.0) || !(b > a)) throw std::invalid_argument("0 < a < b required");
  if (cuts.size() < 2 || cuts.front() != a || cuts.back() != b)
    throw std::invalid_argument("cuts must start at a and end at b");
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    if (!(cuts[i] > 0.0) || !(cuts[i + 1] > cuts[i]))
      throw std::invalid_argument("cuts must be positive and strictly increasing");
  const double total = std::log(b / a);
  std::vector<double> v(cuts.size() - 1);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    v[i] = std::log(cuts[i + 1] / cuts[i]) / total;
  return v;
}

ConvergenceProfile convergence_profile(int bins, double factor, double tolerance,
                                       std::int64_t max_cycles) {
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance > 0 required");
  if (max_cycles < 1) throw std::invalid_argument("max_cycles >= 1 required");
  const std::vector<double> limit = general_law_vector(bins, factor);
  // Running numerator sums per rank; one new term per cycle keeps the scan
  // O(max_cycles * bins) instead of quadratic.
  std::vector<KahanSum> num(static_cast<std::size_t>(bins));
  ConvergenceProfile out;
  for (std::int64_t n = 1; n <= max_cycles; ++n) {
    for (int d = 1; d <= bins; ++d)
      num[static_cast<std::size_t>(d - 1)].add(
          series_term(bins, factor, d, static_cast<double>(n - 1)));
    const double den = series_denominator(bins, factor, static_cast<double>(n));
    double gap = 0.0;
    for (int d = 1; d <= bins; ++d)
      gap = std::max(gap, std::abs(num[static_cast<std::size_t>(d - 1)].sum / den -
                                   limit[static_cast<std::size_t>(d - 1)]));
    out.cycles_reached = n;
    out.max_abs_gap = gap;
    if (gap <= tolerance) {
      out.converged = true;
      return out;
    }
  }
  return out;
}

}  // namespace binlaw
