#include "binlaw/conformance.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "binlaw/theory.hpp"

namespace binlaw {

CompareMetrics compare(std::span<const double> empirical, std::span<const double> theoretical) {
  if (empirical.size() != theoretical.size())
    throw std::invalid_argument("compare: vector lengths differ");
  if (empirical.empty()) throw std::invalid_argument("compare: empty vectors");
  CompareMetrics m;
  for (std::size_t i = 0; i < empirical.size(); ++i) {
    const double dev = std::abs(empirical[i] - theoretical[i]);
    m.mad += dev;
    m.ssd += dev * dev;
    m.max_abs_dev = std::max(m.max_abs_dev, dev);
  }
  m.mad /= static_cast<double>(empirical.size());
  return m;
}

std::string TheorySource::describe() const {
  std::ostringstream s;
  switch (kind) {
    case Kind::general_law:
      s << "general-law D=" << bins << " F=" << factor;
      if (f_avg_based) s << " (F is the factor-vector mean; diagnostic only)";
      break;
    case Kind::benford_first: s << "benford base=" << bins; break;
    case Kind::benford_second: s << "benford-second-order base=" << bins; break;
    case Kind::flat_limit: s << "flat-limit D=" << bins; break;
    case Kind::custom: s << "custom"; break;
  }
  return s.str();
}

ConformanceReport make_report(const BinSchemeSpec& scheme, std::vector<double> empirical,
                              std::vector<double> theoretical, TheorySource source,
                              std::uint64_t sample_size, double coverage, double threshold) {
  if (!(threshold > 0.0)) throw std::invalid_argument("threshold > 0 required");
  ConformanceReport r;
  r.scheme = scheme;
  r.metrics = compare(empirical, theoretical);
  r.empirical = std::move(empirical);
  r.theoretical = std::move(theoretical);
  r.source = source;
  r.threshold = threshold;
  r.verdict = classify(r.metrics.mad, threshold);
  r.sample_size = sample_size;
  r.coverage = coverage;
  return r;
}

std::vector<double> matching_law(const BinSchemeSpec& scheme, TheorySource& source_out) {
  if (scheme.is_constant()) {
    const double f = scheme.constant_factor();
    if (f == 1.0) {
      source_out = {TheorySource::Kind::flat_limit, scheme.bins, 1.0, false};
    } else {
      source_out = {TheorySource::Kind::general_law, scheme.bins, f, false};
    }
    return general_law_vector(scheme.bins, f);
  }
  const double favg = f_avg(scheme.factor_vector());
  source_out = {TheorySource::Kind::general_law, scheme.bins, favg, true};
  return general_law_vector(scheme.bins, favg);
}

namespace {

// Mantissa of x in [1, base); the multiply/divide corrections absorb the
// rounding of the log-based exponent estimate.
double significand(double x, int base) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("digit: x must be positive");
  if (base < 2) throw std::invalid_argument("digit: base >= 2 required");
  const double b = static_cast<double>(base);
  double e = std::floor(std::log(x) / std::log(b));
  double m = x / std::pow(b, e);
  while (m >= b) m /= b;
  while (m < 1.0) m *= b;
  return m;
}

}  // namespace

int first_significant_digit(double x, int base) {
  const int d = static_cast<int>(significand(x, base));
  return std::min(d, base - 1);
}

int second_significant_digit(double x, int base) {
  const double m = significand(x, base);
  const int scaled = static_cast<int>(std::floor(m * base));
  return std::min(scaled % base, base - 1);
}

BinSchemeSpec second_order_scheme(int base, int periods, double start, double width) {
  if (base < 3) throw std::invalid_argument("second_order_scheme: base >= 3 required");
  if (periods < 1) throw std::invalid_argument("second_order_scheme: periods >= 1 required");
  VectorExpansion exp;
  exp.factors.reserve(static_cast<std::size_t>(periods) * static_cast<std::size_t>(base - 1));
  for (int p = 0; p < periods; ++p) {
    for (int i = 0; i < base - 2; ++i) exp.factors.push_back(1.0);
    exp.factors.push_back(static_cast<double>(base));
  }
  BinSchemeSpec s;
  s.bins = base;
  s.expansion = std::move(exp);
  s.start = start;
  s.width = width;
  return s;
}

double f_avg(std::span<const double> factors) {
  if (factors.empty()) throw std::invalid_argument("f_avg: empty factor sequence");
  return std::accumulate(factors.begin(), factors.end(), 0.0) /
         static_cast<double>(factors.size());
}

}  // namespace binlaw
