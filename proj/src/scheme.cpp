#include "binlaw/scheme.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace binlaw {

ValidationResult validate_scheme(const BinSchemeSpec& spec) {
  ValidationResult r;
  if (spec.bins < 1) r.violations.push_back("bins >= 1");
  if (!(spec.width > 0.0) || !std::isfinite(spec.width)) r.violations.push_back("width > 0");
  if (!(spec.start >= 0.0) || !std::isfinite(spec.start)) r.violations.push_back("start >= 0");
  if (spec.is_constant()) {
    const double f = spec.constant_factor();
    if (!(f > 0.0) || !std::isfinite(f)) r.violations.push_back("factor > 0");
  } else {
    for (double f : spec.factor_vector()) {
      if (!(f > 0.0) || !std::isfinite(f)) {
        r.violations.push_back("every factor > 0");
        break;
      }
    }
  }
  return r;
}

void require_valid(const BinSchemeSpec& spec) {
  const ValidationResult r = validate_scheme(spec);
  if (r.ok()) return;
  std::ostringstream msg;
  msg << "invalid bin scheme:";
  for (const auto& v : r.violations) msg << " [" << v << "]";
  throw std::invalid_argument(msg.str());
}

CycleLayout layout(const BinSchemeSpec& spec, std::int64_t cycle_index) {
  require_valid(spec);
  if (cycle_index < 0) throw std::out_of_range("cycle_index >= 0 required");

  if (spec.is_constant()) {
    const double f = spec.constant_factor();
    const double c = static_cast<double>(cycle_index);
    if (f == 1.0) {
      return {cycle_index, spec.start + c * spec.bins * spec.width, spec.width};
    }
    // Geometric closed form; pow is correctly rounded, so integer-exact
    // inputs stay exact (contiguity tests rely on this).
    const double fc = std::pow(f, c);
    const double start = spec.start + spec.bins * spec.width * (fc - 1.0) / (f - 1.0);
    return {cycle_index, start, spec.width * fc};
  }

  const auto& factors = spec.factor_vector();
  if (cycle_index > static_cast<std::int64_t>(factors.size()))
    throw std::out_of_range("cycle_index exceeds factor vector length");
  double width = spec.width;
  double start = spec.start;
  for (std::int64_t c = 0; c < cycle_index; ++c) {
    start += spec.bins * width;
    width *= factors[static_cast<std::size_t>(c)];
  }
  return {cycle_index, start, width};
}

}  // namespace binlaw
