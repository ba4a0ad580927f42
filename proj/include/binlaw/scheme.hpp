#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace binlaw {

// A bin scheme partitions the positive axis into consecutive cycles of
// `bins` equal-width bins. The bin width of cycle c+1 is the width of
// cycle c multiplied by an inflation factor: either one constant factor
// for every cycle, or an explicit per-cycle factor vector (which bounds
// the scheme to factors.size()+1 cycles).
struct ConstantExpansion {
  double factor = 1.0;
};

struct VectorExpansion {
  std::vector<double> factors;
};

using Expansion = std::variant<ConstantExpansion, VectorExpansion>;

struct BinSchemeSpec {
  int bins = 1;        // D, bins per cycle
  Expansion expansion = ConstantExpansion{1.0};
  double start = 0.0;  // S, left edge of the first bin of cycle 0
  double width = 1.0;  // W, bin width in cycle 0

  bool is_constant() const { return std::holds_alternative<ConstantExpansion>(expansion); }
  double constant_factor() const { return std::get<ConstantExpansion>(expansion).factor; }
  const std::vector<double>& factor_vector() const {
    return std::get<VectorExpansion>(expansion).factors;
  }

  // Highest valid cycle index, or nullopt when cycles are unbounded.
  std::optional<std::int64_t> last_cycle() const {
    if (is_constant()) return std::nullopt;
    return static_cast<std::int64_t>(factor_vector().size());
  }

  bool operator==(const BinSchemeSpec&) const = default;
};

inline bool operator==(const ConstantExpansion& a, const ConstantExpansion& b) {
  return a.factor == b.factor;
}
inline bool operator==(const VectorExpansion& a, const VectorExpansion& b) {
  return a.factors == b.factors;
}

struct ValidationResult {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Checks every scheme invariant; violations are returned, not thrown.
ValidationResult validate_scheme(const BinSchemeSpec& spec);

// Throws std::invalid_argument listing all violations. No-op for valid specs.
void require_valid(const BinSchemeSpec& spec);

struct CycleLayout {
  std::int64_t cycle_index = 0;
  double cycle_start = 0.0;
  double bin_width = 0.0;

  double cycle_end(int bins) const { return cycle_start + bins * bin_width; }
};

// Closed-form layout of cycle `cycle_index`:
//   constant F != 1: start = S + D*W*(F^c - 1)/(F - 1), width = W*F^c
//   constant F == 1: start = S + c*D*W,                 width = W
//   vector:          width = W * prod(factors[0..c)),   start = S + D * sum(prior widths)
// Throws std::out_of_range past the last cycle of a vector scheme.
CycleLayout layout(const BinSchemeSpec& spec, std::int64_t cycle_index);

}  // namespace binlaw
