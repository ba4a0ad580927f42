#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace binlaw::cli {

// Re-creates one of the published tables from the seedable generators.
// Rows backed by external data sets cannot be simulated and are emitted as
// notes. Throws std::invalid_argument for unknown identifiers.
void reproduce_figure(const std::string& figure, std::uint64_t seed, std::uint64_t n,
                      const std::string& format, std::ostream& os);

}  // namespace binlaw::cli
