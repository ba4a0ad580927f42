#pragma once

namespace binlaw {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace binlaw
