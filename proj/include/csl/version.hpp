#pragma once

namespace csl {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace csl
