#pragma once

namespace kummer3 {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace kummer3
