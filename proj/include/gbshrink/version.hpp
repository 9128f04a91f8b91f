#pragma once

namespace gbshrink {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace gbshrink
