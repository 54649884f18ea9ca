#pragma once

namespace netprobe {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace netprobe
