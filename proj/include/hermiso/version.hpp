#pragma once

namespace hermiso {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hermiso
