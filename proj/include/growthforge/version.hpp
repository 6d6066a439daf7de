#pragma once

namespace growthforge {

inline constexpr const char* kVersion = "0.1.0";

} // namespace growthforge
