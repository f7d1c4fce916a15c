#pragma once

namespace speclab {

inline constexpr const char* kVersion = "0.1.0";

} // namespace speclab
