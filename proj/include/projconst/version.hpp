#pragma once

namespace projconst {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace projconst
