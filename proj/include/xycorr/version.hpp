#pragma once

namespace xycorr {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace xycorr
