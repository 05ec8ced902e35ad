#pragma once

namespace tripletstat {

inline constexpr const char* kToolName = "tripletstat";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace tripletstat
