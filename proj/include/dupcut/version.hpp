#pragma once

namespace dupcut {

inline constexpr const char* kToolName = "dupcut";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace dupcut
