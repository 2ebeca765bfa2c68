#pragma once

namespace fsolink {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fsolink
