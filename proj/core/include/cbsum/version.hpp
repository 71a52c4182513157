#pragma once

namespace cbsum {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cbsum
