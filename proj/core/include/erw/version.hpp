#pragma once

namespace erw {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kSchema = "erw/1";

}  // namespace erw
