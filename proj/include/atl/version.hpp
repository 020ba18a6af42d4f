#pragma once

namespace atl {

inline constexpr const char* version = "0.1.0";

}  // namespace atl
