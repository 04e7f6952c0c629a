#pragma once

namespace tssp {

inline constexpr const char* kVersion = "0.1.0";

} // namespace tssp
