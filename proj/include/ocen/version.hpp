#pragma once

namespace ocen {

inline constexpr const char* version_string = "0.1.0";
inline constexpr const char* model_format_version = "1";

}  // namespace ocen
