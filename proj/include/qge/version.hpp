#pragma once

namespace qge {

inline constexpr const char* version = "0.1.0";

} // namespace qge
