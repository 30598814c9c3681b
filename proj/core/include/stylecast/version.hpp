#pragma once

namespace stylecast {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace stylecast
