#pragma once

namespace rbd {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rbd
