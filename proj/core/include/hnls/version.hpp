#pragma once

namespace hnls {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hnls
