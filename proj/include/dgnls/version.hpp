#pragma once

namespace dgnls {

inline constexpr const char* kVersion = "dgnls 0.1.0";

}  // namespace dgnls
