#pragma once

namespace dqm {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace dqm
