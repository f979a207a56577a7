#pragma once

#include <string_view>

namespace hazard_risk {

inline constexpr std::string_view kVersion = "0.1.0";

}  // namespace hazard_risk
