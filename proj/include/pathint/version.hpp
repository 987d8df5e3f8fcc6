#pragma once

namespace pathint {

inline constexpr const char* kEngineVersion = "1.0.0";
inline constexpr int kReportVersion = 1;

}  // namespace pathint
