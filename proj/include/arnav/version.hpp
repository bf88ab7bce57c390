#pragma once

namespace arnav {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;
inline constexpr int kSceneSchemaVersion = 1;

}  // namespace arnav
