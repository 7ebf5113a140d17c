#pragma once

namespace phasekick {

inline constexpr const char* kVersion = "1.0.0";

// Bumped whenever the CSV/JSON record layout changes.
inline constexpr const char* kOutputSchemaVersion = "1";

}  // namespace phasekick
