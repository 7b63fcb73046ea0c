#pragma once

namespace zipring {

// Bumped whenever a serialized format (polynomial JSON, oracle cache, CSV
// layouts) changes shape.  Cache files are keyed on this, so stale caches
// are never read across format changes.
inline constexpr int format_version = 1;
inline constexpr const char* toolkit_version = "0.1.0";

}  // namespace zipring
