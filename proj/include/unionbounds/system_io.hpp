#pragma once

// JSON form of an event system:
//   {"weights": ["1/10", "1/5", ...], "events": [[0, 1, 2], [1, 3]]}
// Weights may be "p/q" strings, decimal strings or integers; they are parsed
// exactly. dump_system emits a canonical form so that read/write round-trips
// byte for byte.

#include <string>

#include "unionbounds/event_space.hpp"

namespace unionbounds {

/// Throws ValidationError; JSON syntax errors carry the line and column.
EventSystem parse_system(const std::string& text);
EventSystem read_system_file(const std::string& path);

std::string dump_system(const EventSystem& sys);

/// Writes to a sibling temporary file and renames it over path.
void write_file_atomically(const std::string& path, const std::string& contents);

}  // namespace unionbounds
