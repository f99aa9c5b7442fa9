#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace smarttrap {

// UTC instants with second precision, carried as unix seconds.
using UnixSeconds = std::int64_t;

// "2020-01-01T00:00:00Z"
std::string format_utc(UnixSeconds t);

// Accepts exactly the format emitted by format_utc. Returns nullopt on any
// syntactic or calendar violation.
std::optional<UnixSeconds> parse_utc(const std::string& text);

}  // namespace smarttrap
