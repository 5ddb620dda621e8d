#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace agilelint {

/// Instants are whole seconds on the UTC timeline.
using Timestamp = std::chrono::sys_seconds;

inline constexpr std::int64_t kSecondsPerDay = 86400;

/// Parses an ISO-8601 date-time such as "2015-01-12T14:03:00Z" or
/// "2015-01-12T16:03:00+02:00". Fractional seconds are truncated, offsets are
/// folded into UTC. Returns nullopt for anything that is not a valid instant.
std::optional<Timestamp> parse_timestamp(std::string_view text);

/// Canonical rendering, always "YYYY-MM-DDTHH:MM:SSZ".
std::string format_timestamp(Timestamp ts);

inline std::int64_t to_unix(Timestamp ts) { return ts.time_since_epoch().count(); }
inline Timestamp from_unix(std::int64_t seconds) { return Timestamp{std::chrono::seconds{seconds}}; }

}  // namespace agilelint
