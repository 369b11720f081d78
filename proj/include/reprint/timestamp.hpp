#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace reprint {

/// Seconds since the Unix epoch, UTC.
using EpochSeconds = std::int64_t;

inline constexpr EpochSeconds kSecondsPerDay = 86400;

/// Accepts integer epoch seconds ("1491523200") or ISO-8601 date/date-time
/// ("2017-04-07", "2017-04-07T13:05:00Z", "2017-04-07 13:05:00.250+02:00").
/// Fractional seconds are truncated. A date-time without offset is taken as UTC.
std::optional<EpochSeconds> parse_timestamp(std::string_view text);

/// "YYYY-MM-DDTHH:MM:SSZ"
std::string format_utc(EpochSeconds t);

/// Midnight UTC of the day containing t.
EpochSeconds floor_to_day(EpochSeconds t);

/// "YYYY-MM-DD" of the UTC day containing t.
std::string utc_date(EpochSeconds t);

}  // namespace reprint
