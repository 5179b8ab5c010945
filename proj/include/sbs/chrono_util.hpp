#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace sbs {

/// Calendar date in the proleptic Gregorian calendar, UTC.
struct CivilDate {
    int year = 1970;
    unsigned month = 1;  ///< 1..12
    unsigned day = 1;    ///< 1..31
};

/// Days since 1970-01-01 for a civil date (negative before the epoch).
[[nodiscard]] std::int64_t days_from_civil(const CivilDate& d) noexcept;

/// Inverse of days_from_civil.
[[nodiscard]] CivilDate civil_from_days(std::int64_t days) noexcept;

/// 0 = Monday .. 6 = Sunday.
[[nodiscard]] int weekday_from_days(std::int64_t days) noexcept;

/// ISO-8601 week: the week (Mon..Sun) belongs to the year of its Thursday.
struct IsoWeek {
    int year = 1970;
    unsigned week = 1;  ///< 1..53
};

[[nodiscard]] IsoWeek iso_week_from_days(std::int64_t days) noexcept;

/// Parse an RFC 3339 date-time ("2017-07-01T12:30:00Z", offsets and fractional
/// seconds accepted, fraction truncated) or a bare date ("2017-07-01", midnight
/// UTC). Returns seconds since the Unix epoch, or nullopt if malformed.
[[nodiscard]] std::optional<std::int64_t> parse_rfc3339(std::string_view text);

/// Format as "YYYY-MM-DDTHH:MM:SSZ".
[[nodiscard]] std::string format_rfc3339(std::int64_t unix_seconds);

}  // namespace sbs
