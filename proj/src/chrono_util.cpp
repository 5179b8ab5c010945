#include "sbs/chrono_util.hpp"

#include <array>
#include <cctype>
#include <cstdio>

namespace sbs {

namespace {

constexpr bool is_leap(int y) noexcept {
    return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0);
}

constexpr unsigned last_day_of_month(int y, unsigned m) noexcept {
    constexpr std::array<unsigned, 12> days = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    return m == 2 && is_leap(y) ? 29 : days[m - 1];
}

}  // namespace

// Howard Hinnant's civil-calendar algorithms.
std::int64_t days_from_civil(const CivilDate& d) noexcept {
    std::int64_t y = d.year;
    const unsigned m = d.month;
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d.day - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

CivilDate civil_from_days(std::int64_t days) noexcept {
    days += 719468;
    const std::int64_t era = (days >= 0 ? days : days - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(days - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return CivilDate{static_cast<int>(y + (m <= 2)), m, d};
}

int weekday_from_days(std::int64_t days) noexcept {
    // 1970-01-01 was a Thursday (weekday 3 with Monday = 0).
    return static_cast<int>(((days % 7) + 10) % 7);
}

IsoWeek iso_week_from_days(std::int64_t days) noexcept {
    const std::int64_t thursday = days + (3 - weekday_from_days(days));
    const CivilDate th = civil_from_days(thursday);
    const std::int64_t jan1 = days_from_civil(CivilDate{th.year, 1, 1});
    const unsigned week = static_cast<unsigned>((thursday - jan1) / 7) + 1;
    return IsoWeek{th.year, week};
}

namespace {

bool parse_fixed_uint(std::string_view s, std::size_t pos, std::size_t len, unsigned& out) {
    if (pos + len > s.size()) return false;
    unsigned v = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
        const char c = s[i];
        if (c < '0' || c > '9') return false;
        v = v * 10 + static_cast<unsigned>(c - '0');
    }
    out = v;
    return true;
}

}  // namespace

std::optional<std::int64_t> parse_rfc3339(std::string_view text) {
    // Trim surrounding ASCII whitespace.
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);

    unsigned year = 0, month = 0, day = 0;
    if (!parse_fixed_uint(text, 0, 4, year)) return std::nullopt;
    if (text.size() < 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    if (!parse_fixed_uint(text, 5, 2, month) || !parse_fixed_uint(text, 8, 2, day)) return std::nullopt;
    if (month < 1 || month > 12) return std::nullopt;
    if (day < 1 || day > last_day_of_month(static_cast<int>(year), month)) return std::nullopt;

    const std::int64_t date_days = days_from_civil(CivilDate{static_cast<int>(year), month, day});

    if (text.size() == 10) return date_days * 86400;  // bare date, midnight UTC

    if (text[10] != 'T' && text[10] != 't' && text[10] != ' ') return std::nullopt;
    unsigned hour = 0, minute = 0, second = 0;
    if (text.size() < 19 || text[13] != ':' || text[16] != ':') return std::nullopt;
    if (!parse_fixed_uint(text, 11, 2, hour) || !parse_fixed_uint(text, 14, 2, minute) ||
        !parse_fixed_uint(text, 17, 2, second))
        return std::nullopt;
    if (hour > 23 || minute > 59 || second > 60) return std::nullopt;
    if (second == 60) second = 59;  // fold leap second

    std::size_t pos = 19;
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        std::size_t digits = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            ++pos;
            ++digits;
        }
        if (digits == 0) return std::nullopt;
    }

    std::int64_t offset_seconds = 0;
    if (pos >= text.size()) return std::nullopt;  // RFC 3339 requires an offset
    const char c = text[pos];
    if (c == 'Z' || c == 'z') {
        ++pos;
    } else if (c == '+' || c == '-') {
        unsigned oh = 0, om = 0;
        if (pos + 6 > text.size() || text[pos + 3] != ':') return std::nullopt;
        if (!parse_fixed_uint(text, pos + 1, 2, oh) || !parse_fixed_uint(text, pos + 4, 2, om))
            return std::nullopt;
        if (oh > 23 || om > 59) return std::nullopt;
        offset_seconds = static_cast<std::int64_t>(oh) * 3600 + om * 60;
        if (c == '-') offset_seconds = -offset_seconds;
        pos += 6;
    } else {
        return std::nullopt;
    }
    if (pos != text.size()) return std::nullopt;

    const std::int64_t local = date_days * 86400 + hour * 3600 + minute * 60 + second;
    return local - offset_seconds;
}

std::string format_rfc3339(std::int64_t unix_seconds) {
    std::int64_t days = unix_seconds / 86400;
    std::int64_t sod = unix_seconds % 86400;
    if (sod < 0) {
        sod += 86400;
        --days;
    }
    const CivilDate d = civil_from_days(days);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02lld:%02lld:%02lldZ", d.year, d.month, d.day,
                  static_cast<long long>(sod / 3600), static_cast<long long>((sod / 60) % 60),
                  static_cast<long long>(sod % 60));
    return buf;
}

}  // namespace sbs
