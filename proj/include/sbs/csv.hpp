#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace sbs {

/// Fixed-point decimal with '.' separator, 6 decimals by default; NaN renders
/// as the empty string. Used for all emitted reals so outputs are bit-exact
/// across platforms and thread counts.
[[nodiscard]] std::string format_fixed(double value, int decimals = 6);

/// Quote a CSV field if it contains a comma, quote, CR or LF (RFC 4180).
[[nodiscard]] std::string csv_escape(const std::string& field);

/// Join fields into one CSV line (no trailing newline).
[[nodiscard]] std::string csv_line(const std::vector<std::string>& fields);

/// One parsed CSV record and the 1-based line it started on.
struct CsvRecord {
    std::vector<std::string> fields;
    std::size_t line = 0;
};

/// RFC 4180 parser: quoted fields, embedded commas/quotes/newlines, CRLF or
/// LF endings. Empty lines outside quotes are skipped.
[[nodiscard]] std::vector<CsvRecord> parse_csv(const std::string& text);

}  // namespace sbs
