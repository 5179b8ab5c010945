#include "sbs/csv.hpp"

#include <cmath>
#include <cstdio>

namespace sbs {

std::string format_fixed(double value, int decimals) {
    if (std::isnan(value)) return {};
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    // Avoid the distinct "-0.000000" spelling for zero.
    for (const char* p = buf; *p; ++p) {
        if (*p != '-' && *p != '0' && *p != '.') return buf;
    }
    return buf[0] == '-' ? buf + 1 : buf;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_line(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(fields[i]);
    }
    return out;
}

std::vector<CsvRecord> parse_csv(const std::string& text) {
    std::vector<CsvRecord> records;
    CsvRecord current;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    std::size_t line = 1;
    current.line = 1;

    auto end_field = [&] {
        current.fields.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        if (field_started || !field.empty() || !current.fields.empty()) end_field();
        if (!current.fields.empty()) records.push_back(std::move(current));
        current = CsvRecord{};
        current.line = line;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
        } else if (c == '"') {
            in_quotes = true;
            field_started = true;
        } else if (c == ',') {
            end_field();
            field_started = true;  // a comma opens the next field even if empty
        } else if (c == '\n') {
            ++line;
            end_record();
        } else if (c == '\r') {
            // swallowed; the following \n ends the record
        } else {
            field += c;
            field_started = true;
        }
    }
    end_record();
    return records;
}

}  // namespace sbs
