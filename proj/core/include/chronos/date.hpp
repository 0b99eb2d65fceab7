#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace chronos {

// A day-granular calendar date. Canonical text form is YYYY-MM-DD, zero padded.
class EventDate {
public:
    EventDate() = default;

    // Throws InvalidDate if (year, month, day) is not a real calendar day.
    EventDate(int year, unsigned month, unsigned day);

    // Strict parse of the canonical form. Throws MalformedDate on shape
    // violations (including missing zero padding) and InvalidDate on
    // nonexistent days such as 2023-02-30.
    static EventDate parse(std::string_view text);

    // Lenient variant for provider metadata: accepts a canonical date or a
    // longer string starting with one (e.g. an ISO timestamp). Never throws.
    static std::optional<EventDate> try_parse_prefix(std::string_view text);

    int year() const { return year_; }
    unsigned month() const { return month_; }
    unsigned day() const { return day_; }

    std::string str() const;

    // Days since 1970-01-01; negative before the epoch.
    std::int64_t serial() const;

    friend auto operator<=>(const EventDate&, const EventDate&) = default;

private:
    int year_ = 1970;
    unsigned month_ = 1;
    unsigned day_ = 1;
};

// |a - b| in whole days.
std::int64_t days_between(const EventDate& a, const EventDate& b);

}  // namespace chronos
