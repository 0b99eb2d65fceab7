#include "chronos/date.hpp"

#include <chrono>
#include <cctype>
#include <cstdio>
#include <cstdlib>

#include "chronos/errors.hpp"

namespace chronos {

namespace {

bool all_digits(std::string_view s) {
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return !s.empty();
}

std::chrono::year_month_day to_ymd(int y, unsigned m, unsigned d) {
    return std::chrono::year{y} / std::chrono::month{m} / std::chrono::day{d};
}

}  // namespace

EventDate::EventDate(int year, unsigned month, unsigned day)
    : year_(year), month_(month), day_(day) {
    if (!to_ymd(year, month, day).ok()) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", year, month, day);
        throw InvalidDate(std::string("not a calendar date: ") + buf);
    }
}

EventDate EventDate::parse(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-' ||
        !all_digits(text.substr(0, 4)) || !all_digits(text.substr(5, 2)) ||
        !all_digits(text.substr(8, 2))) {
        throw MalformedDate("expected YYYY-MM-DD, got \"" + std::string(text) + "\"");
    }
    int y = std::atoi(std::string(text.substr(0, 4)).c_str());
    unsigned m = static_cast<unsigned>(std::atoi(std::string(text.substr(5, 2)).c_str()));
    unsigned d = static_cast<unsigned>(std::atoi(std::string(text.substr(8, 2)).c_str()));
    return EventDate(y, m, d);
}

std::optional<EventDate> EventDate::try_parse_prefix(std::string_view text) {
    if (text.size() < 10) return std::nullopt;
    try {
        return parse(text.substr(0, 10));
    } catch (const Error&) {
        return std::nullopt;
    }
}

std::string EventDate::str() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", year_, month_, day_);
    return buf;
}

std::int64_t EventDate::serial() const {
    const auto days = std::chrono::sys_days(to_ymd(year_, month_, day_));
    return days.time_since_epoch().count();
}

std::int64_t days_between(const EventDate& a, const EventDate& b) {
    const std::int64_t d = a.serial() - b.serial();
    return d < 0 ? -d : d;
}

}  // namespace chronos
