#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "chronos/timeline.hpp"

namespace chronos {

// JSON array of strings; parse_question_list inverts this exactly.
std::string format_question_list(const std::vector<std::string>& questions);

// Extracts the first JSON array of strings from raw model output, tolerating
// code fences and surrounding prose. Trims entries, drops empties; throws
// UnparseableOutput when no array is found or fewer than expected_min remain.
std::vector<std::string> parse_question_list(std::string_view raw, std::size_t expected_min);

struct TimelineParse {
    std::vector<DatedEvent> events;
    std::size_t dropped = 0;  // entries with invalid date or empty summary
};

// Extracts the first nonempty JSON array of objects; entries need a valid
// "start" date and nonempty "summary". Throws UnparseableOutput when no such
// array exists or no entry survives validation.
TimelineParse parse_timeline(std::string_view raw);

}  // namespace chronos
