#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "chronos/date.hpp"

namespace chronos {

// One timeline entry. The summary is trimmed and nonempty once the event has
// passed through normalization or parsing.
struct DatedEvent {
    EventDate date;
    std::string summary;

    friend bool operator==(const DatedEvent&, const DatedEvent&) = default;
};

// An ordered, duplicate-free list of dated events. Construction normalizes:
// events are sorted ascending by date (stable for equal dates), summaries are
// trimmed, empty summaries dropped, and exact (date, summary) duplicates
// merged keeping the first occurrence.
class Timeline {
public:
    Timeline() = default;
    explicit Timeline(std::vector<DatedEvent> events);

    const std::vector<DatedEvent>& events() const { return events_; }
    bool empty() const { return events_.empty(); }
    std::size_t size() const { return events_.size(); }

    std::vector<EventDate> distinct_dates() const;

    friend bool operator==(const Timeline&, const Timeline&) = default;

private:
    std::vector<DatedEvent> events_;
};

struct TimelineStats {
    std::size_t date_count = 0;        // l: distinct dates
    double sentences_per_date = 0.0;   // k: mean sentences per date
};

Timeline normalize_timeline(std::vector<DatedEvent> events);

TimelineStats timeline_stats(const Timeline& t);

// Timeline wire format: JSON array of {"start": "YYYY-MM-DD", "summary": ...}.
std::string timeline_to_json(const Timeline& t, int indent = -1);
Timeline timeline_from_json(std::string_view json_text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

Timeline load_timeline(const std::string& path);
void save_timeline(const Timeline& t, const std::string& path);

std::string trim(std::string_view s);

}  // namespace chronos
