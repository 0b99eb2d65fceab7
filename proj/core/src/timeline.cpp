#include "chronos/timeline.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "chronos/errors.hpp"
#include "chronos/text.hpp"

namespace chronos {

std::string trim(std::string_view s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return std::string(s.substr(begin, end - begin));
}

Timeline::Timeline(std::vector<DatedEvent> events) {
    for (auto& e : events) {
        e.summary = trim(e.summary);
    }
    std::erase_if(events, [](const DatedEvent& e) { return e.summary.empty(); });
    std::stable_sort(events.begin(), events.end(),
                     [](const DatedEvent& a, const DatedEvent& b) { return a.date < b.date; });
    std::set<std::pair<std::string, std::string>> seen;
    for (auto& e : events) {
        if (seen.emplace(e.date.str(), e.summary).second) {
            events_.push_back(std::move(e));
        }
    }
}

std::vector<EventDate> Timeline::distinct_dates() const {
    std::vector<EventDate> dates;
    for (const auto& e : events_) {
        if (dates.empty() || !(dates.back() == e.date)) dates.push_back(e.date);
    }
    return dates;
}

Timeline normalize_timeline(std::vector<DatedEvent> events) {
    return Timeline(std::move(events));
}

TimelineStats timeline_stats(const Timeline& t) {
    TimelineStats stats;
    stats.date_count = t.distinct_dates().size();
    if (stats.date_count == 0) return stats;
    std::size_t sentences = 0;
    for (const auto& e : t.events()) {
        sentences += count_sentences(e.summary);
    }
    stats.sentences_per_date =
        static_cast<double>(sentences) / static_cast<double>(stats.date_count);
    return stats;
}

std::string timeline_to_json(const Timeline& t, int indent) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : t.events()) {
        arr.push_back({{"start", e.date.str()}, {"summary", e.summary}});
    }
    return arr.dump(indent);
}

Timeline timeline_from_json(std::string_view json_text) {
    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("timeline JSON: ") + e.what());
    }
    if (!parsed.is_array()) {
        throw SchemaError("timeline JSON: expected a top-level array");
    }
    std::vector<DatedEvent> events;
    for (const auto& item : parsed) {
        if (!item.is_object() || !item.contains("start") || !item.contains("summary") ||
            !item["start"].is_string() || !item["summary"].is_string()) {
            throw SchemaError("timeline JSON: each entry needs string fields start and summary");
        }
        events.push_back({EventDate::parse(item["start"].get<std::string>()),
                          item["summary"].get<std::string>()});
    }
    return Timeline(std::move(events));
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_text_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write file: " + path);
    out << content;
    if (!out) throw Error("write failed: " + path);
}

Timeline load_timeline(const std::string& path) {
    return timeline_from_json(read_text_file(path));
}

void save_timeline(const Timeline& t, const std::string& path) {
    write_text_file(path, timeline_to_json(t, 2) + "\n");
}

}  // namespace chronos
