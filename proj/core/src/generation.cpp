#include "chronos/generation.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

#include "chronos/errors.hpp"
#include "chronos/parsing.hpp"

namespace chronos {

namespace {

constexpr const char* kTimelineReminder =
    "\n\nReminder: respond with only a JSON array of events like "
    "[{\"start\": \"2023-02-02\", \"summary\": \"...\"}, ...]";

TimelineParse chat_for_timeline(LlmGateway& gateway, const ChatProfile& profile,
                                const std::string& prompt) {
    const auto raw = gateway.chat(make_request(profile, prompt));
    try {
        return parse_timeline(raw);
    } catch (const UnparseableOutput&) {
        const auto retry_raw = gateway.chat(make_request(profile, prompt + kTimelineReminder));
        return parse_timeline(retry_raw);
    }
}

// Round-major event list serialized as one JSON array.
std::string serialize_rounds(const std::vector<Timeline>& rounds) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& t : rounds) {
        for (const auto& e : t.events()) {
            arr.push_back({{"start", e.date.str()}, {"summary", e.summary}});
        }
    }
    return arr.dump();
}

// Event count per date across all rounds ("dates with more events happening
// are given precedence").
std::map<EventDate, std::size_t> round_date_frequency(const std::vector<Timeline>& rounds) {
    std::map<EventDate, std::size_t> freq;
    for (const auto& t : rounds) {
        for (const auto& e : t.events()) ++freq[e.date];
    }
    return freq;
}

// Top-l dates among `dates` by (frequency desc, earlier first).
std::set<EventDate> budget_dates(const std::vector<EventDate>& dates, std::size_t l,
                                 const std::map<EventDate, std::size_t>& freq) {
    std::vector<EventDate> order(dates);
    std::sort(order.begin(), order.end(), [&](const EventDate& a, const EventDate& b) {
        const auto fa = freq.count(a) ? freq.at(a) : 0;
        const auto fb = freq.count(b) ? freq.at(b) : 0;
        if (fa != fb) return fa > fb;
        return a < b;
    });
    if (order.size() > l) order.resize(l);
    return {order.begin(), order.end()};
}

DateBudgetResult apply_budget(const Timeline& timeline, std::size_t l,
                              const std::map<EventDate, std::size_t>& freq) {
    const auto dates = timeline.distinct_dates();
    if (dates.size() <= l) return {timeline, 0};
    const auto keep = budget_dates(dates, l, freq);
    std::vector<DatedEvent> kept;
    for (const auto& e : timeline.events()) {
        if (keep.contains(e.date)) kept.push_back(e);
    }
    return {Timeline(std::move(kept)), dates.size() - keep.size()};
}

}  // namespace

GenerationResult generate_timeline(LlmGateway& gateway, const ChatProfile& profile,
                                   const std::string& news, const std::vector<Article>& docs,
                                   std::size_t article_word_budget) {
    const auto prompt = render(prompt_template("generate"),
                               {
                                   {"news", news},
                                   {"docs", serialize_docs(docs, article_word_budget)},
                               });
    auto parsed = chat_for_timeline(gateway, profile, prompt);
    return {Timeline(std::move(parsed.events)), parsed.dropped};
}

DateBudgetResult enforce_date_budget(const Timeline& timeline, std::size_t l) {
    std::map<EventDate, std::size_t> freq;
    for (const auto& e : timeline.events()) ++freq[e.date];
    return apply_budget(timeline, l, freq);
}

MergeResult mechanical_merge(const std::vector<Timeline>& rounds, std::size_t l) {
    const auto freq = round_date_frequency(rounds);
    if (freq.empty()) throw Error("mechanical merge needs a nonempty round timeline");

    std::vector<EventDate> dates;
    for (const auto& [d, _] : freq) dates.push_back(d);
    const auto keep = budget_dates(dates, l, freq);

    // Join each kept date's distinct summaries in round-major order.
    std::map<EventDate, std::vector<std::string>> grouped;
    for (const auto& t : rounds) {
        for (const auto& e : t.events()) {
            if (!keep.contains(e.date)) continue;
            auto& summaries = grouped[e.date];
            if (std::find(summaries.begin(), summaries.end(), e.summary) == summaries.end()) {
                summaries.push_back(e.summary);
            }
        }
    }
    std::vector<DatedEvent> events;
    for (const auto& [date, summaries] : grouped) {
        std::string joined;
        for (const auto& s : summaries) {
            if (!joined.empty()) joined.push_back(' ');
            joined += s;
        }
        events.push_back({date, std::move(joined)});
    }
    MergeResult result;
    result.timeline = Timeline(std::move(events));
    result.truncated_dates = dates.size() - keep.size();
    result.fallback = true;
    return result;
}

MergeResult merge_timelines(LlmGateway& gateway, const ChatProfile& profile,
                            const std::string& news, const std::vector<Timeline>& rounds,
                            std::size_t l) {
    const auto freq = round_date_frequency(rounds);
    if (freq.empty()) throw Error("merge needs a nonempty round timeline");
    if (l == 0) throw Error("date budget l must be at least 1");

    const auto prompt = render(prompt_template("merge"),
                               {
                                   {"l", std::to_string(l)},
                                   {"news", news},
                                   {"timelines", serialize_rounds(rounds)},
                               });
    TimelineParse parsed;
    try {
        parsed = chat_for_timeline(gateway, profile, prompt);
    } catch (const UnparseableOutput&) {
        return mechanical_merge(rounds, l);
    }

    MergeResult result;
    std::vector<DatedEvent> contained;
    for (auto& e : parsed.events) {
        if (freq.contains(e.date)) {
            contained.push_back(std::move(e));
        } else {
            ++result.hallucinated_dropped;  // date invented by the merge step
        }
    }
    if (contained.empty()) return mechanical_merge(rounds, l);

    auto budgeted = apply_budget(Timeline(std::move(contained)), l, freq);
    result.timeline = std::move(budgeted.timeline);
    result.truncated_dates = budgeted.dropped_dates;
    return result;
}

}  // namespace chronos
