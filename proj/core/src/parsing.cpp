#include "chronos/parsing.hpp"

#include <json.hpp>

#include "chronos/errors.hpp"
#include "chronos/text.hpp"

namespace chronos {

namespace {

// Index just past the ']' matching text[open], or npos. Skips string literals.
std::size_t matching_bracket_end(std::string_view text, std::size_t open) {
    int depth = 0;
    bool in_string = false;
    for (std::size_t i = open; i < text.size(); ++i) {
        const char c = text[i];
        if (in_string) {
            if (c == '\\') {
                ++i;
            } else if (c == '"') {
                in_string = false;
            }
            continue;
        }
        if (c == '"') {
            in_string = true;
        } else if (c == '[') {
            ++depth;
        } else if (c == ']') {
            if (--depth == 0) return i + 1;
        }
    }
    return std::string_view::npos;
}

// First parseable JSON array in `raw` whose elements all satisfy `accept`,
// optionally requiring at least one element.
template <typename Pred>
std::optional<nlohmann::json> first_array(std::string_view raw, bool allow_empty, Pred accept) {
    for (std::size_t open = raw.find('['); open != std::string_view::npos;
         open = raw.find('[', open + 1)) {
        const auto end = matching_bracket_end(raw, open);
        if (end == std::string_view::npos) continue;
        auto candidate = nlohmann::json::parse(raw.substr(open, end - open), nullptr, false);
        if (candidate.is_discarded() || !candidate.is_array()) continue;
        if (candidate.empty() && !allow_empty) continue;
        bool ok = true;
        for (const auto& e : candidate) {
            if (!accept(e)) {
                ok = false;
                break;
            }
        }
        if (ok) return candidate;
    }
    return std::nullopt;
}

}  // namespace

std::string format_question_list(const std::vector<std::string>& questions) {
    return nlohmann::json(questions).dump();
}

std::vector<std::string> parse_question_list(std::string_view raw, std::size_t expected_min) {
    auto arr = first_array(raw, /*allow_empty=*/true,
                           [](const nlohmann::json& e) { return e.is_string(); });
    if (!arr) throw UnparseableOutput("no JSON string array in output");
    std::vector<std::string> out;
    for (const auto& e : *arr) {
        auto q = trim(e.get<std::string>());
        if (!q.empty()) out.push_back(std::move(q));
    }
    if (out.size() < expected_min) {
        throw UnparseableOutput("expected at least " + std::to_string(expected_min) +
                                " questions, got " + std::to_string(out.size()));
    }
    return out;
}

TimelineParse parse_timeline(std::string_view raw) {
    auto arr = first_array(raw, /*allow_empty=*/false,
                           [](const nlohmann::json& e) { return e.is_object(); });
    if (!arr) throw UnparseableOutput("no JSON object array in output");
    TimelineParse result;
    for (const auto& e : *arr) {
        auto start_it = e.find("start");
        auto summary_it = e.find("summary");
        if (start_it == e.end() || !start_it->is_string() || summary_it == e.end() ||
            !summary_it->is_string()) {
            ++result.dropped;
            continue;
        }
        std::string summary = trim(summary_it->get<std::string>());
        if (summary.empty()) {
            ++result.dropped;
            continue;
        }
        try {
            result.events.push_back({EventDate::parse(start_it->get<std::string>()),
                                     std::move(summary)});
        } catch (const Error&) {
            ++result.dropped;
        }
    }
    if (result.events.empty()) throw UnparseableOutput("no valid timeline entries in output");
    return result;
}

}  // namespace chronos
