#pragma once

#include <string>
#include <vector>

#include "chronos/llm.hpp"
#include "chronos/news.hpp"
#include "chronos/prompts.hpp"
#include "chronos/timeline.hpp"

namespace chronos {

struct GenerationResult {
    Timeline timeline;
    std::size_t dropped = 0;  // entries the parser rejected
};

// One timeline-generation call over a document set. Retries once with a
// format reminder when the output is unparseable, then propagates.
GenerationResult generate_timeline(LlmGateway& gateway, const ChatProfile& profile,
                                   const std::string& news, const std::vector<Article>& docs,
                                   std::size_t article_word_budget = kArticleWordBudget);

// Keeps at most `l` distinct dates: dates ranked by event count descending,
// then earlier first; events on losing dates are dropped.
struct DateBudgetResult {
    Timeline timeline;
    std::size_t dropped_dates = 0;
};
DateBudgetResult enforce_date_budget(const Timeline& timeline, std::size_t l);

struct MergeResult {
    Timeline timeline;
    std::size_t hallucinated_dropped = 0;  // merged events on dates absent from all rounds
    std::size_t truncated_dates = 0;       // dates cut by the l budget
    bool fallback = false;                 // mechanical merge path taken
};

// Merges round timelines through the merge template; output dates must come
// from some round and at most l distinct dates survive. When the model output
// stays unparseable after a retry, falls back to a mechanical merge: group
// round events by date, keep the top-l dates by precedence, join summaries.
MergeResult merge_timelines(LlmGateway& gateway, const ChatProfile& profile,
                            const std::string& news, const std::vector<Timeline>& rounds,
                            std::size_t l);

// Mechanical merge only (no model call); also used directly when a session
// produced a single round timeline.
MergeResult mechanical_merge(const std::vector<Timeline>& rounds, std::size_t l);

}  // namespace chronos
