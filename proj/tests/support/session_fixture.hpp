#pragma once

// A fully scripted two-round session: canned search results plus rule-based
// chat responses, with every expected value worked out by hand. Shared by the
// pipeline tests and the acceptance checks.

#include <cstddef>
#include <string>
#include <vector>

#include "chronos/news.hpp"
#include "chronos/pipeline.hpp"
#include "scripted.hpp"

namespace chronos::test {

struct SessionFixture {
    Topic topic;
    PipelineConfig config;  // chronos, m=5, n=10, rounds=2, l=3
    std::string search_fixture_json;
    std::vector<ScriptedChatBackend::Rule> chat_rules;

    // Hand-derived expectations.
    std::vector<std::string> final_dates;      // merged distinct dates, ascending
    std::vector<std::string> final_summaries;  // one per final date
    std::size_t total_articles = 0;
    std::vector<std::size_t> docs_retrieved;  // per round
    std::vector<std::size_t> docs_kept;
    std::vector<std::size_t> round_events;
    std::vector<std::size_t> dropped_entries;
    std::size_t hallucinated_dropped = 0;
    std::size_t truncated_dates = 0;
    std::size_t llm_calls = 0;
    std::vector<std::string> round1_questions;
    std::vector<std::string> round2_questions;
};

SessionFixture make_session_fixture();

}  // namespace chronos::test
