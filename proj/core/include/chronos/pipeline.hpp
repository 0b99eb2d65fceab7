#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "chronos/example_pool.hpp"
#include "chronos/generation.hpp"
#include "chronos/llm.hpp"
#include "chronos/news.hpp"
#include "chronos/search.hpp"
#include "chronos/timeline.hpp"

namespace chronos {

enum class RunMode { chronos, direct, rewrite };

std::string run_mode_name(RunMode mode);
RunMode parse_run_mode(const std::string& name);

struct PipelineConfig {
    std::size_t m = 5;       // questions per round
    std::size_t n = 30;      // document budget per round
    std::size_t s = 3;       // few-shot examples per questioning call
    std::size_t rounds = 2;  // self-questioning rounds after the context round
    std::size_t l = 23;      // output date budget when no reference sets one
    bool l_from_reference = true;
    RunMode mode = RunMode::chronos;
    bool context_round_timeline = true;  // generate a timeline from round 0
    bool cumulative_generation = false;  // per-round docs (default) vs whole pool
    std::size_t article_word_budget = 600;
    // Document budget for direct/rewrite runs; defaults to n*(rounds+1) when
    // unset. Set it to a chronos session's total for budget-parity baselines.
    std::optional<std::size_t> baseline_budget;
    ChatProfile chat;
};

struct RoundReport {
    int round = 0;
    std::vector<std::string> questions;
    std::vector<std::string> queries;
    std::size_t docs_retrieved = 0;  // after ranked merge, before dedup
    std::size_t docs_kept = 0;
    std::size_t events = 0;
    std::size_t dropped_entries = 0;
    bool failed = false;
    std::string error;
    std::int64_t elapsed_ms = 0;
};

struct RunReport {
    std::string topic;
    std::string mode;
    std::size_t m = 0, n = 0, s = 0, rounds = 0, l = 0;
    bool l_set_from_reference = false;
    std::vector<RoundReport> round_reports;
    std::size_t total_articles = 0;
    std::size_t merged_distinct_dates = 0;
    std::size_t merge_hallucinated_dropped = 0;
    std::size_t merge_truncated_dates = 0;
    bool merge_fallback = false;
    std::vector<std::string> warnings;
    std::size_t llm_calls = 0;
    std::size_t llm_cache_hits = 0;
    std::int64_t elapsed_ms = 0;
};

std::string run_report_to_json(const RunReport& report, int indent = 2);

struct PipelineDeps {
    SearchProvider& search;
    LlmGateway& gateway;
    EmbeddingProvider* embedder = nullptr;  // optional; enables few-shot examples
    const ExamplePool* pool = nullptr;
    // Millisecond clock for report timings; inject a counter for reproducible
    // reports.
    std::function<std::int64_t()> clock;
};

struct PipelineResult {
    Timeline timeline;
    RunReport report;
    // One timeline per round, in round order (failed and empty rounds leave an
    // empty timeline; baselines have exactly one).
    std::vector<Timeline> round_timelines;
};

// Single context-round search: one query, cutoff applied, deduped, first n.
std::vector<Article> fetch_news_context(SearchProvider& search, const Topic& topic,
                                        std::size_t n);

// Full session in the configured mode. Throws only when no round produced any
// usable timeline (individual round failures are recorded and skipped).
PipelineResult run_pipeline(const Topic& topic, const PipelineConfig& cfg, PipelineDeps deps);

}  // namespace chronos
