#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "chronos/example_pool.hpp"
#include "chronos/llm.hpp"
#include "chronos/news.hpp"
#include "chronos/search.hpp"

namespace chronos {

// Scores a question subset; implementations may throw, which skips that
// candidate for the step.
using CiFn = std::function<double(const std::vector<std::string>&)>;

struct GreedyMarginal {
    std::size_t candidate = 0;  // index into the candidate list
    double ci = 0.0;
    bool failed = false;
};

struct GreedyStep {
    std::size_t chosen = 0;
    double ci = 0.0;
    bool padded = false;  // slot filled by index order, no strict improvement
    std::vector<GreedyMarginal> marginals;
};

struct GreedySelection {
    std::vector<std::string> selected;  // in selection order
    std::vector<GreedyStep> trace;
    std::size_t evaluations = 0;  // underlying CiFn calls (cache misses)
};

// Greedy forward selection of at most m questions maximizing the score.
// Each step picks the strict-improvement argmax (ties by candidate index);
// once no candidate strictly improves, remaining slots fill by index order.
// Subsets are cached under a canonical (sorted) key, so no distinct subset is
// scored twice.
GreedySelection greedy_select(const std::vector<std::string>& candidates, std::size_t m,
                              const CiFn& ci);

struct CiDeps {
    LlmGateway& gateway;
    ChatProfile chat;
    SearchProvider& search;
    std::size_t article_word_budget = 600;
};

// Date F1 of the timeline generated from the documents a question set
// retrieves (rewrite -> search -> dedup -> first N -> generate) against the
// topic's reference timeline. Throws MissingReference without a reference.
double chrono_informativeness(const std::vector<std::string>& questions, const Topic& topic,
                              std::size_t n, CiDeps deps);

struct PoolBuildOptions {
    std::size_t m = 5;
    std::size_t n = 30;
    std::size_t candidate_count = 50;
    std::size_t batch_size = 5;  // questions per generation batch
    std::size_t article_word_budget = 600;
};

struct TopicBuildResult {
    std::string topic;
    std::vector<std::string> selected;
    double ci = 0.0;
    std::size_t candidates = 0;
    std::size_t evaluations = 0;
};

struct PoolBuildReport {
    std::vector<TopicBuildResult> built;
    std::vector<std::pair<std::string, std::string>> skipped;  // (topic, reason)
};

std::string pool_build_report_to_json(const PoolBuildReport& report, int indent = 2);

struct PoolBuildDeps {
    LlmGateway& gateway;
    ChatProfile chat;
    SearchProvider& search;
    EmbeddingProvider& embedder;
};

struct PoolBuildResult {
    ExamplePool pool;
    PoolBuildReport report;
};

// Offline pool construction: per topic, generate ~candidate_count questions
// against the directly-searched news context, select the top m by greedy CI,
// and store (topic, questions, embedding). Topics that fail are skipped with
// a reason in the report.
PoolBuildResult build_pool(const std::vector<Topic>& topics, const PoolBuildOptions& options,
                           PoolBuildDeps deps);

}  // namespace chronos
