#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "chronos/example_pool.hpp"
#include "chronos/llm.hpp"
#include "chronos/news.hpp"

namespace chronos {

// Case-folded, punctuation-stripped form used for near-duplicate checks.
std::string normalize_question(std::string_view question);

// "Target News: <topic>\nQuestions: <JSON array>" blocks for the
// {Retrieved Examples} prompt slot.
std::string format_examples(const std::vector<PoolEntry>& examples);

// Cuts at the last word boundary within max_chars (hard cut if one word).
std::string truncate_at_word_boundary(const std::string& text, std::size_t max_chars);

// One self-questioning call: asks for questions the current database cannot
// answer, drops near-duplicates of `asked` (and of each other), returns the
// first m survivors. Retries once with a format reminder on unparseable
// output; throws InsufficientQuestions when fewer than m survive.
std::vector<std::string> self_question(LlmGateway& gateway, const ChatProfile& profile,
                                       const Topic& topic, const std::vector<Article>& database,
                                       const std::vector<std::string>& asked,
                                       const std::vector<PoolEntry>& examples, std::size_t m,
                                       std::size_t article_word_budget);

struct RewriteResult {
    std::vector<std::string> queries;  // 1..3 entries
    bool degraded = false;             // true when output stayed unparseable and
                                       // the raw question was used as the query
};

// Rewrites a question into 2-3 focused search queries (clamped to 3, each at
// most 120 chars at a word boundary). Falls back to the question itself after
// a failed repair retry.
RewriteResult rewrite_question(LlmGateway& gateway, const ChatProfile& profile,
                               const std::string& question);

}  // namespace chronos
