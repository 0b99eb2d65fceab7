#include "chronos/questioning.hpp"

#include <unordered_set>

#include "chronos/errors.hpp"
#include "chronos/parsing.hpp"
#include "chronos/prompts.hpp"
#include "chronos/text.hpp"

namespace chronos {

namespace {

constexpr const char* kQuestionReminder =
    "\n\nReminder: respond with only a JSON array of question strings, e.g. "
    "[\"Question_1\", \"Question_2\", ...]";
constexpr const char* kRewriteReminder =
    "\n\nReminder: respond with only a python list of query strings, e.g. "
    "[\"query one\", \"query two\"]";
constexpr std::size_t kMaxRewrites = 3;
constexpr std::size_t kMaxQueryChars = 120;

// Parse, retrying once with a format reminder appended to the prompt.
std::vector<std::string> chat_for_list(LlmGateway& gateway, const ChatProfile& profile,
                                       const std::string& prompt, const char* reminder) {
    const auto raw = gateway.chat(make_request(profile, prompt));
    try {
        return parse_question_list(raw, 1);
    } catch (const UnparseableOutput&) {
        const auto retry_raw = gateway.chat(make_request(profile, prompt + reminder));
        return parse_question_list(retry_raw, 1);
    }
}

}  // namespace

std::string normalize_question(std::string_view question) {
    std::string out;
    for (const auto& token : tokenize(question, TokenizerConfig{})) {
        if (!out.empty()) out.push_back(' ');
        out += token;
    }
    return out;
}

std::string format_examples(const std::vector<PoolEntry>& examples) {
    std::string out;
    for (std::size_t i = 0; i < examples.size(); ++i) {
        if (i) out += "\n\n";
        out += "Target News: " + examples[i].topic_query + "\nQuestions: " +
               format_question_list(examples[i].questions);
    }
    return out;
}

std::string truncate_at_word_boundary(const std::string& text, std::size_t max_chars) {
    if (text.size() <= max_chars) return text;
    auto cut = text.rfind(' ', max_chars);
    if (cut == std::string::npos || cut == 0) cut = max_chars;
    return trim(text.substr(0, cut));
}

std::vector<std::string> self_question(LlmGateway& gateway, const ChatProfile& profile,
                                       const Topic& topic, const std::vector<Article>& database,
                                       const std::vector<std::string>& asked,
                                       const std::vector<PoolEntry>& examples, std::size_t m,
                                       std::size_t article_word_budget) {
    const auto prompt = render(prompt_template("self_question"),
                               {
                                   {"Retrieved Examples", format_examples(examples)},
                                   {"docs", serialize_docs(database, article_word_budget)},
                                   {"news", topic.query},
                                   {"questions", format_question_list(asked)},
                               });
    const auto parsed = chat_for_list(gateway, profile, prompt, kQuestionReminder);

    std::unordered_set<std::string> seen;
    for (const auto& a : asked) seen.insert(normalize_question(a));
    std::vector<std::string> survivors;
    for (const auto& q : parsed) {
        auto norm = normalize_question(q);
        if (norm.empty() || !seen.insert(std::move(norm)).second) continue;
        survivors.push_back(q);
    }
    if (survivors.size() < m) {
        throw InsufficientQuestions("needed " + std::to_string(m) + " fresh questions, got " +
                                    std::to_string(survivors.size()));
    }
    survivors.resize(m);
    return survivors;
}

RewriteResult rewrite_question(LlmGateway& gateway, const ChatProfile& profile,
                               const std::string& question) {
    const auto prompt = render(prompt_template("rewrite"), {{"question", question}});
    RewriteResult result;
    std::vector<std::string> parsed;
    try {
        parsed = chat_for_list(gateway, profile, prompt, kRewriteReminder);
    } catch (const UnparseableOutput&) {
        result.queries.push_back(question);
        result.degraded = true;
        return result;
    }
    for (const auto& q : parsed) {
        if (result.queries.size() >= kMaxRewrites) break;
        auto query = truncate_at_word_boundary(q, kMaxQueryChars);
        if (!query.empty()) result.queries.push_back(std::move(query));
    }
    if (result.queries.empty()) {
        result.queries.push_back(question);
        result.degraded = true;
    }
    return result;
}

}  // namespace chronos
