#pragma once

#include <map>
#include <string>
#include <vector>

#include "chronos/news.hpp"

namespace chronos {

constexpr std::size_t kArticleWordBudget = 600;

struct PromptTemplate {
    std::string name;
    std::string body;
    std::vector<std::string> placeholders;  // substitution slots; all must be bound
};

// The four instruction templates: self_question, rewrite, generate, merge.
const PromptTemplate& prompt_template(const std::string& name);

// Byte-exact single-pass substitution. Brace groups that are not declared
// placeholders (e.g. the JSON shape in the output-format line) pass through
// untouched. Throws MissingBinding for a declared placeholder with no binding.
std::string render(const PromptTemplate& tmpl,
                   const std::map<std::string, std::string>& bindings);

// "[id] title (published): body" blocks, one per article, bodies truncated to
// `word_budget` words.
std::string serialize_docs(const std::vector<Article>& docs,
                           std::size_t word_budget = kArticleWordBudget);

std::string truncate_words(const std::string& text, std::size_t word_budget);

}  // namespace chronos
