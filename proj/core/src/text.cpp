#include "chronos/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_set>

namespace chronos {

namespace {

bool is_word_char(unsigned char c) {
    return std::isalnum(c) || c >= 0x80;
}

const std::unordered_set<std::string_view>& stopwords() {
    // Compact English function-word list; enough to strip glue words from
    // news prose without touching content terms.
    static const std::unordered_set<std::string_view> kStopwords = {
        "a", "an", "and", "are", "as", "at", "be", "been", "but", "by",
        "for", "from", "had", "has", "have", "he", "her", "his", "in",
        "is", "it", "its", "of", "on", "or", "she", "that", "the",
        "their", "them", "they", "this", "to", "was", "were", "which",
        "who", "will", "with",
    };
    return kStopwords;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& cfg) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        if (current.empty()) return;
        if (!cfg.stopword_removal || !is_stopword(current)) {
            tokens.push_back(cfg.stemming ? porter_stem(current) : current);
        }
        current.clear();
    };
    for (char ch : text) {
        const auto uc = static_cast<unsigned char>(ch);
        if (is_word_char(uc)) {
            current.push_back(cfg.lowercase ? static_cast<char>(std::tolower(uc)) : ch);
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

std::size_t count_sentences(std::string_view text) {
    std::size_t sentences = 0;
    bool has_content = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const auto c = static_cast<unsigned char>(text[i]);
        const bool terminator =
            (c == '.' || c == '!' || c == '?') &&
            (i + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[i + 1])));
        if (terminator) {
            if (has_content) ++sentences;
            has_content = false;
        } else if (!std::isspace(c)) {
            has_content = true;
        }
    }
    if (has_content) ++sentences;
    return sentences;
}

bool is_stopword(std::string_view token) {
    return stopwords().contains(token);
}

NgramCounts ngram_counts(const std::vector<std::string>& tokens, std::size_t n) {
    NgramCounts counts;
    if (n == 0 || tokens.size() < n) return counts;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        std::string gram = tokens[i];
        for (std::size_t j = 1; j < n; ++j) {
            gram.push_back('\x1f');
            gram += tokens[i + j];
        }
        ++counts[gram];
    }
    return counts;
}

std::int64_t total_count(const NgramCounts& counts) {
    std::int64_t total = 0;
    for (const auto& [gram, c] : counts) total += c;
    return total;
}

std::int64_t clipped_overlap(const NgramCounts& a, const NgramCounts& b) {
    const NgramCounts& small = a.size() <= b.size() ? a : b;
    const NgramCounts& large = a.size() <= b.size() ? b : a;
    std::int64_t overlap = 0;
    for (const auto& [gram, c] : small) {
        auto it = large.find(gram);
        if (it != large.end()) overlap += std::min(c, it->second);
    }
    return overlap;
}

}  // namespace chronos
