#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace chronos {

// Tokenizer options recorded in every metric report so scores are reproducible.
struct TokenizerConfig {
    bool lowercase = true;
    bool stemming = false;
    bool stopword_removal = false;

    friend bool operator==(const TokenizerConfig&, const TokenizerConfig&) = default;
};

// Splits on any run of non-alphanumeric characters. Bytes >= 0x80 are treated
// as word characters so multibyte UTF-8 words survive intact; lowercasing is
// ASCII-only.
std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& cfg = {});

// Number of sentences: segments ended by '.', '!' or '?' followed by
// whitespace or end of text. A trailing segment without terminal punctuation
// counts as one sentence; segments with no visible content do not count.
std::size_t count_sentences(std::string_view text);

// Classic Porter (1980) stemmer. Input is assumed lowercase ASCII; tokens
// with non-letter characters are returned unchanged.
std::string porter_stem(std::string word);

bool is_stopword(std::string_view token);

// n-gram multiset, grams joined with '\x1f'.
using NgramCounts = std::unordered_map<std::string, std::int64_t>;

NgramCounts ngram_counts(const std::vector<std::string>& tokens, std::size_t n);

std::int64_t total_count(const NgramCounts& counts);

// Sum over grams of min(count in a, count in b).
std::int64_t clipped_overlap(const NgramCounts& a, const NgramCounts& b);

}  // namespace chronos
