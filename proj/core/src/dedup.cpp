#include "chronos/dedup.hpp"

#include <string>

#include "chronos/hashing.hpp"
#include "chronos/text.hpp"

namespace chronos {

namespace {

constexpr std::size_t kShingleSize = 8;

std::uint64_t hash_gram(const std::vector<std::string>& words, std::size_t begin,
                        std::size_t count) {
    std::string joined;
    for (std::size_t i = 0; i < count; ++i) {
        if (i) joined.push_back('\x1f');
        joined += words[begin + i];
    }
    return fnv1a64(joined);
}

}  // namespace

std::unordered_set<std::uint64_t> body_fingerprint(std::string_view body) {
    const auto words = tokenize(body, TokenizerConfig{});
    std::unordered_set<std::uint64_t> fp;
    if (words.empty()) return fp;
    if (words.size() < kShingleSize) {
        fp.insert(hash_gram(words, 0, words.size()));
        return fp;
    }
    for (std::size_t i = 0; i + kShingleSize <= words.size(); ++i) {
        fp.insert(hash_gram(words, i, kShingleSize));
    }
    return fp;
}

double fingerprint_containment(const std::unordered_set<std::uint64_t>& f,
                               const std::unordered_set<std::uint64_t>& other) {
    if (f.empty()) return 0.0;
    std::size_t shared = 0;
    for (auto h : f) {
        if (other.contains(h)) ++shared;
    }
    return static_cast<double>(shared) / static_cast<double>(f.size());
}

std::vector<Article> dedup_articles(const std::vector<Article>& pool,
                                    const std::vector<Article>& incoming,
                                    double threshold) {
    std::unordered_set<std::string> seen_ids;
    std::vector<std::unordered_set<std::uint64_t>> fingerprints;
    seen_ids.reserve(pool.size() + incoming.size());
    fingerprints.reserve(pool.size() + incoming.size());
    for (const auto& a : pool) {
        seen_ids.insert(a.id);
        fingerprints.push_back(body_fingerprint(a.body));
    }

    std::vector<Article> kept;
    for (const auto& a : incoming) {
        if (seen_ids.contains(a.id)) continue;
        auto fp = body_fingerprint(a.body);
        bool duplicate = false;
        for (const auto& existing : fingerprints) {
            if (fingerprint_containment(fp, existing) >= threshold) {
                duplicate = true;
                break;
            }
        }
        if (duplicate) continue;
        seen_ids.insert(a.id);
        fingerprints.push_back(std::move(fp));
        kept.push_back(a);
    }
    return kept;
}

}  // namespace chronos
