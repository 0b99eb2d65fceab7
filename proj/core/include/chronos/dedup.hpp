#pragma once

#include <cstdint>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "chronos/news.hpp"

namespace chronos {

// Set of hashed word 8-gram shingles; bodies shorter than 8 tokens hash as one
// whole-body shingle.
std::unordered_set<std::uint64_t> body_fingerprint(std::string_view body);

// Fraction of `f`'s shingles also present in `other`. 0 when `f` is empty.
double fingerprint_containment(const std::unordered_set<std::uint64_t>& f,
                               const std::unordered_set<std::uint64_t>& other);

// Filters `incoming` against `pool` (and against earlier kept incoming items):
// drops ids already seen and near-duplicate bodies whose fingerprint containment
// in any kept article reaches `threshold`. Preserves incoming order.
std::vector<Article> dedup_articles(const std::vector<Article>& pool,
                                    const std::vector<Article>& incoming,
                                    double threshold = 0.9);

}  // namespace chronos
