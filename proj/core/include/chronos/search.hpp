#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chronos/news.hpp"

namespace chronos {

struct SearchRequest {
    std::string query;
    std::optional<EventDate> cutoff;  // freshness bound: drop results published after it
    int top_k = 10;
};

// Requests above this are clamped unless a provider is configured otherwise.
inline constexpr int kDefaultMaxTopK = 50;

class SearchProvider {
public:
    virtual ~SearchProvider() = default;

    // Up to top_k articles for the query, already deduplicated by id and
    // filtered to published <= cutoff (articles whose date could not be
    // parsed are kept and flagged). Throws EmptyQuery / ProviderError.
    virtual std::vector<Article> search(const SearchRequest& req) = 0;

    virtual std::string descriptor() const = 0;
};

// Deterministic provider backed by a JSON fixture file:
//   {"<query>": [{"id": ..., "title": ..., "body": ..., "published": "YYYY-MM-DD"}, ...]}
// Unknown queries yield no results. Used by tests and offline runs.
class FixtureSearchProvider : public SearchProvider {
public:
    explicit FixtureSearchProvider(const std::string& fixture_path);

    std::vector<Article> search(const SearchRequest& req) override;
    std::string descriptor() const override;

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

// Decorator that records search results to a JSON Lines cache keyed by a
// request hash and replays them on later identical requests.
class CachedSearchProvider : public SearchProvider {
public:
    CachedSearchProvider(std::shared_ptr<SearchProvider> inner, std::string cache_path);

    std::vector<Article> search(const SearchRequest& req) override;
    std::string descriptor() const override;

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

// Merge per-query ranked result lists into one list: round-robin by rank so
// every query's best hits come first, then dedup by id, preserving order.
std::vector<Article> merge_ranked(const std::vector<std::vector<Article>>& per_query);

}  // namespace chronos
