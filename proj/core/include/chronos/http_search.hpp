#pragma once

#include <functional>
#include <memory>
#include <string>

#include "chronos/search.hpp"

namespace chronos {

// Retry policy for rate-limited providers: exponential backoff, then give up.
struct BackoffPolicy {
    int max_retries = 5;
    int initial_delay_ms = 1000;
    double factor = 2.0;
    // Injection point so tests do not sleep for real.
    std::function<void(int /*ms*/)> sleep_fn;
};

struct HttpSearchConfig {
    // Search API endpoint; called as GET {endpoint}?q=<query>&count=<k>[&freshness=<date>].
    // Expected response: {"results": [{"url", "title", "snippet"?, "published"?}, ...]}.
    std::string endpoint;
    // Optional page-reader endpoint; called as GET {reader_endpoint}<url> and
    // expected to return the page's extracted text. When empty, snippets are
    // used as bodies.
    std::string reader_endpoint;
    std::string api_key;          // sent as Authorization: Bearer <key> when nonempty
    int max_top_k = kDefaultMaxTopK;
    int timeout_seconds = 30;
    BackoffPolicy backoff;
};

// Open-domain provider: search API + page reader behind the SearchProvider
// contract. Results are deduplicated by URL; articles published after the
// cutoff are dropped; unparseable publication dates are kept but flagged.
class HttpSearchProvider : public SearchProvider {
public:
    explicit HttpSearchProvider(HttpSearchConfig config);

    std::vector<Article> search(const SearchRequest& req) override;
    std::string descriptor() const override;

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

}  // namespace chronos
