#include "chronos/http_search.hpp"

#ifdef CHRONOS_HAS_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>
#include <json.hpp>

#include <unordered_set>
#include <utility>

#include "chronos/errors.hpp"
#include "chronos/text.hpp"

namespace chronos {

namespace {

// Splits "scheme://host[:port]/path?query" into (origin, path-with-query).
std::pair<std::string, std::string> split_endpoint(const std::string& endpoint) {
    const auto scheme_end = endpoint.find("://");
    if (scheme_end == std::string::npos) {
        throw ProviderError("endpoint missing scheme: " + endpoint);
    }
    const auto path_begin = endpoint.find('/', scheme_end + 3);
    if (path_begin == std::string::npos) return {endpoint, "/"};
    return {endpoint.substr(0, path_begin), endpoint.substr(path_begin)};
}

std::string first_string(const nlohmann::json& j,
                         std::initializer_list<const char*> keys) {
    for (const char* k : keys) {
        auto it = j.find(k);
        if (it != j.end() && it->is_string()) return it->get<std::string>();
    }
    return {};
}

}  // namespace

struct HttpSearchProvider::Impl {
    HttpSearchConfig cfg;

    httplib::Result get_once(const std::string& endpoint, const httplib::Params& params) {
        auto [origin, path] = split_endpoint(endpoint);
        httplib::Client client(origin);
        client.set_connection_timeout(cfg.timeout_seconds);
        client.set_read_timeout(cfg.timeout_seconds);
        client.set_follow_location(true);
        httplib::Headers headers;
        if (!cfg.api_key.empty()) headers.emplace("Authorization", "Bearer " + cfg.api_key);
        std::string full = path;
        if (!params.empty()) {
            full = httplib::append_query_params(path, params);
        }
        return client.Get(full, headers);
    }

    // One GET with the retry policy: sleep and retry on 429, up to
    // cfg.backoff.max_retries extra attempts, then give up.
    std::string get_with_backoff(const std::string& endpoint, const httplib::Params& params) {
        double delay_ms = static_cast<double>(cfg.backoff.initial_delay_ms);
        for (int attempt = 0;; ++attempt) {
            auto res = get_once(endpoint, params);
            if (!res) {
                throw ProviderError("transport failure for " + endpoint + ": " +
                                    httplib::to_string(res.error()));
            }
            if (res->status == 429) {
                if (attempt >= cfg.backoff.max_retries) {
                    throw ProviderError("rate limited after " +
                                        std::to_string(cfg.backoff.max_retries) +
                                        " retries: " + endpoint);
                }
                cfg.backoff.sleep_fn(static_cast<std::int64_t>(delay_ms));
                delay_ms *= cfg.backoff.factor;
                continue;
            }
            if (res->status != 200) {
                throw ProviderError("HTTP " + std::to_string(res->status) + " from " + endpoint);
            }
            return res->body;
        }
    }

    std::string fetch_body(const std::string& url) {
        httplib::Params params{{"url", url}};
        const auto body = get_with_backoff(cfg.reader_endpoint, params);
        auto j = nlohmann::json::parse(body, nullptr, false);
        if (j.is_object()) {
            auto text = first_string(j, {"text", "content", "body"});
            if (!text.empty()) return text;
        }
        return body;
    }
};

HttpSearchProvider::HttpSearchProvider(HttpSearchConfig cfg)
    : impl_(std::make_shared<Impl>(Impl{std::move(cfg)})) {}

std::string HttpSearchProvider::descriptor() const {
    return "http:" + impl_->cfg.endpoint;
}

std::vector<Article> HttpSearchProvider::search(const SearchRequest& req) {
    if (trim(req.query).empty()) throw EmptyQuery("empty web query");
    const int top_k = std::clamp(req.top_k, 1, impl_->cfg.max_top_k);

    httplib::Params params{{"q", req.query}, {"count", std::to_string(top_k)}};
    if (req.cutoff) params.emplace("freshness", req.cutoff->str());
    const auto payload = impl_->get_with_backoff(impl_->cfg.endpoint, params);

    auto j = nlohmann::json::parse(payload, nullptr, false);
    if (j.is_discarded()) throw ProviderError("search response is not JSON");
    const nlohmann::json* results = nullptr;
    if (j.is_array()) {
        results = &j;
    } else if (j.is_object() && j.contains("results") && j["results"].is_array()) {
        results = &j["results"];
    } else {
        throw ProviderError("search response has no results array");
    }

    std::vector<Article> out;
    std::unordered_set<std::string> seen;
    for (const auto& r : *results) {
        if (static_cast<int>(out.size()) >= top_k) break;
        if (!r.is_object()) continue;
        Article a;
        a.id = first_string(r, {"url", "link", "id"});
        if (a.id.empty() || !seen.insert(a.id).second) continue;
        a.title = first_string(r, {"title", "name"});
        a.body = first_string(r, {"snippet", "description", "text"});
        a.source_query = req.query;

        const auto raw_date = first_string(r, {"published", "datePublished", "date"});
        if (auto d = EventDate::try_parse_prefix(raw_date)) {
            a.published = *d;
            if (req.cutoff && *d > *req.cutoff) continue;
        } else {
            a.date_flagged = true;
        }

        if (!impl_->cfg.reader_endpoint.empty()) {
            a.body = impl_->fetch_body(a.id);
        }
        out.push_back(std::move(a));
    }
    return out;
}

}  // namespace chronos
