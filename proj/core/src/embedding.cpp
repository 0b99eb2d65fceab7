#include "chronos/embedding.hpp"

#ifdef CHRONOS_HAS_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>
#include <json.hpp>

#include <cmath>

#include "chronos/errors.hpp"
#include "chronos/hashing.hpp"
#include "chronos/text.hpp"

namespace chronos {

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) {
        throw Error("cosine: dimension mismatch " + std::to_string(a.size()) + " vs " +
                    std::to_string(b.size()));
    }
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

namespace {

void l2_normalize(std::vector<double>& v) {
    double norm = 0.0;
    for (double x : v) norm += x * x;
    if (norm == 0.0) return;
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
}

}  // namespace

HashingEmbedder::HashingEmbedder(std::size_t dimension) : dimension_(dimension) {
    if (dimension_ == 0) throw Error("embedding dimension must be positive");
}

std::vector<double> HashingEmbedder::embed(const std::string& text) {
    std::vector<double> v(dimension_, 0.0);
    for (const auto& token : tokenize(text, TokenizerConfig{})) {
        const auto h = fnv1a64(token);
        const auto bucket = static_cast<std::size_t>(h % dimension_);
        const double sign = ((h >> 32) & 1) ? 1.0 : -1.0;
        v[bucket] += sign;
    }
    l2_normalize(v);
    return v;
}

std::string HashingEmbedder::descriptor() const {
    return "hashing-" + std::to_string(dimension_);
}

namespace {

std::pair<std::string, std::string> split_endpoint(const std::string& endpoint) {
    const auto scheme_end = endpoint.find("://");
    if (scheme_end == std::string::npos) {
        throw ProviderError("endpoint missing scheme: " + endpoint);
    }
    const auto path_begin = endpoint.find('/', scheme_end + 3);
    if (path_begin == std::string::npos) return {endpoint, "/"};
    return {endpoint.substr(0, path_begin), endpoint.substr(path_begin)};
}

}  // namespace

struct HttpEmbeddingProvider::Impl {
    HttpEmbeddingConfig cfg;
};

HttpEmbeddingProvider::HttpEmbeddingProvider(HttpEmbeddingConfig cfg)
    : impl_(std::make_unique<Impl>(Impl{std::move(cfg)})) {
    if (impl_->cfg.dimension == 0) throw Error("embedding dimension must be positive");
}

HttpEmbeddingProvider::~HttpEmbeddingProvider() = default;

std::size_t HttpEmbeddingProvider::dimension() const { return impl_->cfg.dimension; }

std::string HttpEmbeddingProvider::descriptor() const {
    return "http:" + impl_->cfg.endpoint + "#" + impl_->cfg.model;
}

std::vector<double> HttpEmbeddingProvider::embed(const std::string& text) {
    const auto& cfg = impl_->cfg;
    auto [origin, path] = split_endpoint(cfg.endpoint);

    nlohmann::json payload = {{"input", text}};
    if (!cfg.model.empty()) payload["model"] = cfg.model;
    const auto body = payload.dump();

    double delay_ms = static_cast<double>(cfg.backoff.initial_delay_ms);
    for (int attempt = 0;; ++attempt) {
        httplib::Client client(origin);
        client.set_connection_timeout(cfg.timeout_seconds);
        client.set_read_timeout(cfg.timeout_seconds);
        httplib::Headers headers;
        if (!cfg.api_key.empty()) headers.emplace("Authorization", "Bearer " + cfg.api_key);
        auto res = client.Post(path, headers, body, "application/json");

        if (!res) {
            throw ProviderError("transport failure for " + cfg.endpoint + ": " +
                                httplib::to_string(res.error()));
        }
        if (res->status == 429) {
            if (attempt >= cfg.backoff.max_retries) {
                throw ProviderError("rate limited after " + std::to_string(cfg.backoff.max_retries) +
                                    " retries: " + cfg.endpoint);
            }
            cfg.backoff.sleep_fn(static_cast<std::int64_t>(delay_ms));
            delay_ms *= cfg.backoff.factor;
            continue;
        }
        if (res->status != 200) {
            throw ProviderError("HTTP " + std::to_string(res->status) + " from " + cfg.endpoint);
        }
        auto j = nlohmann::json::parse(res->body, nullptr, false);
        if (j.is_discarded()) throw ProviderError("embedding response is not JSON");

        const nlohmann::json* vec = nullptr;
        if (j.is_object() && j.contains("data") && j["data"].is_array() && !j["data"].empty() &&
            j["data"][0].contains("embedding")) {
            vec = &j["data"][0]["embedding"];
        } else if (j.is_object() && j.contains("embedding")) {
            vec = &j["embedding"];
        } else if (j.is_array()) {
            vec = &j;
        }
        if (!vec || !vec->is_array()) throw ProviderError("embedding response missing vector");
        std::vector<double> out;
        out.reserve(vec->size());
        for (const auto& x : *vec) out.push_back(x.get<double>());
        if (out.size() != cfg.dimension) {
            throw ProviderError("embedding dimension " + std::to_string(out.size()) +
                                " != configured " + std::to_string(cfg.dimension));
        }
        l2_normalize(out);
        return out;
    }
}

}  // namespace chronos
