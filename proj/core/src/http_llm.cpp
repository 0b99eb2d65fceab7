#include "chronos/http_llm.hpp"

#ifdef CHRONOS_HAS_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>
#include <json.hpp>

#include "chronos/errors.hpp"

namespace chronos {

namespace {

std::pair<std::string, std::string> split_endpoint(const std::string& endpoint) {
    const auto scheme_end = endpoint.find("://");
    if (scheme_end == std::string::npos) {
        throw BackendError("endpoint missing scheme: " + endpoint);
    }
    const auto path_begin = endpoint.find('/', scheme_end + 3);
    if (path_begin == std::string::npos) return {endpoint, "/"};
    return {endpoint.substr(0, path_begin), endpoint.substr(path_begin)};
}

}  // namespace

struct HttpChatBackend::Impl {
    HttpLlmConfig cfg;
};

HttpChatBackend::HttpChatBackend(HttpLlmConfig cfg)
    : impl_(std::make_unique<Impl>(Impl{std::move(cfg)})) {}

HttpChatBackend::~HttpChatBackend() = default;

std::string HttpChatBackend::descriptor() const {
    return "http:" + impl_->cfg.endpoint;
}

std::string HttpChatBackend::complete(const ChatRequest& req) {
    const auto& cfg = impl_->cfg;
    auto [origin, path] = split_endpoint(cfg.endpoint);

    nlohmann::json payload = {
        {"model", req.model_tag},
        {"messages", nlohmann::json::array({{{"role", "user"}, {"content", req.prompt}}})},
        {"temperature", req.temperature},
        {"max_tokens", req.max_output},
    };
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
            throw BackendError("transport failure for " + cfg.endpoint + ": " +
                               httplib::to_string(res.error()));
        }
        if (res->status == 429) {
            if (attempt >= cfg.backoff.max_retries) {
                throw BackendError("rate limited after " + std::to_string(cfg.backoff.max_retries) +
                                   " retries: " + cfg.endpoint);
            }
            cfg.backoff.sleep_fn(static_cast<std::int64_t>(delay_ms));
            delay_ms *= cfg.backoff.factor;
            continue;
        }
        if (res->status != 200) {
            throw BackendError("HTTP " + std::to_string(res->status) + " from " + cfg.endpoint +
                               ": " + res->body.substr(0, 200));
        }
        auto j = nlohmann::json::parse(res->body, nullptr, false);
        if (j.is_discarded()) throw BackendError("completion response is not JSON");
        try {
            return j.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const nlohmann::json::exception&) {
            throw BackendError("completion response missing choices[0].message.content");
        }
    }
}

}  // namespace chronos
