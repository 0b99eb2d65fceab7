#pragma once

#include <memory>
#include <string>

#include "chronos/http_search.hpp"
#include "chronos/llm.hpp"

namespace chronos {

struct HttpLlmConfig {
    std::string endpoint;  // chat-completions style URL
    std::string api_key;
    int timeout_seconds = 120;
    BackoffPolicy backoff;
};

class HttpChatBackend : public ChatBackend {
public:
    explicit HttpChatBackend(HttpLlmConfig cfg);
    ~HttpChatBackend() override;

    std::string complete(const ChatRequest& req) override;
    std::string descriptor() const override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace chronos
