#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

namespace chronos {

struct ChatRequest {
    std::string prompt;
    double temperature = 0.0;
    int max_output = 4096;
    std::string model_tag;
    int nonce = 0;  // run-index knob; varies the cache key across repeat runs

    bool operator==(const ChatRequest&) const = default;
};

// Stable content hash of the full request, used as the transcript cache key.
std::string chat_request_hash(const ChatRequest& req);

// Per-run decoding knobs shared by every call the pipeline makes.
struct ChatProfile {
    std::string model_tag;
    double temperature = 0.0;
    int max_output = 4096;
    int nonce = 0;
};

ChatRequest make_request(const ChatProfile& profile, std::string prompt);

class ChatBackend {
public:
    virtual ~ChatBackend() = default;
    virtual std::string complete(const ChatRequest& req) = 0;
    virtual std::string descriptor() const = 0;
};

// Backend that refuses every call; pair with a warm transcript cache to replay
// recorded sessions without network access.
class ReplayOnlyBackend : public ChatBackend {
public:
    std::string complete(const ChatRequest& req) override;
    std::string descriptor() const override { return "replay-only"; }
};

// Append-only JSON Lines store of {hash, request, response}. Loading tolerates
// a torn final line so an interrupted run stays replayable.
class TranscriptCache {
public:
    explicit TranscriptCache(std::string path);

    std::optional<std::string> lookup(const std::string& hash) const;
    void record(const ChatRequest& req, const std::string& hash, const std::string& response);
    std::size_t size() const;
    const std::string& path() const { return path_; }

private:
    std::string path_;
    mutable std::mutex mutex_;
    std::unordered_map<std::string, std::string> entries_;
};

struct GatewayOptions {
    int max_output_ceiling = 8192;
    std::string transcript_path;  // empty disables the cache
};

// Front door for all chat completions: budget check, transcript replay, and
// recording of fresh responses.
class LlmGateway {
public:
    LlmGateway(std::shared_ptr<ChatBackend> backend, GatewayOptions options = {});

    std::string chat(const ChatRequest& req);

    std::size_t cache_hits() const { return cache_hits_; }
    std::size_t backend_calls() const { return backend_calls_; }

private:
    std::shared_ptr<ChatBackend> backend_;
    GatewayOptions options_;
    std::unique_ptr<TranscriptCache> cache_;
    std::size_t cache_hits_ = 0;
    std::size_t backend_calls_ = 0;
};

}  // namespace chronos
