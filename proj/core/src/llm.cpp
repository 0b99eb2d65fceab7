#include "chronos/llm.hpp"

#include <fstream>

#include <json.hpp>

#include "chronos/errors.hpp"
#include "chronos/hashing.hpp"
#include "chronos/timeline.hpp"

namespace chronos {

namespace {

nlohmann::json request_to_json(const ChatRequest& req) {
    return {
        {"prompt", req.prompt},
        {"temperature", req.temperature},
        {"max_output", req.max_output},
        {"model_tag", req.model_tag},
        {"nonce", req.nonce},
    };
}

}  // namespace

std::string chat_request_hash(const ChatRequest& req) {
    return hex64(fnv1a64(request_to_json(req).dump()));
}

ChatRequest make_request(const ChatProfile& profile, std::string prompt) {
    ChatRequest req;
    req.prompt = std::move(prompt);
    req.temperature = profile.temperature;
    req.max_output = profile.max_output;
    req.model_tag = profile.model_tag;
    req.nonce = profile.nonce;
    return req;
}

std::string ReplayOnlyBackend::complete(const ChatRequest& req) {
    throw BackendError("no live backend: request " + chat_request_hash(req) +
                       " missing from transcript");
}

TranscriptCache::TranscriptCache(std::string path) : path_(std::move(path)) {
    std::ifstream in(path_);
    if (!in) return;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        auto j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) continue;  // torn tail line
        auto hash = j.value("hash", std::string{});
        if (hash.empty() || !j.contains("response")) continue;
        entries_[hash] = j["response"].get<std::string>();
    }
}

std::optional<std::string> TranscriptCache::lookup(const std::string& hash) const {
    std::lock_guard lock(mutex_);
    auto it = entries_.find(hash);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void TranscriptCache::record(const ChatRequest& req, const std::string& hash,
                             const std::string& response) {
    std::lock_guard lock(mutex_);
    if (entries_.contains(hash)) return;
    entries_[hash] = response;
    std::ofstream out(path_, std::ios::app);
    if (!out) throw Error("cannot append to transcript " + path_);
    nlohmann::json j = {
        {"hash", hash},
        {"request", request_to_json(req)},
        {"response", response},
    };
    out << j.dump() << '\n';
}

std::size_t TranscriptCache::size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
}

LlmGateway::LlmGateway(std::shared_ptr<ChatBackend> backend, GatewayOptions options)
    : backend_(std::move(backend)), options_(std::move(options)) {
    if (!backend_) throw Error("gateway needs a backend");
    if (!options_.transcript_path.empty()) {
        cache_ = std::make_unique<TranscriptCache>(options_.transcript_path);
    }
}

std::string LlmGateway::chat(const ChatRequest& req) {
    if (trim(req.prompt).empty()) throw Error("empty prompt");
    if (req.max_output > options_.max_output_ceiling) {
        throw BudgetExceeded("max_output " + std::to_string(req.max_output) + " exceeds ceiling " +
                             std::to_string(options_.max_output_ceiling));
    }
    const auto hash = chat_request_hash(req);
    if (cache_) {
        if (auto hit = cache_->lookup(hash)) {
            ++cache_hits_;
            return *hit;
        }
    }
    auto response = backend_->complete(req);
    ++backend_calls_;
    if (cache_) cache_->record(req, hash, response);
    return response;
}

}  // namespace chronos
