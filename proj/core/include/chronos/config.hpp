#pragma once

#include <memory>
#include <optional>
#include <string>

#include "chronos/bm25.hpp"
#include "chronos/embedding.hpp"
#include "chronos/example_pool.hpp"
#include "chronos/llm.hpp"
#include "chronos/pipeline.hpp"
#include "chronos/search.hpp"

namespace chronos {

// Wiring for one run: pipeline knobs plus provider selection. Credentials are
// taken from the environment variables named in *_api_key_env, never from the
// file itself.
struct RunnerConfig {
    PipelineConfig pipeline;

    struct SearchSpec {
        std::string kind = "fixture";  // fixture | bm25 | http
        std::string fixture_path;
        std::string index_dir;
        std::string endpoint;
        std::string reader_endpoint;
        std::string api_key_env = "CHRONOS_SEARCH_API_KEY";
        int max_top_k = kDefaultMaxTopK;
    } search;

    struct LlmSpec {
        std::string kind = "replay";  // replay | http
        std::string endpoint;
        std::string api_key_env = "CHRONOS_LLM_API_KEY";
        int max_output_ceiling = 8192;
    } llm;

    struct EmbeddingSpec {
        std::string kind = "hashing";  // hashing | http
        std::size_t dimension = 256;
        std::string endpoint;
        std::string model;
        std::string api_key_env = "CHRONOS_EMBED_API_KEY";
    } embedding;

    std::string pool_path;  // optional example pool
    std::string cache_dir;  // transcript + search cache location
};

RunnerConfig load_runner_config(const std::string& path);
RunnerConfig parse_runner_config(const std::string& json_text, const std::string& origin);

// Instantiated providers per a RunnerConfig. The search provider is wrapped
// in a record/replay cache when cache_dir is set.
struct ProviderBundle {
    std::shared_ptr<SearchProvider> search;
    std::shared_ptr<ChatBackend> backend;
    std::unique_ptr<LlmGateway> gateway;
    std::unique_ptr<EmbeddingProvider> embedder;
    std::optional<ExamplePool> pool;

    PipelineDeps deps();
};

ProviderBundle make_providers(const RunnerConfig& cfg);

}  // namespace chronos
