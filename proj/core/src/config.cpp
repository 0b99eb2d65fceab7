#include "chronos/config.hpp"

#include <cstdlib>
#include <filesystem>

#include <json.hpp>

#include "chronos/errors.hpp"
#include "chronos/http_llm.hpp"
#include "chronos/http_search.hpp"
#include "chronos/timeline.hpp"

namespace chronos {

namespace {

std::string env_or_empty(const std::string& name) {
    if (name.empty()) return {};
    const char* value = std::getenv(name.c_str());
    return value ? value : std::string{};
}

void read_pipeline(const nlohmann::json& j, PipelineConfig& p) {
    p.m = j.value("m", p.m);
    p.n = j.value("N", j.value("n", p.n));
    p.s = j.value("s", p.s);
    p.rounds = j.value("rounds", p.rounds);
    p.l = j.value("l", p.l);
    p.l_from_reference = j.value("l_from_reference", p.l_from_reference);
    if (j.contains("mode")) p.mode = parse_run_mode(j["mode"].get<std::string>());
    p.context_round_timeline = j.value("context_round_timeline", p.context_round_timeline);
    p.cumulative_generation = j.value("cumulative_generation", p.cumulative_generation);
    p.article_word_budget = j.value("article_word_budget", p.article_word_budget);
    if (j.contains("baseline_budget")) p.baseline_budget = j["baseline_budget"].get<std::size_t>();
    p.chat.model_tag = j.value("model_tag", p.chat.model_tag);
    p.chat.temperature = j.value("temperature", p.chat.temperature);
    p.chat.max_output = j.value("max_output", p.chat.max_output);
    p.chat.nonce = j.value("nonce", p.chat.nonce);
}

}  // namespace

RunnerConfig parse_runner_config(const std::string& json_text, const std::string& origin) {
    auto j = nlohmann::json::parse(json_text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw SchemaError("config " + origin + " is not a JSON object");
    }
    RunnerConfig cfg;
    try {
        read_pipeline(j, cfg.pipeline);
        if (j.contains("search")) {
            const auto& s = j["search"];
            cfg.search.kind = s.value("kind", cfg.search.kind);
            cfg.search.fixture_path = s.value("fixture_path", cfg.search.fixture_path);
            cfg.search.index_dir = s.value("index_dir", cfg.search.index_dir);
            cfg.search.endpoint = s.value("endpoint", cfg.search.endpoint);
            cfg.search.reader_endpoint = s.value("reader_endpoint", cfg.search.reader_endpoint);
            cfg.search.api_key_env = s.value("api_key_env", cfg.search.api_key_env);
            cfg.search.max_top_k = s.value("max_top_k", cfg.search.max_top_k);
        }
        if (j.contains("llm")) {
            const auto& s = j["llm"];
            cfg.llm.kind = s.value("kind", cfg.llm.kind);
            cfg.llm.endpoint = s.value("endpoint", cfg.llm.endpoint);
            cfg.llm.api_key_env = s.value("api_key_env", cfg.llm.api_key_env);
            cfg.llm.max_output_ceiling = s.value("max_output_ceiling", cfg.llm.max_output_ceiling);
        }
        if (j.contains("embedding")) {
            const auto& s = j["embedding"];
            cfg.embedding.kind = s.value("kind", cfg.embedding.kind);
            cfg.embedding.dimension = s.value("dimension", cfg.embedding.dimension);
            cfg.embedding.endpoint = s.value("endpoint", cfg.embedding.endpoint);
            cfg.embedding.model = s.value("model", cfg.embedding.model);
            cfg.embedding.api_key_env = s.value("api_key_env", cfg.embedding.api_key_env);
        }
        cfg.pool_path = j.value("pool_path", cfg.pool_path);
        cfg.cache_dir = j.value("cache_dir", cfg.cache_dir);
    } catch (const SchemaError&) {
        throw;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError("config " + origin + ": " + e.what());
    } catch (const Error& e) {
        // e.g. an unknown run-mode name: a schema problem from the caller's view
        throw SchemaError("config " + origin + ": " + e.what());
    }
    return cfg;
}

RunnerConfig load_runner_config(const std::string& path) {
    return parse_runner_config(read_text_file(path), path);
}

PipelineDeps ProviderBundle::deps() {
    PipelineDeps d{*search, *gateway, embedder.get(), pool ? &*pool : nullptr, {}};
    return d;
}

ProviderBundle make_providers(const RunnerConfig& cfg) {
    ProviderBundle bundle;
    namespace fs = std::filesystem;
    if (!cfg.cache_dir.empty()) fs::create_directories(cfg.cache_dir);

    std::shared_ptr<SearchProvider> inner;
    if (cfg.search.kind == "fixture") {
        if (cfg.search.fixture_path.empty()) {
            throw SchemaError("search.fixture_path required for fixture provider");
        }
        inner = std::make_shared<FixtureSearchProvider>(cfg.search.fixture_path);
    } else if (cfg.search.kind == "bm25") {
        if (cfg.search.index_dir.empty()) {
            throw SchemaError("search.index_dir required for bm25 provider");
        }
        inner = std::make_shared<Bm25SearchProvider>(CorpusIndex::load(cfg.search.index_dir));
    } else if (cfg.search.kind == "http") {
        HttpSearchConfig hs;
        hs.endpoint = cfg.search.endpoint;
        hs.reader_endpoint = cfg.search.reader_endpoint;
        hs.api_key = env_or_empty(cfg.search.api_key_env);
        hs.max_top_k = cfg.search.max_top_k;
        inner = std::make_shared<HttpSearchProvider>(std::move(hs));
    } else {
        throw SchemaError("unknown search provider kind: " + cfg.search.kind);
    }
    if (!cfg.cache_dir.empty()) {
        bundle.search = std::make_shared<CachedSearchProvider>(
            inner, (fs::path(cfg.cache_dir) / "search_cache.jsonl").string());
    } else {
        bundle.search = inner;
    }

    if (cfg.llm.kind == "replay") {
        bundle.backend = std::make_shared<ReplayOnlyBackend>();
    } else if (cfg.llm.kind == "http") {
        HttpLlmConfig hl;
        hl.endpoint = cfg.llm.endpoint;
        hl.api_key = env_or_empty(cfg.llm.api_key_env);
        bundle.backend = std::make_shared<HttpChatBackend>(std::move(hl));
    } else {
        throw SchemaError("unknown llm backend kind: " + cfg.llm.kind);
    }
    GatewayOptions opts;
    opts.max_output_ceiling = cfg.llm.max_output_ceiling;
    if (!cfg.cache_dir.empty()) {
        opts.transcript_path = (fs::path(cfg.cache_dir) / "transcript.jsonl").string();
    }
    bundle.gateway = std::make_unique<LlmGateway>(bundle.backend, std::move(opts));

    if (cfg.embedding.kind == "hashing") {
        bundle.embedder = std::make_unique<HashingEmbedder>(cfg.embedding.dimension);
    } else if (cfg.embedding.kind == "http") {
        HttpEmbeddingConfig he;
        he.endpoint = cfg.embedding.endpoint;
        he.model = cfg.embedding.model;
        he.dimension = cfg.embedding.dimension;
        he.api_key = env_or_empty(cfg.embedding.api_key_env);
        bundle.embedder = std::make_unique<HttpEmbeddingProvider>(std::move(he));
    } else {
        throw SchemaError("unknown embedding provider kind: " + cfg.embedding.kind);
    }

    if (!cfg.pool_path.empty()) bundle.pool = ExamplePool::load(cfg.pool_path);
    return bundle;
}

}  // namespace chronos
