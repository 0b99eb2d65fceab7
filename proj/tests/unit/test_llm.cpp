#include <doctest.h>

#include <memory>
#include <string>

#include "chronos/errors.hpp"
#include "chronos/llm.hpp"
#include "chronos/timeline.hpp"
#include "scripted.hpp"
#include "temp_dir.hpp"

using namespace chronos;
using chronos::test::SequenceChatBackend;

TEST_SUITE("llm") {

TEST_CASE("request hash is stable and sensitive to every field") {
    ChatRequest a;
    a.prompt = "hello";
    a.model_tag = "m1";
    const auto h = chat_request_hash(a);
    CHECK(h == chat_request_hash(a));
    CHECK(h.size() == 16);

    auto b = a;
    b.prompt = "hello!";
    CHECK(chat_request_hash(b) != h);
    b = a;
    b.temperature = 0.7;
    CHECK(chat_request_hash(b) != h);
    b = a;
    b.max_output = 1024;
    CHECK(chat_request_hash(b) != h);
    b = a;
    b.model_tag = "m2";
    CHECK(chat_request_hash(b) != h);
    b = a;
    b.nonce = 1;
    CHECK(chat_request_hash(b) != h);
}

TEST_CASE("make_request copies the profile knobs") {
    ChatProfile profile;
    profile.model_tag = "m";
    profile.temperature = 0.2;
    profile.max_output = 512;
    profile.nonce = 3;
    const auto req = make_request(profile, "prompt text");
    CHECK(req.prompt == "prompt text");
    CHECK(req.model_tag == "m");
    CHECK(req.temperature == doctest::Approx(0.2));
    CHECK(req.max_output == 512);
    CHECK(req.nonce == 3);
}

TEST_CASE("gateway dispatches, records, and replays") {
    test::TempDir dir("llm");
    GatewayOptions options;
    options.transcript_path = dir.file("transcript.jsonl");

    ChatRequest req;
    req.prompt = "say hi";
    req.model_tag = "m";

    {
        auto backend = std::make_shared<SequenceChatBackend>(
            std::vector<std::string>{"hi there"});
        LlmGateway gateway(backend, options);
        CHECK(gateway.chat(req) == "hi there");
        CHECK(gateway.backend_calls() == 1);
        CHECK(gateway.cache_hits() == 0);

        // Same request again: cache hit, backend untouched.
        CHECK(gateway.chat(req) == "hi there");
        CHECK(gateway.backend_calls() == 1);
        CHECK(gateway.cache_hits() == 1);
    }

    // A new gateway over the same transcript replays without any backend.
    {
        LlmGateway gateway(std::make_shared<ReplayOnlyBackend>(), options);
        CHECK(gateway.chat(req) == "hi there");
        CHECK(gateway.cache_hits() == 1);
        CHECK(gateway.backend_calls() == 0);

        ChatRequest other = req;
        other.prompt = "say something new";
        CHECK_THROWS_AS(gateway.chat(other), BackendError);
    }

    // Torn trailing line in the transcript is tolerated.
    {
        auto content = read_text_file(options.transcript_path);
        write_text_file(options.transcript_path, content + "{\"hash\": \"beef");
        LlmGateway gateway(std::make_shared<ReplayOnlyBackend>(), options);
        CHECK(gateway.chat(req) == "hi there");
    }
}

TEST_CASE("gateway without a transcript path never caches") {
    auto backend = std::make_shared<SequenceChatBackend>(
        std::vector<std::string>{"one", "two"});
    LlmGateway gateway(backend);
    ChatRequest req;
    req.prompt = "p";
    CHECK(gateway.chat(req) == "one");
    CHECK(gateway.chat(req) == "two");
    CHECK(gateway.backend_calls() == 2);
    CHECK(gateway.cache_hits() == 0);
}

TEST_CASE("budget ceiling rejects before dispatch") {
    auto backend = std::make_shared<SequenceChatBackend>(std::vector<std::string>{"x"});
    GatewayOptions options;
    options.max_output_ceiling = 100;
    LlmGateway gateway(backend, options);
    ChatRequest req;
    req.prompt = "p";
    req.max_output = 101;
    CHECK_THROWS_AS(gateway.chat(req), BudgetExceeded);
    CHECK(backend->consumed() == 0);
    req.max_output = 100;
    CHECK(gateway.chat(req) == "x");
}

TEST_CASE("blank prompts are rejected") {
    auto backend = std::make_shared<SequenceChatBackend>(std::vector<std::string>{"x"});
    LlmGateway gateway(backend);
    ChatRequest req;
    req.prompt = "  \n ";
    CHECK_THROWS_AS(gateway.chat(req), Error);
    CHECK(backend->consumed() == 0);
}

TEST_CASE("transcript cache is idempotent per hash") {
    test::TempDir dir("transcript");
    TranscriptCache cache(dir.file("t.jsonl"));
    ChatRequest req;
    req.prompt = "p";
    const auto hash = chat_request_hash(req);
    cache.record(req, hash, "response");
    cache.record(req, hash, "response");
    CHECK(cache.size() == 1);
    CHECK(cache.lookup(hash) == std::optional<std::string>("response"));
    CHECK_FALSE(cache.lookup("0000000000000000").has_value());

    TranscriptCache reloaded(dir.file("t.jsonl"));
    CHECK(reloaded.size() == 1);
    CHECK(reloaded.lookup(hash) == std::optional<std::string>("response"));
}

TEST_CASE("replay-only backend always refuses") {
    ReplayOnlyBackend backend;
    ChatRequest req;
    req.prompt = "p";
    CHECK_THROWS_AS(backend.complete(req), BackendError);
}

}  // TEST_SUITE
