#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "chronos/embedding.hpp"
#include "chronos/errors.hpp"
#include "chronos/example_pool.hpp"
#include "chronos/timeline.hpp"
#include "scripted.hpp"
#include "temp_dir.hpp"

using namespace chronos;
using chronos::test::FakeEmbedder;

namespace {

double norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

PoolEntry entry(const std::string& topic, std::vector<std::string> questions,
                std::vector<double> embedding) {
    PoolEntry e;
    e.topic_query = topic;
    e.questions = std::move(questions);
    e.embedding = std::move(embedding);
    return e;
}

}  // namespace

TEST_SUITE("embeddings") {

TEST_CASE("hashing embedder emits deterministic unit vectors") {
    HashingEmbedder embedder(64);
    CHECK(embedder.dimension() == 64);
    CHECK(embedder.descriptor() == "hashing-64");
    const auto v = embedder.embed("solar storm satellites");
    REQUIRE(v.size() == 64);
    CHECK(norm(v) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(embedder.embed("solar storm satellites") == v);
    // Token order does not matter, different tokens do.
    CHECK(cosine(v, embedder.embed("satellites storm solar")) == doctest::Approx(1.0));
    CHECK(cosine(v, embedder.embed("completely unrelated words")) < 0.9);
    // Token-free text embeds as the zero vector.
    CHECK(norm(embedder.embed("!!!")) == doctest::Approx(0.0));
}

TEST_CASE("cosine checks dimensions and handles zero vectors") {
    CHECK(cosine({1.0, 0.0}, {1.0, 0.0}) == doctest::Approx(1.0));
    CHECK(cosine({1.0, 0.0}, {0.0, 1.0}) == doctest::Approx(0.0));
    CHECK(cosine({1.0, 0.0}, {-1.0, 0.0}) == doctest::Approx(-1.0));
    CHECK(cosine({1.0, 0.0}, {0.0, 0.0}) == doctest::Approx(0.0));
    CHECK_THROWS_AS(cosine({1.0}, {1.0, 0.0}), Error);
}

TEST_CASE("pool add replaces entries in place by topic") {
    ExamplePool pool("fake-2", 2);
    pool.add(entry("t1", {"q1"}, {1.0, 0.0}));
    pool.add(entry("t2", {"q2"}, {0.0, 1.0}));
    pool.add(entry("t1", {"q1 revised"}, {0.6, 0.8}));
    REQUIRE(pool.size() == 2);
    CHECK(pool.entries()[0].topic_query == "t1");
    CHECK(pool.entries()[0].questions == std::vector<std::string>{"q1 revised"});
    CHECK(pool.entries()[1].topic_query == "t2");
}

TEST_CASE("pool rejects entries of the wrong dimension") {
    ExamplePool pool("fake-2", 2);
    CHECK_THROWS_AS(pool.add(entry("t", {"q"}, {1.0, 0.0, 0.0})), Error);
}

TEST_CASE("pool save and load round-trip") {
    test::TempDir dir("pool");
    ExamplePool pool("fake-2", 2);
    pool.add(entry("t1", {"q1", "q2"}, {1.0, 0.0}));
    pool.add(entry("t2", {"q3"}, {0.6, 0.8}));
    pool.save(dir.file("pool.json"));
    const auto loaded = ExamplePool::load(dir.file("pool.json"));
    CHECK(loaded == pool);
}

TEST_CASE("pool load rejects corrupt files") {
    test::TempDir dir("pool-bad");
    CHECK_THROWS_AS(ExamplePool::load(dir.file("missing.json")), CorruptPoolFile);

    write_text_file(dir.file("junk.json"), "{ not json");
    CHECK_THROWS_AS(ExamplePool::load(dir.file("junk.json")), CorruptPoolFile);

    write_text_file(dir.file("version.json"), R"({"version": 99, "embedding":
        {"backend": "fake-2", "dimension": 2}, "entries": []})");
    CHECK_THROWS_AS(ExamplePool::load(dir.file("version.json")), CorruptPoolFile);

    // An entry whose vector length disagrees with the declared dimension.
    write_text_file(dir.file("dim.json"), R"({"version": 1, "embedding":
        {"backend": "fake-2", "dimension": 2}, "entries":
        [{"topic": "t", "questions": ["q"], "embedding": [1.0, 0.0, 0.0]}]})");
    CHECK_THROWS_AS(ExamplePool::load(dir.file("dim.json")), CorruptPoolFile);
}

TEST_CASE("select_examples ranks by cosine and excludes the target") {
    FakeEmbedder embedder(2);
    embedder.set("target topic", {1.0, 0.0});

    ExamplePool pool("fake-2", 2);
    pool.add(entry("far", {"qa"}, {0.0, 1.0}));          // cosine 0.0
    pool.add(entry("near", {"qb"}, {1.0, 0.0}));         // cosine 1.0
    pool.add(entry("middle", {"qc"}, {0.6, 0.8}));       // cosine 0.6

    const auto picked = select_examples(pool, embedder, "target topic", 2);
    REQUIRE(picked.size() == 2);
    CHECK(picked[0].topic_query == "near");
    CHECK(picked[1].topic_query == "middle");

    // The pool entry matching the target query exactly is never returned.
    pool.add(entry("target topic", {"qd"}, {1.0, 0.0}));
    const auto without_self = select_examples(pool, embedder, "target topic", 3);
    REQUIRE(without_self.size() == 3);
    for (const auto& e : without_self) CHECK(e.topic_query != "target topic");
}

TEST_CASE("select_examples ties keep insertion order and s bounds results") {
    FakeEmbedder embedder(2);
    embedder.set("t", {1.0, 0.0});
    ExamplePool pool("fake-2", 2);
    pool.add(entry("first", {"qa"}, {0.6, 0.8}));
    pool.add(entry("second", {"qb"}, {0.6, 0.8}));  // tied with first
    pool.add(entry("third", {"qc"}, {1.0, 0.0}));

    const auto picked = select_examples(pool, embedder, "t", 2);
    REQUIRE(picked.size() == 2);
    CHECK(picked[0].topic_query == "third");
    CHECK(picked[1].topic_query == "first");

    CHECK(select_examples(pool, embedder, "t", 0).empty());
    CHECK(select_examples(pool, embedder, "t", 10).size() == 3);
    CHECK(select_examples(ExamplePool("fake-2", 2), embedder, "t", 3).empty());
}

TEST_CASE("select_examples rejects a dimension mismatch") {
    FakeEmbedder embedder(3);
    embedder.set("t", {1.0, 0.0, 0.0});
    ExamplePool pool("fake-2", 2);
    pool.add(entry("e", {"q"}, {1.0, 0.0}));
    CHECK_THROWS_AS(select_examples(pool, embedder, "t", 1), Error);
}

}  // TEST_SUITE
