#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "chronos/dedup.hpp"
#include "scripted.hpp"

using namespace chronos;
using chronos::test::make_article;

namespace {

// 12 words -> 5 shingles of 8 words each.
const std::string kBody =
    "alpha bravo charlie delta echo foxtrot golf hotel india juliet kilo lima";

std::string words(int from, int count) {
    static const std::vector<std::string> kWords = {
        "alpha", "bravo",  "charlie", "delta", "echo",  "foxtrot", "golf",   "hotel",
        "india", "juliet", "kilo",    "lima",  "mike",  "november", "oscar", "papa",
        "quebec", "romeo", "sierra",  "tango", "uniform", "victor", "whiskey", "xray",
    };
    std::string out;
    for (int i = from; i < from + count; ++i) {
        if (!out.empty()) out.push_back(' ');
        out += kWords[static_cast<std::size_t>(i) % kWords.size()];
    }
    return out;
}

}  // namespace

TEST_SUITE("dedup") {

TEST_CASE("fingerprints use word 8-grams") {
    const auto f = body_fingerprint(kBody);  // 12 words -> 5 shingles
    CHECK(f.size() == 5);
    CHECK(body_fingerprint(kBody) == f);  // deterministic
    // Punctuation and case do not change the shingles.
    CHECK(body_fingerprint("Alpha, bravo charlie DELTA echo foxtrot golf hotel india "
                           "juliet kilo lima!") == f);
    CHECK(body_fingerprint("").empty());
}

TEST_CASE("short bodies hash as a single whole-body shingle") {
    const auto a = body_fingerprint("seven little words are not quite enough");  // 8 words
    CHECK(a.size() == 1);
    const auto b = body_fingerprint("seven little words never reach eight");  // 6 words
    CHECK(b.size() == 1);
    CHECK(fingerprint_containment(b, b) == doctest::Approx(1.0));
    CHECK(fingerprint_containment(b, a) == doctest::Approx(0.0));
}

TEST_CASE("containment is the fraction of incoming shingles found") {
    const auto whole = body_fingerprint(words(0, 24));
    const auto prefix = body_fingerprint(words(0, 12));
    CHECK(fingerprint_containment(prefix, whole) == doctest::Approx(1.0));
    CHECK(fingerprint_containment(whole, prefix) < 1.0);
    CHECK(fingerprint_containment({}, whole) == doctest::Approx(0.0));
}

TEST_CASE("duplicate ids are dropped regardless of body") {
    const std::vector<Article> pool = {make_article("u1", "t", words(0, 20))};
    const auto kept = dedup_articles(pool, {make_article("u1", "t", words(40, 20)),
                                            make_article("u2", "t", words(60, 20))});
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].id == "u2");
}

TEST_CASE("near-duplicate bodies are dropped at the 90 percent threshold") {
    // Same body under a different id: containment 1.0.
    const std::vector<Article> pool = {make_article("u1", "t", kBody)};
    CHECK(dedup_articles(pool, {make_article("u2", "t", kBody)}).empty());

    // A body that merely shares a phrase survives.
    const auto kept = dedup_articles(
        pool, {make_article("u3", "t", "completely different story about " + words(12, 12))});
    CHECK(kept.size() == 1);
}

TEST_CASE("threshold boundary behaves as documented") {
    // Incoming has 10 shingles (17 words); 9 of them also appear in the pool
    // article -> containment 0.9 -> dropped at the default threshold.
    const std::string shared = words(0, 16);             // shingles 0..8 of incoming
    const std::string pool_body = shared + " " + words(20, 4);
    const std::string incoming_body = shared + " zzz";   // adds shingle 9, unseen
    const auto fi = body_fingerprint(incoming_body);
    const auto fp = body_fingerprint(pool_body);
    CHECK(fi.size() == 10);
    CHECK(fingerprint_containment(fi, fp) == doctest::Approx(0.9));

    const std::vector<Article> pool = {make_article("p", "t", pool_body)};
    CHECK(dedup_articles(pool, {make_article("i", "t", incoming_body)}).empty());
    // A higher threshold lets it through.
    CHECK(dedup_articles(pool, {make_article("i", "t", incoming_body)}, 0.95).size() == 1);
}

TEST_CASE("incoming items are deduplicated against each other in order") {
    const auto kept = dedup_articles({}, {
        make_article("a", "t", kBody),
        make_article("b", "t", kBody),              // body dup of a
        make_article("c", "t", words(24, 16)),
        make_article("a", "t", words(40, 16)),      // id dup of a
        make_article("d", "t", words(60, 16)),
    });
    REQUIRE(kept.size() == 3);
    CHECK(kept[0].id == "a");
    CHECK(kept[1].id == "c");
    CHECK(kept[2].id == "d");
}

TEST_CASE("dedup is idempotent") {
    std::mt19937 gen(8);
    std::uniform_int_distribution<int> start(0, 20);
    std::uniform_int_distribution<int> len(4, 40);
    for (int iter = 0; iter < 50; ++iter) {
        std::vector<Article> incoming;
        for (int i = 0; i < 12; ++i) {
            incoming.push_back(
                make_article("id" + std::to_string(i % 9), "t", words(start(gen), len(gen))));
        }
        const auto once = dedup_articles({}, incoming);
        const auto twice = dedup_articles({}, once);
        CHECK(once == twice);
        // And nothing kept collides with the pool it was filtered against.
        const auto refiltered = dedup_articles(once, once);
        CHECK(refiltered.empty());
    }
}

}  // TEST_SUITE
