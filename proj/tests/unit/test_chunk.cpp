#include <doctest.h>

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "chronos/chunk.hpp"
#include "chronos/errors.hpp"

using namespace chronos;

namespace {

std::vector<std::string> split_words(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> words;
    std::string w;
    while (in >> w) words.push_back(w);
    return words;
}

}  // namespace

TEST_SUITE("chunking") {

TEST_CASE("documents split into fixed-size word chunks") {
    std::string text;
    for (int i = 0; i < 1200; ++i) text += "w" + std::to_string(i) + " ";
    const auto chunks = chunk_document("doc", text, std::nullopt, 500);
    REQUIRE(chunks.size() == 3);
    CHECK(split_words(chunks[0].body).size() == 500);
    CHECK(split_words(chunks[1].body).size() == 500);
    CHECK(split_words(chunks[2].body).size() == 200);
    CHECK(chunks[0].id == "doc#0");
    CHECK(chunks[1].id == "doc#1");
    CHECK(chunks[2].id == "doc#2");
    CHECK(chunks[0].title == "doc");
    CHECK(split_words(chunks[0].body).front() == "w0");
    CHECK(split_words(chunks[1].body).front() == "w500");
    CHECK(split_words(chunks[2].body).back() == "w1199");
}

TEST_CASE("short documents yield one chunk") {
    const auto chunks = chunk_document("doc", "just a few words here", std::nullopt, 500);
    REQUIRE(chunks.size() == 1);
    CHECK(chunks[0].body == "just a few words here");
    CHECK(chunks[0].id == "doc#0");
}

TEST_CASE("exact multiples have no trailing empty chunk") {
    const auto chunks = chunk_document("doc", "a b c d e f", std::nullopt, 3);
    REQUIRE(chunks.size() == 2);
    CHECK(chunks[0].body == "a b c");
    CHECK(chunks[1].body == "d e f");
}

TEST_CASE("whitespace-only and empty documents are rejected") {
    CHECK_THROWS_AS(chunk_document("doc", "", std::nullopt), EmptyDocument);
    CHECK_THROWS_AS(chunk_document("doc", "  \n\t ", std::nullopt), EmptyDocument);
}

TEST_CASE("published date propagates to every chunk") {
    const auto date = EventDate::parse("2023-02-06");
    const auto chunks = chunk_document("doc", "a b c d", date, 2);
    REQUIRE(chunks.size() == 2);
    for (const auto& c : chunks) {
        REQUIRE(c.published.has_value());
        CHECK(*c.published == date);
    }
}

TEST_CASE("chunking is lossless over random documents") {
    std::mt19937 gen(20230206);
    std::uniform_int_distribution<int> word_count(1, 5000);
    std::uniform_int_distribution<int> word_len(1, 10);
    std::uniform_int_distribution<int> letter(0, 25);
    std::uniform_int_distribution<int> gap(0, 3);
    const char* seps[] = {" ", "  ", "\n", "\t "};

    for (int doc = 0; doc < 500; ++doc) {
        std::vector<std::string> words(static_cast<std::size_t>(word_count(gen)));
        std::string text;
        for (auto& w : words) {
            const int len = word_len(gen);
            for (int i = 0; i < len; ++i) w.push_back(static_cast<char>('a' + letter(gen)));
            text += w;
            text += seps[gap(gen)];
        }
        const auto chunks = chunk_document("doc", text, std::nullopt, 97);
        std::vector<std::string> rejoined;
        for (const auto& c : chunks) {
            CHECK(c.id == "doc#" + std::to_string(&c - chunks.data()));
            auto cw = split_words(c.body);
            CHECK(cw.size() <= 97);
            rejoined.insert(rejoined.end(), cw.begin(), cw.end());
        }
        // Every chunk except the last is exactly full.
        for (std::size_t i = 0; i + 1 < chunks.size(); ++i) {
            CHECK(split_words(chunks[i].body).size() == 97);
        }
        REQUIRE(rejoined == words);
    }
}

}  // TEST_SUITE
