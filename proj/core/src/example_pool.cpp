#include "chronos/example_pool.hpp"

#include <algorithm>

#include <json.hpp>

#include "chronos/errors.hpp"
#include "chronos/timeline.hpp"

namespace chronos {

namespace {

constexpr int kPoolVersion = 1;

}

ExamplePool::ExamplePool(std::string backend_descriptor, std::size_t dimension)
    : backend_(std::move(backend_descriptor)), dimension_(dimension) {
    if (dimension_ == 0) throw Error("pool dimension must be positive");
}

void ExamplePool::add(PoolEntry entry) {
    if (entry.embedding.size() != dimension_) {
        throw Error("entry embedding dimension " + std::to_string(entry.embedding.size()) +
                    " != pool dimension " + std::to_string(dimension_));
    }
    auto it = std::find_if(entries_.begin(), entries_.end(), [&](const PoolEntry& e) {
        return e.topic_query == entry.topic_query;
    });
    if (it != entries_.end()) {
        *it = std::move(entry);
    } else {
        entries_.push_back(std::move(entry));
    }
}

void ExamplePool::save(const std::string& path) const {
    nlohmann::json j = {
        {"version", kPoolVersion},
        {"embedding", {{"backend", backend_}, {"dimension", dimension_}}},
        {"entries", nlohmann::json::array()},
    };
    for (const auto& e : entries_) {
        j["entries"].push_back({
            {"topic", e.topic_query},
            {"questions", e.questions},
            {"embedding", e.embedding},
        });
    }
    write_text_file(path, j.dump(2) + "\n");
}

ExamplePool ExamplePool::load(const std::string& path) {
    std::string text;
    try {
        text = read_text_file(path);
    } catch (const Error& e) {
        throw CorruptPoolFile(e.what());
    }
    auto j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw CorruptPoolFile("pool file is not valid JSON: " + path);
    }
    try {
        if (j.at("version").get<int>() != kPoolVersion) {
            throw CorruptPoolFile("unsupported pool version in " + path);
        }
        const auto& emb = j.at("embedding");
        ExamplePool pool(emb.at("backend").get<std::string>(),
                         emb.at("dimension").get<std::size_t>());
        for (const auto& e : j.at("entries")) {
            PoolEntry entry;
            entry.topic_query = e.at("topic").get<std::string>();
            entry.questions = e.at("questions").get<std::vector<std::string>>();
            entry.embedding = e.at("embedding").get<std::vector<double>>();
            if (entry.embedding.size() != pool.dimension()) {
                throw CorruptPoolFile("entry \"" + entry.topic_query +
                                      "\" embedding dimension mismatch in " + path);
            }
            pool.add(std::move(entry));
        }
        return pool;
    } catch (const nlohmann::json::exception& e) {
        throw CorruptPoolFile("pool file " + path + " malformed: " + e.what());
    }
}

std::vector<PoolEntry> select_examples(const ExamplePool& pool, EmbeddingProvider& embedder,
                                       const std::string& target_query, std::size_t s) {
    if (s == 0) return {};
    if (embedder.dimension() != pool.dimension()) {
        throw Error("embedder dimension " + std::to_string(embedder.dimension()) +
                    " != pool dimension " + std::to_string(pool.dimension()));
    }
    const auto target = embedder.embed(target_query);

    std::vector<std::pair<double, std::size_t>> scored;  // (similarity, index)
    for (std::size_t i = 0; i < pool.entries().size(); ++i) {
        const auto& e = pool.entries()[i];
        if (e.topic_query == target_query) continue;
        scored.emplace_back(cosine(target, e.embedding), i);
    }
    std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        return a.first > b.first;  // stable: equal scores keep insertion order
    });

    std::vector<PoolEntry> out;
    for (std::size_t i = 0; i < scored.size() && i < s; ++i) {
        out.push_back(pool.entries()[scored[i].second]);
    }
    return out;
}

}  // namespace chronos
