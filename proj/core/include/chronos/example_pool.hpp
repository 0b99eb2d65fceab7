#pragma once

#include <string>
#include <vector>

#include "chronos/embedding.hpp"

namespace chronos {

struct PoolEntry {
    std::string topic_query;
    std::vector<std::string> questions;
    std::vector<double> embedding;  // unit vector, pool dimension

    bool operator==(const PoolEntry&) const = default;
};

// Few-shot demonstration store: one (topic, questions, embedding) entry per
// topic, persisted as JSON.
class ExamplePool {
public:
    ExamplePool(std::string backend_descriptor, std::size_t dimension);

    // Replaces in place when topic_query already present.
    void add(PoolEntry entry);

    const std::vector<PoolEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    const std::string& backend() const { return backend_; }
    std::size_t dimension() const { return dimension_; }

    void save(const std::string& path) const;
    static ExamplePool load(const std::string& path);

    bool operator==(const ExamplePool&) const = default;

private:
    std::string backend_;
    std::size_t dimension_;
    std::vector<PoolEntry> entries_;
};

// The s pool entries most cosine-similar to target_query's embedding. Entries
// whose topic_query equals the target are excluded; ties keep insertion order.
std::vector<PoolEntry> select_examples(const ExamplePool& pool, EmbeddingProvider& embedder,
                                       const std::string& target_query, std::size_t s);

}  // namespace chronos
