#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "chronos/news.hpp"
#include "chronos/search.hpp"

namespace chronos {

struct Bm25Params {
    double k1 = 1.2;
    double b = 0.75;

    friend bool operator==(const Bm25Params&, const Bm25Params&) = default;
};

// Immutable BM25 index over document chunks. Terms come from the default
// lowercasing tokenizer; idf uses the non-negative ln(1 + (N-df+0.5)/(df+0.5))
// form. Chunks without a query term are never returned.
class CorpusIndex {
public:
    struct Chunk {
        std::string doc_id;
        std::size_t chunk_index = 0;
        std::string text;
        std::optional<EventDate> published;
    };

    CorpusIndex() = default;

    static CorpusIndex build(std::vector<Chunk> chunks, Bm25Params params = {});

    // Chunks sorted by score descending; ties broken by (doc_id, chunk_index)
    // ascending. Chunks published after req.cutoff are excluded. Throws
    // EmptyQuery when the query has no terms.
    std::vector<Article> search(const SearchRequest& req) const;

    // Same ranking with the scores attached (chunk index into chunks()).
    struct ScoredChunk {
        std::size_t chunk = 0;
        double score = 0.0;
    };
    std::vector<ScoredChunk> scored_search(const SearchRequest& req) const;

    std::size_t size() const { return chunks_.size(); }
    bool empty() const { return chunks_.empty(); }
    const std::vector<Chunk>& chunks() const { return chunks_; }
    const Bm25Params& params() const { return params_; }
    double average_length() const { return avg_length_; }
    std::int64_t doc_frequency(const std::string& term) const;

    // Persist to / load from a directory: meta.json (versioned header and
    // collection stats), chunks.jsonl, terms.jsonl. Loading rebuilds
    // postings from chunk text and verifies them against the stored term
    // statistics.
    void save(const std::string& dir) const;
    static CorpusIndex load(const std::string& dir);

private:
    void rebuild_postings();

    std::vector<Chunk> chunks_;
    Bm25Params params_;
    double avg_length_ = 0.0;
    std::vector<std::int64_t> lengths_;
    // term -> (chunk index, term frequency)
    std::unordered_map<std::string, std::vector<std::pair<std::size_t, std::int64_t>>> postings_;
};

// SearchProvider facade over a CorpusIndex for closed-domain retrieval.
class Bm25SearchProvider : public SearchProvider {
public:
    explicit Bm25SearchProvider(CorpusIndex index) : index_(std::move(index)) {}

    std::vector<Article> search(const SearchRequest& req) override;
    std::string descriptor() const override { return "bm25"; }

    const CorpusIndex& index() const { return index_; }

private:
    CorpusIndex index_;
};

}  // namespace chronos
