#include "chronos/bm25.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "chronos/errors.hpp"
#include "chronos/text.hpp"
#include "chronos/timeline.hpp"

namespace chronos {

namespace {

constexpr int kIndexVersion = 1;

std::vector<std::string> index_terms(std::string_view text) {
    return tokenize(text, TokenizerConfig{});
}

}  // namespace

CorpusIndex CorpusIndex::build(std::vector<Chunk> chunks, Bm25Params params) {
    CorpusIndex index;
    index.chunks_ = std::move(chunks);
    index.params_ = params;
    index.rebuild_postings();
    return index;
}

void CorpusIndex::rebuild_postings() {
    postings_.clear();
    lengths_.assign(chunks_.size(), 0);
    std::int64_t total_len = 0;
    for (std::size_t i = 0; i < chunks_.size(); ++i) {
        std::unordered_map<std::string, std::int64_t> tf;
        const auto terms = index_terms(chunks_[i].text);
        for (const auto& t : terms) ++tf[t];
        lengths_[i] = static_cast<std::int64_t>(terms.size());
        total_len += lengths_[i];
        for (auto& [term, count] : tf) {
            postings_[term].emplace_back(i, count);
        }
    }
    avg_length_ = chunks_.empty() ? 0.0
                                  : static_cast<double>(total_len) /
                                        static_cast<double>(chunks_.size());
}

std::int64_t CorpusIndex::doc_frequency(const std::string& term) const {
    auto it = postings_.find(term);
    return it == postings_.end() ? 0 : static_cast<std::int64_t>(it->second.size());
}

std::vector<CorpusIndex::ScoredChunk> CorpusIndex::scored_search(const SearchRequest& req) const {
    const auto query_terms = index_terms(req.query);
    if (query_terms.empty()) throw EmptyQuery("query has no terms: \"" + req.query + "\"");
    if (chunks_.empty()) return {};

    const double n_docs = static_cast<double>(chunks_.size());
    std::unordered_map<std::size_t, double> scores;
    for (const auto& term : query_terms) {
        auto it = postings_.find(term);
        if (it == postings_.end()) continue;
        const double df = static_cast<double>(it->second.size());
        const double idf = std::log(1.0 + (n_docs - df + 0.5) / (df + 0.5));
        for (const auto& [chunk_idx, tf] : it->second) {
            const double len_norm =
                1.0 - params_.b + params_.b * static_cast<double>(lengths_[chunk_idx]) / avg_length_;
            const double tfd = static_cast<double>(tf);
            scores[chunk_idx] += idf * tfd * (params_.k1 + 1.0) / (tfd + params_.k1 * len_norm);
        }
    }

    std::vector<std::pair<std::size_t, double>> ranked(scores.begin(), scores.end());
    std::erase_if(ranked, [&](const auto& e) {
        if (e.second <= 0.0) return true;
        const auto& c = chunks_[e.first];
        return req.cutoff && c.published && *c.published > *req.cutoff;
    });
    std::sort(ranked.begin(), ranked.end(), [&](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        const auto& ca = chunks_[a.first];
        const auto& cb = chunks_[b.first];
        if (ca.doc_id != cb.doc_id) return ca.doc_id < cb.doc_id;
        return ca.chunk_index < cb.chunk_index;
    });

    std::vector<ScoredChunk> out;
    const auto limit = static_cast<std::size_t>(std::max(req.top_k, 0));
    for (const auto& [chunk_idx, score] : ranked) {
        if (out.size() >= limit) break;
        out.push_back({chunk_idx, score});
    }
    return out;
}

std::vector<Article> CorpusIndex::search(const SearchRequest& req) const {
    std::vector<Article> out;
    for (const auto& [chunk_idx, score] : scored_search(req)) {
        const auto& c = chunks_[chunk_idx];
        Article a;
        a.id = c.doc_id + "#" + std::to_string(c.chunk_index);
        a.title = c.doc_id;
        a.body = c.text;
        a.published = c.published;
        a.source_query = req.query;
        out.push_back(std::move(a));
    }
    return out;
}

void CorpusIndex::save(const std::string& dir) const {
    namespace fs = std::filesystem;
    fs::create_directories(dir);

    nlohmann::json meta = {
        {"format", "chronos-bm25"},
        {"version", kIndexVersion},
        {"k1", params_.k1},
        {"b", params_.b},
        {"num_chunks", chunks_.size()},
        {"avg_length", avg_length_},
    };
    write_text_file(dir + "/meta.json", meta.dump(2) + "\n");

    std::ofstream chunks_out(dir + "/chunks.jsonl", std::ios::trunc);
    if (!chunks_out) throw Error("cannot write " + dir + "/chunks.jsonl");
    for (const auto& c : chunks_) {
        nlohmann::json j = {
            {"doc_id", c.doc_id},
            {"chunk_index", c.chunk_index},
            {"text", c.text},
        };
        if (c.published) j["published"] = c.published->str();
        chunks_out << j.dump() << '\n';
    }

    std::vector<std::pair<std::string, std::size_t>> dfs;
    dfs.reserve(postings_.size());
    for (const auto& [term, posting] : postings_) dfs.emplace_back(term, posting.size());
    std::sort(dfs.begin(), dfs.end());
    std::ofstream terms_out(dir + "/terms.jsonl", std::ios::trunc);
    if (!terms_out) throw Error("cannot write " + dir + "/terms.jsonl");
    for (const auto& [term, df] : dfs) {
        terms_out << nlohmann::json{{"term", term}, {"df", df}}.dump() << '\n';
    }
}

CorpusIndex CorpusIndex::load(const std::string& dir) {
    nlohmann::json meta;
    try {
        meta = nlohmann::json::parse(read_text_file(dir + "/meta.json"));
    } catch (const nlohmann::json::exception& e) {
        throw Error("index meta.json unreadable: " + std::string(e.what()));
    }
    if (meta.value("format", std::string{}) != "chronos-bm25" ||
        meta.value("version", 0) != kIndexVersion) {
        throw Error("unsupported index format in " + dir);
    }

    std::vector<Chunk> chunks;
    std::ifstream in(dir + "/chunks.jsonl");
    if (!in) throw Error("cannot open " + dir + "/chunks.jsonl");
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded()) {
            throw Error(dir + "/chunks.jsonl:" + std::to_string(line_no) + ": bad JSON");
        }
        Chunk c;
        c.doc_id = j.at("doc_id").get<std::string>();
        c.chunk_index = j.at("chunk_index").get<std::size_t>();
        c.text = j.at("text").get<std::string>();
        if (j.contains("published")) c.published = EventDate::parse(j["published"].get<std::string>());
        chunks.push_back(std::move(c));
    }

    Bm25Params params;
    params.k1 = meta.value("k1", params.k1);
    params.b = meta.value("b", params.b);
    auto index = build(std::move(chunks), params);

    // Cross-check stored term statistics against the rebuilt postings.
    std::ifstream terms_in(dir + "/terms.jsonl");
    if (terms_in) {
        std::size_t n_terms = 0;
        while (std::getline(terms_in, line)) {
            if (trim(line).empty()) continue;
            ++n_terms;
            nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
            if (j.is_discarded()) throw Error(dir + "/terms.jsonl: bad JSON");
            const auto term = j.at("term").get<std::string>();
            const auto df = j.at("df").get<std::int64_t>();
            if (index.doc_frequency(term) != df) {
                throw Error("index corrupt: stored df for \"" + term +
                            "\" disagrees with chunks");
            }
        }
        if (n_terms != index.postings_.size()) {
            throw Error("index corrupt: term count disagrees with chunks");
        }
    }
    return index;
}

std::vector<Article> Bm25SearchProvider::search(const SearchRequest& req) {
    SearchRequest clamped = req;
    clamped.top_k = std::min(req.top_k, kDefaultMaxTopK);
    return index_.search(clamped);
}

}  // namespace chronos
