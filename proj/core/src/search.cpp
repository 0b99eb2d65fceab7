#include "chronos/search.hpp"

#include <fstream>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "chronos/errors.hpp"
#include "chronos/hashing.hpp"
#include "chronos/timeline.hpp"

namespace chronos {

namespace {

nlohmann::json article_to_json(const Article& a) {
    nlohmann::json j = {
        {"id", a.id},
        {"title", a.title},
        {"body", a.body},
        {"source_query", a.source_query},
        {"round", a.round},
    };
    if (a.published) j["published"] = a.published->str();
    if (a.date_flagged) j["date_flagged"] = true;
    return j;
}

Article article_from_json(const nlohmann::json& j) {
    Article a;
    a.id = j.at("id").get<std::string>();
    a.title = j.value("title", std::string{});
    a.body = j.value("body", std::string{});
    a.source_query = j.value("source_query", std::string{});
    a.round = j.value("round", 0);
    a.date_flagged = j.value("date_flagged", false);
    if (j.contains("published") && j["published"].is_string()) {
        a.published = EventDate::parse(j["published"].get<std::string>());
    }
    return a;
}

}  // namespace

std::string hex64(std::uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[value & 0xf];
        value >>= 4;
    }
    return out;
}

// ---------------------------------------------------------------------------
// FixtureSearchProvider

struct FixtureSearchProvider::Impl {
    std::string path;
    std::unordered_map<std::string, std::vector<Article>> by_query;
};

FixtureSearchProvider::FixtureSearchProvider(const std::string& fixture_path)
    : impl_(std::make_shared<Impl>()) {
    impl_->path = fixture_path;
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_text_file(fixture_path));
    } catch (const nlohmann::json::exception& e) {
        throw ProviderError("fixture file " + fixture_path + ": " + e.what());
    }
    if (!doc.is_object()) {
        throw ProviderError("fixture file " + fixture_path + ": expected an object keyed by query");
    }
    for (const auto& [query, hits] : doc.items()) {
        std::vector<Article> articles;
        for (const auto& h : hits) {
            Article a;
            a.id = h.at("id").get<std::string>();
            a.title = h.value("title", std::string{});
            a.body = h.value("body", std::string{});
            a.source_query = query;
            if (h.contains("published")) {
                const auto text = h["published"].get<std::string>();
                a.published = EventDate::try_parse_prefix(text);
                a.date_flagged = !a.published.has_value();
            }
            articles.push_back(std::move(a));
        }
        impl_->by_query.emplace(query, std::move(articles));
    }
}

std::vector<Article> FixtureSearchProvider::search(const SearchRequest& req) {
    if (trim(req.query).empty()) throw EmptyQuery("empty search query");
    const int top_k = std::min(req.top_k, kDefaultMaxTopK);
    std::vector<Article> out;
    auto it = impl_->by_query.find(req.query);
    if (it == impl_->by_query.end()) return out;
    std::unordered_set<std::string> seen;
    for (const auto& a : it->second) {
        if (static_cast<int>(out.size()) >= top_k) break;
        if (!seen.insert(a.id).second) continue;
        if (req.cutoff && a.published && *a.published > *req.cutoff) continue;
        out.push_back(a);
        out.back().source_query = req.query;
    }
    return out;
}

std::string FixtureSearchProvider::descriptor() const {
    return "fixture:" + impl_->path;
}

// ---------------------------------------------------------------------------
// CachedSearchProvider

struct CachedSearchProvider::Impl {
    std::shared_ptr<SearchProvider> inner;
    std::string path;
    std::unordered_map<std::string, std::vector<Article>> cache;
    std::mutex mutex;
};

CachedSearchProvider::CachedSearchProvider(std::shared_ptr<SearchProvider> inner,
                                           std::string cache_path)
    : impl_(std::make_shared<Impl>()) {
    impl_->inner = std::move(inner);
    impl_->path = std::move(cache_path);
    std::ifstream in(impl_->path);
    if (!in) return;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        nlohmann::json entry = nlohmann::json::parse(line, nullptr, false);
        if (entry.is_discarded() || !entry.contains("key") || !entry.contains("results")) {
            continue;  // tolerate a torn trailing line
        }
        std::vector<Article> articles;
        for (const auto& a : entry["results"]) articles.push_back(article_from_json(a));
        impl_->cache[entry["key"].get<std::string>()] = std::move(articles);
    }
}

std::vector<Article> CachedSearchProvider::search(const SearchRequest& req) {
    const std::string key_text = req.query + '\x1f' + (req.cutoff ? req.cutoff->str() : "-") +
                                 '\x1f' + std::to_string(req.top_k);
    const std::string key = hex64(fnv1a64(key_text));
    {
        std::lock_guard lock(impl_->mutex);
        auto it = impl_->cache.find(key);
        if (it != impl_->cache.end()) return it->second;
    }
    auto results = impl_->inner->search(req);
    {
        std::lock_guard lock(impl_->mutex);
        impl_->cache[key] = results;
        nlohmann::json entry = {{"key", key}, {"query", req.query}, {"results", nlohmann::json::array()}};
        for (const auto& a : results) entry["results"].push_back(article_to_json(a));
        std::ofstream out(impl_->path, std::ios::app);
        if (out) out << entry.dump() << '\n';
    }
    return results;
}

std::string CachedSearchProvider::descriptor() const {
    return "cached(" + impl_->inner->descriptor() + ")";
}

// ---------------------------------------------------------------------------

std::vector<Article> merge_ranked(const std::vector<std::vector<Article>>& per_query) {
    std::vector<Article> merged;
    std::unordered_set<std::string> seen;
    std::size_t max_len = 0;
    for (const auto& list : per_query) max_len = std::max(max_len, list.size());
    for (std::size_t rank = 0; rank < max_len; ++rank) {
        for (const auto& list : per_query) {
            if (rank >= list.size()) continue;
            if (seen.insert(list[rank].id).second) merged.push_back(list[rank]);
        }
    }
    return merged;
}

}  // namespace chronos
