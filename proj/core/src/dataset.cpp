#include "chronos/dataset.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "chronos/errors.hpp"
#include "chronos/text.hpp"
#include "chronos/timeline.hpp"

namespace chronos {

void validate_topic(const Topic& topic) {
    if (trim(topic.query).empty()) throw SchemaError("topic query is empty");
    if (topic.reference) {
        for (const auto& e : topic.reference->events()) {
            if (e.date > topic.cutoff) {
                throw SchemaError("topic \"" + topic.query + "\": reference event " +
                                  e.date.str() + " is after cutoff " + topic.cutoff.str());
            }
        }
    }
}

namespace {

namespace fs = std::filesystem;

Topic topic_from_json(const nlohmann::json& j, const std::string& where) {
    if (!j.is_object()) throw SchemaError(where + ": topic is not an object");
    Topic t;
    try {
        if (j.contains("query")) {
            t.query = j.at("query").get<std::string>();
        } else {
            t.query = j.at("topic").get<std::string>();
        }
        t.cutoff = EventDate::parse(j.at("cutoff").get<std::string>());
        const char* ref_key = j.contains("reference") ? "reference"
                              : j.contains("timeline") ? "timeline"
                                                       : nullptr;
        if (ref_key) t.reference = timeline_from_json(j.at(ref_key).dump());
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(where + ": " + e.what());
    } catch (const Error& e) {
        throw SchemaError(where + ": " + e.what());
    }
    try {
        validate_topic(t);
    } catch (const SchemaError& e) {
        throw SchemaError(where + ": " + e.what());
    }
    return t;
}

std::vector<Topic> topics_from_file(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(path + ": " + e.what());
    }
    if (j.is_object() && j.contains("topics")) j = j["topics"];

    std::vector<Topic> topics;
    if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) {
            topics.push_back(topic_from_json(j[i], path + ": topics[" + std::to_string(i) + "]"));
        }
    } else {
        topics.push_back(topic_from_json(j, path));
    }
    return topics;
}

std::vector<Topic> load_topics(const std::string& path) {
    if (fs::is_directory(path)) {
        std::vector<std::string> files;
        for (const auto& entry : fs::directory_iterator(path)) {
            if (entry.path().extension() == ".json") files.push_back(entry.path().string());
        }
        std::sort(files.begin(), files.end());
        std::vector<Topic> topics;
        for (const auto& f : files) {
            auto batch = topics_from_file(f);
            topics.insert(topics.end(), batch.begin(), batch.end());
        }
        return topics;
    }
    return topics_from_file(path);
}

std::vector<CorpusDoc> load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open corpus " + path);
    std::vector<CorpusDoc> docs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto where = path + ":" + std::to_string(line_no);
        auto j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) throw SchemaError(where + ": bad JSON");
        CorpusDoc d;
        try {
            d.id = j.at("id").get<std::string>();
            d.title = j.value("title", std::string{});
            d.text = j.at("text").get<std::string>();
            if (j.contains("published") && j["published"].is_string()) {
                d.published = EventDate::try_parse_prefix(j["published"].get<std::string>());
            }
        } catch (const nlohmann::json::exception& e) {
            throw SchemaError(where + ": " + e.what());
        }
        docs.push_back(std::move(d));
    }
    return docs;
}

}  // namespace

DatasetKind parse_dataset_kind(const std::string& name) {
    if (name == "open_tls" || name == "open-tls") return DatasetKind::open_tls;
    if (name == "t17_crisis" || name == "t17" || name == "crisis") return DatasetKind::t17_crisis;
    throw SchemaError("unknown dataset kind: " + name);
}

Dataset load_dataset(const std::string& path, DatasetKind kind) {
    if (!fs::exists(path)) throw SchemaError("dataset path does not exist: " + path);
    Dataset ds;
    if (kind == DatasetKind::open_tls) {
        ds.topics = load_topics(path);
        return ds;
    }
    if (!fs::is_directory(path)) {
        throw SchemaError("t17/crisis dataset must be a directory: " + path);
    }
    ds.topics = load_topics((fs::path(path) / "topics.json").string());
    ds.corpus = load_corpus((fs::path(path) / "corpus.jsonl").string());
    return ds;
}

DatasetStats dataset_stats(const std::vector<Topic>& topics) {
    DatasetStats stats;
    double sum_l = 0.0, sum_k = 0.0;
    for (const auto& t : topics) {
        if (!t.reference) continue;
        const auto ts = timeline_stats(*t.reference);
        ++stats.timelines;
        sum_l += static_cast<double>(ts.date_count);
        sum_k += ts.sentences_per_date;
    }
    if (stats.timelines) {
        stats.mean_l = sum_l / static_cast<double>(stats.timelines);
        stats.mean_k = sum_k / static_cast<double>(stats.timelines);
    }
    return stats;
}

std::string dataset_stats_to_json(const DatasetStats& stats, int indent) {
    nlohmann::json j = {
        {"timelines", stats.timelines},
        {"mean_l", stats.mean_l},
        {"mean_k", stats.mean_k},
    };
    return j.dump(indent) + "\n";
}

}  // namespace chronos
