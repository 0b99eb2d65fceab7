#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chronos/date.hpp"
#include "chronos/news.hpp"

namespace chronos {

struct CorpusDoc {
    std::string id;
    std::string title;
    std::string text;
    std::optional<EventDate> published;
};

struct Dataset {
    std::vector<Topic> topics;
    std::vector<CorpusDoc> corpus;  // empty for open-domain datasets
};

enum class DatasetKind { open_tls, t17_crisis };

DatasetKind parse_dataset_kind(const std::string& name);

// open_tls: JSON file (or directory of JSON files) of topics with query,
// cutoff, and reference timeline. t17_crisis: directory with topics.json plus
// corpus.jsonl routed to the local index. Reference dates must respect the
// cutoff; violations raise SchemaError naming the file.
Dataset load_dataset(const std::string& path, DatasetKind kind);

struct DatasetStats {
    std::size_t timelines = 0;
    double mean_l = 0.0;  // mean distinct dates per reference
    double mean_k = 0.0;  // mean sentences per date
};

DatasetStats dataset_stats(const std::vector<Topic>& topics);

std::string dataset_stats_to_json(const DatasetStats& stats, int indent = 2);

}  // namespace chronos
