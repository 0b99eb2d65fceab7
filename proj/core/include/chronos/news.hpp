#pragma once

#include <optional>
#include <string>

#include "chronos/date.hpp"
#include "chronos/timeline.hpp"

namespace chronos {

// A retrieved document (or chunk of one). The id is derived deterministically
// from the source locator: the URL for web results, doc_id "#" chunk_index
// for corpus chunks.
struct Article {
    std::string id;
    std::string title;
    std::string body;
    std::optional<EventDate> published;
    std::string source_query;
    int round = 0;
    // Set when the provider reported a publication date we could not parse.
    bool date_flagged = false;

    friend bool operator==(const Article&, const Article&) = default;
};

// A news target: what to search for, the reference-publication cutoff that
// bounds retrieval freshness, and an optional journalist-written timeline.
struct Topic {
    std::string query;
    EventDate cutoff;
    std::optional<Timeline> reference;
};

// Throws SchemaError if a reference event is dated after the cutoff.
void validate_topic(const Topic& topic);

}  // namespace chronos
