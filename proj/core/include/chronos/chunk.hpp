#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chronos/news.hpp"

namespace chronos {

// Split a document into chunks of exactly chunk_size whitespace-separated
// words (the last chunk keeps the remainder). Chunk text is the words joined
// by single spaces, so concatenating chunk word sequences reproduces the
// document word sequence. Article ids are doc_id "#" chunk_index.
// Throws EmptyDocument when the text contains no words.
std::vector<Article> chunk_document(const std::string& doc_id, std::string_view text,
                                    std::optional<EventDate> published,
                                    std::size_t chunk_size = 500);

}  // namespace chronos
