#include "chronos/chunk.hpp"

#include <cctype>

#include "chronos/errors.hpp"

namespace chronos {

namespace {

std::vector<std::string> split_words(std::string_view text) {
    std::vector<std::string> words;
    std::string current;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!current.empty()) {
                words.push_back(std::move(current));
                current.clear();
            }
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) words.push_back(std::move(current));
    return words;
}

}  // namespace

std::vector<Article> chunk_document(const std::string& doc_id, std::string_view text,
                                    std::optional<EventDate> published,
                                    std::size_t chunk_size) {
    if (chunk_size < 1) chunk_size = 1;
    const auto words = split_words(text);
    if (words.empty()) {
        throw EmptyDocument("document has no words: " + doc_id);
    }
    std::vector<Article> chunks;
    for (std::size_t begin = 0; begin < words.size(); begin += chunk_size) {
        const std::size_t end = std::min(begin + chunk_size, words.size());
        std::string body;
        for (std::size_t i = begin; i < end; ++i) {
            if (!body.empty()) body += ' ';
            body += words[i];
        }
        Article a;
        a.id = doc_id + "#" + std::to_string(chunks.size());
        a.title = doc_id;
        a.body = std::move(body);
        a.published = published;
        chunks.push_back(std::move(a));
    }
    return chunks;
}

}  // namespace chronos
