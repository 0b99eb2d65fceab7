#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace chronos {

// FNV-1a, stable across platforms and runs; used for cache keys, dedup
// fingerprints and the feature-hashing embedder.
constexpr std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (char c : data) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string hex64(std::uint64_t value);

}  // namespace chronos
