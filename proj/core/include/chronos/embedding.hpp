#pragma once

#include <memory>
#include <string>
#include <vector>

#include "chronos/http_search.hpp"

namespace chronos {

class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;
    // L2-normalized vector of dimension(); zero vector for token-free text.
    virtual std::vector<double> embed(const std::string& text) = 0;
    virtual std::size_t dimension() const = 0;
    virtual std::string descriptor() const = 0;
};

double cosine(const std::vector<double>& a, const std::vector<double>& b);

// Deterministic feature-hashing embedder: each token hashes to a signed
// bucket. No model weights, so it runs offline and identically everywhere.
class HashingEmbedder : public EmbeddingProvider {
public:
    explicit HashingEmbedder(std::size_t dimension = 256);

    std::vector<double> embed(const std::string& text) override;
    std::size_t dimension() const override { return dimension_; }
    std::string descriptor() const override;

private:
    std::size_t dimension_;
};

struct HttpEmbeddingConfig {
    std::string endpoint;
    std::string api_key;
    std::string model;
    std::size_t dimension = 768;
    int timeout_seconds = 60;
    BackoffPolicy backoff;
};

class HttpEmbeddingProvider : public EmbeddingProvider {
public:
    explicit HttpEmbeddingProvider(HttpEmbeddingConfig cfg);
    ~HttpEmbeddingProvider() override;

    std::vector<double> embed(const std::string& text) override;
    std::size_t dimension() const override;
    std::string descriptor() const override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace chronos
