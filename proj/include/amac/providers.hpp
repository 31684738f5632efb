#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "amac/errors.hpp"

namespace amac {

/// Text-completion client used for the LLM utility judgment. Implementations
/// must be deterministic for identical prompts within one run and usable
/// from multiple threads.
class UtilityProvider {
public:
    virtual ~UtilityProvider() = default;

    /// Raw completion text for a prompt. Throws ProviderError on failure.
    virtual std::string complete(const std::string& prompt) = 0;

    /// Version tag mixed into cache keys; bump when the backing model or
    /// protocol changes.
    virtual std::string version() const = 0;

    std::int64_t calls() const { return calls_.load(); }

protected:
    void count_call() { calls_.fetch_add(1); }

private:
    std::atomic<std::int64_t> calls_{0};
};

/// Sentence-embedding client. Vectors are L2-normalized on receipt; all
/// vectors within one run share one dimension.
class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;

    /// One unit-norm vector per input string. Throws ProviderError on
    /// failure or on a dimension mismatch.
    virtual std::vector<std::vector<double>> embed(const std::vector<std::string>& inputs) = 0;

    virtual std::size_t dimension() const = 0;
    virtual std::string version() const = 0;

    std::int64_t calls() const { return calls_.load(); }

protected:
    void count_call() { calls_.fetch_add(1); }

private:
    std::atomic<std::int64_t> calls_{0};
};

/// Deterministic stand-in for the LLM. With a fixed response configured it
/// always answers that string; otherwise it derives a stable 0-10 rating
/// from the prompt hash. An optional delay emulates inference latency.
class StubUtilityProvider : public UtilityProvider {
public:
    explicit StubUtilityProvider(std::optional<std::string> fixed_response = std::nullopt,
                                 int delay_ms = 0);

    std::string complete(const std::string& prompt) override;
    std::string version() const override { return "stub-utility-v1"; }

private:
    std::optional<std::string> fixed_response_;
    int delay_ms_;
};

/// Deterministic local embedding: token unigrams and bigrams feature-hashed
/// into a fixed dimension, signs from the hash, L2-normalized.
class StubEmbeddingProvider : public EmbeddingProvider {
public:
    explicit StubEmbeddingProvider(std::size_t dimension = 256);

    std::vector<std::vector<double>> embed(const std::vector<std::string>& inputs) override;
    std::size_t dimension() const override { return dimension_; }
    std::string version() const override { return "stub-embedding-v1"; }

private:
    std::size_t dimension_;
};

struct HttpEndpoint {
    std::string host;        // e.g. "127.0.0.1"
    int port = 80;
    std::string path;        // e.g. "/v1/score"
    int timeout_ms = 30000;
};

/// Parses "http://host:port/path" into an endpoint. Throws ConfigError.
HttpEndpoint parse_endpoint(const std::string& url, int timeout_ms);

/// POSTs {"prompt": ..., "deterministic": true} and reads {"text": ...}.
class HttpUtilityProvider : public UtilityProvider {
public:
    explicit HttpUtilityProvider(HttpEndpoint endpoint, std::string version_tag = "http-utility-v1");

    std::string complete(const std::string& prompt) override;
    std::string version() const override { return version_tag_; }

private:
    HttpEndpoint endpoint_;
    std::string version_tag_;
};

/// POSTs {"input": [...]} and reads {"vectors": [[...]]}.
class HttpEmbeddingProvider : public EmbeddingProvider {
public:
    HttpEmbeddingProvider(HttpEndpoint endpoint, std::size_t dimension,
                          std::string version_tag = "http-embedding-v1");

    std::vector<std::vector<double>> embed(const std::vector<std::string>& inputs) override;
    std::size_t dimension() const override { return dimension_; }
    std::string version() const override { return version_tag_; }

private:
    HttpEndpoint endpoint_;
    std::size_t dimension_;
    std::string version_tag_;
};

/// Persistent map from (feature, content hash, provider version) to score.
/// Writes append to the backing file as they happen so an interrupted run
/// keeps its paid-for scores. Thread safe.
class ScoreCache {
public:
    ScoreCache() = default;

    /// Opens (and creates if missing) a cache file and loads its records.
    explicit ScoreCache(const std::string& path);

    std::optional<double> get(const std::string& feature, const std::string& content_hash,
                              const std::string& version) const;
    void put(const std::string& feature, const std::string& content_hash,
             const std::string& version, double score);

    std::size_t size() const;

private:
    struct Key {
        std::string feature;
        std::string content_hash;
        std::string version;
        bool operator<(const Key& o) const {
            if (feature != o.feature) return feature < o.feature;
            if (content_hash != o.content_hash) return content_hash < o.content_hash;
            return version < o.version;
        }
    };

    mutable std::mutex mutex_;
    std::map<Key, double> entries_;
    std::string path_;  // empty for a purely in-memory cache
};

/// Normalizes a vector to unit Euclidean norm in place. Throws
/// ProviderError on a zero vector.
void normalize_unit(std::vector<double>& v);

}  // namespace amac
