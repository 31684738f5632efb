#include "amac/providers.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "amac/text.hpp"

namespace amac {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Stubs

StubUtilityProvider::StubUtilityProvider(std::optional<std::string> fixed_response, int delay_ms)
    : fixed_response_(std::move(fixed_response)), delay_ms_(delay_ms) {}

std::string StubUtilityProvider::complete(const std::string& prompt) {
    count_call();
    if (delay_ms_ > 0) std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms_));
    if (fixed_response_) return *fixed_response_;
    const std::uint64_t h = text::fnv1a64(prompt);
    return std::to_string(h % 11);
}

StubEmbeddingProvider::StubEmbeddingProvider(std::size_t dimension) : dimension_(dimension) {
    if (dimension_ == 0) throw ConfigError("embedding dimension must be positive");
}

std::vector<std::vector<double>> StubEmbeddingProvider::embed(
    const std::vector<std::string>& inputs) {
    count_call();
    std::vector<std::vector<double>> vectors;
    vectors.reserve(inputs.size());
    for (const std::string& input : inputs) {
        std::vector<double> v(dimension_, 0.0);
        std::vector<std::string> tokens = text::tokenize(input);
        if (tokens.empty()) tokens.push_back("");
        auto add_feature = [&](const std::string& feature) {
            const std::uint64_t h = text::fnv1a64(feature);
            const std::size_t index = static_cast<std::size_t>(h % dimension_);
            const double sign = ((h >> 32) & 1ull) ? 1.0 : -1.0;
            v[index] += sign;
        };
        for (const std::string& t : tokens) add_feature("u:" + t);
        for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
            add_feature("b:" + tokens[i] + "_" + tokens[i + 1]);
        }
        normalize_unit(v);
        vectors.push_back(std::move(v));
    }
    return vectors;
}

void normalize_unit(std::vector<double>& v) {
    double norm_sq = 0.0;
    for (double x : v) norm_sq += x * x;
    if (norm_sq <= 0.0 || !std::isfinite(norm_sq)) {
        throw ProviderError("embedding has zero or non-finite norm");
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (double& x : v) x *= inv;
}

// ---------------------------------------------------------------------------
// HTTP clients

HttpEndpoint parse_endpoint(const std::string& url, int timeout_ms) {
    const std::string prefix = "http://";
    if (url.rfind(prefix, 0) != 0) {
        throw ConfigError("endpoint must start with http:// : " + url);
    }
    std::string rest = url.substr(prefix.size());
    HttpEndpoint ep;
    ep.timeout_ms = timeout_ms;
    const std::size_t slash = rest.find('/');
    std::string hostport = slash == std::string::npos ? rest : rest.substr(0, slash);
    ep.path = slash == std::string::npos ? "/" : rest.substr(slash);
    const std::size_t colon = hostport.find(':');
    if (colon == std::string::npos) {
        ep.host = hostport;
        ep.port = 80;
    } else {
        ep.host = hostport.substr(0, colon);
        try {
            ep.port = std::stoi(hostport.substr(colon + 1));
        } catch (const std::exception&) {
            throw ConfigError("bad port in endpoint: " + url);
        }
    }
    if (ep.host.empty()) throw ConfigError("empty host in endpoint: " + url);
    return ep;
}

namespace {

json post_json(const HttpEndpoint& endpoint, const json& body) {
    httplib::Client client(endpoint.host, endpoint.port);
    client.set_connection_timeout(0, endpoint.timeout_ms * 1000);
    client.set_read_timeout(0, endpoint.timeout_ms * 1000);
    client.set_write_timeout(0, endpoint.timeout_ms * 1000);
    const auto res = client.Post(endpoint.path, body.dump(), "application/json");
    if (!res) {
        throw ProviderError("request to " + endpoint.host + ":" + std::to_string(endpoint.port) +
                            endpoint.path + " failed: " + httplib::to_string(res.error()));
    }
    if (res->status != 200) {
        throw ProviderError("provider returned HTTP " + std::to_string(res->status));
    }
    try {
        return json::parse(res->body);
    } catch (const json::exception& e) {
        throw ProviderError(std::string("provider returned invalid JSON: ") + e.what());
    }
}

}  // namespace

HttpUtilityProvider::HttpUtilityProvider(HttpEndpoint endpoint, std::string version_tag)
    : endpoint_(std::move(endpoint)), version_tag_(std::move(version_tag)) {}

std::string HttpUtilityProvider::complete(const std::string& prompt) {
    count_call();
    const json response = post_json(endpoint_, json{{"prompt", prompt}, {"deterministic", true}});
    if (!response.contains("text") || !response["text"].is_string()) {
        throw ProviderError("utility response missing string field 'text'");
    }
    return response["text"].get<std::string>();
}

HttpEmbeddingProvider::HttpEmbeddingProvider(HttpEndpoint endpoint, std::size_t dimension,
                                             std::string version_tag)
    : endpoint_(std::move(endpoint)), dimension_(dimension), version_tag_(std::move(version_tag)) {
    if (dimension_ == 0) throw ConfigError("embedding dimension must be positive");
}

std::vector<std::vector<double>> HttpEmbeddingProvider::embed(
    const std::vector<std::string>& inputs) {
    count_call();
    const json response = post_json(endpoint_, json{{"input", inputs}});
    if (!response.contains("vectors") || !response["vectors"].is_array() ||
        response["vectors"].size() != inputs.size()) {
        throw ProviderError("embedding response must carry one vector per input");
    }
    std::vector<std::vector<double>> vectors;
    vectors.reserve(inputs.size());
    for (const json& vj : response["vectors"]) {
        if (!vj.is_array() || vj.size() != dimension_) {
            throw ProviderError("embedding vector has wrong dimension (want " +
                                std::to_string(dimension_) + ")");
        }
        std::vector<double> v = vj.get<std::vector<double>>();
        normalize_unit(v);
        vectors.push_back(std::move(v));
    }
    return vectors;
}

// ---------------------------------------------------------------------------
// ScoreCache

ScoreCache::ScoreCache(const std::string& path) : path_(path) {
    std::ifstream in(path_);
    if (!in) return;  // fresh cache; file appears on first put
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw SchemaError(std::string("corrupt cache record: ") + e.what(), line_no);
        }
        for (const char* key : {"feature", "content_hash", "version", "score"}) {
            if (!j.contains(key)) throw SchemaError("cache record missing '" + std::string(key) + "'", line_no);
        }
        entries_[Key{j["feature"].get<std::string>(), j["content_hash"].get<std::string>(),
                     j["version"].get<std::string>()}] = j["score"].get<double>();
    }
}

std::optional<double> ScoreCache::get(const std::string& feature, const std::string& content_hash,
                                      const std::string& version) const {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto it = entries_.find(Key{feature, content_hash, version});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void ScoreCache::put(const std::string& feature, const std::string& content_hash,
                     const std::string& version, double score) {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto [it, inserted] = entries_.insert_or_assign(Key{feature, content_hash, version}, score);
    (void)it;
    if (inserted && !path_.empty()) {
        std::ofstream out(path_, std::ios::app);
        out << json{{"feature", feature},
                    {"content_hash", content_hash},
                    {"version", version},
                    {"score", score}}
                   .dump()
            << '\n';
    }
}

std::size_t ScoreCache::size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return entries_.size();
}

}  // namespace amac
