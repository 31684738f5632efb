#pragma once

#include <stdexcept>
#include <string>

namespace amac {

/// Malformed dataset or fixture input (bad JSON, missing fields, bad
/// references). Carries the offending line number when one is known.
class SchemaError : public std::runtime_error {
public:
    explicit SchemaError(const std::string& msg, long line = -1)
        : std::runtime_error(line >= 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}

    long line() const { return line_; }

private:
    long line_;
};

/// Invalid engine configuration (unknown keys, bad values, missing paths).
class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Provider transport or response failure after retries are exhausted.
class ProviderError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Violated operation precondition (mismatched lengths, empty input, ...).
class InputError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A feature scorer failed for one candidate. Tags the feature and the
/// candidate so conversation processing can log the failure and continue.
class ScoringError : public std::runtime_error {
public:
    ScoringError(std::string feature, std::string candidate_id, const std::string& msg)
        : std::runtime_error(feature + ": " + msg + " (candidate " + candidate_id + ")"),
          feature_(std::move(feature)),
          candidate_id_(std::move(candidate_id)) {}

    const std::string& feature() const { return feature_; }
    const std::string& candidate_id() const { return candidate_id_; }

private:
    std::string feature_;
    std::string candidate_id_;
};

/// A stated invariant failed at runtime (monotone sweep violated, store
/// corruption, ...). Mapped to CLI exit code 4.
class InvariantError : public std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace amac
