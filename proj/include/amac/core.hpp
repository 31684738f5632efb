#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "amac/errors.hpp"

namespace amac {

/// One utterance in a conversation. Timestamps are UTC epoch seconds.
struct Turn {
    int turn_id = 0;
    std::string session_id;
    std::string speaker;
    std::string text;
    std::int64_t timestamp = 0;
};

enum class Domain { Personal, Professional, Other };

std::string to_string(Domain d);
Domain domain_from_string(const std::string& s);

struct Conversation {
    std::string conversation_id;
    std::vector<Turn> turns;
    Domain domain_tag = Domain::Other;
};

/// A normalized, self-contained atomic statement extracted from one or
/// more turns, with provenance and an optional ground-truth admit label.
struct CandidateMemory {
    std::string candidate_id;
    std::string text;
    std::vector<int> source_turn_ids;
    std::string speaker;
    std::int64_t event_time = 0;
    std::optional<bool> gold_label;
    /// References normalization could not resolve (left verbatim in text).
    std::vector<std::string> unresolved_refs;
};

enum class ContentType { PreferenceOrIdentity, Fact, PlanOrGoal, TransientState };

std::string to_string(ContentType t);
ContentType content_type_from_string(const std::string& s);

/// Canonical feature order used everywhere: U, C, N, R, T.
inline constexpr std::array<const char*, 5> kFeatureNames = {
    "utility", "confidence", "novelty", "recency", "type_prior"};
inline constexpr const char* kFeatureOrderTag = "UCNRT";

/// The five admission signals, each in [0, 1].
struct FeatureVector {
    double utility = 0.0;
    double confidence = 0.0;
    double novelty = 0.0;
    double recency = 0.0;
    double type_prior = 0.0;

    std::array<double, 5> as_array() const {
        return {utility, confidence, novelty, recency, type_prior};
    }
    static FeatureVector from_array(const std::array<double, 5>& a) {
        return {a[0], a[1], a[2], a[3], a[4]};
    }

    /// Throws InputError unless every component is finite and in [0, 1].
    void validate() const;
};

/// Weight vector on the 5-simplex plus admission threshold theta.
struct AdmissionPolicy {
    std::array<double, 5> weights = {0.2, 0.2, 0.2, 0.2, 0.2};
    double threshold = 0.5;

    /// Throws InputError unless weights are non-negative, sum to 1 within
    /// 1e-9, and theta lies in [0, 1].
    void validate() const;
};

enum class Outcome { Admitted, Updated, Rejected };

std::string to_string(Outcome o);
Outcome outcome_from_string(const std::string& s);

struct AdmissionDecision {
    std::string candidate_id;
    Outcome outcome = Outcome::Rejected;
    double score = 0.0;
    FeatureVector features;
    std::optional<std::string> conflict_id;
};

struct ClassificationMetrics {
    std::size_t true_pos = 0;
    std::size_t false_pos = 0;
    std::size_t false_neg = 0;
    std::size_t true_neg = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t admitted = 0;
};

/// Weighted sum of the five signals (the composite admission score).
double aggregate_score(const FeatureVector& features, const AdmissionPolicy& policy);

/// Harmonic mean of precision and recall; 0 when p + r == 0.
double f1_from(double precision, double recall);

/// Confusion counts and P/R/F1 for predicted admit flags against gold
/// labels. Undefined ratios are reported as 0.
ClassificationMetrics compute_metrics(const std::vector<bool>& predicted,
                                      const std::vector<bool>& labels);

}  // namespace amac
