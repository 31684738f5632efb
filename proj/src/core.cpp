#include "amac/core.hpp"

#include <cmath>

namespace amac {

std::string to_string(Domain d) {
    switch (d) {
        case Domain::Personal: return "personal";
        case Domain::Professional: return "professional";
        case Domain::Other: return "other";
    }
    return "other";
}

Domain domain_from_string(const std::string& s) {
    if (s == "personal") return Domain::Personal;
    if (s == "professional") return Domain::Professional;
    if (s == "other") return Domain::Other;
    throw InputError("unknown domain tag: " + s);
}

std::string to_string(ContentType t) {
    switch (t) {
        case ContentType::PreferenceOrIdentity: return "preference_or_identity";
        case ContentType::Fact: return "fact";
        case ContentType::PlanOrGoal: return "plan_or_goal";
        case ContentType::TransientState: return "transient_state";
    }
    return "fact";
}

ContentType content_type_from_string(const std::string& s) {
    if (s == "preference_or_identity") return ContentType::PreferenceOrIdentity;
    if (s == "fact") return ContentType::Fact;
    if (s == "plan_or_goal") return ContentType::PlanOrGoal;
    if (s == "transient_state") return ContentType::TransientState;
    throw InputError("unknown content type: " + s);
}

std::string to_string(Outcome o) {
    switch (o) {
        case Outcome::Admitted: return "admitted";
        case Outcome::Updated: return "updated";
        case Outcome::Rejected: return "rejected";
    }
    return "rejected";
}

Outcome outcome_from_string(const std::string& s) {
    if (s == "admitted") return Outcome::Admitted;
    if (s == "updated") return Outcome::Updated;
    if (s == "rejected") return Outcome::Rejected;
    throw InputError("unknown outcome: " + s);
}

void FeatureVector::validate() const {
    const auto values = as_array();
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]) || values[i] < 0.0 || values[i] > 1.0) {
            throw InputError(std::string(kFeatureNames[i]) + " out of [0,1]: " +
                             std::to_string(values[i]));
        }
    }
}

void AdmissionPolicy::validate() const {
    double sum = 0.0;
    for (double w : weights) {
        if (!std::isfinite(w) || w < 0.0) throw InputError("policy weights must be non-negative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw InputError("policy weights must sum to 1, got " + std::to_string(sum));
    }
    if (!std::isfinite(threshold) || threshold < 0.0 || threshold > 1.0) {
        throw InputError("threshold must lie in [0,1]");
    }
}

double aggregate_score(const FeatureVector& features, const AdmissionPolicy& policy) {
    const auto f = features.as_array();
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += policy.weights[i] * f[i];
    return s;
}

double f1_from(double precision, double recall) {
    const double denom = precision + recall;
    if (denom <= 0.0) return 0.0;
    return 2.0 * precision * recall / denom;
}

ClassificationMetrics compute_metrics(const std::vector<bool>& predicted,
                                      const std::vector<bool>& labels) {
    if (predicted.empty()) throw InputError("compute_metrics: empty input");
    if (predicted.size() != labels.size()) {
        throw InputError("compute_metrics: length mismatch (" + std::to_string(predicted.size()) +
                         " vs " + std::to_string(labels.size()) + ")");
    }
    ClassificationMetrics m;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        if (predicted[i] && labels[i]) ++m.true_pos;
        else if (predicted[i] && !labels[i]) ++m.false_pos;
        else if (!predicted[i] && labels[i]) ++m.false_neg;
        else ++m.true_neg;
    }
    m.admitted = m.true_pos + m.false_pos;
    m.precision = m.admitted > 0 ? static_cast<double>(m.true_pos) / static_cast<double>(m.admitted) : 0.0;
    const std::size_t actual_pos = m.true_pos + m.false_neg;
    m.recall = actual_pos > 0 ? static_cast<double>(m.true_pos) / static_cast<double>(actual_pos) : 0.0;
    m.f1 = f1_from(m.precision, m.recall);
    return m;
}

}  // namespace amac
