#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "amac/core.hpp"

namespace amac::ingest {

/// A ground-truth candidate attached to a conversation in the dataset.
/// When present, these bypass extraction and are used verbatim.
struct LabeledCandidate {
    std::string text;
    std::vector<int> turn_ids;
    bool admit = false;
};

struct DatasetRecord {
    Conversation conversation;
    bool has_labels = false;
    std::vector<LabeledCandidate> labels;
};

struct Dataset {
    std::vector<DatasetRecord> records;
    /// FNV-1a of the raw file bytes; keys split seeding and run manifests.
    std::uint64_t content_hash = 0;
};

/// Loads a line-delimited dataset file. Any malformed line fails the whole
/// load with a SchemaError naming the line.
Dataset parse_dataset(const std::string& path);

/// Same grammar, parsed from an in-memory string.
Dataset parse_dataset_string(const std::string& content);

/// Splits a turn into atomic units: sentence boundaries first, then
/// top-level coordinating conjunctions joining independent clauses.
std::vector<std::string> segment_turn(const Turn& turn);

/// Greetings, acknowledgments, backchannels, pure punctuation/emoji and
/// units with fewer than three word tokens.
bool is_noise(const std::string& unit);

/// Rewrites first/second-person pronouns to speaker identifiers and the
/// bounded relative-date vocabulary to absolute dates computed from the
/// turn timestamp. Best effort: unresolved references stay verbatim and
/// are listed in unresolved_refs. candidate_id is assigned by
/// extract_candidates.
CandidateMemory normalize_candidate(const std::string& unit, const std::vector<Turn>& history,
                                    const Turn& turn);

/// segment -> noise filter -> normalize over all turns, order preserved.
/// Candidate ids are deterministic hashes of (conversation_id, turn_id,
/// unit index).
std::vector<CandidateMemory> extract_candidates(const Conversation& conversation);

/// Labeled candidates of a record as CandidateMemory values (gold labels
/// preserved, event_time = timestamp of the latest referenced turn).
std::vector<CandidateMemory> candidates_from_labels(const DatasetRecord& record);

/// Labels when the record has them, extraction output otherwise.
std::vector<CandidateMemory> candidates_for_processing(const DatasetRecord& record);

}  // namespace amac::ingest
