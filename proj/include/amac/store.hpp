#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "amac/errors.hpp"

namespace amac {

/// An admitted memory. score is the composite score S at the last
/// admission or update; provenance lists every candidate merged in.
struct MemoryEntry {
    std::string entry_id;
    std::string text;
    std::vector<double> embedding;  // unit norm
    double score = 0.0;
    std::int64_t admitted_at = 0;
    std::int64_t updated_at = 0;
    std::vector<std::string> provenance;
    int merge_count = 0;

    void validate() const;
};

/// Ordered collection of admitted memories. Insert order is preserved;
/// entry ids are unique and all embeddings share one dimension.
class MemoryStore {
public:
    explicit MemoryStore(double conflict_similarity = 0.85);

    const std::vector<MemoryEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    double conflict_similarity() const { return conflict_similarity_; }

    /// Appends a validated new entry. Throws InputError on a duplicate id
    /// or an embedding dimension mismatch.
    void insert(MemoryEntry entry);

    /// Replaces the entry with the given id in place (merge path).
    void replace(const std::string& entry_id, MemoryEntry entry);

    const MemoryEntry* find(const std::string& entry_id) const;

    /// Line-delimited persistence; load(save(x)) == x.
    void save(const std::string& path) const;
    static MemoryStore load(const std::string& path, double conflict_similarity = 0.85);

private:
    std::vector<MemoryEntry> entries_;
    double conflict_similarity_;
};

}  // namespace amac
