#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace amac::text {

/// Shared tokenizer used by every lexical scorer: lowercase ASCII,
/// punctuation stripped, whitespace split. Digits are kept.
std::vector<std::string> tokenize(const std::string& s);

/// tokenize() minus stopwords.
std::vector<std::string> content_tokens(const std::string& s);

bool is_stopword(const std::string& token);

std::string to_lower(const std::string& s);
std::string trim(const std::string& s);

/// Longest common subsequence length between two token lists.
std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b);

/// FNV-1a 64-bit. Used for deterministic ids, cache keys and the stub
/// embedding; stable across platforms unlike std::hash.
std::uint64_t fnv1a64(const std::string& s);
std::uint64_t fnv1a64(const void* data, std::size_t len, std::uint64_t seed = 14695981039346656037ull);

/// Lowercase hex rendering of a 64-bit hash, zero padded to 16 chars.
std::string hex64(std::uint64_t h);

}  // namespace amac::text
