#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace hgrag::text {

// Lower-cases ASCII letters, maps punctuation to spaces, collapses
// whitespace runs to single spaces, and trims. Case-folding is ASCII-only;
// a table of common non-ASCII punctuation (dashes, curly quotes, guillemets,
// CJK stops, fullwidth marks) is also mapped to space.
std::string normalize(std::string_view input);

// Whitespace split of already-normalized text.
std::vector<std::string> split_tokens(std::string_view normalized);

// Token multiset (token -> multiplicity) of already-normalized text.
std::map<std::string, int> token_multiset(std::string_view normalized);

// FNV-1a 64-bit over the bytes of `data`.
std::uint64_t fnv1a64(std::string_view data);

// Hex-encoded SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

// Trim ASCII whitespace from both ends.
std::string_view trim(std::string_view s);

std::string to_upper_ascii(std::string_view s);

}  // namespace hgrag::text
