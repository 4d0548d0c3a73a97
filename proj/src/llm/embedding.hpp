#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace hgrag::llm {

inline constexpr std::size_t kDefaultEmbeddingDim = 256;

// Deterministic bag-of-tokens hash embedding: normalize, split on
// whitespace, FNV-1a 64 per token, bucket = hash mod dim, count 1.0 per
// token, then L2-normalize (all-zero stays all-zero).
std::vector<float> local_hash_embed(const std::string& raw_text,
                                    std::size_t dim = kDefaultEmbeddingDim);

// dot(a,b) / (|a||b|); 0 when either norm is 0. Throws on dimension
// mismatch. Accumulates in double.
double cosine(const std::vector<float>& a, const std::vector<float>& b);

}  // namespace hgrag::llm
