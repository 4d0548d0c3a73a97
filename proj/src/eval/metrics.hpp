#pragma once

#include <string>
#include <vector>

#include "llm/provider.hpp"

namespace hgrag::eval {

struct GoldSet {
    std::string query_id;
    std::vector<std::string> golden_answers;  // non-empty
    std::string reference_chunk;
};

// Case-fold, punctuation -> space, collapse whitespace, trim.
std::string normalize_text(const std::string& raw);

// Multiset token-overlap F1 against the best-matching gold:
//   F1 = 2 * sum_w min(c_w(cand), c_w(gold)) / (|cand| + |gold|)
// Both-empty -> 1, exactly-one-empty -> 0. Result is max over golds.
double token_f1(const std::string& candidate, const std::vector<std::string>& golds);

// max over golds of cosine(f(candidate), f(gold)).
double cosine_retrieval_score(const std::string& candidate,
                              const std::vector<std::string>& golds,
                              llm::EmbeddingProvider& embedder);

}  // namespace hgrag::eval
