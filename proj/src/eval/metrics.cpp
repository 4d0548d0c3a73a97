#include "eval/metrics.hpp"

#include <algorithm>
#include <stdexcept>

#include "core/text.hpp"
#include "llm/embedding.hpp"

namespace hgrag::eval {

std::string normalize_text(const std::string& raw) { return text::normalize(raw); }

namespace {

double pair_f1(const std::map<std::string, int>& cand, int cand_len,
               const std::map<std::string, int>& gold, int gold_len) {
    if (cand_len == 0 && gold_len == 0) return 1.0;
    if (cand_len == 0 || gold_len == 0) return 0.0;
    int overlap = 0;
    for (const auto& [tok, c] : cand) {
        const auto it = gold.find(tok);
        if (it != gold.end()) overlap += std::min(c, it->second);
    }
    return 2.0 * overlap / (cand_len + gold_len);
}

int multiset_size(const std::map<std::string, int>& m) {
    int n = 0;
    for (const auto& [_, c] : m) n += c;
    return n;
}

}  // namespace

double token_f1(const std::string& candidate, const std::vector<std::string>& golds) {
    if (golds.empty()) throw std::invalid_argument("token_f1 requires >= 1 golden answer");
    const auto cand = text::token_multiset(normalize_text(candidate));
    const int cand_len = multiset_size(cand);
    double best = 0.0;
    bool first = true;
    for (const auto& gold : golds) {
        const auto g = text::token_multiset(normalize_text(gold));
        const double f1 = pair_f1(cand, cand_len, g, multiset_size(g));
        if (first || f1 > best) best = f1;
        first = false;
    }
    return best;
}

double cosine_retrieval_score(const std::string& candidate,
                              const std::vector<std::string>& golds,
                              llm::EmbeddingProvider& embedder) {
    if (golds.empty()) {
        throw std::invalid_argument("cosine_retrieval_score requires >= 1 golden answer");
    }
    const auto cand_vec = embedder.embed(candidate);
    double best = 0.0;
    bool first = true;
    for (const auto& gold : golds) {
        const double c = llm::cosine(cand_vec, embedder.embed(gold));
        if (first || c > best) best = c;
        first = false;
    }
    return best;
}

}  // namespace hgrag::eval
