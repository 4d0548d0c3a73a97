#include "retrieval/scorer.hpp"

#include <algorithm>

#include "core/text.hpp"
#include "llm/embedding.hpp"
#include "retrieval/keywords.hpp"

namespace hgrag::retrieval {

namespace {

double keyword_jaccard(const std::vector<std::string>& query_keywords,
                       const std::string& candidate_text,
                       const std::set<std::string>& stopwords) {
    std::set<std::string> q(query_keywords.begin(), query_keywords.end());
    std::set<std::string> c;
    if (!text::trim(candidate_text).empty()) {
        for (const auto& kw : extract_keywords(candidate_text, stopwords)) c.insert(kw);
    }
    if (q.empty() && c.empty()) return 0.0;
    std::size_t inter = 0;
    for (const auto& kw : q) inter += c.count(kw);
    const std::size_t uni = q.size() + c.size() - inter;
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace

ScoreComponents score_candidate(const QueryContext& qc, const std::string& candidate_text,
                                const std::vector<float>& candidate_embedding,
                                const std::set<std::string>& stopwords, double alpha) {
    ScoreComponents out;
    out.embedding_component =
        std::max(0.0, llm::cosine(qc.query_embedding, candidate_embedding));
    out.lexical_component = keyword_jaccard(qc.keywords, candidate_text, stopwords);
    out.score = alpha * out.embedding_component + (1.0 - alpha) * out.lexical_component;
    return out;
}

std::vector<ScoreComponents> score_all_serial(const QueryContext& qc,
                                              const std::vector<CandidateView>& candidates,
                                              const std::set<std::string>& stopwords,
                                              double alpha) {
    std::vector<ScoreComponents> out(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        out[i] = score_candidate(qc, *candidates[i].text, *candidates[i].embedding,
                                 stopwords, alpha);
    }
    return out;
}

std::vector<ScoreComponents> score_all_parallel(const QueryContext& qc,
                                                const std::vector<CandidateView>& candidates,
                                                const std::set<std::string>& stopwords,
                                                double alpha) {
    std::vector<ScoreComponents> out(candidates.size());
    const auto n = static_cast<std::ptrdiff_t>(candidates.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[i] = score_candidate(qc, *candidates[i].text, *candidates[i].embedding,
                                 stopwords, alpha);
    }
    return out;
}

std::vector<ScoredHit> top_k(std::vector<ScoredHit> hits, std::size_t k) {
    std::sort(hits.begin(), hits.end(), [](const ScoredHit& a, const ScoredHit& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.target_id < b.target_id;
    });
    if (hits.size() > k) hits.resize(k);
    return hits;
}

}  // namespace hgrag::retrieval
