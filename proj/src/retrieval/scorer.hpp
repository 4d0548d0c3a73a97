#pragma once

#include <set>
#include <string>
#include <vector>

namespace hgrag::retrieval {

inline constexpr double kDefaultAlpha = 0.7;

struct QueryContext {
    std::string raw_query;
    std::vector<std::string> keywords;
    std::vector<float> query_embedding;
};

struct ScoreComponents {
    double score = 0;                // alpha * emb + (1 - alpha) * lex
    double embedding_component = 0;  // max(0, cosine), in [0,1]
    double lexical_component = 0;    // keyword Jaccard, in [0,1]
};

struct ScoredHit {
    std::string target_id;
    double score = 0;
    double embedding_component = 0;
    double lexical_component = 0;
};

// Non-owning view over one scoring candidate.
struct CandidateView {
    const std::string* id;
    const std::string* text;
    const std::vector<float>* embedding;
};

ScoreComponents score_candidate(const QueryContext& qc, const std::string& candidate_text,
                                const std::vector<float>& candidate_embedding,
                                const std::set<std::string>& stopwords,
                                double alpha = kDefaultAlpha);

// Serial reference kernel; kept as the ground truth the parallel kernel
// is checked against.
std::vector<ScoreComponents> score_all_serial(const QueryContext& qc,
                                              const std::vector<CandidateView>& candidates,
                                              const std::set<std::string>& stopwords,
                                              double alpha = kDefaultAlpha);

// OpenMP-parallel kernel over independent candidates. Output order equals
// input order, so results are schedule-independent.
std::vector<ScoreComponents> score_all_parallel(const QueryContext& qc,
                                                const std::vector<CandidateView>& candidates,
                                                const std::set<std::string>& stopwords,
                                                double alpha = kDefaultAlpha);

// Sorts hits by descending score, ties broken by ascending id, and trims
// to k.
std::vector<ScoredHit> top_k(std::vector<ScoredHit> hits, std::size_t k);

}  // namespace hgrag::retrieval
