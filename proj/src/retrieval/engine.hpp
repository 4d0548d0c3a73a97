#pragma once

#include <set>
#include <string>
#include <vector>

#include "core/hypergraph.hpp"
#include "llm/provider.hpp"
#include "retrieval/scorer.hpp"

namespace hgrag::retrieval {

struct RetrievalConfig {
    double alpha = kDefaultAlpha;
    std::size_t k_instance = 5;
    std::size_t k_concept = 8;
    std::size_t max_edges_per_seed = 3;
    std::set<std::string> stopwords;  // empty => default list
    bool parallel_scoring = true;

    const std::set<std::string>& effective_stopwords() const;
};

struct InstanceEvidence {
    std::vector<ScoredHit> hits;               // rank order
    std::vector<core::Hyperedge> edges;        // same order as hits
    std::vector<core::Entity> context_entities;  // union of members, deduped
};

struct ConceptEvidence {
    std::vector<ScoredHit> hits;  // seed scores, rank order
    std::vector<core::Entity> seed_entities;
    core::ConceptSubgraph subgraph;
};

// Text a concept entity is embedded and scored on.
std::string entity_score_text(const core::Entity& entity);

QueryContext make_query_context(const std::string& raw_query,
                                llm::EmbeddingProvider& embedder,
                                const RetrievalConfig& config);

// Stage 1: score every case hyperedge statement, take top-k
// (ties by ascending edge id), then expand to the member entities.
InstanceEvidence retrieve_instances(const core::Hypergraph& graph,
                                    const QueryContext& qc, std::size_t k,
                                    const RetrievalConfig& config);

// Stage 2: score every concept entity on name+description, take top-k
// seeds (ties by ascending entity id), then union each seed's expansion.
ConceptEvidence retrieve_concepts(const core::Hypergraph& graph,
                                  const std::string& query_source,
                                  llm::EmbeddingProvider& embedder, std::size_t k,
                                  std::size_t max_edges_per_seed,
                                  const RetrievalConfig& config);

// Shared kernel entry: scores candidates with the configured kernel
// (parallel by default, serial reference otherwise).
std::vector<ScoredHit> score_candidates(const QueryContext& qc,
                                        const std::vector<CandidateView>& candidates,
                                        const RetrievalConfig& config);

}  // namespace hgrag::retrieval
