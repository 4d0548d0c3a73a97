#include "retrieval/engine.hpp"

#include <stdexcept>

#include "retrieval/keywords.hpp"

namespace hgrag::retrieval {

const std::set<std::string>& RetrievalConfig::effective_stopwords() const {
    return stopwords.empty() ? default_stopwords() : stopwords;
}

std::string entity_score_text(const core::Entity& entity) {
    if (entity.description.empty()) return entity.name;
    return entity.name + "\n" + entity.description;
}

QueryContext make_query_context(const std::string& raw_query,
                                llm::EmbeddingProvider& embedder,
                                const RetrievalConfig& config) {
    QueryContext qc;
    qc.raw_query = raw_query;
    qc.keywords = extract_keywords(raw_query, config.effective_stopwords());
    qc.query_embedding = embedder.embed(raw_query);
    return qc;
}

std::vector<ScoredHit> score_candidates(const QueryContext& qc,
                                        const std::vector<CandidateView>& candidates,
                                        const RetrievalConfig& config) {
    const auto& stopwords = config.effective_stopwords();
    const auto components =
        config.parallel_scoring
            ? score_all_parallel(qc, candidates, stopwords, config.alpha)
            : score_all_serial(qc, candidates, stopwords, config.alpha);
    std::vector<ScoredHit> hits(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        hits[i].target_id = *candidates[i].id;
        hits[i].score = components[i].score;
        hits[i].embedding_component = components[i].embedding_component;
        hits[i].lexical_component = components[i].lexical_component;
    }
    return hits;
}

InstanceEvidence retrieve_instances(const core::Hypergraph& graph,
                                    const QueryContext& qc, std::size_t k,
                                    const RetrievalConfig& config) {
    if (graph.layer() != core::Layer::instance_layer) {
        throw std::invalid_argument("retrieve_instances requires the instance layer");
    }
    if (k < 1) throw std::invalid_argument("retrieve_instances: k must be >= 1");

    std::vector<CandidateView> candidates;
    static const std::vector<float> kNoEmbedding;
    candidates.reserve(graph.edge_count());
    for (const auto& [id, edge] : graph.edges()) {
        candidates.push_back({&id, &edge.statement,
                              edge.embedding ? &*edge.embedding : &kNoEmbedding});
    }

    InstanceEvidence evidence;
    if (candidates.empty()) return evidence;
    evidence.hits = top_k(score_candidates(qc, candidates, config), k);

    std::set<std::string> seen_entities;
    for (const auto& hit : evidence.hits) {
        const core::Hyperedge* edge = graph.find_edge(hit.target_id);
        evidence.edges.push_back(*edge);
        for (const auto& entity : graph.neighbors_of_edge(hit.target_id)) {
            if (seen_entities.insert(entity.id).second) {
                evidence.context_entities.push_back(entity);
            }
        }
    }
    return evidence;
}

ConceptEvidence retrieve_concepts(const core::Hypergraph& graph,
                                  const std::string& query_source,
                                  llm::EmbeddingProvider& embedder, std::size_t k,
                                  std::size_t max_edges_per_seed,
                                  const RetrievalConfig& config) {
    if (graph.layer() != core::Layer::concept_layer) {
        throw std::invalid_argument("retrieve_concepts requires the concept layer");
    }
    ConceptEvidence evidence;
    if (graph.entity_count() == 0) return evidence;

    const QueryContext qc = make_query_context(query_source, embedder, config);

    // Score texts must outlive the candidate views.
    std::vector<std::string> texts;
    texts.reserve(graph.entity_count());
    for (const auto& [_, entity] : graph.entities()) {
        texts.push_back(entity_score_text(entity));
    }
    std::vector<CandidateView> candidates;
    static const std::vector<float> kNoEmbedding;
    candidates.reserve(graph.entity_count());
    std::size_t i = 0;
    for (const auto& [id, entity] : graph.entities()) {
        candidates.push_back({&id, &texts[i++],
                              entity.embedding ? &*entity.embedding : &kNoEmbedding});
    }

    evidence.hits = top_k(score_candidates(qc, candidates, config), k);

    std::set<std::string> entity_ids;
    std::set<std::string> edge_ids;
    for (const auto& hit : evidence.hits) {
        evidence.seed_entities.push_back(*graph.find_entity(hit.target_id));
        const auto sub = graph.expand_entity(hit.target_id, max_edges_per_seed);
        for (const auto& e : sub.entities) {
            if (entity_ids.insert(e.id).second) evidence.subgraph.entities.push_back(e);
        }
        for (const auto& e : sub.edges) {
            if (edge_ids.insert(e.id).second) evidence.subgraph.edges.push_back(e);
        }
    }
    return evidence;
}

}  // namespace hgrag::retrieval
