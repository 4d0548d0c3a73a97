#include "pipeline/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

#include "core/text.hpp"

namespace hgrag::pipeline {

const char* mode_name(Mode mode) {
    switch (mode) {
        case Mode::full: return "full";
        case Mode::concept_only: return "concept_only";
        case Mode::case_only: return "case_only";
        case Mode::no_retrieval: return "no_retrieval";
        case Mode::flat_chunk: return "flat_chunk";
    }
    return "full";
}

std::optional<Mode> mode_from_name(const std::string& name) {
    if (name == "full") return Mode::full;
    if (name == "concept_only") return Mode::concept_only;
    if (name == "case_only") return Mode::case_only;
    if (name == "no_retrieval") return Mode::no_retrieval;
    if (name == "flat_chunk") return Mode::flat_chunk;
    return std::nullopt;
}

std::vector<Mode> all_modes() {
    return {Mode::full, Mode::concept_only, Mode::case_only, Mode::no_retrieval,
            Mode::flat_chunk};
}

namespace {

// Matches "<decoration>MARKER<decoration>:<decoration>value" case-insensitively.
std::optional<std::string> match_field(const std::string& line, const char* marker) {
    std::string upper = text::to_upper_ascii(line);
    const auto pos = upper.find(marker);
    if (pos == std::string::npos) return std::nullopt;
    std::size_t i = pos + std::string(marker).size();
    while (i < line.size() && (line[i] == '*' || line[i] == ' ')) ++i;
    if (i >= line.size() || line[i] != ':') return std::nullopt;
    ++i;
    while (i < line.size() && (line[i] == '*' || line[i] == ' ')) ++i;
    std::string value = line.substr(i);
    while (!value.empty() && (value.back() == '*' || value.back() == ' ')) {
        value.pop_back();
    }
    return value;
}

}  // namespace

AnswerFields parse_answer_fields(const std::string& answer_text) {
    AnswerFields fields;
    fields.free_text = answer_text;
    std::istringstream in(answer_text);
    std::string line;
    while (std::getline(in, line)) {
        if (!fields.resolution_strategy) {
            if (auto v = match_field(line, "TEACHER_RESOLUTION_STRATEGY")) {
                fields.resolution_strategy = *v;
                continue;
            }
        }
        if (!fields.whiteboard_action) {
            if (auto v = match_field(line, "TEACHER_WHITEBOARD_ACTION")) {
                fields.whiteboard_action = *v;
                continue;
            }
        }
        if (!fields.teacher_quote) {
            if (auto v = match_field(line, "TEACHER_QUOTE")) {
                fields.teacher_quote = *v;
            }
        }
    }
    return fields;
}

Pipeline::Pipeline(const core::Hypergraph* concept_graph,
                   const core::Hypergraph* instance_graph,
                   const std::vector<ingest::Chunk>* chunk_store,
                   llm::CompletionProvider& completer,
                   llm::EmbeddingProvider& embedder, PipelineConfig config)
    : concept_graph_(concept_graph),
      instance_graph_(instance_graph),
      chunk_store_(chunk_store),
      completer_(completer),
      embedder_(embedder),
      config_(std::move(config)) {}

std::string Pipeline::complete(const std::string& system_prompt,
                               const std::string& user_prompt,
                               const std::string& stage, PipelineResult* result) {
    result->prompts.emplace_back(stage, user_prompt);
    llm::CompletionRequest request;
    request.system_prompt = system_prompt;
    request.user_prompt = user_prompt;
    request.model_name = config_.model_name;
    request.temperature = config_.temperature;
    request.max_output_tokens = config_.max_output_tokens;
    try {
        return completer_.complete(request);
    } catch (const llm::ProviderError& e) {
        throw llm::ProviderError(stage + ": " + e.what());
    }
}

namespace {

void add_provenance(PipelineResult* result, std::set<std::string>* seen,
                    const std::string& id) {
    if (seen->insert(id).second) result->provenance.push_back(id);
}

void record_instance_provenance(PipelineResult* result, std::set<std::string>* seen,
                                const retrieval::InstanceEvidence& evidence) {
    for (const auto& hit : evidence.hits) add_provenance(result, seen, hit.target_id);
    for (const auto& entity : evidence.context_entities) {
        add_provenance(result, seen, entity.id);
    }
}

void record_concept_provenance(PipelineResult* result, std::set<std::string>* seen,
                               const retrieval::ConceptEvidence& evidence) {
    for (const auto& hit : evidence.hits) add_provenance(result, seen, hit.target_id);
    for (const auto& edge : evidence.subgraph.edges) {
        add_provenance(result, seen, edge.id);
    }
    for (const auto& entity : evidence.subgraph.entities) {
        add_provenance(result, seen, entity.id);
    }
}

}  // namespace

PipelineResult Pipeline::run(const std::string& query, Mode mode,
                             std::optional<std::size_t> k_override) {
    const std::size_t stage1_k =
        k_override.value_or(config_.retrieval.k_instance);
    const std::size_t chunk_k = k_override.value_or(config_.flat_chunk_k);
    PipelineResult result;
    result.query = query;
    result.mode = mode;
    std::set<std::string> seen_ids;

    auto require = [&](const void* ptr, const char* what) {
        if (!ptr) {
            throw std::invalid_argument(std::string("mode ") + mode_name(mode) +
                                        " requires " + what);
        }
    };

    switch (mode) {
        case Mode::full: {
            require(instance_graph_, "the instance graph");
            require(concept_graph_, "the concept graph");
            const auto qc =
                retrieval::make_query_context(query, embedder_, config_.retrieval);
            result.instance_evidence = retrieval::retrieve_instances(
                *instance_graph_, qc, stage1_k, config_.retrieval);
            record_instance_provenance(&result, &seen_ids, *result.instance_evidence);
            result.stage1_answer = complete(
                kStage1SystemPrompt,
                compose_stage1_prompt(query, *result.instance_evidence, config_.templates),
                "stage1", &result);
            const std::string concept_query = query + "\n\n" + *result.stage1_answer;
            result.concept_evidence = retrieval::retrieve_concepts(
                *concept_graph_, concept_query, embedder_, config_.retrieval.k_concept,
                config_.retrieval.max_edges_per_seed, config_.retrieval);
            record_concept_provenance(&result, &seen_ids, *result.concept_evidence);
            result.final_answer = complete(
                kStage2SystemPrompt,
                compose_stage2_prompt(query, *result.stage1_answer,
                                      *result.concept_evidence, config_.templates),
                "stage2", &result);
            break;
        }
        case Mode::case_only: {
            require(instance_graph_, "the instance graph");
            const auto qc =
                retrieval::make_query_context(query, embedder_, config_.retrieval);
            result.instance_evidence = retrieval::retrieve_instances(
                *instance_graph_, qc, stage1_k, config_.retrieval);
            record_instance_provenance(&result, &seen_ids, *result.instance_evidence);
            result.stage1_answer = complete(
                kStage1SystemPrompt,
                compose_stage1_prompt(query, *result.instance_evidence, config_.templates),
                "stage1", &result);
            result.final_answer = *result.stage1_answer;
            break;
        }
        case Mode::concept_only: {
            require(concept_graph_, "the concept graph");
            result.concept_evidence = retrieval::retrieve_concepts(
                *concept_graph_, query, embedder_, config_.retrieval.k_concept,
                config_.retrieval.max_edges_per_seed, config_.retrieval);
            record_concept_provenance(&result, &seen_ids, *result.concept_evidence);
            result.final_answer = complete(
                kDirectSystemPrompt,
                compose_concept_only_prompt(query, *result.concept_evidence,
                                            config_.templates),
                "concept_only", &result);
            break;
        }
        case Mode::no_retrieval: {
            result.final_answer =
                complete(kDirectSystemPrompt,
                         compose_no_retrieval_prompt(query, config_.templates),
                         "no_retrieval", &result);
            break;
        }
        case Mode::flat_chunk: {
            require(chunk_store_, "the chunk store");
            const auto qc =
                retrieval::make_query_context(query, embedder_, config_.retrieval);
            static const std::vector<float> kNoEmbedding;
            std::vector<retrieval::CandidateView> candidates;
            candidates.reserve(chunk_store_->size());
            for (const auto& chunk : *chunk_store_) {
                candidates.push_back(
                    {&chunk.id, &chunk.body,
                     chunk.embedding ? &*chunk.embedding : &kNoEmbedding});
            }
            const auto hits = retrieval::top_k(
                retrieval::score_candidates(qc, candidates, config_.retrieval),
                chunk_k);
            std::vector<ingest::Chunk> top_chunks;
            for (const auto& hit : hits) {
                add_provenance(&result, &seen_ids, hit.target_id);
                const auto it = std::find_if(
                    chunk_store_->begin(), chunk_store_->end(),
                    [&](const ingest::Chunk& c) { return c.id == hit.target_id; });
                top_chunks.push_back(*it);
            }
            result.final_answer = complete(
                kDirectSystemPrompt,
                compose_flat_chunk_prompt(query, top_chunks, config_.templates),
                "flat_chunk", &result);
            break;
        }
    }
    return result;
}

}  // namespace hgrag::pipeline
