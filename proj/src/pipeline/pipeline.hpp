#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/hypergraph.hpp"
#include "ingest/chunker.hpp"
#include "llm/provider.hpp"
#include "pipeline/prompts.hpp"
#include "retrieval/engine.hpp"

namespace hgrag::pipeline {

enum class Mode { full, concept_only, case_only, no_retrieval, flat_chunk };

const char* mode_name(Mode mode);
std::optional<Mode> mode_from_name(const std::string& name);
std::vector<Mode> all_modes();

struct AnswerFields {
    std::optional<std::string> resolution_strategy;
    std::optional<std::string> whiteboard_action;
    std::optional<std::string> teacher_quote;
    std::string free_text;  // always the full raw answer
};

// Lenient line scan for the three TEACHER_* markers (case-insensitive,
// markdown decoration tolerated). Never fails.
AnswerFields parse_answer_fields(const std::string& answer_text);

struct PipelineResult {
    std::string query;
    Mode mode = Mode::full;
    std::optional<retrieval::InstanceEvidence> instance_evidence;
    std::optional<retrieval::ConceptEvidence> concept_evidence;
    std::optional<std::string> stage1_answer;
    std::string final_answer;
    std::vector<std::pair<std::string, std::string>> prompts;  // (stage label, user prompt)
    std::vector<std::string> provenance;                       // retrieved ids
};

struct PipelineConfig {
    retrieval::RetrievalConfig retrieval;
    PromptTemplates templates;
    std::string model_name;
    double temperature = 0.2;
    int max_output_tokens = 1024;
    std::size_t flat_chunk_k = 5;
};

// Two-stage retrieve-then-refine orchestration plus the single-call
// comparison modes. Completion call counts: full = 2, all other modes = 1.
class Pipeline {
public:
    Pipeline(const core::Hypergraph* concept_graph,
             const core::Hypergraph* instance_graph,
             const std::vector<ingest::Chunk>* chunk_store,
             llm::CompletionProvider& completer, llm::EmbeddingProvider& embedder,
             PipelineConfig config = {});

    // k_override, when set, replaces the configured stage-1 top-k
    // (k_instance / flat_chunk_k).
    PipelineResult run(const std::string& query, Mode mode,
                       std::optional<std::size_t> k_override = std::nullopt);

    const PipelineConfig& config() const { return config_; }

private:
    std::string complete(const std::string& system_prompt,
                         const std::string& user_prompt, const std::string& stage,
                         PipelineResult* result);

    const core::Hypergraph* concept_graph_;
    const core::Hypergraph* instance_graph_;
    const std::vector<ingest::Chunk>* chunk_store_;
    llm::CompletionProvider& completer_;
    llm::EmbeddingProvider& embedder_;
    PipelineConfig config_;
};

}  // namespace hgrag::pipeline
