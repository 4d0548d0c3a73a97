#include "pipeline/prompts.hpp"

#include <sstream>

namespace hgrag::pipeline {

const char* kStage1SystemPrompt =
    "You are an experienced mathematics teaching assistant helping a novice "
    "teacher respond to a student's mistake. Ground your advice in the "
    "retrieved cases when they are relevant.";

const char* kStage2SystemPrompt =
    "You are an experienced mathematics teaching assistant. Refine the draft "
    "response for a novice teacher, grounding every claim in the pedagogical "
    "principles provided.";

const char* kDirectSystemPrompt =
    "You are an experienced mathematics teaching assistant helping a novice "
    "teacher respond to a student's mistake.";

namespace {

const char* kAnswerFormatInstruction =
    "Respond with exactly three lines:\n"
    "TEACHER_RESOLUTION_STRATEGY: <the strategy>\n"
    "TEACHER_WHITEBOARD_ACTION: <what to write or draw>\n"
    "TEACHER_QUOTE: <what to say to the student>";

std::string substitute(std::string templ,
                       const std::vector<std::pair<std::string, std::string>>& vars) {
    for (const auto& [key, value] : vars) {
        std::size_t pos = 0;
        while ((pos = templ.find(key, pos)) != std::string::npos) {
            templ.replace(pos, key.size(), value);
            pos += value.size();
        }
    }
    return templ;
}

std::string cases_block(const retrieval::InstanceEvidence& evidence) {
    std::ostringstream oss;
    for (std::size_t i = 0; i < evidence.edges.size(); ++i) {
        oss << "CASE " << (i + 1) << ":\n" << evidence.edges[i].statement << "\n\n";
    }
    return oss.str();
}

std::string context_block(const retrieval::InstanceEvidence& evidence) {
    if (evidence.context_entities.empty()) return {};
    std::ostringstream oss;
    oss << "CONTEXT:\n";
    for (const auto& entity : evidence.context_entities) oss << entity.name << "\n";
    oss << "\n";
    return oss.str();
}

std::string concepts_block(const retrieval::ConceptEvidence& evidence) {
    if (evidence.subgraph.entities.empty()) return {};
    std::ostringstream oss;
    oss << "CONCEPTS:\n";
    for (const auto& entity : evidence.subgraph.entities) {
        oss << entity.name;
        if (!entity.description.empty()) oss << ": " << entity.description;
        oss << "\n";
    }
    oss << "\n";
    return oss.str();
}

std::string principles_block(const retrieval::ConceptEvidence& evidence) {
    if (evidence.subgraph.edges.empty()) return {};
    std::ostringstream oss;
    oss << "PRINCIPLES:\n";
    for (const auto& edge : evidence.subgraph.edges) oss << "- " << edge.statement << "\n";
    oss << "\n";
    return oss.str();
}

std::string chunks_block(const std::vector<ingest::Chunk>& chunks) {
    std::ostringstream oss;
    for (std::size_t i = 0; i < chunks.size(); ++i) {
        oss << "PASSAGE " << (i + 1) << ":\n" << chunks[i].body << "\n\n";
    }
    return oss.str();
}

}  // namespace

std::string compose_stage1_prompt(const std::string& query,
                                  const retrieval::InstanceEvidence& evidence,
                                  const PromptTemplates& templates) {
    std::string templ = templates.stage1.empty()
                            ? "QUERY:\n{query}\n\n{cases}{context}" +
                                  std::string(kAnswerFormatInstruction)
                            : templates.stage1;
    return substitute(std::move(templ), {{"{query}", query},
                                         {"{cases}", cases_block(evidence)},
                                         {"{context}", context_block(evidence)}});
}

std::string compose_stage2_prompt(const std::string& query,
                                  const std::string& stage1_answer,
                                  const retrieval::ConceptEvidence& evidence,
                                  const PromptTemplates& templates) {
    std::string templ =
        templates.stage2.empty()
            ? "QUERY:\n{query}\n\nDRAFT:\n{draft}\n\n{concepts}{principles}"
              "Refine the draft so every claim is grounded in the principles "
              "above. Keep the three TEACHER_* fields.\n" +
                  std::string(kAnswerFormatInstruction)
            : templates.stage2;
    return substitute(std::move(templ), {{"{query}", query},
                                         {"{draft}", stage1_answer},
                                         {"{concepts}", concepts_block(evidence)},
                                         {"{principles}", principles_block(evidence)}});
}

std::string compose_concept_only_prompt(const std::string& query,
                                        const retrieval::ConceptEvidence& evidence,
                                        const PromptTemplates& templates) {
    std::string templ = templates.concept_only.empty()
                            ? "QUERY:\n{query}\n\n{concepts}{principles}" +
                                  std::string(kAnswerFormatInstruction)
                            : templates.concept_only;
    return substitute(std::move(templ), {{"{query}", query},
                                         {"{concepts}", concepts_block(evidence)},
                                         {"{principles}", principles_block(evidence)}});
}

std::string compose_no_retrieval_prompt(const std::string& query,
                                        const PromptTemplates& templates) {
    std::string templ = templates.no_retrieval.empty()
                            ? "QUERY:\n{query}\n\n" + std::string(kAnswerFormatInstruction)
                            : templates.no_retrieval;
    return substitute(std::move(templ), {{"{query}", query}});
}

std::string compose_flat_chunk_prompt(const std::string& query,
                                      const std::vector<ingest::Chunk>& chunks,
                                      const PromptTemplates& templates) {
    std::string templ = templates.flat_chunk.empty()
                            ? "QUERY:\n{query}\n\n{chunks}" +
                                  std::string(kAnswerFormatInstruction)
                            : templates.flat_chunk;
    return substitute(std::move(templ),
                      {{"{query}", query}, {"{chunks}", chunks_block(chunks)}});
}

}  // namespace hgrag::pipeline
