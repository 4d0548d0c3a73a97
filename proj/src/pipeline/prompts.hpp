#pragma once

#include <string>
#include <vector>

#include "ingest/chunker.hpp"
#include "retrieval/engine.hpp"

namespace hgrag::pipeline {

// User-prompt templates. Placeholders: {query}, {cases}, {context},
// {draft}, {concepts}, {principles}, {chunks}. Empty string => built-in
// default.
struct PromptTemplates {
    std::string stage1;
    std::string stage2;
    std::string concept_only;
    std::string no_retrieval;
    std::string flat_chunk;
};

extern const char* kStage1SystemPrompt;
extern const char* kStage2SystemPrompt;
extern const char* kDirectSystemPrompt;

std::string compose_stage1_prompt(const std::string& query,
                                  const retrieval::InstanceEvidence& evidence,
                                  const PromptTemplates& templates = {});

std::string compose_stage2_prompt(const std::string& query,
                                  const std::string& stage1_answer,
                                  const retrieval::ConceptEvidence& evidence,
                                  const PromptTemplates& templates = {});

std::string compose_concept_only_prompt(const std::string& query,
                                        const retrieval::ConceptEvidence& evidence,
                                        const PromptTemplates& templates = {});

std::string compose_no_retrieval_prompt(const std::string& query,
                                        const PromptTemplates& templates = {});

std::string compose_flat_chunk_prompt(const std::string& query,
                                      const std::vector<ingest::Chunk>& chunks,
                                      const PromptTemplates& templates = {});

}  // namespace hgrag::pipeline
