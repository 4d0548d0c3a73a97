#pragma once

#include <string>
#include <utility>
#include <vector>

#include "core/hypergraph.hpp"
#include "ingest/chunker.hpp"
#include "llm/provider.hpp"

namespace hgrag::ingest {

struct LowRelation {
    std::string a;
    std::string b;
    std::string statement;
};

struct HighRelation {
    std::vector<std::string> members;  // >= 3
    std::string statement;
};

struct ConceptBuildReport {
    std::size_t document_count = 0;
    std::size_t chunk_count = 0;
    std::size_t skipped_chunks = 0;
    std::size_t entity_records = 0;
    std::size_t low_records = 0;
    std::size_t high_records = 0;
    std::vector<std::string> warnings;
};

struct ConceptIngestConfig {
    std::size_t target_tokens = 1200;
    std::size_t overlap_tokens = 100;
    std::string model_name;
    // Templates with {chunk} and {entities} placeholders; empty => built-in.
    std::string entity_prompt;
    std::string low_prompt;
    std::string high_prompt;
};

// Line protocol emitted by the extraction prompts:
//   ENTITY<TAB>name<TAB>description
//   REL2<TAB>a<TAB>b<TAB>statement
//   RELN<TAB>a|b|c|...<TAB>statement   (>= 3 members)
// Malformed lines are skipped with a warning.

class ConceptIngestor {
public:
    ConceptIngestor(llm::CompletionProvider& completer,
                    llm::EmbeddingProvider& embedder,
                    ConceptIngestConfig config = {});

    std::vector<std::pair<std::string, std::string>> extract_entities(
        const Chunk& chunk, ConceptBuildReport* report);
    std::vector<LowRelation> extract_low_order(const Chunk& chunk,
                                               const std::vector<std::string>& known_entities,
                                               ConceptBuildReport* report);
    std::vector<HighRelation> extract_high_order(const Chunk& chunk,
                                                 const std::vector<std::string>& known_entities,
                                                 ConceptBuildReport* report);

    // Processes chunks in (document_id, ordinal) order, dedupes entities,
    // and embeds every entity (name+description) and edge (statement).
    core::Hypergraph build(
        const std::vector<std::pair<std::string, std::string>>& documents,
        ConceptBuildReport* report = nullptr);

    static std::string default_entity_prompt();
    static std::string default_low_prompt();
    static std::string default_high_prompt();

private:
    std::string prompt_once(const std::string& templ, const Chunk& chunk,
                            const std::vector<std::string>& known_entities);

    llm::CompletionProvider& completer_;
    llm::EmbeddingProvider& embedder_;
    ConceptIngestConfig config_;
};

extern const char* kExtractionSystemPrompt;

}  // namespace hgrag::ingest
