#pragma once

#include <string>

#include "ingest/concept_ingest.hpp"
#include "ingest/instance_ingest.hpp"
#include "store/config.hpp"
#include "store/index_store.hpp"

namespace hgrag::store {

struct BuildInputs {
    std::string concepts_dir;  // plain-text/markdown corpus, document_id = relative path
    std::string cases_file;    // JSON Lines
    std::string schema_file;
    std::string created_at;  // recorded in the manifest verbatim
};

struct BuildReports {
    ingest::ConceptBuildReport concepts;
    ingest::CaseParseReport cases;
};

// Runs both ingest paths, builds the flat-chunk store over both corpora,
// and assembles the manifest (config hash + corpus digests).
IndexBundle build_index(const BuildInputs& inputs, const EngineConfig& config,
                        llm::CompletionProvider& completer,
                        llm::EmbeddingProvider& embedder,
                        BuildReports* reports = nullptr);

nlohmann::json build_report_json(const BuildReports& reports);

}  // namespace hgrag::store
