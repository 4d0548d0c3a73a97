#pragma once

#include <string>
#include <utility>
#include <vector>

#include "core/hypergraph.hpp"
#include "llm/provider.hpp"

namespace hgrag::ingest {

struct CaseRecord {
    std::string case_id;
    // Key order: schema canonical keys first, then remaining keys
    // alphabetically. Keys unique within a record.
    std::vector<std::pair<std::string, std::string>> fields;
};

struct FieldSchema {
    std::vector<std::string> canonical_key_order;
    std::vector<std::string> required_keys;
    std::vector<std::string> gold_answer_keys;

    static FieldSchema load(const std::string& path);
};

struct CaseParseReport {
    std::size_t total_lines = 0;
    std::size_t parsed = 0;
    std::size_t skipped = 0;
    std::vector<std::string> errors;  // "line N: reason"
};

// JSON Lines input, one case object per line. case_id comes from an "id"
// field or is synthesized as "case-<line number>" (1-based). Malformed
// lines and records missing a required key are skipped with an error.
std::vector<CaseRecord> parse_cases(const std::string& path, const FieldSchema& schema,
                                    CaseParseReport* report = nullptr);

std::vector<CaseRecord> parse_cases_text(const std::string& jsonl,
                                         const FieldSchema& schema,
                                         CaseParseReport* report = nullptr);

// One "KEY=value" field-value entity name per field, key upper-cased.
std::vector<std::string> case_entity_names(const CaseRecord& record);

// One "KEY: value" line per field in record key order, newline-joined.
std::string pack_case(const CaseRecord& record);

// One case hyperedge per record over its (graph-wide deduplicated)
// field-value entities; edge statement is the packed case.
core::Hypergraph build_instance_hypergraph(const std::vector<CaseRecord>& cases,
                                           llm::EmbeddingProvider& embedder);

}  // namespace hgrag::ingest
