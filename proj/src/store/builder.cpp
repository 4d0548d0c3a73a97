#include "store/builder.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "core/text.hpp"

namespace hgrag::store {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::pair<std::string, std::string>> read_corpus(const std::string& dir) {
    std::vector<std::pair<std::string, std::string>> docs;
    if (dir.empty()) return docs;
    if (!fs::is_directory(dir)) {
        throw std::runtime_error("concept corpus directory does not exist: " + dir);
    }
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const auto rel = fs::relative(entry.path(), dir).generic_string();
        docs.emplace_back(rel, read_file(entry.path()));
    }
    std::sort(docs.begin(), docs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return docs;
}

void embed_chunks(std::vector<ingest::Chunk>& chunks, llm::EmbeddingProvider& embedder) {
    for (auto& chunk : chunks) chunk.embedding = embedder.embed(chunk.body);
}

}  // namespace

IndexBundle build_index(const BuildInputs& inputs, const EngineConfig& config,
                        llm::CompletionProvider& completer,
                        llm::EmbeddingProvider& embedder, BuildReports* reports) {
    BuildReports local;
    BuildReports& rep = reports ? *reports : local;

    IndexBundle bundle;
    bundle.manifest.config_hash = config.config_hash();
    bundle.manifest.created_at = inputs.created_at;

    const auto documents = read_corpus(inputs.concepts_dir);
    for (const auto& [id, body] : documents) {
        bundle.manifest.corpus_digests["concepts/" + id] = text::sha256_hex(body);
    }

    ingest::ConceptIngestConfig icfg;
    icfg.target_tokens = config.chunk_target_tokens;
    icfg.overlap_tokens = config.chunk_overlap_tokens;
    icfg.model_name = config.completion.model_name;
    auto load_if = [](const std::string& path) -> std::string {
        return path.empty() ? std::string{} : read_file(path);
    };
    icfg.entity_prompt = load_if(config.entity_prompt_path);
    icfg.low_prompt = load_if(config.low_prompt_path);
    icfg.high_prompt = load_if(config.high_prompt_path);

    ingest::ConceptIngestor ingestor(completer, embedder, icfg);
    bundle.concept_graph = ingestor.build(documents, &rep.concepts);

    std::vector<ingest::CaseRecord> cases;
    if (!inputs.cases_file.empty()) {
        bundle.manifest.corpus_digests["cases"] =
            text::sha256_hex(read_file(inputs.cases_file));
        const auto schema = inputs.schema_file.empty()
                                ? ingest::FieldSchema{}
                                : ingest::FieldSchema::load(inputs.schema_file);
        cases = ingest::parse_cases(inputs.cases_file, schema, &rep.cases);
        if (!cases.empty()) {
            bundle.instance_graph = ingest::build_instance_hypergraph(cases, embedder);
        }
    }

    // Flat-chunk store: 300-token windows (no overlap) over both corpora.
    bundle.concept_chunks = ingest::chunk_corpus(documents, config.flat_chunk_tokens, 0);
    std::vector<std::pair<std::string, std::string>> case_docs;
    case_docs.reserve(cases.size());
    for (const auto& record : cases) {
        case_docs.emplace_back("case/" + record.case_id, ingest::pack_case(record));
    }
    bundle.instance_chunks = ingest::chunk_corpus(case_docs, config.flat_chunk_tokens, 0);
    embed_chunks(bundle.concept_chunks, embedder);
    embed_chunks(bundle.instance_chunks, embedder);

    bundle.refresh_counts();
    return bundle;
}

nlohmann::json build_report_json(const BuildReports& reports) {
    return nlohmann::json{
        {"concept",
         {{"documents", reports.concepts.document_count},
          {"chunks", reports.concepts.chunk_count},
          {"skipped_chunks", reports.concepts.skipped_chunks},
          {"entity_records", reports.concepts.entity_records},
          {"low_records", reports.concepts.low_records},
          {"high_records", reports.concepts.high_records},
          {"warnings", reports.concepts.warnings}}},
        {"cases",
         {{"total_lines", reports.cases.total_lines},
          {"parsed", reports.cases.parsed},
          {"skipped", reports.cases.skipped},
          {"errors", reports.cases.errors}}},
    };
}

}  // namespace hgrag::store
