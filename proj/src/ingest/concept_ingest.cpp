#include "ingest/concept_ingest.hpp"

#include <algorithm>
#include <sstream>

#include "core/text.hpp"
#include "retrieval/engine.hpp"

namespace hgrag::ingest {

const char* kExtractionSystemPrompt =
    "You are an information extraction assistant for mathematics education "
    "texts. Follow the requested line format exactly and output nothing else. "
    "If there is nothing to extract, output nothing.";

namespace {

std::vector<std::string> split_lines(const std::string& s) {
    std::vector<std::string> lines;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        const auto next = s.find(sep, pos);
        if (next == std::string::npos) {
            parts.push_back(s.substr(pos));
            break;
        }
        parts.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
    return parts;
}

std::string apply_template(const std::string& templ, const Chunk& chunk,
                           const std::vector<std::string>& known_entities) {
    std::string entities;
    for (std::size_t i = 0; i < known_entities.size(); ++i) {
        if (i > 0) entities += ", ";
        entities += known_entities[i];
    }
    std::string out = templ;
    for (const auto& [key, value] :
         {std::pair<std::string, const std::string*>{"{chunk}", &chunk.body},
          std::pair<std::string, const std::string*>{"{entities}", &entities}}) {
        std::size_t pos = 0;
        while ((pos = out.find(key, pos)) != std::string::npos) {
            out.replace(pos, key.size(), *value);
            pos += value->size();
        }
    }
    return out;
}

void warn(ConceptBuildReport* report, const std::string& msg) {
    if (report) report->warnings.push_back(msg);
}

}  // namespace

std::string ConceptIngestor::default_entity_prompt() {
    return "Extract the instructional concepts mentioned in the text below.\n"
           "Output one line per concept, formatted exactly as:\n"
           "ENTITY\tname\tone-sentence description\n\n"
           "TEXT:\n{chunk}";
}

std::string ConceptIngestor::default_low_prompt() {
    return "Extract pairwise relations between concepts in the text below.\n"
           "Known concepts: {entities}\n"
           "Output one line per relation, formatted exactly as:\n"
           "REL2\tconcept_a\tconcept_b\tsentence stating the relation\n\n"
           "TEXT:\n{chunk}";
}

std::string ConceptIngestor::default_high_prompt() {
    return "Extract relations that connect three or more concepts in the text "
           "below.\n"
           "Known concepts: {entities}\n"
           "Output one line per relation, formatted exactly as:\n"
           "RELN\tconcept_a|concept_b|concept_c|...\tsentence stating the relation\n\n"
           "TEXT:\n{chunk}";
}

ConceptIngestor::ConceptIngestor(llm::CompletionProvider& completer,
                                 llm::EmbeddingProvider& embedder,
                                 ConceptIngestConfig config)
    : completer_(completer), embedder_(embedder), config_(std::move(config)) {
    if (config_.entity_prompt.empty()) config_.entity_prompt = default_entity_prompt();
    if (config_.low_prompt.empty()) config_.low_prompt = default_low_prompt();
    if (config_.high_prompt.empty()) config_.high_prompt = default_high_prompt();
}

std::string ConceptIngestor::prompt_once(const std::string& templ, const Chunk& chunk,
                                         const std::vector<std::string>& known_entities) {
    llm::CompletionRequest request;
    request.system_prompt = kExtractionSystemPrompt;
    request.user_prompt = apply_template(templ, chunk, known_entities);
    request.model_name = config_.model_name;
    return completer_.complete(request);
}

std::vector<std::pair<std::string, std::string>> ConceptIngestor::extract_entities(
    const Chunk& chunk, ConceptBuildReport* report) {
    auto parse = [&](const std::string& response) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& line : split_lines(response)) {
            if (text::trim(line).empty()) continue;
            const auto parts = split_on(line, '\t');
            if (parts.size() != 3 || parts[0] != "ENTITY" ||
                text::trim(parts[1]).empty()) {
                warn(report, chunk.id + ": malformed entity line: " + line);
                continue;
            }
            out.emplace_back(std::string(text::trim(parts[1])),
                             std::string(text::trim(parts[2])));
        }
        return out;
    };
    for (int attempt = 0; attempt < 2; ++attempt) {
        auto records = parse(prompt_once(config_.entity_prompt, chunk, {}));
        if (!records.empty()) return records;
    }
    warn(report, chunk.id + ": entity extraction yielded no well-formed lines, skipped");
    return {};
}

std::vector<LowRelation> ConceptIngestor::extract_low_order(
    const Chunk& chunk, const std::vector<std::string>& known_entities,
    ConceptBuildReport* report) {
    auto parse = [&](const std::string& response) {
        std::vector<LowRelation> out;
        for (const auto& line : split_lines(response)) {
            if (text::trim(line).empty()) continue;
            const auto parts = split_on(line, '\t');
            if (parts.size() != 4 || parts[0] != "REL2" ||
                text::trim(parts[1]).empty() || text::trim(parts[2]).empty() ||
                text::trim(parts[3]).empty()) {
                warn(report, chunk.id + ": malformed low-order line: " + line);
                continue;
            }
            out.push_back({std::string(text::trim(parts[1])),
                           std::string(text::trim(parts[2])),
                           std::string(text::trim(parts[3]))});
        }
        return out;
    };
    for (int attempt = 0; attempt < 2; ++attempt) {
        auto records = parse(prompt_once(config_.low_prompt, chunk, known_entities));
        if (!records.empty()) return records;
    }
    warn(report, chunk.id + ": low-order extraction yielded no well-formed lines, skipped");
    return {};
}

std::vector<HighRelation> ConceptIngestor::extract_high_order(
    const Chunk& chunk, const std::vector<std::string>& known_entities,
    ConceptBuildReport* report) {
    auto parse = [&](const std::string& response) {
        std::vector<HighRelation> out;
        for (const auto& line : split_lines(response)) {
            if (text::trim(line).empty()) continue;
            const auto parts = split_on(line, '\t');
            if (parts.size() != 3 || parts[0] != "RELN" || text::trim(parts[2]).empty()) {
                warn(report, chunk.id + ": malformed high-order line: " + line);
                continue;
            }
            std::vector<std::string> members;
            for (const auto& m : split_on(parts[1], '|')) {
                if (!text::trim(m).empty()) members.emplace_back(text::trim(m));
            }
            if (members.size() < 3) {
                warn(report, chunk.id + ": high-order relation with fewer than 3 members: " + line);
                continue;
            }
            out.push_back({std::move(members), std::string(text::trim(parts[2]))});
        }
        return out;
    };
    for (int attempt = 0; attempt < 2; ++attempt) {
        auto records = parse(prompt_once(config_.high_prompt, chunk, known_entities));
        if (!records.empty()) return records;
    }
    warn(report, chunk.id + ": high-order extraction yielded no well-formed lines, skipped");
    return {};
}

core::Hypergraph ConceptIngestor::build(
    const std::vector<std::pair<std::string, std::string>>& documents,
    ConceptBuildReport* report) {
    ConceptBuildReport local;
    ConceptBuildReport& rep = report ? *report : local;
    rep.document_count = documents.size();

    auto sorted_docs = documents;
    std::sort(sorted_docs.begin(), sorted_docs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    auto chunks =
        chunk_corpus(sorted_docs, config_.target_tokens, config_.overlap_tokens,
                     &rep.warnings);
    rep.chunk_count = chunks.size();

    core::Hypergraph graph(core::Layer::concept_layer);
    auto resolve = [&](const std::string& name, const std::string& source_ref) {
        // Endpoints the entity pass missed are created with an empty
        // description.
        return graph.add_entity(name, core::EntityKind::concept_node, "", source_ref);
    };

    std::size_t failed_chunks = 0;
    for (const auto& chunk : chunks) {
        try {
            const auto entities = extract_entities(chunk, &rep);
            rep.entity_records += entities.size();
            std::vector<std::string> known;
            for (const auto& [name, description] : entities) {
                graph.add_entity(name, core::EntityKind::concept_node, description,
                                 chunk.id);
                known.push_back(name);
            }
            for (const auto& [_, entity] : graph.entities()) {
                if (std::find(known.begin(), known.end(), entity.name) == known.end()) {
                    known.push_back(entity.name);
                }
            }
            for (const auto& rel : extract_low_order(chunk, known, &rep)) {
                ++rep.low_records;
                graph.add_hyperedge({resolve(rel.a, chunk.id), resolve(rel.b, chunk.id)},
                                    core::OrderClass::low, rel.statement, chunk.id);
            }
            for (const auto& rel : extract_high_order(chunk, known, &rep)) {
                ++rep.high_records;
                std::vector<std::string> member_ids;
                std::set<std::string> seen;
                for (const auto& name : rel.members) {
                    const auto id = resolve(name, chunk.id);
                    if (seen.insert(id).second) member_ids.push_back(id);
                }
                if (member_ids.size() < 3) {
                    rep.warnings.push_back(chunk.id +
                                           ": high-order members collapsed below 3 after "
                                           "dedup, relation dropped");
                    continue;
                }
                graph.add_hyperedge(member_ids, core::OrderClass::high, rel.statement,
                                    chunk.id);
            }
        } catch (const llm::ProviderError& e) {
            ++failed_chunks;
            ++rep.skipped_chunks;
            rep.warnings.push_back(chunk.id + ": provider failure, chunk skipped: " +
                                   e.what());
        }
    }
    if (!chunks.empty() && failed_chunks == chunks.size()) {
        throw std::runtime_error("concept build failed: every chunk failed");
    }

    for (const auto& [id, entity] : graph.entities()) {
        graph.mutable_entity(id)->embedding =
            embedder_.embed(retrieval::entity_score_text(entity));
    }
    for (const auto& [id, edge] : graph.edges()) {
        graph.mutable_edge(id)->embedding = embedder_.embed(edge.statement);
    }
    return graph;
}

}  // namespace hgrag::ingest
