#include "store/index_store.hpp"

#include <functional>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "core/text.hpp"

namespace hgrag::store {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<ingest::Chunk> IndexBundle::all_chunks() const {
    std::vector<ingest::Chunk> out = concept_chunks;
    out.insert(out.end(), instance_chunks.begin(), instance_chunks.end());
    return out;
}

void IndexBundle::refresh_counts() {
    manifest.concept_entities = concept_graph.entity_count();
    manifest.concept_edges = concept_graph.edge_count();
    manifest.concept_chunks = concept_chunks.size();
    manifest.instance_entities = instance_graph.entity_count();
    manifest.instance_edges = instance_graph.edge_count();
    manifest.instance_chunks = instance_chunks.size();
}

namespace {

json embedding_to_json(const std::vector<float>& vec) {
    json arr = json::array();
    char buf[32];
    for (const float v : vec) {
        std::snprintf(buf, sizeof(buf), "%.9g", static_cast<double>(v));
        arr.push_back(std::strtod(buf, nullptr));
    }
    return arr;
}

std::vector<float> embedding_from_json(const json& arr) {
    std::vector<float> vec;
    vec.reserve(arr.size());
    for (const auto& v : arr) vec.push_back(v.get<float>());
    return vec;
}

std::string entities_jsonl(const core::Hypergraph& graph) {
    std::string out;
    for (const auto& [id, entity] : graph.entities()) {
        json obj{{"id", entity.id},
                 {"name", entity.name},
                 {"kind", core::entity_kind_name(entity.kind)},
                 {"description", entity.description},
                 {"source_refs", entity.source_refs}};
        if (entity.embedding) obj["embedding"] = embedding_to_json(*entity.embedding);
        out += obj.dump();
        out.push_back('\n');
    }
    return out;
}

std::string edges_jsonl(const core::Hypergraph& graph) {
    std::string out;
    for (const auto& [id, edge] : graph.edges()) {
        json obj{{"id", edge.id},
                 {"members", edge.members},
                 {"order_class", core::order_class_name(edge.order_class)},
                 {"statement", edge.statement},
                 {"source_ref", edge.source_ref}};
        if (edge.embedding) obj["embedding"] = embedding_to_json(*edge.embedding);
        out += obj.dump();
        out.push_back('\n');
    }
    return out;
}

std::string chunks_jsonl(const std::vector<ingest::Chunk>& chunks) {
    std::string out;
    for (const auto& chunk : chunks) {
        json obj{{"id", chunk.id},
                 {"document_id", chunk.document_id},
                 {"ordinal", chunk.ordinal},
                 {"body", chunk.body}};
        if (chunk.embedding) obj["embedding"] = embedding_to_json(*chunk.embedding);
        out += obj.dump();
        out.push_back('\n');
    }
    return out;
}

std::string manifest_text(const Manifest& m) {
    json obj{{"format_version", m.format_version},
             {"config_hash", m.config_hash},
             {"created_at", m.created_at},
             {"corpus_digests", m.corpus_digests},
             {"concept_entities", m.concept_entities},
             {"concept_edges", m.concept_edges},
             {"concept_chunks", m.concept_chunks},
             {"instance_entities", m.instance_entities},
             {"instance_edges", m.instance_edges},
             {"instance_chunks", m.instance_chunks}};
    return obj.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

// Applies fn to each non-blank line, reporting the 1-based line number on
// failure.
void for_each_line(const std::string& path,
                   const std::function<void(const json&)>& fn) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("missing index file: " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (text::trim(line).empty()) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": corrupted line: " + e.what());
        }
        try {
            fn(obj);
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " +
                                     e.what());
        }
    }
}

void load_graph(const std::string& dir, core::Hypergraph* graph,
                std::vector<ingest::Chunk>* chunks) {
    for_each_line(dir + "/entities.jsonl", [&](const json& obj) {
        core::Entity entity;
        entity.id = obj.at("id").get<std::string>();
        entity.name = obj.at("name").get<std::string>();
        const auto kind = core::entity_kind_from_name(obj.at("kind").get<std::string>());
        if (!kind) throw std::runtime_error("unknown entity kind");
        entity.kind = *kind;
        entity.description = obj.at("description").get<std::string>();
        entity.source_refs = obj.at("source_refs").get<std::vector<std::string>>();
        if (obj.contains("embedding")) {
            entity.embedding = embedding_from_json(obj.at("embedding"));
        }
        graph->insert_entity_raw(std::move(entity));
    });
    for_each_line(dir + "/edges.jsonl", [&](const json& obj) {
        core::Hyperedge edge;
        edge.id = obj.at("id").get<std::string>();
        edge.members = obj.at("members").get<std::vector<std::string>>();
        const auto oc = core::order_class_from_name(obj.at("order_class").get<std::string>());
        if (!oc) throw std::runtime_error("unknown order class");
        edge.order_class = *oc;
        edge.statement = obj.at("statement").get<std::string>();
        edge.source_ref = obj.at("source_ref").get<std::string>();
        if (obj.contains("embedding")) {
            edge.embedding = embedding_from_json(obj.at("embedding"));
        }
        graph->insert_edge_raw(std::move(edge));
    });
    for_each_line(dir + "/chunks.jsonl", [&](const json& obj) {
        ingest::Chunk chunk;
        chunk.id = obj.at("id").get<std::string>();
        chunk.document_id = obj.at("document_id").get<std::string>();
        chunk.ordinal = obj.at("ordinal").get<std::size_t>();
        chunk.body = obj.at("body").get<std::string>();
        if (obj.contains("embedding")) {
            chunk.embedding = embedding_from_json(obj.at("embedding"));
        }
        chunks->push_back(std::move(chunk));
    });
}

}  // namespace

std::string manifest_digest(const Manifest& manifest) {
    return text::sha256_hex(manifest_text(manifest));
}

std::string save_index(const IndexBundle& bundle, const std::string& directory) {
    fs::create_directories(fs::path(directory) / "concept");
    fs::create_directories(fs::path(directory) / "instance");

    const std::string mtext = manifest_text(bundle.manifest);
    const std::vector<std::pair<std::string, std::string>> files = {
        {directory + "/concept/entities.jsonl", entities_jsonl(bundle.concept_graph)},
        {directory + "/concept/edges.jsonl", edges_jsonl(bundle.concept_graph)},
        {directory + "/concept/chunks.jsonl", chunks_jsonl(bundle.concept_chunks)},
        {directory + "/instance/entities.jsonl", entities_jsonl(bundle.instance_graph)},
        {directory + "/instance/edges.jsonl", edges_jsonl(bundle.instance_graph)},
        {directory + "/instance/chunks.jsonl", chunks_jsonl(bundle.instance_chunks)},
        {directory + "/manifest.json", mtext},
    };
    std::vector<std::string> written;
    try {
        for (const auto& [path, content] : files) {
            write_file(path, content);
            written.push_back(path);
        }
    } catch (...) {
        for (const auto& path : written) {
            std::error_code ec;
            fs::remove(path, ec);
        }
        throw;
    }
    return text::sha256_hex(mtext);
}

IndexBundle load_index(const std::string& directory,
                       const std::string& expected_config_hash,
                       std::vector<std::string>* warnings) {
    const std::string manifest_path = directory + "/manifest.json";
    std::ifstream min(manifest_path);
    if (!min) throw std::runtime_error("missing manifest.json in " + directory);
    json mobj;
    try {
        min >> mobj;
    } catch (const json::exception& e) {
        throw std::runtime_error(manifest_path + ": corrupted manifest: " + e.what());
    }

    IndexBundle bundle;
    bundle.manifest.format_version = mobj.value("format_version", "1");
    bundle.manifest.config_hash = mobj.value("config_hash", "");
    bundle.manifest.created_at = mobj.value("created_at", "");
    if (mobj.contains("corpus_digests")) {
        bundle.manifest.corpus_digests =
            mobj.at("corpus_digests").get<std::map<std::string, std::string>>();
    }

    load_graph(directory + "/concept", &bundle.concept_graph, &bundle.concept_chunks);
    load_graph(directory + "/instance", &bundle.instance_graph, &bundle.instance_chunks);

    std::string message;
    if (!bundle.concept_graph.check_invariants(&message)) {
        throw std::runtime_error("concept graph invariant violation: " + message);
    }
    if (!bundle.instance_graph.check_invariants(&message)) {
        throw std::runtime_error("instance graph invariant violation: " + message);
    }
    bundle.refresh_counts();

    if (!expected_config_hash.empty() &&
        expected_config_hash != bundle.manifest.config_hash && warnings) {
        warnings->push_back("index was built with a different config (manifest hash " +
                            bundle.manifest.config_hash + ")");
    }
    return bundle;
}

}  // namespace hgrag::store
