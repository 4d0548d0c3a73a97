#pragma once

#include <map>
#include <string>
#include <vector>

#include "core/hypergraph.hpp"
#include "ingest/chunker.hpp"

namespace hgrag::store {

struct Manifest {
    std::string format_version = "1";
    std::string config_hash;
    std::string created_at;  // set by the builder, not at save time
    std::map<std::string, std::string> corpus_digests;
    std::size_t concept_entities = 0;
    std::size_t concept_edges = 0;
    std::size_t concept_chunks = 0;
    std::size_t instance_entities = 0;
    std::size_t instance_edges = 0;
    std::size_t instance_chunks = 0;
};

struct IndexBundle {
    core::Hypergraph concept_graph{core::Layer::concept_layer};
    core::Hypergraph instance_graph{core::Layer::instance_layer};
    std::vector<ingest::Chunk> concept_chunks;
    std::vector<ingest::Chunk> instance_chunks;
    Manifest manifest;

    // Combined chunk store for flat_chunk mode (concept first).
    std::vector<ingest::Chunk> all_chunks() const;
    void refresh_counts();
};

// Layout: <dir>/manifest.json plus concept/ and instance/ subdirectories,
// each with entities.jsonl, edges.jsonl, chunks.jsonl. Lines are sorted
// by id, keys sorted, embedding floats at 9 significant digits; the write
// is byte-deterministic for a given bundle. Returns the manifest digest
// (SHA-256 of manifest.json). Partially written files are removed on
// failure.
std::string save_index(const IndexBundle& bundle, const std::string& directory);

// Fails loudly on a missing manifest, corrupted lines (with line number),
// dangling references, or graph invariant violations. If expected_config_hash
// is non-empty and differs from the manifest, a warning is appended.
IndexBundle load_index(const std::string& directory,
                       const std::string& expected_config_hash = {},
                       std::vector<std::string>* warnings = nullptr);

std::string manifest_digest(const Manifest& manifest);

}  // namespace hgrag::store
