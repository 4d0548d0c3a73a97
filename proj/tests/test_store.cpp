#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ingest/instance_ingest.hpp"
#include "llm/provider.hpp"
#include "retrieval/engine.hpp"
#include "store/config.hpp"
#include "store/index_store.hpp"

using namespace hgrag;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    TempDir() {
        path = fs::temp_directory_path() /
               ("hgrag_store_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    fs::path path;
    static inline int counter = 0;
};

store::IndexBundle sample_bundle(llm::EmbeddingProvider& emb) {
    store::IndexBundle bundle;

    auto& cg = bundle.concept_graph;
    const auto a = cg.add_entity("mixed numbers", core::EntityKind::concept_node,
                                 "whole plus fraction", "doc#0");
    const auto b = cg.add_entity("regrouping", core::EntityKind::concept_node,
                                 "carrying between places", "doc#0");
    const auto c = cg.add_entity("improper fractions", core::EntityKind::concept_node,
                                 "", "doc#1");
    cg.add_hyperedge({a, b}, core::OrderClass::low, "adding may require regrouping",
                     "doc#0");
    cg.add_hyperedge({a, b, c}, core::OrderClass::high,
                     "conversion links all three ideas", "doc#1");
    for (const auto& id : {a, b, c}) {
        cg.mutable_entity(id)->embedding =
            emb.embed(retrieval::entity_score_text(*cg.find_entity(id)));
    }
    for (const auto& [id, edge] : cg.edges()) {
        cg.mutable_edge(id)->embedding = emb.embed(edge.statement);
    }

    std::vector<ingest::CaseRecord> cases = {
        {"c1", {{"topic", "addition"}, {"mistake", "dropped the carry"}}},
        {"c2", {{"topic", "addition"}, {"mistake", "misaligned digits"}}}};
    bundle.instance_graph = ingest::build_instance_hypergraph(cases, emb);

    for (int i = 0; i < 3; ++i) {
        ingest::Chunk chunk;
        chunk.document_id = "doc.md";
        chunk.ordinal = i;
        chunk.id = "doc.md#" + std::to_string(i);
        chunk.body = "chunk body " + std::to_string(i);
        chunk.embedding = emb.embed(chunk.body);
        bundle.concept_chunks.push_back(chunk);
    }
    ingest::Chunk case_chunk;
    case_chunk.document_id = "case/c1";
    case_chunk.ordinal = 0;
    case_chunk.id = "case/c1#0";
    case_chunk.body = "TOPIC: addition";
    case_chunk.embedding = emb.embed(case_chunk.body);
    bundle.instance_chunks.push_back(case_chunk);

    bundle.manifest.config_hash = store::EngineConfig{}.config_hash();
    bundle.manifest.created_at = "2026-01-01T00:00:00Z";
    bundle.manifest.corpus_digests["concepts/doc.md"] = "deadbeef";
    bundle.refresh_counts();
    return bundle;
}

std::map<std::string, std::string> read_tree(const fs::path& dir) {
    std::map<std::string, std::string> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::ifstream in(entry.path(), std::ios::binary);
        std::stringstream buf;
        buf << in.rdbuf();
        files[fs::relative(entry.path(), dir).generic_string()] = buf.str();
    }
    return files;
}

}  // namespace

TEST_CASE("save then load preserves graphs, chunks, and embeddings") {
    llm::LocalHashEmbedder emb;
    const auto bundle = sample_bundle(emb);
    TempDir dir;
    const auto digest = store::save_index(bundle, dir.path.string());
    CHECK(digest.size() == 64);
    CHECK(digest == store::manifest_digest(bundle.manifest));

    const auto loaded = store::load_index(dir.path.string());
    CHECK(loaded.manifest.config_hash == bundle.manifest.config_hash);
    CHECK(loaded.manifest.created_at == bundle.manifest.created_at);
    CHECK(loaded.manifest.corpus_digests == bundle.manifest.corpus_digests);
    CHECK(loaded.concept_graph.entity_count() == bundle.concept_graph.entity_count());
    CHECK(loaded.instance_graph.edge_count() == bundle.instance_graph.edge_count());
    CHECK(loaded.concept_graph.check_invariants());
    CHECK(loaded.instance_graph.check_invariants());

    for (const auto& [id, entity] : bundle.concept_graph.entities()) {
        const auto* other = loaded.concept_graph.find_entity(id);
        REQUIRE(other != nullptr);
        CHECK(other->name == entity.name);
        CHECK(other->kind == entity.kind);
        CHECK(other->description == entity.description);
        CHECK(other->source_refs == entity.source_refs);
        CHECK(other->embedding == entity.embedding);
    }
    for (const auto& [id, edge] : bundle.instance_graph.edges()) {
        const auto* other = loaded.instance_graph.find_edge(id);
        REQUIRE(other != nullptr);
        CHECK(other->members == edge.members);
        CHECK(other->order_class == edge.order_class);
        CHECK(other->statement == edge.statement);
        CHECK(other->embedding == edge.embedding);
    }
    REQUIRE(loaded.concept_chunks.size() == 3);
    CHECK(loaded.concept_chunks[1].id == bundle.concept_chunks[1].id);
    CHECK(loaded.concept_chunks[1].body == bundle.concept_chunks[1].body);
    CHECK(loaded.concept_chunks[1].embedding == bundle.concept_chunks[1].embedding);
    REQUIRE(loaded.instance_chunks.size() == 1);
    CHECK(loaded.all_chunks().size() == 4);
}

TEST_CASE("double save is byte-identical") {
    llm::LocalHashEmbedder emb;
    const auto bundle = sample_bundle(emb);
    TempDir d1, d2;
    store::save_index(bundle, d1.path.string());
    store::save_index(bundle, d2.path.string());
    CHECK(read_tree(d1.path) == read_tree(d2.path));

    // save -> load -> save also round-trips byte-identically
    const auto loaded = store::load_index(d1.path.string());
    TempDir d3;
    store::save_index(loaded, d3.path.string());
    CHECK(read_tree(d1.path) == read_tree(d3.path));
}

TEST_CASE("load failure modes are loud and specific") {
    TempDir dir;
    // missing manifest
    try {
        store::load_index(dir.path.string());
        FAIL("expected an exception");
    } catch (const std::exception& e) {
        CHECK(std::string(e.what()).find("manifest.json") != std::string::npos);
    }

    llm::LocalHashEmbedder emb;
    const auto bundle = sample_bundle(emb);
    store::save_index(bundle, dir.path.string());

    // corrupt line reports path and line number
    {
        std::ofstream out(dir.path / "concept" / "entities.jsonl", std::ios::app);
        out << "this is not json\n";
    }
    try {
        store::load_index(dir.path.string());
        FAIL("expected an exception");
    } catch (const std::exception& e) {
        const std::string msg = e.what();
        CHECK(msg.find("entities.jsonl") != std::string::npos);
        CHECK(msg.find(":4") != std::string::npos);
    }
}

TEST_CASE("load rejects dangling edge references") {
    llm::LocalHashEmbedder emb;
    const auto bundle = sample_bundle(emb);
    TempDir dir;
    store::save_index(bundle, dir.path.string());
    {
        std::ofstream out(dir.path / "instance" / "edges.jsonl", std::ios::app);
        out << R"({"embedding":null,"id":"ins:e000099","members":["ins:v000099"],)"
            << R"("order_class":"case","source_ref":"","statement":"bad"})" << "\n";
    }
    CHECK_THROWS(store::load_index(dir.path.string()));
}

TEST_CASE("config hash mismatch surfaces as a warning, not an error") {
    llm::LocalHashEmbedder emb;
    const auto bundle = sample_bundle(emb);
    TempDir dir;
    store::save_index(bundle, dir.path.string());
    std::vector<std::string> warnings;
    const auto loaded =
        store::load_index(dir.path.string(), "different-hash", &warnings);
    CHECK(loaded.concept_graph.entity_count() == 3);
    REQUIRE(!warnings.empty());
    CHECK(warnings[0].find("config") != std::string::npos);

    warnings.clear();
    store::load_index(dir.path.string(), bundle.manifest.config_hash, &warnings);
    CHECK(warnings.empty());
}

TEST_CASE("engine config defaults and overrides") {
    const store::EngineConfig def;
    CHECK(def.alpha == 0.7);
    CHECK(def.k_instance == 5);
    CHECK(def.k_concept == 8);
    CHECK(def.max_edges_per_seed == 3);
    CHECK(def.chunk_target_tokens == 1200);
    CHECK(def.chunk_overlap_tokens == 100);
    CHECK(def.flat_chunk_tokens == 300);
    CHECK(def.temperature == 0.2);
    CHECK(def.completion.mode == "scripted");
    CHECK(def.embedding.mode == "local-hash");

    const auto cfg = store::EngineConfig::from_json(
        {{"alpha", 0.5}, {"k_instance", 3}, {"completion_model", "m"}});
    CHECK(cfg.alpha == 0.5);
    CHECK(cfg.k_instance == 3);
    CHECK(cfg.completion.model_name == "m");
    CHECK(cfg.k_concept == 8);  // untouched keys keep defaults
}

TEST_CASE("engine config validation") {
    CHECK_THROWS(store::EngineConfig::from_json({{"alpha", 1.5}}));
    CHECK_THROWS(store::EngineConfig::from_json(
        {{"chunk_target_tokens", 50}, {"chunk_overlap_tokens", 50}}));
    CHECK_THROWS(store::EngineConfig::from_json(
        {{"stopword_list_path", "/nonexistent/words.txt"}}));
    CHECK_THROWS(store::EngineConfig::load("/nonexistent/config.json"));
}

TEST_CASE("config hash is stable and key-sensitive") {
    const store::EngineConfig a, b;
    CHECK(a.config_hash() == b.config_hash());
    auto c = a;
    c.alpha = 0.6;
    CHECK(c.config_hash() != a.config_hash());
}

TEST_CASE("provider factories enforce their required settings") {
    store::ProviderSettings scripted{.mode = "scripted"};
    CHECK_THROWS(store::make_completion_provider(scripted));

    store::ProviderSettings remote{.mode = "remote"};
    CHECK_THROWS(store::make_completion_provider(remote));
    remote.endpoint_url = "http://localhost:1";
    CHECK(store::make_completion_provider(remote) != nullptr);

    store::ProviderSettings local{.mode = "local-hash", .embedding_dimension = 64};
    const auto emb = store::make_embedding_provider(local);
    REQUIRE(emb != nullptr);
    CHECK(emb->dimension() == 64);

    CHECK_THROWS(store::make_completion_provider({.mode = "bogus"}));
    CHECK_THROWS(store::make_embedding_provider({.mode = "bogus"}));
}

TEST_CASE("pipeline_config mirrors the engine settings") {
    store::EngineConfig cfg;
    cfg.alpha = 0.4;
    cfg.k_instance = 2;
    cfg.flat_chunk_k = 7;
    cfg.completion.model_name = "gen";
    const auto pc = cfg.pipeline_config();
    CHECK(pc.retrieval.alpha == 0.4);
    CHECK(pc.retrieval.k_instance == 2);
    CHECK(pc.flat_chunk_k == 7);
    CHECK(pc.model_name == "gen");
    CHECK(pc.templates.stage1.empty());
}
