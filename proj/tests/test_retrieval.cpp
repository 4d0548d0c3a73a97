#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "core/hypergraph.hpp"
#include "ingest/instance_ingest.hpp"
#include "llm/embedding.hpp"
#include "llm/provider.hpp"
#include "retrieval/engine.hpp"
#include "retrieval/keywords.hpp"
#include "retrieval/scorer.hpp"

using namespace hgrag;
using retrieval::CandidateView;
using retrieval::QueryContext;
using retrieval::RetrievalConfig;

TEST_CASE("keyword extraction drops stopwords and dedups in order") {
    const auto kws = retrieval::extract_keywords(
        "How can I help students with adding mixed numbers?",
        retrieval::default_stopwords());
    CHECK(kws == std::vector<std::string>{"help", "students", "adding", "mixed",
                                          "numbers"});
    const auto rep = retrieval::extract_keywords("carry carry the carry",
                                                 retrieval::default_stopwords());
    CHECK(rep == std::vector<std::string>{"carry"});
}

TEST_CASE("all-stopword queries fall back to the raw tokens") {
    const auto kws =
        retrieval::extract_keywords("how can i", retrieval::default_stopwords());
    CHECK(kws == std::vector<std::string>{"how", "can", "i"});
    CHECK_THROWS_AS(retrieval::extract_keywords("  ", retrieval::default_stopwords()),
                    std::invalid_argument);
}

TEST_CASE("stopword lists load from disk with comments") {
    const std::string dir = std::getenv("HGRAG_TEST_DATA");
    const auto words = retrieval::load_stopwords(dir + "/stopwords.txt");
    CHECK(words.count("foo") == 1);
    CHECK(words.count("bar") == 1);
    CHECK(words.count("#") == 0);
    CHECK_THROWS(retrieval::load_stopwords("/nonexistent/words.txt"));
}

TEST_CASE("llm keyword extraction splits on commas") {
    llm::ScriptedCompleter sc;
    sc.add(retrieval::kKeywordSystemPrompt, "my query",
           "Mixed Numbers, denominators , mixed numbers,");
    const auto kws = retrieval::extract_keywords_llm("my query", sc);
    CHECK(kws == std::vector<std::string>{"mixed numbers", "denominators"});
}

namespace {

// Independent re-derivation of the hybrid score.
double reference_score(const QueryContext& qc, const std::string& text,
                       const std::vector<float>& emb, double alpha) {
    const double cos = std::max(0.0, llm::cosine(qc.query_embedding, emb));
    std::set<std::string> q(qc.keywords.begin(), qc.keywords.end());
    std::set<std::string> c;
    for (const auto& kw :
         retrieval::extract_keywords(text.empty() ? "x" : text,
                                     retrieval::default_stopwords())) {
        if (!text.empty()) c.insert(kw);
    }
    std::size_t inter = 0;
    for (const auto& kw : q) inter += c.count(kw);
    const std::size_t uni = q.size() + c.size() - inter;
    const double jac = uni == 0 ? 0.0 : double(inter) / double(uni);
    return alpha * cos + (1 - alpha) * jac;
}

QueryContext make_qc(const std::string& query) {
    QueryContext qc;
    qc.raw_query = query;
    qc.keywords = retrieval::extract_keywords(query, retrieval::default_stopwords());
    qc.query_embedding = llm::local_hash_embed(query);
    return qc;
}

std::string random_sentence(std::mt19937_64& rng, int max_words) {
    static const char* vocab[] = {"fraction", "denominator", "numerator", "carry",
                                  "borrow",   "decimal",     "student",   "mistake",
                                  "regroup",  "the",         "a",         "place"};
    std::uniform_int_distribution<int> n(1, max_words);
    std::uniform_int_distribution<int> w(0, 11);
    std::string out;
    const int k = n(rng);
    for (int i = 0; i < k; ++i) {
        if (i) out.push_back(' ');
        out += vocab[w(rng)];
    }
    return out;
}

}  // namespace

TEST_CASE("score_candidate matches the independent formula") {
    std::mt19937_64 rng(3);
    const auto qc = make_qc("student forgets to carry when adding decimals");
    for (int i = 0; i < 200; ++i) {
        const auto text = random_sentence(rng, 25);
        const auto emb = llm::local_hash_embed(text);
        const auto got = retrieval::score_candidate(qc, text, emb,
                                                    retrieval::default_stopwords());
        const double want = reference_score(qc, text, emb, retrieval::kDefaultAlpha);
        CHECK(got.score == doctest::Approx(want).epsilon(1e-12));
        CHECK(got.embedding_component >= 0.0);
        CHECK(got.embedding_component <= 1.0 + 1e-12);
        CHECK(got.lexical_component >= 0.0);
        CHECK(got.lexical_component <= 1.0);
        CHECK(got.score ==
              doctest::Approx(0.7 * got.embedding_component +
                              0.3 * got.lexical_component));
    }
}

TEST_CASE("alpha interpolates between the two components") {
    const auto qc = make_qc("carry the tens digit");
    const std::string text = "students forget to carry the tens digit";
    const auto emb = llm::local_hash_embed(text);
    const auto sw = retrieval::default_stopwords();
    const auto pure_emb = retrieval::score_candidate(qc, text, emb, sw, 1.0);
    const auto pure_lex = retrieval::score_candidate(qc, text, emb, sw, 0.0);
    CHECK(pure_emb.score == doctest::Approx(pure_emb.embedding_component));
    CHECK(pure_lex.score == doctest::Approx(pure_lex.lexical_component));
}

TEST_CASE("serial and parallel kernels agree bit for bit") {
    std::mt19937_64 rng(17);
    const auto qc = make_qc("fraction denominator mistake");
    std::vector<std::string> ids, texts;
    std::vector<std::vector<float>> embs;
    for (int i = 0; i < 500; ++i) {
        ids.push_back("c" + std::to_string(i));
        texts.push_back(random_sentence(rng, 20));
        embs.push_back(llm::local_hash_embed(texts.back()));
    }
    std::vector<CandidateView> candidates;
    for (int i = 0; i < 500; ++i) candidates.push_back({&ids[i], &texts[i], &embs[i]});
    const auto sw = retrieval::default_stopwords();
    const auto serial = retrieval::score_all_serial(qc, candidates, sw);
    const auto parallel = retrieval::score_all_parallel(qc, candidates, sw);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].score == parallel[i].score);
        CHECK(serial[i].embedding_component == parallel[i].embedding_component);
        CHECK(serial[i].lexical_component == parallel[i].lexical_component);
    }
}

TEST_CASE("top_k sorts by score then ascending id and trims") {
    std::vector<retrieval::ScoredHit> hits = {
        {"b", 0.5, 0, 0}, {"a", 0.5, 0, 0}, {"c", 0.9, 0, 0}, {"d", 0.1, 0, 0}};
    const auto top = retrieval::top_k(hits, 3);
    REQUIRE(top.size() == 3);
    CHECK(top[0].target_id == "c");
    CHECK(top[1].target_id == "a");  // tie broken by id
    CHECK(top[2].target_id == "b");
    CHECK(retrieval::top_k(hits, 10).size() == 4);
    CHECK(retrieval::top_k(hits, 0).empty());
}

TEST_CASE("top_k against a brute-force oracle, and k-monotonicity") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> score(0.0, 1.0);
    std::vector<retrieval::ScoredHit> hits;
    for (int i = 0; i < 100; ++i) {
        hits.push_back({"id" + std::to_string(rng() % 50), score(rng), 0, 0});
    }
    auto oracle = hits;
    std::stable_sort(oracle.begin(), oracle.end(), [](const auto& a, const auto& b) {
        return a.score > b.score || (a.score == b.score && a.target_id < b.target_id);
    });
    std::vector<std::string> prev;
    for (std::size_t k : {1u, 5u, 10u, 50u, 100u}) {
        const auto top = retrieval::top_k(hits, k);
        REQUIRE(top.size() == std::min<std::size_t>(k, hits.size()));
        for (std::size_t i = 0; i < top.size(); ++i) {
            CHECK(top[i].target_id == oracle[i].target_id);
            CHECK(top[i].score == oracle[i].score);
        }
        // growing k only appends
        for (std::size_t i = 0; i < prev.size(); ++i) {
            CHECK(top[i].target_id == prev[i]);
        }
        prev.clear();
        for (const auto& h : top) prev.push_back(h.target_id);
    }
}

namespace {

core::Hypergraph planted_instance_graph(llm::EmbeddingProvider& emb) {
    std::vector<ingest::CaseRecord> cases;
    // 5 on-topic cases about mixed numbers, 45 distractors about other topics
    for (int i = 0; i < 5; ++i) {
        cases.push_back({"mix-" + std::to_string(i),
                         {{"topic", "adding mixed numbers"},
                          {"mistake", "adds whole parts and fraction parts separately "
                                      "but forgets to regroup the improper fraction " +
                                          std::to_string(i)}}});
    }
    for (int i = 0; i < 45; ++i) {
        cases.push_back({"geo-" + std::to_string(i),
                         {{"topic", "perimeter of polygons"},
                          {"mistake", "confuses area and perimeter when measuring "
                                      "rectangle sides variant " +
                                          std::to_string(i)}}});
    }
    return ingest::build_instance_hypergraph(cases, emb);
}

}  // namespace

TEST_CASE("planted relevant cases dominate stage-1 retrieval") {
    llm::LocalHashEmbedder emb;
    const auto graph = planted_instance_graph(emb);
    RetrievalConfig config;
    const auto qc = retrieval::make_query_context(
        "my student forgets to regroup the improper fraction when adding mixed numbers",
        emb, config);
    const auto evidence = retrieval::retrieve_instances(graph, qc, 5, config);
    REQUIRE(evidence.hits.size() == 5);
    for (const auto& hit : evidence.hits) {
        const auto* edge = graph.find_edge(hit.target_id);
        REQUIRE(edge != nullptr);
        CHECK(edge->statement.find("mixed numbers") != std::string::npos);
    }
    CHECK(evidence.edges.size() == 5);
    // context entities are the deduped union of members; topic is shared
    std::set<std::string> names;
    for (const auto& e : evidence.context_entities) names.insert(e.name);
    CHECK(names.count("TOPIC=adding mixed numbers") == 1);
    CHECK(evidence.context_entities.size() == 6);  // 1 shared topic + 5 mistakes

    // hits are sorted by descending score
    for (std::size_t i = 1; i < evidence.hits.size(); ++i) {
        CHECK(evidence.hits[i - 1].score >= evidence.hits[i].score);
    }
}

TEST_CASE("retrieve_instances validates its inputs") {
    llm::LocalHashEmbedder emb;
    RetrievalConfig config;
    const auto qc = retrieval::make_query_context("anything", emb, config);

    core::Hypergraph wrong_layer(core::Layer::concept_layer);
    CHECK_THROWS_AS(retrieval::retrieve_instances(wrong_layer, qc, 5, config),
                    std::invalid_argument);

    core::Hypergraph empty(core::Layer::instance_layer);
    const auto evidence = retrieval::retrieve_instances(empty, qc, 5, config);
    CHECK(evidence.hits.empty());
    CHECK(evidence.edges.empty());
}

TEST_CASE("retrieve_concepts seeds then expands into a closed subgraph") {
    llm::LocalHashEmbedder emb;
    core::Hypergraph graph(core::Layer::concept_layer);
    const auto mixed = graph.add_entity("mixed numbers", core::EntityKind::concept_node,
                                        "whole number plus a fraction", "d#0");
    const auto improper = graph.add_entity(
        "improper fractions", core::EntityKind::concept_node,
        "numerator at least the denominator", "d#0");
    const auto regroup = graph.add_entity("regrouping", core::EntityKind::concept_node,
                                          "carrying value between places", "d#0");
    const auto area = graph.add_entity("area", core::EntityKind::concept_node,
                                       "space inside a shape", "d#0");
    graph.add_hyperedge({mixed, improper}, core::OrderClass::low,
                        "mixed numbers convert to improper fractions", "d#0");
    graph.add_hyperedge({mixed, improper, regroup}, core::OrderClass::high,
                        "adding mixed numbers may require regrouping the sum", "d#0");
    for (const auto& id : {mixed, improper, regroup, area}) {
        graph.mutable_entity(id)->embedding =
            emb.embed(retrieval::entity_score_text(*graph.find_entity(id)));
    }

    RetrievalConfig config;
    const auto evidence = retrieval::retrieve_concepts(
        graph, "how do I add mixed numbers with regrouping", emb, 2, 3, config);
    REQUIRE(evidence.hits.size() == 2);
    CHECK(evidence.seed_entities.size() == 2);
    std::set<std::string> seed_ids;
    for (const auto& s : evidence.seed_entities) seed_ids.insert(s.id);
    CHECK(seed_ids.count(mixed) == 1);

    // subgraph closure: every edge member appears among the entities
    std::set<std::string> present;
    for (const auto& e : evidence.subgraph.entities) present.insert(e.id);
    for (const auto& edge : evidence.subgraph.edges) {
        for (const auto& m : edge.members) CHECK(present.count(m) == 1);
    }
    // no duplicate edges even when two seeds share one
    std::set<std::string> edge_ids;
    for (const auto& e : evidence.subgraph.edges) {
        CHECK(edge_ids.insert(e.id).second);
    }

    core::Hypergraph wrong(core::Layer::instance_layer);
    CHECK_THROWS_AS(
        retrieval::retrieve_concepts(wrong, "q", emb, 2, 3, config),
        std::invalid_argument);
    core::Hypergraph empty(core::Layer::concept_layer);
    CHECK(retrieval::retrieve_concepts(empty, "q", emb, 2, 3, config).hits.empty());
}

TEST_CASE("score_candidates honors the parallel_scoring switch") {
    llm::LocalHashEmbedder emb;
    RetrievalConfig config;
    const auto qc = retrieval::make_query_context("carry the tens digit", emb, config);
    std::vector<std::string> ids = {"a", "b"};
    std::vector<std::string> texts = {"carry tens", "unrelated words"};
    std::vector<std::vector<float>> embs = {llm::local_hash_embed(texts[0]),
                                            llm::local_hash_embed(texts[1])};
    std::vector<CandidateView> candidates = {{&ids[0], &texts[0], &embs[0]},
                                             {&ids[1], &texts[1], &embs[1]}};
    config.parallel_scoring = true;
    const auto par = retrieval::score_candidates(qc, candidates, config);
    config.parallel_scoring = false;
    const auto ser = retrieval::score_candidates(qc, candidates, config);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
        CHECK(par[i].target_id == ser[i].target_id);
        CHECK(par[i].score == ser[i].score);
    }
    CHECK(par[0].score > par[1].score);
}
