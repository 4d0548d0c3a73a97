#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "core/text.hpp"
#include "llm/embedding.hpp"
#include "llm/provider.hpp"

using namespace hgrag;

namespace {

// Independent re-derivation of the hash embedding from its definition.
std::vector<float> reference_embed(const std::string& raw, std::size_t dim) {
    std::vector<long double> counts(dim, 0.0L);
    for (const auto& tok : text::split_tokens(text::normalize(raw))) {
        counts[text::fnv1a64(tok) % dim] += 1.0L;
    }
    long double norm_sq = 0.0L;
    for (const auto c : counts) norm_sq += c * c;
    std::vector<float> out(dim, 0.0f);
    if (norm_sq == 0.0L) return out;
    const long double norm = std::sqrt(norm_sq);
    for (std::size_t i = 0; i < dim; ++i) {
        out[i] = static_cast<float>(counts[i] / norm);
    }
    return out;
}

long double reference_cosine(const std::vector<float>& a, const std::vector<float>& b) {
    long double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += static_cast<long double>(a[i]) * b[i];
        na += static_cast<long double>(a[i]) * a[i];
        nb += static_cast<long double>(b[i]) * b[i];
    }
    if (na == 0 || nb == 0) return 0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::string random_text(std::mt19937_64& rng, int max_words) {
    static const char* words[] = {"add", "sub", "carry", "digit", "tens", "ones",
                                  "whole", "part", "equal", "group", "model", "ten"};
    std::uniform_int_distribution<int> n(0, max_words);
    std::uniform_int_distribution<int> w(0, 11);
    std::string out;
    const int k = n(rng);
    for (int i = 0; i < k; ++i) {
        if (i) out.push_back(' ');
        out += words[w(rng)];
    }
    return out;
}

}  // namespace

TEST_CASE("local_hash_embed matches an independent reference") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const auto raw = random_text(rng, 30);
        const auto got = llm::local_hash_embed(raw);
        const auto want = reference_embed(raw, llm::kDefaultEmbeddingDim);
        REQUIRE(got.size() == want.size());
        for (std::size_t j = 0; j < got.size(); ++j) {
            CHECK(got[j] == doctest::Approx(want[j]).epsilon(1e-6));
        }
    }
}

TEST_CASE("embedding is a bag of tokens: word order does not matter") {
    const auto a = llm::local_hash_embed("carry the tens digit");
    const auto b = llm::local_hash_embed("digit tens the carry");
    CHECK(a == b);
    // case and punctuation fold away too
    CHECK(llm::local_hash_embed("Carry, the TENS digit!") == a);
    // multiplicity matters
    CHECK(llm::local_hash_embed("carry carry the tens digit") != a);
}

TEST_CASE("embedding is unit length or all-zero") {
    const auto v = llm::local_hash_embed("subtract with regrouping");
    long double norm = 0;
    for (const auto x : v) norm += static_cast<long double>(x) * x;
    CHECK(std::abs(static_cast<double>(norm) - 1.0) < 1e-6);

    const auto zero = llm::local_hash_embed("  ,,, !!! ");
    CHECK(std::all_of(zero.begin(), zero.end(), [](float x) { return x == 0.0f; }));
    CHECK(zero.size() == llm::kDefaultEmbeddingDim);
}

TEST_CASE("cosine agrees with extended-precision reference") {
    std::mt19937_64 rng(23);
    std::normal_distribution<float> dist(0.0f, 1.0f);
    for (int i = 0; i < 500; ++i) {
        std::vector<float> a(64), b(64);
        for (auto& x : a) x = dist(rng);
        for (auto& x : b) x = dist(rng);
        const double got = llm::cosine(a, b);
        const double want = static_cast<double>(reference_cosine(a, b));
        CHECK(std::abs(got - want) < 1e-9);
    }
}

TEST_CASE("cosine edge cases") {
    const std::vector<float> z(8, 0.0f);
    const std::vector<float> u = {1, 0, 0, 0, 0, 0, 0, 0};
    CHECK(llm::cosine(z, u) == 0.0);
    CHECK(llm::cosine(u, z) == 0.0);
    CHECK(llm::cosine(u, u) == doctest::Approx(1.0));
    CHECK_THROWS(llm::cosine(u, std::vector<float>(4, 1.0f)));
}

TEST_CASE("fixture digest is sha256 over system NUL user") {
    const std::string sys = "sys", user = "user";
    CHECK(llm::fixture_digest(sys, user) ==
          text::sha256_hex(sys + std::string(1, '\0') + user));
    CHECK(llm::fixture_digest("a", "b") != llm::fixture_digest("ab", ""));
}

TEST_CASE("scripted completer replays fixtures and counts calls") {
    llm::ScriptedCompleter sc;
    sc.add("sys", "hello", "world");
    llm::CompletionRequest req;
    req.system_prompt = "sys";
    req.user_prompt = "hello";
    CHECK(sc.complete(req) == "world");
    CHECK(sc.complete(req) == "world");
    CHECK(sc.call_count() == 2);

    req.user_prompt = "unknown";
    CHECK_THROWS_AS(sc.complete(req), llm::MissingFixtureError);
    try {
        sc.complete(req);
    } catch (const llm::MissingFixtureError& e) {
        CHECK(e.digest() == llm::fixture_digest("sys", "unknown"));
    }
}

TEST_CASE("scripted completer loads JSONL fixture files") {
    const auto path =
        std::filesystem::temp_directory_path() / "hgrag_fixture_test.jsonl";
    {
        std::ofstream out(path);
        out << R"({"digest":")" << llm::fixture_digest("s", "u")
            << R"(","response":"canned"})" << "\n";
        out << "\n";  // blank lines tolerated
    }
    llm::ScriptedCompleter sc;
    sc.load_jsonl(path.string());
    llm::CompletionRequest req;
    req.system_prompt = "s";
    req.user_prompt = "u";
    CHECK(sc.complete(req) == "canned");
    std::filesystem::remove(path);

    llm::ScriptedCompleter missing;
    CHECK_THROWS(missing.load_jsonl("/nonexistent/fixtures.jsonl"));
}

namespace {

llm::RemoteConfig make_remote_config(std::vector<int>* sleeps) {
    llm::RemoteConfig cfg;
    cfg.base_url = "http://test";
    cfg.model_name = "test-model";
    cfg.sleep_ms = [sleeps](int ms) { sleeps->push_back(ms); };
    return cfg;
}

}  // namespace

TEST_CASE("remote completer retries transient failures with backoff") {
    std::vector<int> sleeps;
    int calls = 0;
    auto cfg = make_remote_config(&sleeps);
    cfg.transport = [&](const std::string&, const std::string&,
                        const std::vector<llm::Header>&, const std::string&) {
        ++calls;
        if (calls < 3) return llm::HttpResult{503, "busy", false, ""};
        return llm::HttpResult{
            200, R"({"choices":[{"message":{"content":"ok"}}]})", false, ""};
    };
    llm::RemoteCompleter rc(cfg);
    llm::CompletionRequest req;
    req.user_prompt = "q";
    CHECK(rc.complete(req) == "ok");
    CHECK(calls == 3);
    CHECK(sleeps == std::vector<int>{250, 500});
}

TEST_CASE("remote completer gives up after retry_limit") {
    std::vector<int> sleeps;
    int calls = 0;
    auto cfg = make_remote_config(&sleeps);
    cfg.retry_limit = 2;
    cfg.transport = [&](const std::string&, const std::string&,
                        const std::vector<llm::Header>&, const std::string&) {
        ++calls;
        return llm::HttpResult{0, "", true, "connection refused"};
    };
    llm::RemoteCompleter rc(cfg);
    llm::CompletionRequest req;
    req.user_prompt = "q";
    CHECK_THROWS_AS(rc.complete(req), llm::ProviderError);
    CHECK(calls == 3);  // initial try + 2 retries
}

TEST_CASE("remote completer does not retry client errors") {
    std::vector<int> sleeps;
    int calls = 0;
    auto cfg = make_remote_config(&sleeps);
    cfg.transport = [&](const std::string&, const std::string&,
                        const std::vector<llm::Header>&, const std::string&) {
        ++calls;
        return llm::HttpResult{400, "bad request", false, ""};
    };
    llm::RemoteCompleter rc(cfg);
    llm::CompletionRequest req;
    req.user_prompt = "q";
    CHECK_THROWS_AS(rc.complete(req), llm::ProviderError);
    CHECK(calls == 1);
    CHECK(sleeps.empty());
}

TEST_CASE("remote embedder parses the embedding array") {
    std::vector<int> sleeps;
    auto cfg = make_remote_config(&sleeps);
    cfg.embedding_dimension = 3;
    cfg.transport = [&](const std::string&, const std::string& path,
                        const std::vector<llm::Header>&, const std::string&) {
        CHECK(path == "/v1/embeddings");
        return llm::HttpResult{
            200, R"({"data":[{"embedding":[0.1,0.2,0.3]}]})", false, ""};
    };
    llm::RemoteEmbedder re(cfg);
    const auto v = re.embed("text");
    REQUIRE(v.size() == 3);
    CHECK(v[1] == doctest::Approx(0.2f));
}

TEST_CASE("local hash embedder provider wraps local_hash_embed") {
    llm::LocalHashEmbedder e(128);
    CHECK(e.dimension() == 128);
    CHECK(e.embed("carry the one") == llm::local_hash_embed("carry the one", 128));
}
