#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hgrag::llm {

struct CompletionRequest {
    std::string system_prompt;
    std::string user_prompt;
    std::string model_name;
    double temperature = 0.2;
    int max_output_tokens = 1024;
};

class ProviderError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MissingFixtureError : public ProviderError {
public:
    explicit MissingFixtureError(const std::string& digest)
        : ProviderError("no scripted fixture for prompt digest " + digest),
          digest_(digest) {}
    const std::string& digest() const { return digest_; }

private:
    std::string digest_;
};

class CompletionProvider {
public:
    virtual ~CompletionProvider() = default;
    virtual std::string complete(const CompletionRequest& request) = 0;
};

class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;
    virtual std::vector<float> embed(const std::string& raw_text) = 0;
    virtual std::size_t dimension() const = 0;
};

// SHA-256 of system_prompt + NUL + user_prompt, hex-encoded. Replay key
// for scripted fixtures.
std::string fixture_digest(const std::string& system_prompt,
                           const std::string& user_prompt);

// Replays canned responses keyed by fixture_digest. Pure: no network,
// no clock. Fixture file format: JSON Lines {"digest":..., "response":...}.
class ScriptedCompleter : public CompletionProvider {
public:
    ScriptedCompleter() = default;

    void add(const std::string& system_prompt, const std::string& user_prompt,
             const std::string& response);
    void add_digest(const std::string& digest, const std::string& response);
    void load_jsonl(const std::string& path);

    std::string complete(const CompletionRequest& request) override;
    std::size_t call_count() const { return call_count_; }
    void reset_call_count() { call_count_ = 0; }

private:
    std::map<std::string, std::string> fixtures_;
    std::size_t call_count_ = 0;
};

class LocalHashEmbedder : public EmbeddingProvider {
public:
    explicit LocalHashEmbedder(std::size_t dim = 256) : dim_(dim) {}
    std::vector<float> embed(const std::string& raw_text) override;
    std::size_t dimension() const override { return dim_; }

private:
    std::size_t dim_;
};

struct HttpResult {
    int status = 0;
    std::string body;
    bool transport_error = false;
    std::string error;
};

using Header = std::pair<std::string, std::string>;
// (base_url, path, headers, json_body) -> result. Injectable for tests.
using Transport = std::function<HttpResult(const std::string& base_url,
                                           const std::string& path,
                                           const std::vector<Header>& headers,
                                           const std::string& body)>;

Transport default_transport();

struct RemoteConfig {
    std::string base_url;
    std::string completion_path = "/v1/chat/completions";
    std::string embedding_path = "/v1/embeddings";
    std::string auth_header = "Authorization";
    std::string api_key_env_var;
    std::string model_name;
    std::size_t embedding_dimension = 256;
    int retry_limit = 3;
    int backoff_base_ms = 250;
    // Replaced in tests to avoid real sleeps.
    std::function<void(int)> sleep_ms;
    Transport transport;
};

// Chat-completion-style client: POST {model, messages, temperature,
// max_tokens}; text taken from the first choice's message content.
// Transient failures (transport errors, 5xx, 429) are retried with
// exponential backoff (base * 2^attempt) up to retry_limit.
class RemoteCompleter : public CompletionProvider {
public:
    explicit RemoteCompleter(RemoteConfig config);
    std::string complete(const CompletionRequest& request) override;

private:
    RemoteConfig config_;
};

class RemoteEmbedder : public EmbeddingProvider {
public:
    explicit RemoteEmbedder(RemoteConfig config);
    std::vector<float> embed(const std::string& raw_text) override;
    std::size_t dimension() const override { return config_.embedding_dimension; }

private:
    RemoteConfig config_;
};

}  // namespace hgrag::llm
