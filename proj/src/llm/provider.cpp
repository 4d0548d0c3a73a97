#include "llm/provider.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "core/text.hpp"
#include "llm/embedding.hpp"

namespace hgrag::llm {

using nlohmann::json;

std::string fixture_digest(const std::string& system_prompt,
                           const std::string& user_prompt) {
    std::string buf;
    buf.reserve(system_prompt.size() + 1 + user_prompt.size());
    buf.append(system_prompt);
    buf.push_back('\0');
    buf.append(user_prompt);
    return text::sha256_hex(buf);
}

void ScriptedCompleter::add(const std::string& system_prompt,
                            const std::string& user_prompt,
                            const std::string& response) {
    fixtures_[fixture_digest(system_prompt, user_prompt)] = response;
}

void ScriptedCompleter::add_digest(const std::string& digest,
                                   const std::string& response) {
    fixtures_[digest] = response;
}

void ScriptedCompleter::load_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ProviderError("cannot open fixture file: " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (text::trim(line).empty()) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::exception& e) {
            throw ProviderError(path + ":" + std::to_string(lineno) +
                                ": malformed fixture line: " + e.what());
        }
        fixtures_[obj.at("digest").get<std::string>()] =
            obj.at("response").get<std::string>();
    }
}

std::string ScriptedCompleter::complete(const CompletionRequest& request) {
    ++call_count_;
    const std::string digest =
        fixture_digest(request.system_prompt, request.user_prompt);
    const auto it = fixtures_.find(digest);
    if (it == fixtures_.end()) throw MissingFixtureError(digest);
    return it->second;
}

std::vector<float> LocalHashEmbedder::embed(const std::string& raw_text) {
    return local_hash_embed(raw_text, dim_);
}

namespace {

bool transient(const HttpResult& r) {
    return r.transport_error || r.status == 429 || r.status >= 500;
}

std::vector<Header> auth_headers(const RemoteConfig& cfg) {
    std::vector<Header> headers{{"Content-Type", "application/json"}};
    if (!cfg.api_key_env_var.empty()) {
        if (const char* key = std::getenv(cfg.api_key_env_var.c_str())) {
            std::string value = key;
            if (cfg.auth_header == "Authorization") value = "Bearer " + value;
            headers.emplace_back(cfg.auth_header, value);
        }
    }
    return headers;
}

HttpResult post_with_retry(const RemoteConfig& cfg, const std::string& path,
                           const std::string& body) {
    const Transport& transport = cfg.transport;
    if (!transport) throw ProviderError("remote provider has no transport");
    auto sleep_fn = cfg.sleep_ms
                        ? cfg.sleep_ms
                        : [](int ms) {
                              std::this_thread::sleep_for(std::chrono::milliseconds(ms));
                          };
    const auto headers = auth_headers(cfg);
    HttpResult last;
    int delay = cfg.backoff_base_ms;
    for (int attempt = 0; attempt <= cfg.retry_limit; ++attempt) {
        if (attempt > 0) {
            sleep_fn(delay);
            delay *= 2;
        }
        last = transport(cfg.base_url, path, headers, body);
        if (!transient(last)) return last;
    }
    return last;
}

std::string surface_error(const std::string& what, const HttpResult& r) {
    if (r.transport_error) return what + ": transport failure: " + r.error;
    return what + ": provider returned status " + std::to_string(r.status) +
           ": " + r.body;
}

}  // namespace

RemoteCompleter::RemoteCompleter(RemoteConfig config) : config_(std::move(config)) {
    if (config_.base_url.empty()) throw ProviderError("remote completer requires base_url");
    if (!config_.transport) config_.transport = default_transport();
}

std::string RemoteCompleter::complete(const CompletionRequest& request) {
    json body = {
        {"model", request.model_name.empty() ? config_.model_name : request.model_name},
        {"messages",
         json::array({{{"role", "system"}, {"content", request.system_prompt}},
                      {{"role", "user"}, {"content", request.user_prompt}}})},
        {"temperature", request.temperature},
        {"max_tokens", request.max_output_tokens},
    };
    const HttpResult r = post_with_retry(config_, config_.completion_path, body.dump());
    if (r.transport_error || r.status != 200) {
        throw ProviderError(surface_error("completion", r));
    }
    try {
        const json resp = json::parse(r.body);
        return resp.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const json::exception& e) {
        throw ProviderError(std::string("completion: malformed response body: ") + e.what());
    }
}

RemoteEmbedder::RemoteEmbedder(RemoteConfig config) : config_(std::move(config)) {
    if (config_.base_url.empty()) throw ProviderError("remote embedder requires base_url");
    if (!config_.transport) config_.transport = default_transport();
}

std::vector<float> RemoteEmbedder::embed(const std::string& raw_text) {
    json body = {{"model", config_.model_name}, {"input", raw_text}};
    const HttpResult r = post_with_retry(config_, config_.embedding_path, body.dump());
    if (r.transport_error || r.status != 200) {
        throw ProviderError(surface_error("embedding", r));
    }
    try {
        const json resp = json::parse(r.body);
        const json& arr = resp.at("data").at(0).at("embedding");
        std::vector<float> vec;
        vec.reserve(arr.size());
        for (const auto& v : arr) vec.push_back(v.get<float>());
        return vec;
    } catch (const json::exception& e) {
        throw ProviderError(std::string("embedding: malformed response body: ") + e.what());
    }
}

}  // namespace hgrag::llm
