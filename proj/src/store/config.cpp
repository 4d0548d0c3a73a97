#include "store/config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "core/text.hpp"
#include "retrieval/keywords.hpp"

namespace hgrag::store {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void require_exists(const std::string& path, const char* what) {
    if (!path.empty() && !std::filesystem::exists(path)) {
        throw std::runtime_error(std::string(what) + " does not exist: " + path);
    }
}

}  // namespace

EngineConfig EngineConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    json flat;
    in >> flat;
    return from_json(flat);
}

EngineConfig EngineConfig::from_json(const json& flat) {
    EngineConfig cfg;
    auto get_str = [&](const char* key, std::string& out) {
        if (flat.contains(key)) out = flat.at(key).get<std::string>();
    };
    auto get_num = [&](const char* key, auto& out) {
        using T = std::decay_t<decltype(out)>;
        if (flat.contains(key)) out = flat.at(key).get<T>();
    };

    get_str("completion_mode", cfg.completion.mode);
    get_str("completion_endpoint", cfg.completion.endpoint_url);
    get_str("completion_api_key_env", cfg.completion.api_key_env_var);
    get_str("completion_model", cfg.completion.model_name);
    get_str("completion_fixture", cfg.completion.fixture_path);
    get_num("completion_retry_limit", cfg.completion.retry_limit);
    get_num("completion_backoff_base_ms", cfg.completion.backoff_base_ms);

    get_str("embedding_mode", cfg.embedding.mode);
    get_str("embedding_endpoint", cfg.embedding.endpoint_url);
    get_str("embedding_api_key_env", cfg.embedding.api_key_env_var);
    get_str("embedding_model", cfg.embedding.model_name);
    get_num("embedding_dimension", cfg.embedding.embedding_dimension);

    get_str("judge_mode", cfg.judge.mode);
    get_str("judge_endpoint", cfg.judge.endpoint_url);
    get_str("judge_api_key_env", cfg.judge.api_key_env_var);
    get_str("judge_model", cfg.judge.model_name);
    get_str("judge_fixture", cfg.judge.fixture_path);

    get_num("alpha", cfg.alpha);
    get_num("k_instance", cfg.k_instance);
    get_num("k_concept", cfg.k_concept);
    get_num("max_edges_per_seed", cfg.max_edges_per_seed);
    get_num("chunk_target_tokens", cfg.chunk_target_tokens);
    get_num("chunk_overlap_tokens", cfg.chunk_overlap_tokens);
    get_num("flat_chunk_tokens", cfg.flat_chunk_tokens);
    get_num("flat_chunk_k", cfg.flat_chunk_k);
    get_num("temperature", cfg.temperature);
    get_num("max_output_tokens", cfg.max_output_tokens);

    get_str("stopword_list_path", cfg.stopword_list_path);
    get_str("stage1_template_path", cfg.stage1_template_path);
    get_str("stage2_template_path", cfg.stage2_template_path);
    get_str("concept_only_template_path", cfg.concept_only_template_path);
    get_str("no_retrieval_template_path", cfg.no_retrieval_template_path);
    get_str("flat_chunk_template_path", cfg.flat_chunk_template_path);
    get_str("entity_prompt_path", cfg.entity_prompt_path);
    get_str("low_prompt_path", cfg.low_prompt_path);
    get_str("high_prompt_path", cfg.high_prompt_path);

    if (cfg.alpha < 0.0 || cfg.alpha > 1.0) {
        throw std::runtime_error("alpha must be in [0,1]");
    }
    if (cfg.chunk_target_tokens <= cfg.chunk_overlap_tokens) {
        throw std::runtime_error("chunk_target_tokens must exceed chunk_overlap_tokens");
    }
    for (const auto* path :
         {&cfg.stopword_list_path, &cfg.stage1_template_path, &cfg.stage2_template_path,
          &cfg.concept_only_template_path, &cfg.no_retrieval_template_path,
          &cfg.flat_chunk_template_path, &cfg.entity_prompt_path, &cfg.low_prompt_path,
          &cfg.high_prompt_path}) {
        require_exists(*path, "configured file");
    }
    return cfg;
}

json EngineConfig::to_json() const {
    return json{
        {"completion_mode", completion.mode},
        {"completion_endpoint", completion.endpoint_url},
        {"completion_api_key_env", completion.api_key_env_var},
        {"completion_model", completion.model_name},
        {"completion_fixture", completion.fixture_path},
        {"completion_retry_limit", completion.retry_limit},
        {"completion_backoff_base_ms", completion.backoff_base_ms},
        {"embedding_mode", embedding.mode},
        {"embedding_endpoint", embedding.endpoint_url},
        {"embedding_api_key_env", embedding.api_key_env_var},
        {"embedding_model", embedding.model_name},
        {"embedding_dimension", embedding.embedding_dimension},
        {"judge_mode", judge.mode},
        {"judge_endpoint", judge.endpoint_url},
        {"judge_api_key_env", judge.api_key_env_var},
        {"judge_model", judge.model_name},
        {"judge_fixture", judge.fixture_path},
        {"alpha", alpha},
        {"k_instance", k_instance},
        {"k_concept", k_concept},
        {"max_edges_per_seed", max_edges_per_seed},
        {"chunk_target_tokens", chunk_target_tokens},
        {"chunk_overlap_tokens", chunk_overlap_tokens},
        {"flat_chunk_tokens", flat_chunk_tokens},
        {"flat_chunk_k", flat_chunk_k},
        {"temperature", temperature},
        {"max_output_tokens", max_output_tokens},
        {"stopword_list_path", stopword_list_path},
        {"stage1_template_path", stage1_template_path},
        {"stage2_template_path", stage2_template_path},
        {"concept_only_template_path", concept_only_template_path},
        {"no_retrieval_template_path", no_retrieval_template_path},
        {"flat_chunk_template_path", flat_chunk_template_path},
        {"entity_prompt_path", entity_prompt_path},
        {"low_prompt_path", low_prompt_path},
        {"high_prompt_path", high_prompt_path},
    };
}

std::string EngineConfig::config_hash() const { return text::sha256_hex(to_json().dump()); }

pipeline::PipelineConfig EngineConfig::pipeline_config() const {
    pipeline::PipelineConfig pc;
    pc.retrieval.alpha = alpha;
    pc.retrieval.k_instance = k_instance;
    pc.retrieval.k_concept = k_concept;
    pc.retrieval.max_edges_per_seed = max_edges_per_seed;
    if (!stopword_list_path.empty()) {
        pc.retrieval.stopwords = retrieval::load_stopwords(stopword_list_path);
    }
    pc.model_name = completion.model_name;
    pc.temperature = temperature;
    pc.max_output_tokens = max_output_tokens;
    pc.flat_chunk_k = flat_chunk_k;
    if (!stage1_template_path.empty()) pc.templates.stage1 = read_file(stage1_template_path);
    if (!stage2_template_path.empty()) pc.templates.stage2 = read_file(stage2_template_path);
    if (!concept_only_template_path.empty()) {
        pc.templates.concept_only = read_file(concept_only_template_path);
    }
    if (!no_retrieval_template_path.empty()) {
        pc.templates.no_retrieval = read_file(no_retrieval_template_path);
    }
    if (!flat_chunk_template_path.empty()) {
        pc.templates.flat_chunk = read_file(flat_chunk_template_path);
    }
    return pc;
}

std::unique_ptr<llm::CompletionProvider> make_completion_provider(
    const ProviderSettings& settings) {
    if (settings.mode == "scripted") {
        if (settings.fixture_path.empty()) {
            throw std::runtime_error("scripted mode requires a fixture path");
        }
        auto provider = std::make_unique<llm::ScriptedCompleter>();
        provider->load_jsonl(settings.fixture_path);
        return provider;
    }
    if (settings.mode == "remote") {
        if (settings.endpoint_url.empty()) {
            throw std::runtime_error("remote mode requires an endpoint url");
        }
        llm::RemoteConfig rc;
        rc.base_url = settings.endpoint_url;
        rc.api_key_env_var = settings.api_key_env_var;
        rc.model_name = settings.model_name;
        rc.retry_limit = settings.retry_limit;
        rc.backoff_base_ms = settings.backoff_base_ms;
        return std::make_unique<llm::RemoteCompleter>(std::move(rc));
    }
    throw std::runtime_error("unsupported completion provider mode: " + settings.mode);
}

std::unique_ptr<llm::EmbeddingProvider> make_embedding_provider(
    const ProviderSettings& settings) {
    if (settings.mode == "local-hash") {
        return std::make_unique<llm::LocalHashEmbedder>(settings.embedding_dimension);
    }
    if (settings.mode == "remote") {
        if (settings.endpoint_url.empty()) {
            throw std::runtime_error("remote mode requires an endpoint url");
        }
        llm::RemoteConfig rc;
        rc.base_url = settings.endpoint_url;
        rc.api_key_env_var = settings.api_key_env_var;
        rc.model_name = settings.model_name;
        rc.embedding_dimension = settings.embedding_dimension;
        rc.retry_limit = settings.retry_limit;
        rc.backoff_base_ms = settings.backoff_base_ms;
        return std::make_unique<llm::RemoteEmbedder>(std::move(rc));
    }
    throw std::runtime_error("unsupported embedding provider mode: " + settings.mode);
}

}  // namespace hgrag::store
