#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "llm/provider.hpp"
#include "pipeline/pipeline.hpp"

namespace hgrag::store {

struct ProviderSettings {
    std::string mode;  // "remote" | "scripted" | "local-hash"
    std::string endpoint_url;
    std::string api_key_env_var;
    std::string model_name;
    std::size_t embedding_dimension = 256;
    int retry_limit = 3;
    int backoff_base_ms = 250;
    std::string fixture_path;  // scripted mode
};

// Flat key-value JSON config ("completion_mode", "alpha", ...). Missing
// keys fall back to defaults.
struct EngineConfig {
    ProviderSettings completion{.mode = "scripted"};
    ProviderSettings embedding{.mode = "local-hash"};
    ProviderSettings judge{.mode = "scripted"};

    double alpha = 0.7;
    std::size_t k_instance = 5;
    std::size_t k_concept = 8;
    std::size_t max_edges_per_seed = 3;
    std::size_t chunk_target_tokens = 1200;
    std::size_t chunk_overlap_tokens = 100;
    std::size_t flat_chunk_tokens = 300;
    std::size_t flat_chunk_k = 5;
    double temperature = 0.2;
    int max_output_tokens = 1024;

    std::string stopword_list_path;
    std::string stage1_template_path;
    std::string stage2_template_path;
    std::string concept_only_template_path;
    std::string no_retrieval_template_path;
    std::string flat_chunk_template_path;
    std::string entity_prompt_path;
    std::string low_prompt_path;
    std::string high_prompt_path;

    static EngineConfig load(const std::string& path);
    static EngineConfig from_json(const nlohmann::json& flat);
    nlohmann::json to_json() const;
    std::string config_hash() const;

    pipeline::PipelineConfig pipeline_config() const;
};

std::unique_ptr<llm::CompletionProvider> make_completion_provider(
    const ProviderSettings& settings);
std::unique_ptr<llm::EmbeddingProvider> make_embedding_provider(
    const ProviderSettings& settings);

}  // namespace hgrag::store
