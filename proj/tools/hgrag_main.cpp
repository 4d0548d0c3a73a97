#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <httplib.h>
#include <json.hpp>

#include "eval/eval_runner.hpp"
#include "pipeline/pipeline.hpp"
#include "server/service.hpp"
#include "store/builder.hpp"
#include "store/config.hpp"
#include "store/index_store.hpp"

namespace {

using namespace hgrag;

std::string now_utc() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

store::EngineConfig load_config(const std::string& path) {
    return path.empty() ? store::EngineConfig{} : store::EngineConfig::load(path);
}

struct LoadedEngine {
    store::IndexBundle bundle;
    std::vector<ingest::Chunk> chunks;
    std::unique_ptr<llm::CompletionProvider> completer;
    std::unique_ptr<llm::EmbeddingProvider> embedder;
    std::unique_ptr<pipeline::Pipeline> pipe;
    std::string manifest_digest;
};

LoadedEngine load_engine(const std::string& index_dir, const store::EngineConfig& config) {
    LoadedEngine engine;
    std::vector<std::string> warnings;
    engine.bundle = store::load_index(index_dir, config.config_hash(), &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    engine.manifest_digest = store::manifest_digest(engine.bundle.manifest);
    engine.chunks = engine.bundle.all_chunks();
    engine.completer = store::make_completion_provider(config.completion);
    engine.embedder = store::make_embedding_provider(config.embedding);
    engine.pipe = std::make_unique<pipeline::Pipeline>(
        &engine.bundle.concept_graph, &engine.bundle.instance_graph, &engine.chunks,
        *engine.completer, *engine.embedder, config.pipeline_config());
    return engine;
}

int cmd_build(const std::string& concepts_dir, const std::string& cases_file,
              const std::string& schema_file, const std::string& out_dir,
              const std::string& config_path) {
    const auto config = load_config(config_path);
    auto completer = store::make_completion_provider(config.completion);
    auto embedder = store::make_embedding_provider(config.embedding);

    store::BuildInputs inputs;
    inputs.concepts_dir = concepts_dir;
    inputs.cases_file = cases_file;
    inputs.schema_file = schema_file;
    inputs.created_at = now_utc();

    store::BuildReports reports;
    const auto bundle = store::build_index(inputs, config, *completer, *embedder, &reports);
    const auto digest = store::save_index(bundle, out_dir);

    std::ofstream report_file(out_dir + "/build_report.json");
    report_file << store::build_report_json(reports).dump(2) << "\n";

    std::cout << "index written to " << out_dir << "\n"
              << "manifest digest: " << digest << "\n"
              << "concept: " << bundle.manifest.concept_entities << " entities, "
              << bundle.manifest.concept_edges << " edges, "
              << bundle.manifest.concept_chunks << " chunks\n"
              << "instance: " << bundle.manifest.instance_entities << " entities, "
              << bundle.manifest.instance_edges << " edges\n"
              << "warnings: " << reports.concepts.warnings.size() << " concept, "
              << reports.cases.errors.size() << " case\n";
    return 0;
}

int cmd_query(const std::string& index_dir, const std::string& mode_name,
              const std::string& query, int k, bool show_provenance,
              const std::string& config_path) {
    const auto mode = pipeline::mode_from_name(mode_name);
    if (!mode) {
        std::cerr << "unknown mode: " << mode_name << "\n";
        return 2;
    }
    const auto config = load_config(config_path);
    auto engine = load_engine(index_dir, config);
    const std::optional<std::size_t> k_override =
        k > 0 ? std::optional<std::size_t>(static_cast<std::size_t>(k)) : std::nullopt;
    const auto result = engine.pipe->run(query, *mode, k_override);
    std::cout << result.final_answer << "\n";
    if (show_provenance) {
        std::cerr << "provenance:\n";
        for (const auto& id : result.provenance) std::cerr << "  " << id << "\n";
        for (const auto& [stage, prompt] : result.prompts) {
            std::cerr << "--- prompt [" << stage << "] ---\n" << prompt << "\n";
        }
    }
    return 0;
}

int cmd_eval(const std::string& index_dir, const std::string& queries_file,
             const std::string& modes_csv, const std::string& out_dir,
             const std::string& config_path) {
    std::vector<pipeline::Mode> modes;
    std::stringstream ss(modes_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto mode = pipeline::mode_from_name(item);
        if (!mode) {
            std::cerr << "unknown mode: " << item << "\n";
            return 2;
        }
        modes.push_back(*mode);
    }
    if (modes.empty()) {
        std::cerr << "no modes given\n";
        return 2;
    }
    const auto config = load_config(config_path);
    auto engine = load_engine(index_dir, config);
    auto judge = store::make_completion_provider(config.judge);

    const auto queries = eval::load_queries(queries_file);
    eval::EvalOptions options;
    options.judge_model = config.judge.model_name;
    auto report =
        eval::run_eval(queries, modes, *engine.pipe, *engine.embedder, *judge, options);
    report.config_snapshot = config.to_json();

    std::filesystem::create_directories(out_dir);
    eval::write_report_json(report, out_dir + "/report.json");
    eval::write_report_csv(report, out_dir + "/report.csv");
    std::cout << "wrote " << report.rows.size() << " rows ("
              << report.failed_count << " failed) to " << out_dir << "\n";
    return 0;
}

int cmd_serve(const std::string& index_dir, int port, const std::string& config_path) {
    const auto config = load_config(config_path);
    auto engine = load_engine(index_dir, config);

    httplib::Server http;
    server::register_routes(http, {engine.manifest_digest, engine.pipe.get()});
    std::cout << "serving index " << index_dir << " on port " << port << "\n";
    if (!http.listen("0.0.0.0", port)) {
        std::cerr << "failed to bind port " << port << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dual-hypergraph retrieval-augmented generation engine"};
    app.require_subcommand(1);

    std::string concepts_dir, cases_file, schema_file, out_dir, config_path;
    std::string index_dir, mode = "full", query_text, queries_file, modes_csv;
    int k = 0, port = 8080;
    bool show_provenance = false;

    auto* build = app.add_subcommand("build", "Build both hypergraph layers and save the index");
    build->add_option("--concepts", concepts_dir, "Concept corpus directory")->required();
    build->add_option("--cases", cases_file, "Student-mistake cases (JSON Lines)");
    build->add_option("--schema", schema_file, "Field schema (JSON)");
    build->add_option("--out", out_dir, "Output index directory")->required();
    build->add_option("--config", config_path, "Engine config (flat JSON)");

    auto* query = app.add_subcommand("query", "Answer one query against a saved index");
    query->add_option("--index", index_dir, "Index directory")->required();
    query->add_option("--mode", mode, "full|concept_only|case_only|no_retrieval|flat_chunk");
    query->add_option("-q,--query", query_text, "Query text")->required();
    query->add_option("--k", k, "Override stage-1 top-k");
    query->add_flag("--show-provenance", show_provenance,
                    "Print retrieved ids and stage prompts to stderr");
    query->add_option("--config", config_path, "Engine config (flat JSON)");

    auto* eval_cmd = app.add_subcommand("eval", "Run the evaluation harness");
    eval_cmd->add_option("--index", index_dir, "Index directory")->required();
    eval_cmd->add_option("--queries", queries_file, "Queries JSON Lines file")->required();
    eval_cmd->add_option("--modes", modes_csv, "Comma-separated mode list")->required();
    eval_cmd->add_option("--out", out_dir, "Report output directory")->required();
    eval_cmd->add_option("--config", config_path, "Engine config (flat JSON)");

    auto* serve = app.add_subcommand("serve", "Serve the query endpoint over HTTP");
    serve->add_option("--index", index_dir, "Index directory")->required();
    serve->add_option("--port", port, "Listen port");
    serve->add_option("--config", config_path, "Engine config (flat JSON)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (build->parsed()) {
            return cmd_build(concepts_dir, cases_file, schema_file, out_dir, config_path);
        }
        if (query->parsed()) {
            return cmd_query(index_dir, mode, query_text, k, show_provenance, config_path);
        }
        if (eval_cmd->parsed()) {
            return cmd_eval(index_dir, queries_file, modes_csv, out_dir, config_path);
        }
        if (serve->parsed()) {
            return cmd_serve(index_dir, port, config_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
