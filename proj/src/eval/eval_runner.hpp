#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "eval/judge.hpp"
#include "eval/metrics.hpp"
#include "pipeline/pipeline.hpp"

namespace hgrag::eval {

struct EvalQuery {
    std::string query_id;
    std::string query;
    std::vector<std::string> golden_answers;
    std::string reference_chunk;
};

// JSON Lines: {query_id, query, golden_answers[], reference_chunk}.
std::vector<EvalQuery> load_queries(const std::string& path);

struct EvalRow {
    std::string query_id;
    std::string mode;
    bool failed = false;
    std::string error;
    double cosine = 0;
    double f1 = 0;
    JudgeScores judge;
    std::string final_answer;
};

struct ModeAggregate {
    std::string mode;
    std::size_t rows = 0;
    std::size_t failed = 0;
    double cosine = 0, f1 = 0;
    double comprehensiveness = 0, diversity = 0, empowerment = 0;
    double logicality = 0, readability = 0, overall = 0;
};

struct EvalReport {
    std::vector<EvalRow> rows;  // query order x mode order
    std::vector<ModeAggregate> aggregates;
    nlohmann::json config_snapshot;
    std::size_t failed_count = 0;
};

struct EvalOptions {
    std::string judge_model;
    // When true, metrics score the concatenated retrieved statements
    // instead of the generated answer.
    bool score_retrieved_context = false;
};

EvalReport run_eval(const std::vector<EvalQuery>& queries,
                    const std::vector<pipeline::Mode>& modes,
                    pipeline::Pipeline& pipe, llm::EmbeddingProvider& embedder,
                    llm::CompletionProvider& judge_provider,
                    const EvalOptions& options = {});

void write_report_json(const EvalReport& report, const std::string& path);
void write_report_csv(const EvalReport& report, const std::string& path);

}  // namespace hgrag::eval
