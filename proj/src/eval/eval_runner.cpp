#include "eval/eval_runner.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "core/text.hpp"

namespace hgrag::eval {

using nlohmann::json;

std::vector<EvalQuery> load_queries(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open queries file: " + path);
    std::vector<EvalQuery> queries;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (text::trim(line).empty()) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": malformed query line: " + e.what());
        }
        EvalQuery q;
        q.query_id = obj.contains("query_id") ? obj.at("query_id").get<std::string>()
                                              : "q-" + std::to_string(lineno);
        q.query = obj.at("query").get<std::string>();
        q.golden_answers = obj.at("golden_answers").get<std::vector<std::string>>();
        q.reference_chunk = obj.value("reference_chunk", "");
        if (q.golden_answers.empty()) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": golden_answers must be non-empty");
        }
        queries.push_back(std::move(q));
    }
    return queries;
}

namespace {

std::string retrieved_context_text(const pipeline::PipelineResult& result) {
    std::string out;
    if (result.instance_evidence) {
        for (const auto& edge : result.instance_evidence->edges) {
            out += edge.statement;
            out += "\n";
        }
    }
    if (result.concept_evidence) {
        for (const auto& edge : result.concept_evidence->subgraph.edges) {
            out += edge.statement;
            out += "\n";
        }
    }
    return out;
}

}  // namespace

EvalReport run_eval(const std::vector<EvalQuery>& queries,
                    const std::vector<pipeline::Mode>& modes,
                    pipeline::Pipeline& pipe, llm::EmbeddingProvider& embedder,
                    llm::CompletionProvider& judge_provider,
                    const EvalOptions& options) {
    EvalReport report;
    for (const auto& query : queries) {
        for (const auto mode : modes) {
            EvalRow row;
            row.query_id = query.query_id;
            row.mode = pipeline::mode_name(mode);
            try {
                const auto result = pipe.run(query.query, mode);
                row.final_answer = result.final_answer;
                const std::string scored_text = options.score_retrieved_context
                                                    ? retrieved_context_text(result)
                                                    : result.final_answer;
                row.cosine = cosine_retrieval_score(scored_text, query.golden_answers,
                                                    embedder);
                row.f1 = token_f1(scored_text, query.golden_answers);
                row.judge = judge_answer(result.final_answer, query.reference_chunk,
                                         judge_provider, options.judge_model);
            } catch (const std::exception& e) {
                row.failed = true;
                row.error = e.what();
                ++report.failed_count;
            }
            report.rows.push_back(std::move(row));
        }
    }

    for (const auto mode : modes) {
        ModeAggregate agg;
        agg.mode = pipeline::mode_name(mode);
        for (const auto& row : report.rows) {
            if (row.mode != agg.mode) continue;
            if (row.failed) {
                ++agg.failed;
                continue;
            }
            ++agg.rows;
            agg.cosine += row.cosine;
            agg.f1 += row.f1;
            agg.comprehensiveness += row.judge.comprehensiveness;
            agg.diversity += row.judge.diversity;
            agg.empowerment += row.judge.empowerment;
            agg.logicality += row.judge.logicality;
            agg.readability += row.judge.readability;
            agg.overall += row.judge.overall;
        }
        if (agg.rows > 0) {
            const double n = static_cast<double>(agg.rows);
            agg.cosine /= n;
            agg.f1 /= n;
            agg.comprehensiveness /= n;
            agg.diversity /= n;
            agg.empowerment /= n;
            agg.logicality /= n;
            agg.readability /= n;
            agg.overall /= n;
        }
        report.aggregates.push_back(std::move(agg));
    }
    return report;
}

namespace {

json row_to_json(const EvalRow& row) {
    json obj{{"query_id", row.query_id}, {"mode", row.mode}, {"failed", row.failed}};
    if (row.failed) {
        obj["error"] = row.error;
        return obj;
    }
    obj["cosine"] = row.cosine;
    obj["f1"] = row.f1;
    obj["judge"] = {{"comprehensiveness", row.judge.comprehensiveness},
                    {"diversity", row.judge.diversity},
                    {"empowerment", row.judge.empowerment},
                    {"logicality", row.judge.logicality},
                    {"readability", row.judge.readability},
                    {"overall", row.judge.overall},
                    {"warnings", row.judge.warnings}};
    obj["final_answer"] = row.final_answer;
    return obj;
}

}  // namespace

void write_report_json(const EvalReport& report, const std::string& path) {
    json rows = json::array();
    for (const auto& row : report.rows) rows.push_back(row_to_json(row));
    json aggs = json::array();
    for (const auto& a : report.aggregates) {
        aggs.push_back({{"mode", a.mode},
                        {"rows", a.rows},
                        {"failed", a.failed},
                        {"cosine", a.cosine},
                        {"f1", a.f1},
                        {"comprehensiveness", a.comprehensiveness},
                        {"diversity", a.diversity},
                        {"empowerment", a.empowerment},
                        {"logicality", a.logicality},
                        {"readability", a.readability},
                        {"overall", a.overall}});
    }
    json out{{"rows", rows},
             {"aggregates", aggs},
             {"failed_count", report.failed_count},
             {"config", report.config_snapshot}};
    std::ofstream f(path, std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write report: " + path);
    f << out.dump(2) << "\n";
}

void write_report_csv(const EvalReport& report, const std::string& path) {
    std::ofstream f(path, std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write report: " + path);
    f << "query_id,mode,cosine,f1,comp,div,emp,log,read,overall\n";
    for (const auto& row : report.rows) {
        if (row.failed) continue;
        f << row.query_id << ',' << row.mode << ',' << row.cosine << ',' << row.f1
          << ',' << row.judge.comprehensiveness << ',' << row.judge.diversity << ','
          << row.judge.empowerment << ',' << row.judge.logicality << ','
          << row.judge.readability << ',' << row.judge.overall << '\n';
    }
}

}  // namespace hgrag::eval
