#include "server/service.hpp"

#include <chrono>

#include <httplib.h>
#include <json.hpp>

namespace hgrag::server {

using nlohmann::json;

namespace {

json answer_fields_json(const pipeline::AnswerFields& fields) {
    json obj{{"free_text", fields.free_text}};
    if (fields.resolution_strategy) obj["resolution_strategy"] = *fields.resolution_strategy;
    if (fields.whiteboard_action) obj["whiteboard_action"] = *fields.whiteboard_action;
    if (fields.teacher_quote) obj["teacher_quote"] = *fields.teacher_quote;
    return obj;
}

}  // namespace

void register_routes(httplib::Server& server, ServiceContext context) {
    server.Get("/healthz", [context](const httplib::Request&, httplib::Response& res) {
        res.set_content(
            json{{"status", "ok"}, {"manifest_digest", context.manifest_digest}}.dump(),
            "application/json");
    });

    server.Post("/query", [context](const httplib::Request& req, httplib::Response& res) {
        json body;
        std::string query;
        pipeline::Mode mode = pipeline::Mode::full;
        std::optional<std::size_t> k;
        try {
            body = json::parse(req.body);
            query = body.at("query").get<std::string>();
            if (body.contains("mode")) {
                const auto parsed =
                    pipeline::mode_from_name(body.at("mode").get<std::string>());
                if (!parsed) throw std::runtime_error("unknown mode");
                mode = *parsed;
            }
            if (body.contains("k")) k = body.at("k").get<std::size_t>();
        } catch (const std::exception& e) {
            res.status = 400;
            res.set_content(json{{"error", std::string("malformed request: ") + e.what()}}.dump(),
                            "application/json");
            return;
        }

        const auto start = std::chrono::steady_clock::now();
        try {
            const auto result = context.pipe->run(query, mode, k);
            const auto total_ms =
                std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - start)
                    .count();
            json out{{"final_answer", result.final_answer},
                     {"answer_fields",
                      answer_fields_json(pipeline::parse_answer_fields(result.final_answer))},
                     {"provenance", result.provenance},
                     {"timings", {{"total_ms", total_ms}}}};
            res.set_content(out.dump(), "application/json");
        } catch (const llm::ProviderError& e) {
            res.status = 502;
            res.set_content(json{{"error", e.what()}}.dump(), "application/json");
        } catch (const std::exception& e) {
            res.status = 400;
            res.set_content(json{{"error", e.what()}}.dump(), "application/json");
        }
    });
}

}  // namespace hgrag::server
