#pragma once

#include <string>

#include "pipeline/pipeline.hpp"

namespace httplib {
class Server;
}

namespace hgrag::server {

struct ServiceContext {
    std::string manifest_digest;
    pipeline::Pipeline* pipe = nullptr;  // shared immutable index behind it
};

// POST /query {query, mode?, k?} -> {final_answer, answer_fields,
// provenance, timings}; GET /healthz -> {status, manifest_digest}.
// Malformed request -> 400; provider failure -> 502 with the stage label.
void register_routes(httplib::Server& server, ServiceContext context);

}  // namespace hgrag::server
