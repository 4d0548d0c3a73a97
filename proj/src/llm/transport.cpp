#include "llm/provider.hpp"

#include <httplib.h>

namespace hgrag::llm {

Transport default_transport() {
    return [](const std::string& base_url, const std::string& path,
              const std::vector<Header>& headers, const std::string& body) {
        httplib::Client client(base_url);
        client.set_connection_timeout(10);
        client.set_read_timeout(120);
        httplib::Headers hs;
        std::string content_type = "application/json";
        for (const auto& [k, v] : headers) {
            if (k == "Content-Type") {
                content_type = v;
            } else {
                hs.emplace(k, v);
            }
        }
        auto res = client.Post(path, hs, body, content_type);
        HttpResult out;
        if (!res) {
            out.transport_error = true;
            out.error = httplib::to_string(res.error());
            return out;
        }
        out.status = res->status;
        out.body = res->body;
        return out;
    };
}

}  // namespace hgrag::llm
