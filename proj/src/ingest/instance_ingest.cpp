#include "ingest/instance_ingest.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "core/text.hpp"

namespace hgrag::ingest {

using nlohmann::json;

FieldSchema FieldSchema::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open schema file: " + path);
    json obj;
    in >> obj;
    FieldSchema schema;
    for (const auto& k : obj.value("canonical_key_order", json::array())) {
        schema.canonical_key_order.push_back(k.get<std::string>());
    }
    for (const auto& k : obj.value("required_keys", json::array())) {
        schema.required_keys.push_back(k.get<std::string>());
    }
    for (const auto& k : obj.value("gold_answer_keys", json::array())) {
        schema.gold_answer_keys.push_back(k.get<std::string>());
    }
    return schema;
}

namespace {

std::string value_to_string(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

}  // namespace

std::vector<CaseRecord> parse_cases_text(const std::string& jsonl,
                                         const FieldSchema& schema,
                                         CaseParseReport* report) {
    CaseParseReport local;
    CaseParseReport& rep = report ? *report : local;
    std::vector<CaseRecord> records;
    std::istringstream in(jsonl);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (text::trim(line).empty()) continue;
        ++rep.total_lines;
        json obj;
        try {
            obj = json::parse(line);
            if (!obj.is_object()) throw std::runtime_error("not a JSON object");
        } catch (const std::exception& e) {
            ++rep.skipped;
            rep.errors.push_back("line " + std::to_string(lineno) +
                                 ": malformed: " + e.what());
            continue;
        }

        CaseRecord record;
        record.case_id = obj.contains("id") ? value_to_string(obj.at("id"))
                                            : "case-" + std::to_string(lineno);

        // nlohmann::json object iteration is key-sorted, which gives the
        // alphabetical tail for free.
        std::set<std::string> placed;
        for (const auto& key : schema.canonical_key_order) {
            if (key == "id" || !obj.contains(key)) continue;
            record.fields.emplace_back(key, value_to_string(obj.at(key)));
            placed.insert(key);
        }
        for (const auto& [key, value] : obj.items()) {
            if (key == "id" || placed.count(key)) continue;
            record.fields.emplace_back(key, value_to_string(value));
        }

        std::string missing;
        for (const auto& req : schema.required_keys) {
            const bool present = std::any_of(
                record.fields.begin(), record.fields.end(), [&](const auto& f) {
                    return f.first == req && !text::trim(f.second).empty();
                });
            if (!present) {
                missing = req;
                break;
            }
        }
        if (!missing.empty()) {
            ++rep.skipped;
            rep.errors.push_back("line " + std::to_string(lineno) +
                                 ": missing required key \"" + missing + "\"");
            continue;
        }
        const bool any_value = std::any_of(
            record.fields.begin(), record.fields.end(),
            [](const auto& f) { return !text::trim(f.second).empty(); });
        if (!any_value) {
            ++rep.skipped;
            rep.errors.push_back("line " + std::to_string(lineno) +
                                 ": no field with a non-empty value");
            continue;
        }
        ++rep.parsed;
        records.push_back(std::move(record));
    }
    return records;
}

std::vector<CaseRecord> parse_cases(const std::string& path, const FieldSchema& schema,
                                    CaseParseReport* report) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open case file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_cases_text(buf.str(), schema, report);
}

std::vector<std::string> case_entity_names(const CaseRecord& record) {
    std::vector<std::string> names;
    names.reserve(record.fields.size());
    for (const auto& [key, value] : record.fields) {
        names.push_back(text::to_upper_ascii(key) + "=" + value);
    }
    return names;
}

std::string pack_case(const CaseRecord& record) {
    std::string out;
    for (std::size_t i = 0; i < record.fields.size(); ++i) {
        if (i > 0) out.push_back('\n');
        out += text::to_upper_ascii(record.fields[i].first);
        out += ": ";
        out += record.fields[i].second;
    }
    return out;
}

core::Hypergraph build_instance_hypergraph(const std::vector<CaseRecord>& cases,
                                           llm::EmbeddingProvider& embedder) {
    if (cases.empty()) {
        throw std::invalid_argument("build_instance_hypergraph requires >= 1 valid case");
    }
    core::Hypergraph graph(core::Layer::instance_layer);
    for (const auto& record : cases) {
        std::vector<std::string> members;
        std::set<std::string> seen;
        for (const auto& name : case_entity_names(record)) {
            const auto id = graph.add_entity(name, core::EntityKind::field_value, "",
                                             record.case_id);
            if (seen.insert(id).second) members.push_back(id);
        }
        graph.add_hyperedge(members, core::OrderClass::case_record, pack_case(record),
                            record.case_id);
    }
    for (const auto& [id, entity] : graph.entities()) {
        graph.mutable_entity(id)->embedding = embedder.embed(entity.name);
    }
    for (const auto& [id, edge] : graph.edges()) {
        graph.mutable_edge(id)->embedding = embedder.embed(edge.statement);
    }
    return graph;
}

}  // namespace hgrag::ingest
