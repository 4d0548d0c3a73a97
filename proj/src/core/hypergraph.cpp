#include "core/hypergraph.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace hgrag::core {

namespace {

const std::set<std::string> kEmptySet;

std::string id_prefix(Layer layer) {
    return layer == Layer::concept_layer ? "con" : "ins";
}

std::size_t parse_seq(const std::string& id) {
    const auto pos = id.find_last_not_of("0123456789");
    if (pos == std::string::npos || pos + 1 >= id.size()) return 0;
    return static_cast<std::size_t>(std::stoull(id.substr(pos + 1)));
}

std::string format_id(Layer layer, char kind, std::size_t seq) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s:%c%06zu", id_prefix(layer).c_str(), kind, seq);
    return buf;
}

}  // namespace

const char* layer_name(Layer layer) {
    return layer == Layer::concept_layer ? "concept" : "instance";
}

const char* entity_kind_name(EntityKind kind) {
    return kind == EntityKind::concept_node ? "concept" : "field-value";
}

const char* order_class_name(OrderClass oc) {
    switch (oc) {
        case OrderClass::low: return "low";
        case OrderClass::high: return "high";
        case OrderClass::case_record: return "case";
    }
    return "low";
}

std::optional<Layer> layer_from_name(const std::string& name) {
    if (name == "concept") return Layer::concept_layer;
    if (name == "instance") return Layer::instance_layer;
    return std::nullopt;
}

std::optional<EntityKind> entity_kind_from_name(const std::string& name) {
    if (name == "concept") return EntityKind::concept_node;
    if (name == "field-value") return EntityKind::field_value;
    return std::nullopt;
}

std::optional<OrderClass> order_class_from_name(const std::string& name) {
    if (name == "low") return OrderClass::low;
    if (name == "high") return OrderClass::high;
    if (name == "case") return OrderClass::case_record;
    return std::nullopt;
}

std::string Hypergraph::normalize_name(const std::string& name) {
    std::string out;
    out.reserve(name.size());
    bool pending_space = false;
    for (const char ch : name) {
        const auto b = static_cast<unsigned char>(ch);
        if (std::isspace(b)) {
            if (!out.empty()) pending_space = true;
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(static_cast<char>(std::tolower(b)));
    }
    return out;
}

std::string Hypergraph::next_entity_id() const {
    return format_id(layer_, 'v', entity_seq_ + 1);
}

std::string Hypergraph::next_edge_id() const {
    return format_id(layer_, 'e', edge_seq_ + 1);
}

std::string Hypergraph::add_entity(const std::string& name, EntityKind kind,
                                   const std::string& description,
                                   const std::string& source_ref) {
    const std::string norm = normalize_name(name);
    if (norm.empty()) {
        throw std::invalid_argument("entity name empty after normalization");
    }
    const std::string key = std::string(entity_kind_name(kind)) + '\x1f' + norm;
    if (const auto it = name_index_.find(key); it != name_index_.end()) {
        Entity& existing = entities_.at(it->second);
        if (!description.empty() &&
            existing.description.find(description) == std::string::npos) {
            if (!existing.description.empty()) existing.description += "\n";
            existing.description += description;
        }
        if (!source_ref.empty()) existing.source_refs.push_back(source_ref);
        return existing.id;
    }
    Entity entity;
    entity.id = next_entity_id();
    entity.name = name;
    entity.kind = kind;
    entity.description = description;
    if (!source_ref.empty()) entity.source_refs.push_back(source_ref);
    ++entity_seq_;
    name_index_[key] = entity.id;
    incidence_[entity.id];
    const std::string id = entity.id;
    entities_.emplace(id, std::move(entity));
    return id;
}

std::string Hypergraph::add_hyperedge(const std::vector<std::string>& members,
                                      OrderClass order_class,
                                      const std::string& statement,
                                      const std::string& source_ref) {
    switch (order_class) {
        case OrderClass::low:
            if (members.size() != 2) {
                throw std::invalid_argument("low-order edge requires exactly 2 members");
            }
            break;
        case OrderClass::high:
            if (members.size() < 3) {
                throw std::invalid_argument("high-order edge requires >= 3 members");
            }
            break;
        case OrderClass::case_record:
            if (members.empty()) {
                throw std::invalid_argument("case edge requires >= 1 member");
            }
            break;
    }
    if (statement.empty()) throw std::invalid_argument("edge statement empty");
    for (const auto& m : members) {
        if (!entities_.count(m)) {
            throw std::invalid_argument("unknown member entity id: " + m);
        }
    }
    Hyperedge edge;
    edge.id = next_edge_id();
    edge.members = members;
    edge.order_class = order_class;
    edge.statement = statement;
    edge.source_ref = source_ref;
    ++edge_seq_;
    for (const auto& m : members) incidence_[m].insert(edge.id);
    const std::string id = edge.id;
    edges_.emplace(id, std::move(edge));
    return id;
}

void Hypergraph::insert_entity_raw(Entity entity) {
    if (entities_.count(entity.id)) {
        throw std::invalid_argument("duplicate entity id: " + entity.id);
    }
    const std::string key =
        std::string(entity_kind_name(entity.kind)) + '\x1f' + normalize_name(entity.name);
    name_index_[key] = entity.id;
    entity_seq_ = std::max(entity_seq_, parse_seq(entity.id));
    incidence_[entity.id];
    entities_.emplace(entity.id, std::move(entity));
}

void Hypergraph::insert_edge_raw(Hyperedge edge) {
    if (edges_.count(edge.id)) {
        throw std::invalid_argument("duplicate edge id: " + edge.id);
    }
    for (const auto& m : edge.members) {
        if (!entities_.count(m)) {
            throw std::invalid_argument("edge " + edge.id + " references unknown entity " + m);
        }
        incidence_[m].insert(edge.id);
    }
    edge_seq_ = std::max(edge_seq_, parse_seq(edge.id));
    edges_.emplace(edge.id, std::move(edge));
}

std::vector<Entity> Hypergraph::neighbors_of_edge(const std::string& edge_id) const {
    const auto it = edges_.find(edge_id);
    if (it == edges_.end()) throw std::invalid_argument("unknown edge id: " + edge_id);
    std::vector<Entity> out;
    std::set<std::string> seen;
    for (const auto& m : it->second.members) {
        if (!seen.insert(m).second) continue;
        out.push_back(entities_.at(m));
    }
    return out;
}

ConceptSubgraph Hypergraph::expand_entity(const std::string& entity_id,
                                          std::size_t max_edges) const {
    const auto it = entities_.find(entity_id);
    if (it == entities_.end()) throw std::invalid_argument("unknown entity id: " + entity_id);
    if (max_edges < 1) throw std::invalid_argument("max_edges must be >= 1");

    ConceptSubgraph sg;
    std::set<std::string> entity_ids{entity_id};
    sg.entities.push_back(it->second);

    const auto& incident = incident_edges(entity_id);  // set is id-ordered
    std::size_t taken = 0;
    for (const auto& eid : incident) {
        if (taken == max_edges) break;
        const Hyperedge& edge = edges_.at(eid);
        sg.edges.push_back(edge);
        for (const auto& m : edge.members) {
            if (entity_ids.insert(m).second) sg.entities.push_back(entities_.at(m));
        }
        ++taken;
    }
    return sg;
}

const Entity* Hypergraph::find_entity(const std::string& id) const {
    const auto it = entities_.find(id);
    return it == entities_.end() ? nullptr : &it->second;
}

const Hyperedge* Hypergraph::find_edge(const std::string& id) const {
    const auto it = edges_.find(id);
    return it == edges_.end() ? nullptr : &it->second;
}

const Entity* Hypergraph::find_entity_by_name(const std::string& name,
                                              EntityKind kind) const {
    const std::string key =
        std::string(entity_kind_name(kind)) + '\x1f' + normalize_name(name);
    const auto it = name_index_.find(key);
    return it == name_index_.end() ? nullptr : &entities_.at(it->second);
}

Entity* Hypergraph::mutable_entity(const std::string& id) {
    const auto it = entities_.find(id);
    return it == entities_.end() ? nullptr : &it->second;
}

Hyperedge* Hypergraph::mutable_edge(const std::string& id) {
    const auto it = edges_.find(id);
    return it == edges_.end() ? nullptr : &it->second;
}

const std::set<std::string>& Hypergraph::incident_edges(const std::string& entity_id) const {
    const auto it = incidence_.find(entity_id);
    return it == incidence_.end() ? kEmptySet : it->second;
}

bool Hypergraph::check_invariants(std::string* message) const {
    auto fail = [&](const std::string& msg) {
        if (message) *message = msg;
        return false;
    };
    for (const auto& [eid, edge] : edges_) {
        for (const auto& m : edge.members) {
            const auto ent = entities_.find(m);
            if (ent == entities_.end()) {
                return fail("edge " + eid + " has dangling member " + m);
            }
            const auto inc = incidence_.find(m);
            if (inc == incidence_.end() || !inc->second.count(eid)) {
                return fail("incidence missing (" + m + ", " + eid + ")");
            }
        }
        switch (edge.order_class) {
            case OrderClass::low:
                if (edge.members.size() != 2) return fail("low edge " + eid + " member count");
                break;
            case OrderClass::high:
                if (edge.members.size() < 3) return fail("high edge " + eid + " member count");
                break;
            case OrderClass::case_record:
                if (edge.members.empty()) return fail("case edge " + eid + " has no members");
                break;
        }
        if (edge.statement.empty()) return fail("edge " + eid + " has empty statement");
    }
    for (const auto& [vid, eids] : incidence_) {
        if (!entities_.count(vid)) return fail("incidence references unknown entity " + vid);
        for (const auto& eid : eids) {
            const auto it = edges_.find(eid);
            if (it == edges_.end()) {
                return fail("incidence references unknown edge " + eid);
            }
            const auto& mem = it->second.members;
            if (std::find(mem.begin(), mem.end(), vid) == mem.end()) {
                return fail("incidence pair (" + vid + ", " + eid + ") not backed by membership");
            }
        }
    }
    return true;
}

}  // namespace hgrag::core
