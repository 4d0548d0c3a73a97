#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace hgrag::core {

enum class Layer { concept_layer, instance_layer };

enum class EntityKind { concept_node, field_value };

enum class OrderClass { low, high, case_record };

const char* layer_name(Layer layer);
const char* entity_kind_name(EntityKind kind);
const char* order_class_name(OrderClass oc);
std::optional<Layer> layer_from_name(const std::string& name);
std::optional<EntityKind> entity_kind_from_name(const std::string& name);
std::optional<OrderClass> order_class_from_name(const std::string& name);

struct Entity {
    std::string id;
    std::string name;
    EntityKind kind = EntityKind::concept_node;
    std::string description;
    std::vector<std::string> source_refs;
    std::optional<std::vector<float>> embedding;
};

struct Hyperedge {
    std::string id;
    std::vector<std::string> members;  // order preserved, display only
    OrderClass order_class = OrderClass::low;
    std::string statement;
    std::string source_ref;
    std::optional<std::vector<float>> embedding;
};

struct ConceptSubgraph {
    std::vector<Entity> entities;
    std::vector<Hyperedge> edges;
};

// Entity/edge store with a bidirectional incidence index. Ids are
// layer-prefixed sequence ids ("con:v000001", "ins:e000042") so that
// lexicographic order equals insertion order. Single writer during build;
// immutable and safe for concurrent readers afterwards.
class Hypergraph {
public:
    explicit Hypergraph(Layer layer) : layer_(layer) {}

    Layer layer() const { return layer_; }

    // Dedup key is (normalized name, kind): case-fold, trim, collapse
    // internal whitespace. A repeated add merges descriptions and
    // source_refs and returns the existing id.
    std::string add_entity(const std::string& name, EntityKind kind,
                           const std::string& description,
                           const std::string& source_ref);

    // Member counts: low => exactly 2, high => >= 3, case => >= 1.
    // Throws std::invalid_argument on violation or unknown member.
    std::string add_hyperedge(const std::vector<std::string>& members,
                              OrderClass order_class, const std::string& statement,
                              const std::string& source_ref);

    // Used by the persistence layer to restore exact ids.
    void insert_entity_raw(Entity entity);
    void insert_edge_raw(Hyperedge edge);

    std::vector<Entity> neighbors_of_edge(const std::string& edge_id) const;
    ConceptSubgraph expand_entity(const std::string& entity_id,
                                  std::size_t max_edges) const;

    const Entity* find_entity(const std::string& id) const;
    const Hyperedge* find_edge(const std::string& id) const;
    const Entity* find_entity_by_name(const std::string& name, EntityKind kind) const;
    Entity* mutable_entity(const std::string& id);
    Hyperedge* mutable_edge(const std::string& id);

    const std::map<std::string, Entity>& entities() const { return entities_; }
    const std::map<std::string, Hyperedge>& edges() const { return edges_; }
    const std::set<std::string>& incident_edges(const std::string& entity_id) const;

    std::size_t entity_count() const { return entities_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    // Incidence is exactly the inverse of edge membership and no id dangles.
    bool check_invariants(std::string* message = nullptr) const;

    static std::string normalize_name(const std::string& name);

private:
    std::string next_entity_id() const;
    std::string next_edge_id() const;

    Layer layer_;
    std::map<std::string, Entity> entities_;
    std::map<std::string, Hyperedge> edges_;
    std::map<std::string, std::set<std::string>> incidence_;
    std::map<std::string, std::string> name_index_;  // "kind\x1fnorm-name" -> id
    std::size_t entity_seq_ = 0;
    std::size_t edge_seq_ = 0;
};

}  // namespace hgrag::core
