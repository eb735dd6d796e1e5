#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "axiomkit/ontology_store.hpp"

namespace axiomkit {

using NodeId = std::uint32_t;
using ConnId = std::uint32_t;

enum class NodeKind { Root, Variable, Instance, Primitive, Relation, Operator };
enum class OperatorKind { And, Or, Not };
enum class EndpointKind { Root, Attribute, Operator, Parameter };
enum class ChainKind { RootChain, AttributeChain };

const char* to_string(NodeKind kind);
const char* to_string(OperatorKind kind);
const char* to_string(EndpointKind kind);
const char* to_string(ChainKind kind);
OperatorKind operator_kind_from(const std::string& text);

struct AttributeSlot {
    std::string attribute;
    ConstraintKind constraint_kind = ConstraintKind::OfType;
    std::vector<TypeRef> constraints;
    InheritanceKind inheritance = InheritanceKind::Own;
    std::optional<std::string> bound_name;

    bool operator==(const AttributeSlot&) const = default;
};

struct ParameterSlot {
    std::optional<std::string> name;
    ConstraintKind constraint_kind = ConstraintKind::OfType;
    std::vector<TypeRef> constraints;

    bool operator==(const ParameterSlot&) const = default;
};

/// Variant record; which fields are meaningful depends on `kind`.
struct Node {
    NodeId id = 0;
    NodeKind kind = NodeKind::Root;
    std::string name;        // Variable: "?x"
    std::string type;        // Variable, Instance, Primitive: type IRI
    std::string element;     // Instance: instance IRI; Relation: relation IRI
    std::string value;       // Primitive: literal text
    std::string bound_name;  // Primitive: "?x"
    OperatorKind op = OperatorKind::And;
    std::vector<AttributeSlot> slots;
    std::vector<ParameterSlot> params;
    std::optional<std::pair<double, double>> position;

    const AttributeSlot* slot(const std::string& attribute) const;
    AttributeSlot* slot(const std::string& attribute);

    bool operator==(const Node&) const = default;
};

struct Endpoint {
    EndpointKind kind = EndpointKind::Root;
    NodeId node = 0;
    std::string attribute;  // Attribute endpoints
    std::size_t index = 0;  // Parameter endpoints

    static Endpoint root(NodeId root_id) { return {EndpointKind::Root, root_id, {}, 0}; }
    static Endpoint attribute_of(NodeId n, std::string a) { return {EndpointKind::Attribute, n, std::move(a), 0}; }
    static Endpoint operator_of(NodeId n) { return {EndpointKind::Operator, n, {}, 0}; }
    static Endpoint parameter_of(NodeId n, std::size_t i) { return {EndpointKind::Parameter, n, {}, i}; }

    bool operator==(const Endpoint&) const = default;
};

struct Connection {
    ConnId id = 0;
    Endpoint source;
    NodeId target = 0;

    bool operator==(const Connection&) const = default;
};

struct Validity {
    bool valid = true;
    std::string reason;
};

class AxiomModel {
public:
    explicit AxiomModel(std::string axiom_name = "autoGeneratedAxiom_1");

    std::string axiom_name;
    /// Ontology of the first created variable; names from it are emitted unqualified.
    std::string home_ontology;

    NodeId root() const { return root_; }
    const std::map<NodeId, Node>& nodes() const { return nodes_; }
    const std::map<ConnId, Connection>& connections() const { return connections_; }

    bool has_node(NodeId id) const { return nodes_.count(id) > 0; }
    bool has_connection(ConnId id) const { return connections_.count(id) > 0; }
    const Node& node(NodeId id) const;
    Node& node(NodeId id);
    const Connection& connection(ConnId id) const;
    Connection& connection(ConnId id);

    NodeId add_node(Node n);
    /// Raw edge insertion; editing policy lives in the op engine.
    ConnId connect(const Endpoint& source, NodeId target, std::optional<ConnId> reuse_id = std::nullopt);
    void disconnect(ConnId id);
    void remove_node(NodeId id);

    std::vector<ConnId> outgoing(const Endpoint& source) const;
    /// All connections whose source endpoint belongs to `id`, in id order.
    std::vector<ConnId> outgoing_of(NodeId id) const;
    std::vector<ConnId> incoming(NodeId id) const;
    bool endpoint_exists(const Endpoint& e) const;

    /// variable name -> Variable node ids carrying it
    std::map<std::string, std::set<NodeId>> name_index() const;
    /// Every name in use: variables, slot bound names and primitive bound names.
    std::set<std::string> names_in_use() const;

    Validity validity(NodeId id) const;
    std::set<NodeId> reachable_from_root() const;
    /// Reachability that does not pass through invalid operators (what code generation sees).
    std::set<NodeId> live_nodes() const;
    /// Endpoint that starts the chain containing `conn`: Root, an attribute slot or a parameter
    /// slot. Empty when the upward walk ends at an operator without an incoming connection.
    std::optional<Endpoint> chain_origin(ConnId conn) const;
    std::optional<ChainKind> chain_kind(ConnId conn) const;
    /// Chain origin for connections leaving operator `op`.
    std::optional<Endpoint> operator_origin(NodeId op) const;
    /// True when `candidate` equals `op` or lies on the upward operator walk from `op`.
    bool on_upward_walk(NodeId op, NodeId candidate) const;

    NodeId next_node_id() const { return next_node_; }
    ConnId next_connection_id() const { return next_conn_; }

    bool operator==(const AxiomModel&) const = default;

    friend AxiomModel model_from_json(const nlohmann::json& j);

private:
    NodeId root_ = 0;
    std::map<NodeId, Node> nodes_;
    std::map<ConnId, Connection> connections_;
    NodeId next_node_ = 0;
    ConnId next_conn_ = 1;
};

nlohmann::json endpoint_to_json(const Endpoint& e);
Endpoint endpoint_from_json(const nlohmann::json& j);

/// Persistence document. `ontologies` lists the IRIs the model needs on restore.
nlohmann::json model_to_json(const AxiomModel& model, const OntologyRegistry& registry);
nlohmann::json model_to_json(const AxiomModel& model);
AxiomModel model_from_json(const nlohmann::json& j);
std::vector<std::string> referenced_ontologies(const AxiomModel& model, const OntologyRegistry& registry);

}  // namespace axiomkit
