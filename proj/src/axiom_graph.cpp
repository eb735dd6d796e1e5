#include "axiomkit/axiom_graph.hpp"

#include <algorithm>
#include <deque>

#include "axiomkit/iri.hpp"

namespace axiomkit {

using nlohmann::json;

const char* to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::Root: return "root";
        case NodeKind::Variable: return "variable";
        case NodeKind::Instance: return "instance";
        case NodeKind::Primitive: return "primitive";
        case NodeKind::Relation: return "relation";
        case NodeKind::Operator: return "operator";
    }
    return "root";
}

const char* to_string(OperatorKind kind) {
    switch (kind) {
        case OperatorKind::And: return "AND";
        case OperatorKind::Or: return "OR";
        case OperatorKind::Not: return "NOT";
    }
    return "AND";
}

const char* to_string(EndpointKind kind) {
    switch (kind) {
        case EndpointKind::Root: return "root";
        case EndpointKind::Attribute: return "attribute";
        case EndpointKind::Operator: return "operator";
        case EndpointKind::Parameter: return "parameter";
    }
    return "root";
}

const char* to_string(ChainKind kind) {
    return kind == ChainKind::RootChain ? "root_chain" : "attribute_chain";
}

OperatorKind operator_kind_from(const std::string& text) {
    std::string up;
    for (char c : text) up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    if (up == "AND") return OperatorKind::And;
    if (up == "OR") return OperatorKind::Or;
    if (up == "NOT") return OperatorKind::Not;
    throw Error(errc::BadRequest, "unknown operator kind '" + text + "'");
}

namespace {

NodeKind node_kind_from(const std::string& s) {
    if (s == "root") return NodeKind::Root;
    if (s == "variable") return NodeKind::Variable;
    if (s == "instance") return NodeKind::Instance;
    if (s == "primitive") return NodeKind::Primitive;
    if (s == "relation") return NodeKind::Relation;
    if (s == "operator") return NodeKind::Operator;
    throw Error(errc::BadRequest, "unknown node kind '" + s + "'");
}

EndpointKind endpoint_kind_from(const std::string& s) {
    if (s == "root") return EndpointKind::Root;
    if (s == "attribute") return EndpointKind::Attribute;
    if (s == "operator") return EndpointKind::Operator;
    if (s == "parameter") return EndpointKind::Parameter;
    throw Error(errc::BadRequest, "unknown endpoint kind '" + s + "'");
}

const char* type_kind_name(TypeKind k) {
    switch (k) {
        case TypeKind::Concept: return "concept";
        case TypeKind::Builtin: return "builtin";
        case TypeKind::Universal: return "universal";
    }
    return "concept";
}

TypeKind type_kind_from(const std::string& s) {
    if (s == "builtin") return TypeKind::Builtin;
    if (s == "universal") return TypeKind::Universal;
    return TypeKind::Concept;
}

InheritanceKind inheritance_from(const std::string& s) {
    if (s == "inherited") return InheritanceKind::Inherited;
    if (s == "overridden") return InheritanceKind::Overridden;
    return InheritanceKind::Own;
}

json types_to_json(const std::vector<TypeRef>& types) {
    json arr = json::array();
    for (const auto& t : types) arr.push_back({{"iri", t.iri}, {"kind", type_kind_name(t.kind)}});
    return arr;
}

std::vector<TypeRef> types_from_json(const json& arr) {
    std::vector<TypeRef> out;
    for (const auto& t : arr) out.push_back({t.at("iri").get<std::string>(), type_kind_from(t.at("kind"))});
    return out;
}

}  // namespace

const AttributeSlot* Node::slot(const std::string& attribute) const {
    for (const auto& s : slots)
        if (s.attribute == attribute) return &s;
    return nullptr;
}

AttributeSlot* Node::slot(const std::string& attribute) {
    for (auto& s : slots)
        if (s.attribute == attribute) return &s;
    return nullptr;
}

AxiomModel::AxiomModel(std::string name) : axiom_name(std::move(name)) {
    Node root;
    root.kind = NodeKind::Root;
    root.name = "Start";
    root_ = add_node(std::move(root));
}

const Node& AxiomModel::node(NodeId id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw Error(errc::UnknownNode, "no node " + std::to_string(id));
    return it->second;
}

Node& AxiomModel::node(NodeId id) {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw Error(errc::UnknownNode, "no node " + std::to_string(id));
    return it->second;
}

const Connection& AxiomModel::connection(ConnId id) const {
    auto it = connections_.find(id);
    if (it == connections_.end()) throw Error(errc::UnknownConnection, "no connection " + std::to_string(id));
    return it->second;
}

Connection& AxiomModel::connection(ConnId id) {
    auto it = connections_.find(id);
    if (it == connections_.end()) throw Error(errc::UnknownConnection, "no connection " + std::to_string(id));
    return it->second;
}

NodeId AxiomModel::add_node(Node n) {
    n.id = next_node_++;
    NodeId id = n.id;
    nodes_.emplace(id, std::move(n));
    return id;
}

ConnId AxiomModel::connect(const Endpoint& source, NodeId target, std::optional<ConnId> reuse_id) {
    ConnId id = reuse_id ? *reuse_id : next_conn_++;
    connections_[id] = Connection{id, source, target};
    return id;
}

void AxiomModel::disconnect(ConnId id) { connections_.erase(id); }

void AxiomModel::remove_node(NodeId id) {
    for (auto it = connections_.begin(); it != connections_.end();) {
        if (it->second.target == id || it->second.source.node == id) it = connections_.erase(it);
        else ++it;
    }
    nodes_.erase(id);
}

std::vector<ConnId> AxiomModel::outgoing(const Endpoint& source) const {
    std::vector<ConnId> out;
    for (const auto& [id, c] : connections_)
        if (c.source == source) out.push_back(id);
    return out;
}

std::vector<ConnId> AxiomModel::outgoing_of(NodeId id) const {
    std::vector<ConnId> out;
    for (const auto& [cid, c] : connections_)
        if (c.source.node == id) out.push_back(cid);
    return out;
}

std::vector<ConnId> AxiomModel::incoming(NodeId id) const {
    std::vector<ConnId> out;
    for (const auto& [cid, c] : connections_)
        if (c.target == id) out.push_back(cid);
    return out;
}

bool AxiomModel::endpoint_exists(const Endpoint& e) const {
    auto it = nodes_.find(e.node);
    if (it == nodes_.end()) return false;
    const Node& n = it->second;
    switch (e.kind) {
        case EndpointKind::Root: return n.kind == NodeKind::Root;
        case EndpointKind::Attribute: return n.kind == NodeKind::Variable && n.slot(e.attribute);
        case EndpointKind::Operator: return n.kind == NodeKind::Operator;
        case EndpointKind::Parameter: return n.kind == NodeKind::Relation && e.index < n.params.size();
    }
    return false;
}

std::map<std::string, std::set<NodeId>> AxiomModel::name_index() const {
    std::map<std::string, std::set<NodeId>> index;
    for (const auto& [id, n] : nodes_)
        if (n.kind == NodeKind::Variable) index[n.name].insert(id);
    return index;
}

std::set<std::string> AxiomModel::names_in_use() const {
    std::set<std::string> names;
    for (const auto& [id, n] : nodes_) {
        if (n.kind == NodeKind::Variable) {
            names.insert(n.name);
            for (const auto& s : n.slots)
                if (s.bound_name) names.insert(*s.bound_name);
        } else if (n.kind == NodeKind::Primitive && !n.bound_name.empty()) {
            names.insert(n.bound_name);
        }
    }
    return names;
}

Validity AxiomModel::validity(NodeId id) const {
    const Node& n = node(id);
    if (n.kind == NodeKind::Root) return {};
    if (n.kind == NodeKind::Operator) {
        if (incoming(id).empty()) return {false, "no incoming connection"};
        std::size_t operands = outgoing_of(id).size();
        if (n.op == OperatorKind::Not) {
            if (operands != 1) return {false, "needs exactly 1 operand"};
        } else if (operands < 2) {
            return {false, "needs ≥2 operands"};
        }
        return {};
    }
    if (!reachable_from_root().count(id)) return {false, "not connected to Start"};
    return {};
}

namespace {

template <class Admit>
std::set<NodeId> traverse(const AxiomModel& m, Admit admit) {
    std::set<NodeId> seen{m.root()};
    std::deque<NodeId> queue{m.root()};
    while (!queue.empty()) {
        NodeId cur = queue.front();
        queue.pop_front();
        for (ConnId cid : m.outgoing_of(cur)) {
            NodeId t = m.connection(cid).target;
            if (seen.count(t) || !admit(t)) continue;
            seen.insert(t);
            queue.push_back(t);
        }
    }
    return seen;
}

}  // namespace

std::set<NodeId> AxiomModel::reachable_from_root() const {
    return traverse(*this, [](NodeId) { return true; });
}

std::set<NodeId> AxiomModel::live_nodes() const {
    return traverse(*this, [this](NodeId t) {
        const Node& n = node(t);
        if (n.kind != NodeKind::Operator) return true;
        return validity(t).valid;
    });
}

std::optional<Endpoint> AxiomModel::operator_origin(NodeId op) const {
    std::set<NodeId> visited;
    NodeId cur = op;
    for (;;) {
        if (!visited.insert(cur).second) return std::nullopt;
        auto in = incoming(cur);
        if (in.empty()) return std::nullopt;
        const Connection& c = connection(in.front());
        if (c.source.kind != EndpointKind::Operator) return c.source;
        cur = c.source.node;
    }
}

std::optional<Endpoint> AxiomModel::chain_origin(ConnId conn) const {
    const Connection& c = connection(conn);
    if (c.source.kind != EndpointKind::Operator) return c.source;
    return operator_origin(c.source.node);
}

std::optional<ChainKind> AxiomModel::chain_kind(ConnId conn) const {
    auto origin = chain_origin(conn);
    if (!origin) return std::nullopt;
    return origin->kind == EndpointKind::Root ? ChainKind::RootChain : ChainKind::AttributeChain;
}

bool AxiomModel::on_upward_walk(NodeId op, NodeId candidate) const {
    std::set<NodeId> visited;
    NodeId cur = op;
    for (;;) {
        if (cur == candidate) return true;
        if (!visited.insert(cur).second) return false;
        auto in = incoming(cur);
        if (in.empty()) return false;
        const Connection& c = connection(in.front());
        if (c.source.kind != EndpointKind::Operator) return false;
        cur = c.source.node;
    }
}

// ---------------------------------------------------------------- persistence

json endpoint_to_json(const Endpoint& e) {
    json j{{"kind", to_string(e.kind)}};
    if (e.kind != EndpointKind::Root) j["node"] = e.node;
    else j["node"] = e.node;
    if (e.kind == EndpointKind::Attribute) j["attribute"] = e.attribute;
    if (e.kind == EndpointKind::Parameter) j["index"] = e.index;
    return j;
}

Endpoint endpoint_from_json(const json& j) {
    Endpoint e;
    e.kind = endpoint_kind_from(j.at("kind").get<std::string>());
    e.node = j.value("node", NodeId{0});
    if (e.kind == EndpointKind::Attribute) e.attribute = j.at("attribute").get<std::string>();
    if (e.kind == EndpointKind::Parameter) e.index = j.at("index").get<std::size_t>();
    return e;
}

json model_to_json(const AxiomModel& m) {
    json nodes = json::array();
    for (const auto& [id, n] : m.nodes()) {
        json jn{{"id", id}, {"kind", to_string(n.kind)}};
        switch (n.kind) {
            case NodeKind::Root: break;
            case NodeKind::Variable: {
                jn["name"] = n.name;
                jn["type"] = n.type;
                json slots = json::array();
                for (const auto& s : n.slots) {
                    json js{{"attribute", s.attribute},
                            {"constraint_kind", to_string(s.constraint_kind)},
                            {"constraints", types_to_json(s.constraints)},
                            {"inheritance", to_string(s.inheritance)}};
                    if (s.bound_name) js["bound_name"] = *s.bound_name;
                    slots.push_back(std::move(js));
                }
                jn["slots"] = std::move(slots);
                break;
            }
            case NodeKind::Instance:
                jn["instance"] = n.element;
                jn["type"] = n.type;
                break;
            case NodeKind::Primitive:
                jn["type"] = n.type;
                jn["value"] = n.value;
                jn["bound_name"] = n.bound_name;
                break;
            case NodeKind::Relation: {
                jn["relation"] = n.element;
                json params = json::array();
                for (const auto& p : n.params) {
                    json jp{{"constraint_kind", to_string(p.constraint_kind)},
                            {"constraints", types_to_json(p.constraints)}};
                    if (p.name) jp["name"] = *p.name;
                    params.push_back(std::move(jp));
                }
                jn["params"] = std::move(params);
                break;
            }
            case NodeKind::Operator: jn["operator"] = to_string(n.op); break;
        }
        if (n.position) {
            jn["x"] = n.position->first;
            jn["y"] = n.position->second;
        }
        nodes.push_back(std::move(jn));
    }
    json conns = json::array();
    for (const auto& [id, c] : m.connections())
        conns.push_back({{"id", id}, {"source", endpoint_to_json(c.source)}, {"target", c.target}});
    return json{{"format", "axiomkit-model/1"},
                {"axiom_name", m.axiom_name},
                {"home_ontology", m.home_ontology},
                {"root", m.root()},
                {"next_node", m.next_node_id()},
                {"next_connection", m.next_connection_id()},
                {"nodes", std::move(nodes)},
                {"connections", std::move(conns)}};
}

std::vector<std::string> referenced_ontologies(const AxiomModel& m, const OntologyRegistry& registry) {
    std::vector<std::string> out;
    auto add_owner = [&](const std::string& element) {
        auto owner = registry.owner_of(element);
        if (owner && std::find(out.begin(), out.end(), *owner) == out.end()) out.push_back(*owner);
    };
    if (!m.home_ontology.empty() && registry.is_loaded(m.home_ontology)) out.push_back(m.home_ontology);
    for (const auto& [id, n] : m.nodes()) {
        if (!n.type.empty()) add_owner(n.type);
        if (!n.element.empty()) add_owner(n.element);
        for (const auto& s : n.slots)
            for (const auto& t : s.constraints) add_owner(t.iri);
        for (const auto& p : n.params)
            for (const auto& t : p.constraints) add_owner(t.iri);
    }
    out.erase(std::remove(out.begin(), out.end(), std::string(iri::kBuiltinOntology)), out.end());
    std::sort(out.begin(), out.end());
    return out;
}

json model_to_json(const AxiomModel& m, const OntologyRegistry& registry) {
    json j = model_to_json(m);
    j["ontologies"] = referenced_ontologies(m, registry);
    return j;
}

AxiomModel model_from_json(const json& j) {
    AxiomModel m(j.at("axiom_name").get<std::string>());
    m.home_ontology = j.value("home_ontology", std::string());
    m.nodes_.clear();
    m.connections_.clear();
    for (const auto& jn : j.at("nodes")) {
        Node n;
        n.id = jn.at("id").get<NodeId>();
        n.kind = node_kind_from(jn.at("kind").get<std::string>());
        switch (n.kind) {
            case NodeKind::Root: n.name = "Start"; break;
            case NodeKind::Variable:
                n.name = jn.at("name").get<std::string>();
                n.type = jn.at("type").get<std::string>();
                for (const auto& js : jn.at("slots")) {
                    AttributeSlot s;
                    s.attribute = js.at("attribute").get<std::string>();
                    s.constraint_kind = js.value("constraint_kind", std::string("ofType")) == "impliesType"
                                            ? ConstraintKind::ImpliesType
                                            : ConstraintKind::OfType;
                    s.constraints = types_from_json(js.at("constraints"));
                    s.inheritance = inheritance_from(js.value("inheritance", std::string("own")));
                    if (js.contains("bound_name")) s.bound_name = js.at("bound_name").get<std::string>();
                    n.slots.push_back(std::move(s));
                }
                break;
            case NodeKind::Instance:
                n.element = jn.at("instance").get<std::string>();
                n.type = jn.at("type").get<std::string>();
                break;
            case NodeKind::Primitive:
                n.type = jn.at("type").get<std::string>();
                n.value = jn.at("value").get<std::string>();
                n.bound_name = jn.value("bound_name", std::string());
                break;
            case NodeKind::Relation:
                n.element = jn.at("relation").get<std::string>();
                for (const auto& jp : jn.at("params")) {
                    ParameterSlot p;
                    if (jp.contains("name")) p.name = jp.at("name").get<std::string>();
                    p.constraint_kind = jp.value("constraint_kind", std::string("ofType")) == "impliesType"
                                            ? ConstraintKind::ImpliesType
                                            : ConstraintKind::OfType;
                    p.constraints = types_from_json(jp.at("constraints"));
                    n.params.push_back(std::move(p));
                }
                break;
            case NodeKind::Operator: n.op = operator_kind_from(jn.at("operator").get<std::string>()); break;
        }
        if (jn.contains("x") && jn.contains("y"))
            n.position = std::make_pair(jn.at("x").get<double>(), jn.at("y").get<double>());
        m.nodes_[n.id] = std::move(n);
    }
    m.root_ = j.at("root").get<NodeId>();
    for (const auto& jc : j.at("connections")) {
        Connection c{jc.at("id").get<ConnId>(), endpoint_from_json(jc.at("source")), jc.at("target").get<NodeId>()};
        if (!m.endpoint_exists(c.source) || !m.has_node(c.target))
            throw Error(errc::BadRequest, "connection " + std::to_string(c.id) + " dangles");
        m.connections_[c.id] = c;
    }
    m.next_node_ = j.at("next_node").get<NodeId>();
    m.next_conn_ = j.at("next_connection").get<ConnId>();
    if (!m.has_node(m.root_) || m.node(m.root_).kind != NodeKind::Root)
        throw Error(errc::BadRequest, "model has no Start node");
    return m;
}

}  // namespace axiomkit
