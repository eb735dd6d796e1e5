#include "axiomkit/op_engine.hpp"

#include <algorithm>
#include <functional>
#include <regex>

#include "axiomkit/iri.hpp"

namespace axiomkit {

namespace {

using Kind = BindingSpec::Kind;

[[noreturn]] void fail(const char* code, const std::string& message) { throw Error(code, message); }

std::vector<TypeRef> universal_constraint() {
    return {TypeRef{std::string(iri::kUniversal), TypeKind::Universal}};
}

/// Local part of an attribute or parameter name, usable as a variable base.
std::string name_base(const std::string& name) {
    auto pos = name.find_last_of("#:/");
    return pos == std::string::npos ? name : name.substr(pos + 1);
}

bool compatible(const OntologyRegistry& reg, const std::string& type, const std::vector<TypeRef>& required) {
    try {
        return reg.is_compatible(reg.type_ref(type), required);
    } catch (const Error& e) {
        if (e.code() == errc::UnresolvedStub) throw Error(errc::StubType, e.what());
        throw;
    }
}

struct BindContext {
    enum class Site { Attribute, Parameter, Root };

    Site site = Site::Root;
    std::vector<TypeRef> constraints = universal_constraint();
    /// Name base; empty means "local name of the chosen type".
    std::string base;
    std::optional<std::string> forced_name;
    /// Root chains: the type a "default type" binding copies.
    std::optional<std::string> hint;
};

std::string default_type(const OntologyRegistry& reg, const BindContext& ctx) {
    if (ctx.site == BindContext::Site::Root) {
        if (!ctx.hint) fail(errc::AmbiguousDefault, "no default type in this chain");
        return *ctx.hint;
    }
    std::vector<TypeRef> concrete;
    for (const auto& t : ctx.constraints) {
        if (t.universal()) continue;
        if (!reg.find_concept(t.iri))
            fail(errc::StubType, "type " + t.iri + " is not loaded; load its ontology first");
        concrete.push_back(t);
    }
    if (concrete.empty()) fail(errc::AmbiguousDefault, "the universal type has no default; pick a concept");
    std::vector<std::string> most_specific;
    for (const auto& c : concrete)
        if (reg.is_compatible(c, concrete) &&
            std::find(most_specific.begin(), most_specific.end(), c.iri) == most_specific.end())
            most_specific.push_back(c.iri);
    if (most_specific.size() != 1) fail(errc::AmbiguousDefault, "several constraints and no single default type");
    return most_specific.front();
}

std::string base_for(const BindContext& ctx, const std::string& type) {
    return ctx.base.empty() ? iri::local_name(type) : ctx.base;
}

std::vector<AttributeSlot> slots_for(const OntologyRegistry& reg, const std::string& concept_iri) {
    std::vector<AttributeSlot> out;
    const ConceptDef* c = reg.find_concept(concept_iri);
    if (!c) return out;
    for (const auto& ea : c->effective_attributes)
        out.push_back({ea.attr.name, ea.attr.constraint_kind, ea.attr.types, ea.inheritance, std::nullopt});
    return out;
}

const ConceptDef& require_concept(const OntologyRegistry& reg, const std::string& iri) {
    const ConceptDef* c = reg.find_concept(iri);
    if (c) return *c;
    if (reg.stub_owner(iri))
        fail(errc::StubConcept, "concept " + iri + " has no structure yet; load ontology " + *reg.stub_owner(iri) +
                                    " first");
    fail(errc::UnknownConcept, "unknown concept " + iri);
}

NodeId make_variable(AxiomModel& m, const OntologyRegistry& reg, const std::string& type, std::string name) {
    Node n;
    n.kind = NodeKind::Variable;
    n.name = std::move(name);
    n.type = type;
    n.slots = slots_for(reg, type);
    if (m.home_ontology.empty()) {
        if (auto owner = reg.owner_of(type)) m.home_ontology = *owner;
    }
    return m.add_node(std::move(n));
}

std::string instance_type(const OntologyRegistry& reg, const InstanceDef& inst, const std::vector<TypeRef>& required) {
    for (const auto& c : inst.member_of) {
        if (!reg.find_concept(c)) continue;
        if (reg.is_compatible(reg.type_ref(c), required)) return c;
    }
    return inst.member_of.empty() ? std::string() : inst.member_of.front();
}

/// Creates or selects the node a binding refers to. Does not connect it.
NodeId realize(AxiomModel& m, const OntologyRegistry& reg, const BindContext& ctx, const BindingSpec& spec) {
    const bool param = ctx.site == BindContext::Site::Parameter;
    auto name_for = [&](const std::string& type) {
        return ctx.forced_name ? *ctx.forced_name : gen_variable_name(m, base_for(ctx, type));
    };
    switch (spec.kind) {
        case Kind::NewVarDefaultType: {
            std::string type = default_type(reg, ctx);
            return make_variable(m, reg, type, name_for(type));
        }
        case Kind::NewVarOfConcept: {
            if (param) fail(errc::NotAllowed, "parameters bind only default-typed or existing variables");
            require_concept(reg, spec.element);
            if (!compatible(reg, spec.element, ctx.constraints))
                fail(errc::Incompatible, reg.display_name(spec.element) + " does not satisfy the required type");
            return make_variable(m, reg, spec.element, name_for(spec.element));
        }
        case Kind::ExistingVariable: {
            if (!m.has_node(spec.node)) fail(errc::UnknownNode, "no node " + std::to_string(spec.node));
            const Node& n = m.node(spec.node);
            if (n.kind != NodeKind::Variable) fail(errc::NotAllowed, "node " + std::to_string(spec.node) + " is not a variable");
            if (!compatible(reg, n.type, ctx.constraints))
                fail(errc::Incompatible, n.name + " has an incompatible type");
            if (ctx.forced_name && n.name != *ctx.forced_name)
                fail(errc::NameConflict, "alternatives must share the name " + *ctx.forced_name);
            return spec.node;
        }
        case Kind::InstanceFromOntology: {
            if (param) fail(errc::NotAllowed, "parameters bind only variables");
            const InstanceDef* inst = reg.find_instance(spec.element);
            if (!inst) fail(errc::UnknownInstance, "unknown instance " + spec.element);
            if (!reg.instance_compatible(spec.element, ctx.constraints))
                fail(errc::Incompatible, "instance " + spec.element + " has an incompatible type");
            Node n;
            n.kind = NodeKind::Instance;
            n.element = spec.element;
            n.type = instance_type(reg, *inst, ctx.constraints);
            return m.add_node(std::move(n));
        }
        case Kind::ExistingInstance: {
            if (param) fail(errc::NotAllowed, "parameters bind only variables");
            if (!m.has_node(spec.node)) fail(errc::UnknownNode, "no node " + std::to_string(spec.node));
            const Node& n = m.node(spec.node);
            if (n.kind != NodeKind::Instance) fail(errc::NotAllowed, "node " + std::to_string(spec.node) + " is not an instance");
            if (!reg.instance_compatible(n.element, ctx.constraints))
                fail(errc::Incompatible, "instance has an incompatible type");
            return spec.node;
        }
        case Kind::LiteralDefaultType:
        case Kind::LiteralOfType: {
            if (param) fail(errc::NotAllowed, "parameters bind only variables");
            std::string type;
            if (spec.kind == Kind::LiteralDefaultType) {
                type = default_type(reg, ctx);
            } else {
                type = spec.element;
                if (!reg.find_concept(type)) fail(errc::UnknownConcept, "unknown type " + type);
            }
            if (reg.type_ref(type).kind != TypeKind::Builtin)
                fail(errc::Incompatible, "literals need a built-in type, not " + type);
            if (!compatible(reg, type, ctx.constraints)) fail(errc::Incompatible, type + " does not satisfy the required type");
            if (!literal_valid(reg, type, spec.value))
                fail(errc::BadLiteral, "'" + spec.value + "' is not a valid " + iri::local_name(type));
            Node n;
            n.kind = NodeKind::Primitive;
            n.type = type;
            n.value = spec.value;
            n.bound_name = name_for(type);
            return m.add_node(std::move(n));
        }
    }
    fail(errc::BadRequest, "unknown binding kind");
}

/// Name a slot shows for a bound target node.
std::string bound_name_of(AxiomModel& m, const BindContext& ctx, NodeId target) {
    const Node& n = m.node(target);
    if (n.kind == NodeKind::Variable) return n.name;
    if (n.kind == NodeKind::Primitive) return n.bound_name;
    return ctx.forced_name ? *ctx.forced_name : gen_variable_name(m, ctx.base);
}

AttributeSlot& require_slot(AxiomModel& m, NodeId node, const std::string& attribute) {
    Node& n = m.node(node);
    if (n.kind != NodeKind::Variable) fail(errc::UnknownSlot, "node " + std::to_string(node) + " has no attributes");
    AttributeSlot* s = n.slot(attribute);
    if (!s) fail(errc::UnknownSlot, n.name + " has no attribute " + attribute);
    return *s;
}

ParameterSlot& require_param(AxiomModel& m, NodeId node, std::size_t index) {
    Node& n = m.node(node);
    if (n.kind != NodeKind::Relation) fail(errc::UnknownSlot, "node " + std::to_string(node) + " is not a relation");
    if (index >= n.params.size()) fail(errc::UnknownSlot, "relation has no parameter " + std::to_string(index));
    return n.params[index];
}

std::string param_base(const ParameterSlot& p, std::size_t index) {
    return p.name ? name_base(*p.name) : "arg" + std::to_string(index + 1);
}

std::optional<std::string> type_hint(const AxiomModel& m, NodeId node) {
    const Node& n = m.node(node);
    if (n.kind == NodeKind::Variable || n.kind == NodeKind::Instance || n.kind == NodeKind::Primitive) return n.type;
    return std::nullopt;
}

/// Binding context for a new operand of operator `op`.
BindContext operand_context(const AxiomModel& m, NodeId op) {
    auto origin = m.operator_origin(op);
    if (!origin) fail(errc::UnknownChain, "operator is not connected; its chain kind is unknown");
    BindContext ctx;
    if (origin->kind == EndpointKind::Attribute) {
        const AttributeSlot* s = m.node(origin->node).slot(origin->attribute);
        ctx.site = BindContext::Site::Attribute;
        ctx.constraints = s->constraints;
        ctx.base = name_base(s->attribute);
        ctx.forced_name = s->bound_name;
        return ctx;
    }
    if (origin->kind == EndpointKind::Parameter) fail(errc::NotAllowed, "parameter chains take no operators");
    for (ConnId c : m.outgoing_of(op)) {
        if ((ctx.hint = type_hint(m, m.connection(c).target))) break;
    }
    return ctx;
}

/// Checks that `target` may sit in an attribute chain with `constraints`; collects the shared name.
void admit_in_attribute_chain(const AxiomModel& m, const OntologyRegistry& reg, const std::vector<TypeRef>& constraints,
                              NodeId target, std::optional<std::string>& shared) {
    const Node& n = m.node(target);
    auto share = [&](const std::string& name) {
        if (shared && *shared != name) fail(errc::NameConflict, "alternatives must share the name " + *shared);
        shared = name;
    };
    switch (n.kind) {
        case NodeKind::Root: fail(errc::NotAllowed, "Start cannot be a target");
        case NodeKind::Relation: fail(errc::NotAllowed, "relations belong in chains starting at Start");
        case NodeKind::Variable:
            if (!compatible(reg, n.type, constraints)) fail(errc::Incompatible, n.name + " has an incompatible type");
            share(n.name);
            return;
        case NodeKind::Primitive:
            if (!compatible(reg, n.type, constraints)) fail(errc::Incompatible, "value has an incompatible type");
            share(n.bound_name);
            return;
        case NodeKind::Instance:
            if (!reg.instance_compatible(n.element, constraints))
                fail(errc::Incompatible, "instance has an incompatible type");
            return;
        case NodeKind::Operator:
            if (n.op == OperatorKind::And) fail(errc::NotAllowed, "AND cannot start at an attribute");
            for (ConnId c : m.outgoing_of(target)) admit_in_attribute_chain(m, reg, constraints, m.connection(c).target, shared);
            return;
    }
}

/// Gating shared by create_connection and move_endpoint. Returns the name to show on an attribute source.
std::optional<std::string> admit_edge(AxiomModel& m, const OntologyRegistry& reg, const Endpoint& source, NodeId target) {
    if (!m.has_node(source.node)) fail(errc::UnknownNode, "no node " + std::to_string(source.node));
    if (!m.endpoint_exists(source)) fail(errc::UnknownSlot, "no such source endpoint");
    if (!m.has_node(target)) fail(errc::UnknownNode, "no node " + std::to_string(target));
    const Node& t = m.node(target);
    if (t.kind == NodeKind::Root) fail(errc::NotAllowed, "Start cannot be a target");

    if (source.kind == EndpointKind::Operator) {
        const Node& op = m.node(source.node);
        auto operands = m.outgoing_of(source.node);
        if (op.op == OperatorKind::Not && !operands.empty()) fail(errc::NotArity, "NOT takes a single operand");
        for (ConnId c : operands)
            if (m.connection(c).target == target) fail(errc::NotAllowed, "already an operand of this operator");
    } else if (!m.outgoing(source).empty()) {
        fail(errc::SlotOccupied, "the source already has a connection");
    }
    if (t.kind == NodeKind::Operator) {
        if (!m.incoming(target).empty()) fail(errc::SlotOccupied, "operator already has an incoming connection");
        if (source.kind == EndpointKind::Operator && m.on_upward_walk(source.node, target))
            fail(errc::WouldCycle, "connection would close a cycle");
    }

    switch (source.kind) {
        case EndpointKind::Root: return std::nullopt;
        case EndpointKind::Parameter: {
            const ParameterSlot& p = m.node(source.node).params[source.index];
            if (t.kind != NodeKind::Variable) fail(errc::NotAllowed, "parameters bind only variables");
            if (!compatible(reg, t.type, p.constraints)) fail(errc::Incompatible, t.name + " has an incompatible type");
            return std::nullopt;
        }
        case EndpointKind::Attribute: {
            const AttributeSlot* s = m.node(source.node).slot(source.attribute);
            std::optional<std::string> shared;
            admit_in_attribute_chain(m, reg, s->constraints, target, shared);
            return shared ? *shared : gen_variable_name(m, name_base(s->attribute));
        }
        case EndpointKind::Operator: {
            auto origin = m.operator_origin(source.node);
            if (!origin || origin->kind == EndpointKind::Root) return std::nullopt;
            if (origin->kind == EndpointKind::Parameter) fail(errc::NotAllowed, "parameter chains take no operators");
            const AttributeSlot* s = m.node(origin->node).slot(origin->attribute);
            std::optional<std::string> shared = s->bound_name;
            admit_in_attribute_chain(m, reg, s->constraints, target, shared);
            return std::nullopt;
        }
    }
    return std::nullopt;
}

void set_slot_name(AxiomModel& m, const Endpoint& source, const std::optional<std::string>& name) {
    if (source.kind == EndpointKind::Attribute && name) m.node(source.node).slot(source.attribute)->bound_name = *name;
}

void normalize(AxiomModel& m, const OntologyRegistry& reg) {
    refresh_slots(m, reg);
    for (const auto& [id, n] : m.nodes()) {
        if (n.kind != NodeKind::Variable) continue;
        for (const auto& s : n.slots) {
            if (s.bound_name && m.outgoing(Endpoint::attribute_of(id, s.attribute)).empty())
                m.node(id).slot(s.attribute)->bound_name.reset();
        }
    }
}

void require_advanced(EditMode mode) {
    if (mode != EditMode::Advanced) fail(errc::ModeError, "this operation needs advanced mode");
}

Node& require_node(AxiomModel& m, NodeId id) {
    if (!m.has_node(id)) fail(errc::UnknownNode, "no node " + std::to_string(id));
    return m.node(id);
}

// ---------------------------------------------------------------- operations

struct Applier {
    AxiomModel& m;
    const OntologyRegistry& reg;
    EditMode mode;

    OpResult operator()(const cmd::CreateVariable& c) {
        require_concept(reg, c.concept_iri);
        bool empty = m.nodes().size() == 1;
        NodeId id = make_variable(m, reg, c.concept_iri, gen_variable_name(m, iri::local_name(c.concept_iri)));
        OpResult r{id, std::nullopt};
        if (empty && m.outgoing(Endpoint::root(m.root())).empty()) r.connection = m.connect(Endpoint::root(m.root()), id);
        return r;
    }

    OpResult operator()(const cmd::CreateOperator& c) {
        Node n;
        n.kind = NodeKind::Operator;
        n.op = c.kind;
        return {m.add_node(std::move(n)), std::nullopt};
    }

    OpResult operator()(const cmd::CreateInstanceNode& c) {
        const InstanceDef* inst = reg.find_instance(c.instance);
        if (!inst) fail(errc::UnknownInstance, "unknown instance " + c.instance);
        Node n;
        n.kind = NodeKind::Instance;
        n.element = c.instance;
        n.type = inst->member_of.empty() ? std::string() : inst->member_of.front();
        return {m.add_node(std::move(n)), std::nullopt};
    }

    OpResult operator()(const cmd::CreateRelationNode& c) {
        const RelationDef* rel = reg.find_relation(c.relation);
        if (!rel) fail(errc::UnknownRelation, "unknown relation " + c.relation);
        Node n;
        n.kind = NodeKind::Relation;
        n.element = c.relation;
        for (const auto& p : rel->parameters) n.params.push_back({p.name, p.constraint_kind, p.types});
        return {m.add_node(std::move(n)), std::nullopt};
    }

    OpResult operator()(const cmd::CreateConnection& c) {
        require_advanced(mode);
        auto name = admit_edge(m, reg, c.source, c.target);
        ConnId id = m.connect(c.source, c.target);
        set_slot_name(m, c.source, name);
        return {std::nullopt, id};
    }

    OpResult operator()(const cmd::RefineAttribute& c) {
        require_node(m, c.node);
        AttributeSlot& slot = require_slot(m, c.node, c.attribute);
        Endpoint source = Endpoint::attribute_of(c.node, c.attribute);
        if (!m.outgoing(source).empty()) fail(errc::SlotOccupied, "attribute " + c.attribute + " is already refined");
        BindContext ctx;
        ctx.site = BindContext::Site::Attribute;
        ctx.constraints = slot.constraints;
        ctx.base = name_base(slot.attribute);
        NodeId target = realize(m, reg, ctx, c.spec);
        std::string name = bound_name_of(m, ctx, target);
        ConnId id = m.connect(source, target);
        m.node(c.node).slot(c.attribute)->bound_name = name;
        return {target, id};
    }

    OpResult operator()(const cmd::BindParameter& c) {
        require_node(m, c.node);
        ParameterSlot& p = require_param(m, c.node, c.index);
        Endpoint source = Endpoint::parameter_of(c.node, c.index);
        if (!m.outgoing(source).empty()) fail(errc::SlotOccupied, "parameter is already bound");
        if (c.spec.kind != Kind::NewVarDefaultType && c.spec.kind != Kind::ExistingVariable)
            fail(errc::NotAllowed, "parameters bind only default-typed or existing variables");
        BindContext ctx;
        ctx.site = BindContext::Site::Parameter;
        ctx.constraints = p.constraints;
        ctx.base = param_base(p, c.index);
        NodeId target = realize(m, reg, ctx, c.spec);
        return {target, m.connect(source, target)};
    }

    OpResult operator()(const cmd::RenameVariable& c) {
        Node& n = require_node(m, c.node);
        std::string old_name;
        if (c.attribute) {
            AttributeSlot& s = require_slot(m, c.node, *c.attribute);
            if (!s.bound_name) fail(errc::NotAllowed, "attribute " + *c.attribute + " is not refined");
            old_name = *s.bound_name;
        } else if (n.kind == NodeKind::Variable) {
            old_name = n.name;
        } else if (n.kind == NodeKind::Primitive) {
            old_name = n.bound_name;
        } else {
            fail(errc::NotAllowed, "only variables and values carry names");
        }
        if (!valid_variable_name(c.new_name)) fail(errc::BadName, "'" + c.new_name + "' is not a variable name");
        if (c.new_name == old_name) return {c.node, std::nullopt};
        if (m.names_in_use().count(c.new_name)) fail(errc::DuplicateName, c.new_name + " is already in use");
        std::vector<NodeId> ids;
        for (const auto& [id, node] : m.nodes()) ids.push_back(id);
        for (NodeId id : ids) {
            Node& x = m.node(id);
            if (x.kind == NodeKind::Variable && x.name == old_name) x.name = c.new_name;
            if (x.kind == NodeKind::Primitive && x.bound_name == old_name) x.bound_name = c.new_name;
            for (auto& s : x.slots)
                if (s.bound_name == old_name) s.bound_name = c.new_name;
        }
        return {c.node, std::nullopt};
    }

    OpResult operator()(const cmd::CopyVariable& c) {
        Node& original = require_node(m, c.node);
        if (original.kind != NodeKind::Variable) fail(errc::NotAllowed, "only variables can be copied");
        Node copy = original;
        for (auto& s : copy.slots) s.bound_name.reset();
        copy.position.reset();
        NodeId copy_id = m.add_node(std::move(copy));
        Node op;
        op.kind = NodeKind::Operator;
        op.op = OperatorKind::Or;
        NodeId op_id = m.add_node(std::move(op));
        for (ConnId in : m.incoming(c.node)) {
            if (m.connection(in).source.kind == EndpointKind::Parameter) continue;
            m.connection(in).target = op_id;
            break;
        }
        m.connect(Endpoint::operator_of(op_id), c.node);
        m.connect(Endpoint::operator_of(op_id), copy_id);
        return {copy_id, std::nullopt};
    }

    OpResult operator()(const cmd::DeleteNode& c) {
        require_node(m, c.node);
        if (c.node == m.root()) fail(errc::CannotDeleteRoot, "Start cannot be deleted");
        m.remove_node(c.node);
        return {};
    }

    OpResult operator()(const cmd::InsertOperator& c) {
        if (!m.has_connection(c.connection)) fail(errc::UnknownConnection, "no connection " + std::to_string(c.connection));
        const Connection conn = m.connection(c.connection);
        if (conn.source.kind == EndpointKind::Parameter) fail(errc::NotAllowed, "parameter connections take no operators");
        auto chain = m.chain_kind(conn.id);
        if (!chain) fail(errc::UnknownChain, "connection belongs to a floating operator chain");
        const Node& target = m.node(conn.target);
        switch (c.kind) {
            case OperatorKind::Not:
                if (c.second) fail(errc::NotArity, "NOT takes a single operand");
                break;
            case OperatorKind::Or:
                if (*chain == ChainKind::AttributeChain) {
                    if (target.kind != NodeKind::Variable && target.kind != NodeKind::Instance &&
                        target.kind != NodeKind::Primitive)
                        fail(errc::NotAllowed, "OR on an attribute chain needs a variable, instance or value target");
                    if (!c.second) fail(errc::NotAllowed, "OR on an attribute chain needs the new alternative");
                }
                break;
            case OperatorKind::And:
                if (*chain == ChainKind::AttributeChain) fail(errc::NotAllowed, "AND cannot start at an attribute");
                break;
        }
        Node op;
        op.kind = NodeKind::Operator;
        op.op = c.kind;
        NodeId op_id = m.add_node(std::move(op));
        m.connection(conn.id).target = op_id;
        m.connect(Endpoint::operator_of(op_id), conn.target);
        if (c.second) {
            BindContext ctx = operand_context(m, op_id);
            NodeId second = realize(m, reg, ctx, *c.second);
            if (second == conn.target) fail(errc::NotAllowed, "already an operand of this operator");
            m.connect(Endpoint::operator_of(op_id), second);
        }
        return {op_id, std::nullopt};
    }

    OpResult operator()(const cmd::AddOperand& c) {
        Node& op = require_node(m, c.node);
        if (op.kind != NodeKind::Operator) fail(errc::NotAllowed, "operands belong to operators");
        auto operands = m.outgoing_of(c.node);
        if (op.op == OperatorKind::Not && !operands.empty()) fail(errc::NotArity, "NOT takes a single operand");
        BindContext ctx = operand_context(m, c.node);
        NodeId target = realize(m, reg, ctx, c.spec);
        for (ConnId id : operands)
            if (m.connection(id).target == target) fail(errc::NotAllowed, "already an operand of this operator");
        return {target, m.connect(Endpoint::operator_of(c.node), target)};
    }

    OpResult operator()(const cmd::ChangeOperatorType& c) {
        Node& op = require_node(m, c.node);
        if (op.kind != NodeKind::Operator) fail(errc::NotAllowed, "not an operator");
        if (op.op == c.kind) fail(errc::NotAllowed, std::string("already ") + to_string(c.kind));
        if (!m.incoming(c.node).empty() || !m.outgoing_of(c.node).empty())
            fail(errc::HasConnections, "disconnect the operator before changing its type");
        m.node(c.node).op = c.kind;
        return {c.node, std::nullopt};
    }

    OpResult operator()(const cmd::MoveEndpoint& c) {
        require_advanced(mode);
        if (!m.has_connection(c.connection)) fail(errc::UnknownConnection, "no connection " + std::to_string(c.connection));
        Connection conn = m.connection(c.connection);
        if (c.move_source) conn.source = c.new_source;
        else conn.target = c.new_target;
        m.disconnect(conn.id);
        auto name = admit_edge(m, reg, conn.source, conn.target);
        m.connect(conn.source, conn.target, conn.id);
        set_slot_name(m, conn.source, name);
        return {std::nullopt, conn.id};
    }

    OpResult operator()(const cmd::DeleteConnection& c) {
        if (!m.has_connection(c.connection)) fail(errc::UnknownConnection, "no connection " + std::to_string(c.connection));
        m.disconnect(c.connection);
        return {};
    }

    OpResult operator()(const cmd::SetPrimitiveValue& c) {
        Node& n = require_node(m, c.node);
        if (n.kind != NodeKind::Primitive) fail(errc::NotAllowed, "only values can be edited");
        if (!literal_valid(reg, n.type, c.value))
            fail(errc::BadLiteral, "'" + c.value + "' is not a valid " + iri::local_name(n.type));
        n.value = c.value;
        return {c.node, std::nullopt};
    }
};

}  // namespace

std::string builtin_base(const OntologyRegistry& reg, const std::string& type) {
    const ConceptDef* c = reg.find_concept(type);
    if (!c) return {};
    const auto& up = reg.ancestors(type);
    const std::string ns(iri::kBuiltinOntology);
    for (const char* name : {"dayOfMonth", "integer", "float", "decimal", "boolean", "dateTime", "date", "string"})
        if (up.count(ns + name)) return name;
    return {};
}

const char* to_string(EditMode mode) { return mode == EditMode::Advanced ? "advanced" : "standard"; }

EditMode edit_mode_from(const std::string& text) {
    if (text == "advanced") return EditMode::Advanced;
    if (text == "standard") return EditMode::Standard;
    throw Error(errc::BadRequest, "unknown mode '" + text + "'");
}

const char* to_string(BindingSpec::Kind kind) {
    switch (kind) {
        case Kind::NewVarDefaultType: return "NewVarDefaultType";
        case Kind::NewVarOfConcept: return "NewVarOfConcept";
        case Kind::ExistingVariable: return "ExistingVariable";
        case Kind::InstanceFromOntology: return "InstanceFromOntology";
        case Kind::ExistingInstance: return "ExistingInstance";
        case Kind::LiteralDefaultType: return "LiteralDefaultType";
        case Kind::LiteralOfType: return "LiteralOfType";
    }
    return "";
}

BindingSpec::Kind binding_kind_from(const std::string& text) {
    for (Kind k : kAllBindingKinds)
        if (text == to_string(k)) return k;
    throw Error(errc::BadRequest, "unknown binding kind '" + text + "'");
}

const char* op_name(const Command& command) {
    static constexpr const char* names[] = {
        "create_variable",     "create_operator",   "create_instance_node",  "create_relation_node",
        "create_connection",   "refine_attribute",  "bind_parameter",        "rename_variable",
        "copy_variable",       "delete_node",       "insert_operator",       "add_operand",
        "change_operator_type", "move_endpoint",    "delete_connection",     "set_primitive_value",
    };
    return names[command.index()];
}

OpResult apply_command(AxiomModel& model, const OntologyRegistry& registry, const Command& command, EditMode mode) {
    AxiomModel work = model;
    OpResult r = std::visit(Applier{work, registry, mode}, command);
    normalize(work, registry);
    model = std::move(work);
    return r;
}

std::string gen_variable_name(const AxiomModel& model, std::string base) {
    if (!base.empty() && base.front() == '?') base.erase(0, 1);
    for (auto& c : base) {
        auto u = static_cast<unsigned char>(c);
        if (!(std::isalnum(u) || c == '_' || u >= 0x80)) c = '_';
    }
    if (base.empty()) base = "x";
    if (std::isdigit(static_cast<unsigned char>(base.front()))) base.insert(0, "_");
    auto used = model.names_in_use();
    std::string candidate = "?" + base;
    for (int n = 1; used.count(candidate); ++n) candidate = "?" + base + std::to_string(n);
    return candidate;
}

bool valid_variable_name(const std::string& name) {
    if (name.size() < 2 || name[0] != '?') return false;
    auto start = [](unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; };
    auto cont = [&](unsigned char c) { return start(c) || std::isdigit(c); };
    if (!start(static_cast<unsigned char>(name[1]))) return false;
    return std::all_of(name.begin() + 2, name.end(), [&](char c) { return cont(static_cast<unsigned char>(c)); });
}

bool literal_valid(const OntologyRegistry& registry, const std::string& type_iri, const std::string& value) {
    static const std::regex integer(R"([+-]?\d+)");
    static const std::regex number(R"([+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?)");
    static const std::regex date(R"(\d{4}-\d{2}-\d{2})");
    static const std::regex date_time(R"(\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2})");
    std::string base = builtin_base(registry, type_iri);
    if (base == "integer") return std::regex_match(value, integer);
    if (base == "dayOfMonth") {
        if (!std::regex_match(value, integer)) return false;
        long v = std::stol(value);
        return v >= 1 && v <= 31;
    }
    if (base == "float" || base == "decimal") return std::regex_match(value, number);
    if (base == "boolean") return value == "true" || value == "false";
    if (base == "date") return std::regex_match(value, date);
    if (base == "dateTime") return std::regex_match(value, date_time);
    return true;
}

std::string sample_literal(const OntologyRegistry& registry, const std::string& type_iri) {
    std::string base = builtin_base(registry, type_iri);
    if (base == "integer" || base == "dayOfMonth") return "1";
    if (base == "float" || base == "decimal") return "1.0";
    if (base == "boolean") return "true";
    if (base == "date") return "2000-01-01";
    if (base == "dateTime") return "2000-01-01T00:00:00";
    return "text";
}

void refresh_slots(AxiomModel& model, const OntologyRegistry& registry) {
    std::vector<NodeId> ids;
    for (const auto& [id, n] : model.nodes())
        if (n.kind == NodeKind::Variable && registry.find_concept(n.type)) ids.push_back(id);
    for (NodeId id : ids) {
        Node& n = model.node(id);
        auto fresh = slots_for(registry, n.type);
        for (auto& s : fresh)
            if (const AttributeSlot* old = n.slot(s.attribute)) s.bound_name = old->bound_name;
        for (const auto& old : n.slots) {
            bool kept = std::any_of(fresh.begin(), fresh.end(), [&](const AttributeSlot& s) { return s.attribute == old.attribute; });
            if (!kept) fresh.push_back(old);
        }
        n.slots = std::move(fresh);
    }
}

// ---------------------------------------------------------------- engine

Engine::Engine(const OntologyRegistry& registry, AxiomModel model) : registry_(&registry), model_(std::move(model)) {}

OpResult Engine::execute(const Command& command) {
    AxiomModel before = model_;
    OpResult r = apply_command(model_, *registry_, command, mode_);
    undo_.push_back({std::move(before), model_});
    redo_.clear();
    return r;
}

void Engine::undo() {
    if (undo_.empty()) throw Error(errc::EmptyStack, "nothing to undo");
    model_ = undo_.back().before;
    redo_.push_back(std::move(undo_.back()));
    undo_.pop_back();
}

void Engine::redo() {
    if (redo_.empty()) throw Error(errc::EmptyStack, "nothing to redo");
    model_ = redo_.back().after;
    undo_.push_back(std::move(redo_.back()));
    redo_.pop_back();
}

void Engine::reset(AxiomModel model) {
    model_ = std::move(model);
    undo_.clear();
    redo_.clear();
}

void Engine::refresh() { refresh_slots(model_, *registry_); }

// ---------------------------------------------------------------- menus

MenuTarget MenuTarget::parse(const std::string& text) {
    auto parts = [&] {
        std::vector<std::string> out;
        std::size_t pos = 0;
        for (;;) {
            auto colon = text.find(':', pos);
            if (colon == std::string::npos || out.size() == 2) {
                out.push_back(text.substr(pos));
                return out;
            }
            out.push_back(text.substr(pos, colon - pos));
            pos = colon + 1;
        }
    }();
    auto number = [&](const std::string& s) -> std::uint32_t {
        if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            throw Error(errc::BadRequest, "bad target '" + text + "'");
        return static_cast<std::uint32_t>(std::stoul(s));
    };
    MenuTarget t;
    const std::string& kind = parts[0];
    if (kind == "surface" && parts.size() == 1) return t;
    if (kind == "node" && parts.size() == 2) {
        t.kind = Kind::Node;
        t.node = number(parts[1]);
    } else if (kind == "slot" && parts.size() == 3) {
        t.kind = Kind::Slot;
        t.node = number(parts[1]);
        t.attribute = parts[2];
    } else if (kind == "param" && parts.size() == 3) {
        t.kind = Kind::Parameter;
        t.node = number(parts[1]);
        t.index = number(parts[2]);
    } else if (kind == "conn" && parts.size() == 2) {
        t.kind = Kind::Connection;
        t.connection = number(parts[1]);
    } else {
        throw Error(errc::BadRequest, "bad target '" + text + "'");
    }
    return t;
}

std::string MenuTarget::str() const {
    switch (kind) {
        case Kind::Surface: return "surface";
        case Kind::Node: return "node:" + std::to_string(node);
        case Kind::Slot: return "slot:" + std::to_string(node) + ":" + attribute;
        case Kind::Parameter: return "param:" + std::to_string(node) + ":" + std::to_string(index);
        case Kind::Connection: return "conn:" + std::to_string(connection);
    }
    return "surface";
}

const MenuEntry* Menu::find(const std::string& op, const std::string& variant) const {
    for (const auto& e : entries)
        if (e.op == op && e.variant == variant) return &e;
    return nullptr;
}

namespace {

std::string endpoint_text(const Endpoint& e) {
    switch (e.kind) {
        case EndpointKind::Root: return "root";
        case EndpointKind::Attribute: return "slot:" + std::to_string(e.node) + ":" + e.attribute;
        case EndpointKind::Operator: return "op:" + std::to_string(e.node);
        case EndpointKind::Parameter: return "param:" + std::to_string(e.node) + ":" + std::to_string(e.index);
    }
    return "root";
}

Endpoint endpoint_parse(const std::string& text, NodeId root) {
    if (text == "root") return Endpoint::root(root);
    if (text.rfind("op:", 0) == 0) return Endpoint::operator_of(static_cast<NodeId>(std::stoul(text.substr(3))));
    MenuTarget t = MenuTarget::parse(text);
    if (t.kind == MenuTarget::Kind::Slot) return Endpoint::attribute_of(t.node, t.attribute);
    if (t.kind == MenuTarget::Kind::Parameter) return Endpoint::parameter_of(t.node, t.index);
    throw Error(errc::BadRequest, "bad endpoint '" + text + "'");
}

std::vector<Endpoint> all_endpoints(const AxiomModel& m) {
    std::vector<Endpoint> out;
    for (const auto& [id, n] : m.nodes()) {
        switch (n.kind) {
            case NodeKind::Root: out.push_back(Endpoint::root(id)); break;
            case NodeKind::Variable:
                for (const auto& s : n.slots) out.push_back(Endpoint::attribute_of(id, s.attribute));
                break;
            case NodeKind::Relation:
                for (std::size_t i = 0; i < n.params.size(); ++i) out.push_back(Endpoint::parameter_of(id, i));
                break;
            case NodeKind::Operator: out.push_back(Endpoint::operator_of(id)); break;
            default: break;
        }
    }
    return out;
}

BindingSpec spec_for(Kind kind, const std::string& option) {
    switch (kind) {
        case Kind::NewVarDefaultType: return BindingSpec::default_type();
        case Kind::NewVarOfConcept: return BindingSpec::of_concept(option);
        case Kind::ExistingVariable: return BindingSpec::existing_variable(static_cast<NodeId>(std::stoul(option)));
        case Kind::InstanceFromOntology: return BindingSpec::instance(option);
        case Kind::ExistingInstance: return BindingSpec::existing_instance(static_cast<NodeId>(std::stoul(option)));
        case Kind::LiteralDefaultType: return BindingSpec::literal(option);
        case Kind::LiteralOfType: {
            auto bar = option.find('|');
            return BindingSpec::literal_of(option.substr(0, bar), bar == std::string::npos ? "" : option.substr(bar + 1));
        }
    }
    return {};
}

struct MenuBuilder {
    const AxiomModel& m;
    const OntologyRegistry& reg;
    EditMode mode;
    Menu menu;

    std::optional<std::string> dry(const Command& c) const {
        AxiomModel copy = m;
        try {
            apply_command(copy, reg, c, mode);
            return std::nullopt;
        } catch (const Error& e) {
            return e.code();
        }
    }

    void simple(const std::string& op, const std::string& variant, const std::string& option_kind = {},
                const std::string& option = {}) {
        MenuEntry e{op, variant, false, {}, option_kind, {}};
        if (!option.empty()) e.options = {option};
        auto err = dry(command_for(menu.target, e, option));
        e.enabled = !err;
        e.error = err.value_or("");
        if (!e.enabled) e.options.clear();
        menu.entries.push_back(std::move(e));
    }

    /// Entry whose options come from a listing; enabledness comes from a dry run of the first option,
    /// or of the first universe item when the listing is empty. Node options are few, so each is dry-run.
    void choice(const std::string& op, const std::string& variant, const std::string& option_kind,
                const std::function<std::vector<std::string>()>& list, const std::vector<std::string>& universe) {
        MenuEntry e{op, variant, false, {}, option_kind, {}};
        try {
            e.options = list();
        } catch (const Error&) {
            e.options.clear();
        }
        if (option_kind == "node") {
            e.options.clear();
            for (const auto& u : universe)
                if (!dry(command_for(menu.target, e, u))) e.options.push_back(u);
        }
        std::optional<std::string> err;
        if (!e.options.empty()) err = dry(command_for(menu.target, e, e.options.front()));
        else if (!universe.empty()) err = dry(command_for(menu.target, e, universe.front())).value_or(errc::Incompatible);
        else err = errc::Incompatible;
        e.enabled = !err;
        e.error = err.value_or("");
        if (!e.enabled) e.options.clear();
        menu.entries.push_back(std::move(e));
    }

    std::vector<std::string> node_universe() const {
        std::vector<std::string> out;
        for (const auto& [id, n] : m.nodes()) out.push_back(std::to_string(id));
        return out;
    }

    std::vector<std::string> builtin_universe() const {
        std::vector<std::string> out;
        for (const auto& c : reg.all_concepts())
            if (reg.type_ref(c).kind == TypeKind::Builtin) out.push_back(c);
        return out;
    }

    /// Entries for the seven binding kinds (or a subset) in context `ctx`.
    void bindings(const std::string& op, const std::string& prefix, const std::function<BindContext()>& context,
                  const std::vector<Kind>& kinds) {
        std::optional<BindContext> ctx;
        try {
            ctx = context();
        } catch (const Error&) {
        }
        auto constraints = [&] { return ctx ? ctx->constraints : universal_constraint(); };
        auto names_ok = [&](const Node& n) { return !ctx || !ctx->forced_name || n.name == *ctx->forced_name; };
        for (Kind k : kinds) {
            std::string v = prefix + to_string(k);
            switch (k) {
                case Kind::NewVarDefaultType: simple(op, v); break;
                case Kind::NewVarOfConcept:
                    choice(op, v, "concept", [&] { return reg.list_compatible_concepts(constraints()).selectable; },
                           reg.all_concepts());
                    break;
                case Kind::ExistingVariable:
                    choice(op, v, "node", [&] {
                        std::vector<std::string> out;
                        for (const auto& [id, n] : m.nodes())
                            if (n.kind == NodeKind::Variable && names_ok(n) && compatible(reg, n.type, constraints()))
                                out.push_back(std::to_string(id));
                        return out;
                    }, node_universe());
                    break;
                case Kind::InstanceFromOntology:
                    choice(op, v, "instance", [&] { return reg.list_compatible_instances(constraints()); },
                           reg.all_instances());
                    break;
                case Kind::ExistingInstance:
                    choice(op, v, "node", [&] {
                        std::vector<std::string> out;
                        for (const auto& [id, n] : m.nodes())
                            if (n.kind == NodeKind::Instance && reg.instance_compatible(n.element, constraints()))
                                out.push_back(std::to_string(id));
                        return out;
                    }, node_universe());
                    break;
                case Kind::LiteralDefaultType: {
                    std::string sample = "1";
                    try {
                        if (ctx) sample = sample_literal(reg, default_type(reg, *ctx));
                    } catch (const Error&) {
                    }
                    simple(op, v, "literal", sample);
                    break;
                }
                case Kind::LiteralOfType: {
                    auto with_sample = [&](const std::vector<std::string>& types) {
                        std::vector<std::string> out;
                        for (const auto& t : types) out.push_back(t + "|" + sample_literal(reg, t));
                        return out;
                    };
                    choice(op, v, "builtin", [&] {
                        std::vector<std::string> out;
                        for (const auto& t : builtin_universe())
                            if (compatible(reg, t, constraints())) out.push_back(t);
                        return with_sample(out);
                    }, with_sample(builtin_universe()));
                    break;
                }
            }
        }
    }

    void connection_targets(const Endpoint& source) {
        MenuEntry e{"create_connection", "", false, {}, "node", {}};
        for (const auto& id : node_universe()) {
            if (!dry(cmd::CreateConnection{source, static_cast<NodeId>(std::stoul(id))})) e.options.push_back(id);
        }
        if (e.options.empty()) {
            e.error = dry(cmd::CreateConnection{source, m.root()}).value_or(errc::Incompatible);
        } else {
            e.enabled = true;
        }
        menu.entries.push_back(std::move(e));
    }

    void rename(NodeId node, std::optional<std::string> attribute) {
        MenuEntry e{"rename_variable", "", false, {}, "literal", {}};
        std::string fresh = gen_variable_name(m, "renamed");
        e.options = {fresh};
        auto err = dry(cmd::RenameVariable{node, attribute, fresh});
        e.enabled = !err;
        e.error = err.value_or("");
        if (!e.enabled) e.options.clear();
        menu.entries.push_back(std::move(e));
    }
};

}  // namespace

Command command_for(const MenuTarget& target, const MenuEntry& entry, const std::string& option) {
    using T = MenuTarget::Kind;
    const std::string& op = entry.op;
    auto node_of = [&](const std::string& s) { return static_cast<NodeId>(std::stoul(s)); };
    if (op == "create_variable") return cmd::CreateVariable{option};
    if (op == "create_operator") return cmd::CreateOperator{operator_kind_from(entry.variant)};
    if (op == "create_instance_node") return cmd::CreateInstanceNode{option};
    if (op == "create_relation_node") return cmd::CreateRelationNode{option};
    if (op == "create_connection") {
        Endpoint source;
        if (target.kind == T::Slot) source = Endpoint::attribute_of(target.node, target.attribute);
        else if (target.kind == T::Parameter) source = Endpoint::parameter_of(target.node, target.index);
        else source = Endpoint::operator_of(target.node);
        return cmd::CreateConnection{source, node_of(option)};
    }
    if (op == "refine_attribute")
        return cmd::RefineAttribute{target.node, target.attribute, spec_for(binding_kind_from(entry.variant), option)};
    if (op == "bind_parameter")
        return cmd::BindParameter{target.node, target.index, spec_for(binding_kind_from(entry.variant), option)};
    if (op == "rename_variable") {
        std::optional<std::string> attr;
        if (target.kind == T::Slot) attr = target.attribute;
        return cmd::RenameVariable{target.node, attr, option};
    }
    if (op == "copy_variable") return cmd::CopyVariable{target.node};
    if (op == "delete_node") return cmd::DeleteNode{target.node};
    if (op == "add_operand") return cmd::AddOperand{target.node, spec_for(binding_kind_from(entry.variant), option)};
    if (op == "change_operator_type") return cmd::ChangeOperatorType{target.node, operator_kind_from(entry.variant)};
    if (op == "set_primitive_value") return cmd::SetPrimitiveValue{target.node, option};
    if (op == "delete_connection") return cmd::DeleteConnection{target.connection};
    if (op == "insert_operator") {
        auto colon = entry.variant.find(':');
        cmd::InsertOperator c{target.connection, operator_kind_from(entry.variant.substr(0, colon)), std::nullopt};
        if (colon != std::string::npos) c.second = spec_for(binding_kind_from(entry.variant.substr(colon + 1)), option);
        return c;
    }
    if (op == "move_endpoint") {
        cmd::MoveEndpoint c;
        c.connection = target.connection;
        c.move_source = entry.variant == "source";
        if (c.move_source) {
            auto colon = option.find('@');
            NodeId root = colon == std::string::npos ? 0 : node_of(option.substr(colon + 1));
            c.new_source = endpoint_parse(option.substr(0, colon), root);
        } else {
            c.new_target = node_of(option);
        }
        return c;
    }
    throw Error(errc::BadRequest, "unknown operation '" + op + "'");
}

Menu candidates_for(const AxiomModel& model, const OntologyRegistry& registry, EditMode mode, const MenuTarget& target) {
    using T = MenuTarget::Kind;
    MenuBuilder b{model, registry, mode, Menu{target, {}}};
    const std::vector<Kind> all(std::begin(kAllBindingKinds), std::end(kAllBindingKinds));
    switch (target.kind) {
        case T::Surface: {
            b.choice("create_variable", "", "concept", [&] { return registry.list_compatible_concepts(universal_constraint()).selectable; },
                     registry.all_concepts());
            for (const char* k : {"AND", "OR", "NOT"}) b.simple("create_operator", k);
            b.choice("create_instance_node", "", "instance", [&] { return registry.all_instances(); }, registry.all_instances());
            b.choice("create_relation_node", "", "relation", [&] { return registry.list_relations(); }, registry.list_relations());
            break;
        }
        case T::Node: {
            if (!model.has_node(target.node)) throw Error(errc::UnknownNode, "no node " + std::to_string(target.node));
            const Node& n = model.node(target.node);
            switch (n.kind) {
                case NodeKind::Root: break;
                case NodeKind::Variable:
                    b.rename(target.node, std::nullopt);
                    b.simple("copy_variable", "");
                    b.simple("delete_node", "");
                    break;
                case NodeKind::Primitive:
                    b.simple("set_primitive_value", "", "literal", sample_literal(registry, n.type));
                    b.rename(target.node, std::nullopt);
                    b.simple("delete_node", "");
                    break;
                case NodeKind::Instance:
                case NodeKind::Relation: b.simple("delete_node", ""); break;
                case NodeKind::Operator:
                    b.bindings("add_operand", "", [&] { return operand_context(model, target.node); }, all);
                    for (const char* k : {"AND", "OR", "NOT"})
                        if (operator_kind_from(k) != n.op) b.simple("change_operator_type", k);
                    b.connection_targets(Endpoint::operator_of(target.node));
                    b.simple("delete_node", "");
                    break;
            }
            break;
        }
        case T::Slot: {
            if (!model.has_node(target.node)) throw Error(errc::UnknownNode, "no node " + std::to_string(target.node));
            const AttributeSlot* s = model.node(target.node).slot(target.attribute);
            if (!s) throw Error(errc::UnknownSlot, "no attribute " + target.attribute);
            b.bindings("refine_attribute", "", [&] {
                BindContext ctx;
                ctx.site = BindContext::Site::Attribute;
                ctx.constraints = s->constraints;
                ctx.base = name_base(s->attribute);
                return ctx;
            }, all);
            b.rename(target.node, target.attribute);
            b.connection_targets(Endpoint::attribute_of(target.node, target.attribute));
            break;
        }
        case T::Parameter: {
            if (!model.has_node(target.node)) throw Error(errc::UnknownNode, "no node " + std::to_string(target.node));
            const Node& n = model.node(target.node);
            if (n.kind != NodeKind::Relation || target.index >= n.params.size())
                throw Error(errc::UnknownSlot, "no parameter " + std::to_string(target.index));
            const ParameterSlot& p = n.params[target.index];
            b.bindings("bind_parameter", "", [&] {
                BindContext ctx;
                ctx.site = BindContext::Site::Parameter;
                ctx.constraints = p.constraints;
                ctx.base = param_base(p, target.index);
                return ctx;
            }, {Kind::NewVarDefaultType, Kind::ExistingVariable});
            b.connection_targets(Endpoint::parameter_of(target.node, target.index));
            break;
        }
        case T::Connection: {
            if (!model.has_connection(target.connection))
                throw Error(errc::UnknownConnection, "no connection " + std::to_string(target.connection));
            for (const char* k : {"AND", "OR", "NOT"}) b.simple("insert_operator", k);
            auto chain = model.chain_kind(target.connection);
            b.bindings("insert_operator", "OR:", [&] {
                const Connection& c = model.connection(target.connection);
                if (!chain) fail(errc::UnknownChain, "floating chain");
                if (*chain == ChainKind::RootChain) {
                    BindContext ctx;
                    ctx.hint = type_hint(model, c.target);
                    return ctx;
                }
                auto origin = model.chain_origin(target.connection);
                if (origin->kind != EndpointKind::Attribute) fail(errc::NotAllowed, "parameter connections take no operators");
                const AttributeSlot* s = model.node(origin->node).slot(origin->attribute);
                if (!s) fail(errc::UnknownSlot, "no attribute " + origin->attribute);
                BindContext ctx;
                ctx.site = BindContext::Site::Attribute;
                ctx.constraints = s->constraints;
                ctx.base = name_base(s->attribute);
                ctx.forced_name = s->bound_name;
                return ctx;
            }, all);
            b.simple("delete_connection", "");
            {
                MenuEntry e{"move_endpoint", "target", false, {}, "node", {}};
                for (const auto& id : b.node_universe())
                    if (!b.dry(command_for(target, e, id))) e.options.push_back(id);
                e.enabled = !e.options.empty();
                if (!e.enabled) e.error = b.dry(command_for(target, e, std::to_string(model.root()))).value_or(errc::Incompatible);
                b.menu.entries.push_back(std::move(e));
            }
            {
                MenuEntry e{"move_endpoint", "source", false, {}, "endpoint", {}};
                for (const auto& ep : all_endpoints(model)) {
                    std::string text = endpoint_text(ep) + (ep.kind == EndpointKind::Root ? "@" + std::to_string(ep.node) : "");
                    if (!b.dry(command_for(target, e, text))) e.options.push_back(text);
                }
                e.enabled = !e.options.empty();
                if (!e.enabled) {
                    std::string self = endpoint_text(model.connection(target.connection).source);
                    if (self == "root") self += "@" + std::to_string(model.root());
                    e.error = b.dry(command_for(target, e, self)).value_or(errc::Incompatible);
                }
                b.menu.entries.push_back(std::move(e));
            }
            break;
        }
    }
    return b.menu;
}

std::vector<MenuTarget> all_targets(const AxiomModel& model) {
    std::vector<MenuTarget> out{MenuTarget{}};
    for (const auto& [id, n] : model.nodes()) {
        MenuTarget t;
        t.kind = MenuTarget::Kind::Node;
        t.node = id;
        out.push_back(t);
        for (const auto& s : n.slots) {
            MenuTarget st;
            st.kind = MenuTarget::Kind::Slot;
            st.node = id;
            st.attribute = s.attribute;
            out.push_back(st);
        }
        for (std::size_t i = 0; i < n.params.size(); ++i) {
            MenuTarget pt;
            pt.kind = MenuTarget::Kind::Parameter;
            pt.node = id;
            pt.index = i;
            out.push_back(pt);
        }
    }
    for (const auto& [id, c] : model.connections()) {
        MenuTarget t;
        t.kind = MenuTarget::Kind::Connection;
        t.connection = id;
        out.push_back(t);
    }
    return out;
}

}  // namespace axiomkit
