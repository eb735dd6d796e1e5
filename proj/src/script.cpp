#include "axiomkit/script.hpp"

#include <fstream>

#include "axiomkit/iri.hpp"

namespace axiomkit {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& message) { throw Error(errc::BadRequest, message); }

const json& need(const json& args, const char* key) {
    if (!args.is_object() || !args.contains(key)) bad(std::string("missing argument '") + key + "'");
    return args.at(key);
}

std::string need_string(const json& args, const char* key) {
    const json& v = need(args, key);
    if (!v.is_string()) bad(std::string("argument '") + key + "' must be a string");
    return v.get<std::string>();
}

NodeId node_ref(const json& v, const AxiomModel& model, const Labels& labels) {
    if (v.is_number_unsigned() || v.is_number_integer()) return v.get<NodeId>();
    if (v.is_string()) {
        const auto& s = v.get_ref<const std::string&>();
        if (s == "root" || s == "start" || s == "Start") return model.root();
        auto it = labels.nodes.find(s);
        if (it == labels.nodes.end()) bad("unknown node label '" + s + "'");
        return it->second;
    }
    if (v.is_object() && v.contains("operator")) {
        // i-th operand of an operator, in connection order
        NodeId op = node_ref(v.at("operator"), model, labels);
        std::size_t i = v.value("operand", std::size_t{0});
        auto out = model.outgoing(Endpoint::operator_of(op));
        if (i >= out.size()) throw Error(errc::UnknownNode, "operator has no operand " + std::to_string(i));
        return model.connection(out[i]).target;
    }
    bad("node reference must be an id, a label or {operator, operand}");
}

std::size_t param_index(const json& j, const AxiomModel& model, NodeId node) {
    if (j.contains("index")) return j.at("index").get<std::size_t>();
    if (j.contains("parameter")) {
        const json& p = j.at("parameter");
        if (p.is_number()) return p.get<std::size_t>();
        std::string name = p.get<std::string>();
        if (model.has_node(node)) {
            const auto& params = model.node(node).params;
            for (std::size_t i = 0; i < params.size(); ++i)
                if (params[i].name && (*params[i].name == name || iri::local_name(*params[i].name) == name)) return i;
        }
        throw Error(errc::UnknownSlot, "no parameter named '" + name + "'");
    }
    bad("parameter endpoint needs 'index' or 'parameter'");
}

Endpoint endpoint_ref(const json& j, const AxiomModel& model, const Labels& labels) {
    if (j.is_string() && (j == "root" || j == "start")) return Endpoint::root(model.root());
    std::string kind = need_string(j, "kind");
    if (kind == "root") return Endpoint::root(model.root());
    NodeId node = node_ref(need(j, "node"), model, labels);
    if (kind == "attribute") return Endpoint::attribute_of(node, need_string(j, "attribute"));
    if (kind == "operator") return Endpoint::operator_of(node);
    if (kind == "parameter") return Endpoint::parameter_of(node, param_index(j, model, node));
    bad("unknown endpoint kind '" + kind + "'");
}

ConnId connection_ref(const json& v, const AxiomModel& model, const Labels& labels) {
    if (v.is_number()) return v.get<ConnId>();
    if (v.is_string()) {
        auto it = labels.connections.find(v.get<std::string>());
        if (it == labels.connections.end()) bad("unknown connection label '" + v.get<std::string>() + "'");
        return it->second;
    }
    if (v.is_object()) {
        Endpoint source = endpoint_ref(need(v, "source"), model, labels);
        std::optional<NodeId> target;
        if (v.contains("target")) target = node_ref(v.at("target"), model, labels);
        for (ConnId c : model.outgoing(source))
            if (!target || model.connection(c).target == *target) return c;
        throw Error(errc::UnknownConnection, "no connection from the given source");
    }
    bad("connection reference must be an id, a label or {source, target}");
}

OperatorKind kind_arg(const json& args) { return operator_kind_from(need_string(args, "kind")); }

}  // namespace

BindingSpec spec_from_json(const json& j, const AxiomModel& model, const OntologyRegistry& registry,
                           const Labels& labels) {
    if (j.is_string()) return BindingSpec{binding_kind_from(j.get<std::string>()), {}, 0, {}};
    BindingSpec spec;
    spec.kind = binding_kind_from(need_string(j, "kind"));
    switch (spec.kind) {
        case BindingSpec::Kind::NewVarDefaultType: break;
        case BindingSpec::Kind::NewVarOfConcept: spec.element = registry.resolve_concept(need_string(j, "concept")); break;
        case BindingSpec::Kind::ExistingVariable:
        case BindingSpec::Kind::ExistingInstance: spec.node = node_ref(need(j, "node"), model, labels); break;
        case BindingSpec::Kind::InstanceFromOntology:
            spec.element = registry.resolve_instance(need_string(j, "instance"));
            break;
        case BindingSpec::Kind::LiteralOfType:
            spec.element = registry.resolve_concept(need_string(j, "type"));
            spec.value = need_string(j, "value");
            break;
        case BindingSpec::Kind::LiteralDefaultType: spec.value = need_string(j, "value"); break;
    }
    return spec;
}

Command command_from_json(const std::string& op, const json& args, const AxiomModel& model,
                          const OntologyRegistry& registry, const Labels& labels) {
    auto node = [&](const char* key = "node") { return node_ref(need(args, key), model, labels); };
    auto spec = [&](const char* key = "spec") { return spec_from_json(need(args, key), model, registry, labels); };
    if (op == "create_variable") return cmd::CreateVariable{registry.resolve_concept(need_string(args, "concept"))};
    if (op == "create_operator") return cmd::CreateOperator{kind_arg(args)};
    if (op == "create_instance_node") return cmd::CreateInstanceNode{registry.resolve_instance(need_string(args, "instance"))};
    if (op == "create_relation_node") return cmd::CreateRelationNode{registry.resolve_relation(need_string(args, "relation"))};
    if (op == "create_connection")
        return cmd::CreateConnection{endpoint_ref(need(args, "source"), model, labels), node("target")};
    if (op == "refine_attribute") return cmd::RefineAttribute{node(), need_string(args, "attribute"), spec()};
    if (op == "bind_parameter") {
        NodeId n = node();
        return cmd::BindParameter{n, param_index(args, model, n), spec()};
    }
    if (op == "rename_variable") {
        std::optional<std::string> attr;
        if (args.contains("attribute")) attr = args.at("attribute").get<std::string>();
        return cmd::RenameVariable{node(), attr, need_string(args, "name")};
    }
    if (op == "copy_variable") return cmd::CopyVariable{node()};
    if (op == "delete_node") return cmd::DeleteNode{node()};
    if (op == "insert_operator") {
        cmd::InsertOperator c{connection_ref(need(args, "connection"), model, labels), kind_arg(args), std::nullopt};
        if (args.contains("second")) c.second = spec("second");
        return c;
    }
    if (op == "add_operand") return cmd::AddOperand{node(), spec()};
    if (op == "change_operator_type") return cmd::ChangeOperatorType{node(), kind_arg(args)};
    if (op == "move_endpoint") {
        cmd::MoveEndpoint c;
        c.connection = connection_ref(need(args, "connection"), model, labels);
        if (args.contains("source") == args.contains("target")) bad("move_endpoint needs exactly one of 'source', 'target'");
        if (args.contains("source")) {
            c.move_source = true;
            c.new_source = endpoint_ref(args.at("source"), model, labels);
        } else {
            c.new_target = node("target");
        }
        return c;
    }
    if (op == "delete_connection") return cmd::DeleteConnection{connection_ref(need(args, "connection"), model, labels)};
    if (op == "set_primitive_value") return cmd::SetPrimitiveValue{node(), need_string(args, "value")};
    bad("unknown operation '" + op + "'");
}

std::vector<ScriptRecord> parse_script(const json& doc) {
    if (!doc.is_array()) bad("a script is a JSON array of {op, args} records");
    std::vector<ScriptRecord> out;
    for (const auto& r : doc) {
        ScriptRecord rec;
        rec.op = need_string(r, "op");
        if (r.contains("args")) rec.args = r.at("args");
        if (r.contains("as")) rec.as = r.at("as").get<std::string>();
        if (r.contains("as_connection")) rec.as_connection = r.at("as_connection").get<std::string>();
        if (r.contains("step")) rec.step = r.at("step").get<int>();
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<ScriptRecord> load_script(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(errc::IoError, "cannot read " + path);
    try {
        return parse_script(json::parse(in));
    } catch (const json::exception& e) {
        bad(path + ": " + e.what());
    }
}

std::string load_ontology_request(OntologyRegistry& registry, const OntologyWarehouse* warehouse, const json& args) {
    if (args.contains("iri")) {
        std::string iri = need_string(args, "iri");
        if (registry.is_loaded(iri)) return iri;
        if (!warehouse) throw Error(errc::NotInWarehouse, "no warehouse configured for " + iri);
        return registry.load_by_iri(*warehouse, iri);
    }
    if (args.contains("path")) return registry.load_file(need_string(args, "path"));
    bad("load_ontology needs 'iri' or 'path'");
}

ScriptRunner::ScriptRunner(OntologyRegistry& registry, const OntologyWarehouse* warehouse, Engine& engine)
    : registry_(registry), warehouse_(warehouse), engine_(engine) {}

OpResult ScriptRunner::apply(const ScriptRecord& record) {
    if (record.op == "load_ontology") {
        load_ontology_request(registry_, warehouse_, record.args);
        engine_.refresh();
        return {};
    }
    if (record.op == "set_mode") {
        engine_.set_mode(edit_mode_from(need_string(record.args, "mode")));
        return {};
    }
    Command c = command_from_json(record.op, record.args, engine_.model(), registry_, labels_);
    OpResult r = engine_.execute(c);
    if (record.as) {
        if (r.node) labels_.nodes[*record.as] = *r.node;
        else if (r.connection) labels_.connections[*record.as] = *r.connection;
    }
    if (record.as_connection && r.connection) labels_.connections[*record.as_connection] = *r.connection;
    return r;
}

void ScriptRunner::run(const std::vector<ScriptRecord>& records, std::optional<int> at_step) {
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (at_step && records[i].step && *records[i].step > *at_step) return;
        try {
            apply(records[i]);
        } catch (const Error& e) {
            throw Error(e.code(), "record " + std::to_string(i) + " (" + records[i].op + "): " + e.what(), e.position());
        }
    }
}

}  // namespace axiomkit
