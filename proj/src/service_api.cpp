#include "axiomkit/service_api.hpp"

#include <regex>
#include <set>

#include <httplib.h>

#include "axiomkit/iri.hpp"

namespace axiomkit {

using nlohmann::json;

namespace {

std::string type_name(const OntologyRegistry& reg, const AxiomModel& m, const std::string& iri) {
    return iri.empty() ? std::string() : reg.qualified_name(iri, m.home_ontology);
}

std::string node_label(const Node& n, const OntologyRegistry& reg, const AxiomModel& m) {
    switch (n.kind) {
        case NodeKind::Root: return "Start";
        case NodeKind::Variable: return n.name;
        case NodeKind::Instance:
        case NodeKind::Relation: return type_name(reg, m, n.element);
        case NodeKind::Primitive: return n.value;
        case NodeKind::Operator: return to_string(n.op);
    }
    return {};
}

json outline_entry(const AxiomModel& m, const OntologyRegistry& reg, const std::set<NodeId>& live, NodeId id,
                   std::set<NodeId>& path) {
    const Node& n = m.node(id);
    json e = {{"node", id}, {"kind", to_string(n.kind)}};
    switch (n.kind) {
        case NodeKind::Root: e["label"] = "(start)"; break;
        case NodeKind::Variable: e["label"] = n.name.substr(1); break;
        default: e["label"] = node_label(n, reg, m); break;
    }
    json children = json::array();
    if (path.insert(id).second) {
        auto follow = [&](const Endpoint& ep) {
            for (ConnId c : m.outgoing(ep)) {
                NodeId t = m.connection(c).target;
                if (live.count(t)) children.push_back(outline_entry(m, reg, live, t, path));
            }
        };
        switch (n.kind) {
            case NodeKind::Root: follow(Endpoint::root(id)); break;
            case NodeKind::Variable:
                for (const auto& s : n.slots) follow(Endpoint::attribute_of(id, s.attribute));
                break;
            case NodeKind::Relation:
                for (std::size_t i = 0; i < n.params.size(); ++i) follow(Endpoint::parameter_of(id, i));
                break;
            case NodeKind::Operator: follow(Endpoint::operator_of(id)); break;
            default: break;
        }
        path.erase(id);
    }
    e["children"] = std::move(children);
    return e;
}

json constraints_json(const std::vector<TypeRef>& cs, const OntologyRegistry& reg, const AxiomModel& m) {
    json out = json::array();
    for (const auto& t : cs) out.push_back(type_name(reg, m, t.iri));
    return out;
}

Service::Reply error_reply(const Error& e) {
    json body = {{"code", e.code()}, {"message", e.what()}};
    if (e.position()) body["position"] = {{"line", e.position()->line}, {"column", e.position()->column}};
    return {http_status_for(e.code()), body, {}};
}

template <class F>
Service::Reply guarded(F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        return error_reply(e);
    } catch (const json::exception& e) {
        return error_reply(Error(errc::BadRequest, e.what()));
    }
}

std::optional<std::uint64_t> auto_number(const std::string& name) {
    static const std::regex re("autoGeneratedAxiom_([0-9]+)");
    std::smatch m;
    if (std::regex_match(name, m, re)) return std::stoull(m[1].str());
    return std::nullopt;
}

}  // namespace

json outline_tree(const AxiomModel& model, const OntologyRegistry& registry) {
    std::set<NodeId> live = model.live_nodes();
    std::set<NodeId> path;
    return outline_entry(model, registry, live, model.root(), path);
}

json graph_state(const AxiomModel& model, const OntologyRegistry& registry, EditMode mode, std::uint64_t revision,
                 bool can_undo, bool can_redo) {
    std::set<NodeId> live = model.live_nodes();
    json nodes = json::array();
    for (const auto& [id, n] : model.nodes()) {
        Validity v = model.validity(id);
        json jn = {{"id", id},
                   {"kind", to_string(n.kind)},
                   {"label", node_label(n, registry, model)},
                   {"valid", v.valid},
                   {"live", live.count(id) > 0}};
        if (!v.valid) jn["reason"] = v.reason;
        if (!n.type.empty()) jn["type"] = type_name(registry, model, n.type);
        switch (n.kind) {
            case NodeKind::Variable: {
                jn["name"] = n.name;
                json slots = json::array();
                for (const auto& s : n.slots) {
                    slots.push_back({{"attribute", s.attribute},
                                     {"constraint_kind", to_string(s.constraint_kind)},
                                     {"constraints", constraints_json(s.constraints, registry, model)},
                                     {"inheritance", to_string(s.inheritance)},
                                     {"bound_name", s.bound_name ? json(*s.bound_name) : json()},
                                     {"connected", !model.outgoing(Endpoint::attribute_of(id, s.attribute)).empty()}});
                }
                jn["slots"] = std::move(slots);
                break;
            }
            case NodeKind::Instance: jn["instance"] = type_name(registry, model, n.element); break;
            case NodeKind::Primitive:
                jn["value"] = n.value;
                jn["bound_name"] = n.bound_name;
                break;
            case NodeKind::Relation: {
                jn["relation"] = type_name(registry, model, n.element);
                json params = json::array();
                for (std::size_t i = 0; i < n.params.size(); ++i) {
                    const auto& p = n.params[i];
                    params.push_back({{"index", i},
                                      {"name", p.name ? json(iri::local_name(*p.name)) : json()},
                                      {"constraints", constraints_json(p.constraints, registry, model)},
                                      {"connected", !model.outgoing(Endpoint::parameter_of(id, i)).empty()}});
                }
                jn["params"] = std::move(params);
                break;
            }
            case NodeKind::Operator: jn["operator"] = to_string(n.op); break;
            case NodeKind::Root: break;
        }
        if (n.position) {
            jn["x"] = n.position->first;
            jn["y"] = n.position->second;
        }
        nodes.push_back(std::move(jn));
    }
    json conns = json::array();
    for (const auto& [id, c] : model.connections()) {
        conns.push_back({{"id", id},
                         {"source", endpoint_to_json(c.source)},
                         {"target", c.target},
                         {"live", live.count(c.source.node) > 0 && live.count(c.target) > 0}});
    }
    return {{"revision", revision},
            {"axiom_name", model.axiom_name},
            {"mode", to_string(mode)},
            {"can_undo", can_undo},
            {"can_redo", can_redo},
            {"nodes", std::move(nodes)},
            {"connections", std::move(conns)},
            {"text", generate_axiom_text(model, registry)},
            {"outline", outline_tree(model, registry)}};
}

json menu_to_json(const Menu& menu) {
    json entries = json::array();
    for (const auto& e : menu.entries) {
        json je = {{"op", e.op}, {"variant", e.variant}, {"enabled", e.enabled}};
        if (!e.enabled) je["error"] = e.error;
        if (!e.option_kind.empty()) je["option_kind"] = e.option_kind;
        je["options"] = e.options;
        entries.push_back(std::move(je));
    }
    return {{"target", menu.target.str()}, {"entries", std::move(entries)}};
}

json tree_to_json(const std::vector<OntologyTreeNode>& forest) {
    json out = json::array();
    for (const auto& t : forest) {
        json j = {{"letter", std::string(1, t.letter)}, {"label", t.label}, {"iri", t.iri}};
        if (t.stub) j["stub"] = true;
        if (!t.children.empty()) j["children"] = tree_to_json(t.children);
        out.push_back(std::move(j));
    }
    return out;
}

int http_status_for(const std::string& code) {
    if (code == errc::BadRequest) return 400;
    if (code == errc::UnknownSession || code == errc::NotInWarehouse || code == errc::DirectoryNotFound ||
        code == errc::IoError)
        return 404;
    if (code == errc::ParseError || code == errc::LexError || code == errc::MissingOntology ||
        code == errc::DuplicateIri || code == errc::CyclicInheritance)
        return 422;
    return 409;
}

json persist_model(const AxiomModel& model, const OntologyRegistry& registry) {
    return model_to_json(model, registry);
}

AxiomModel restore_model(OntologyRegistry& registry, const OntologyWarehouse* warehouse, const json& doc) {
    if (!doc.is_object()) throw Error(errc::BadRequest, "model document must be an object");
    for (const auto& j : doc.value("ontologies", json::array())) {
        std::string iri = j.get<std::string>();
        if (registry.is_loaded(iri)) continue;
        if (!warehouse || !warehouse->find(iri)) throw Error(errc::MissingOntology, "ontology not in warehouse: " + iri);
        registry.load_by_iri(*warehouse, iri);
    }
    AxiomModel m = [&] {
        try {
            return model_from_json(doc);
        } catch (const json::exception& e) {
            throw Error(errc::BadRequest, std::string("malformed model document: ") + e.what());
        }
    }();
    refresh_slots(m, registry);
    return m;
}

// ---------------------------------------------------------------- service

Service::Service(std::optional<OntologyWarehouse> warehouse) : warehouse_(std::move(warehouse)) {}

Service::Reply Service::health() const { return {200, {{"status", "ok"}}, {}}; }

Service::Reply Service::load_ontology(const json& body) {
    return guarded([&]() -> Reply {
        std::unique_lock lock(registry_mutex_);
        std::string iri = load_ontology_request(registry_, warehouse_ ? &*warehouse_ : nullptr, body);
        ++registry_generation_;
        return {200, {{"iri", iri}, {"short_name", registry_.short_name(iri)}}, {}};
    });
}

Service::Reply Service::list_ontologies() {
    std::shared_lock lock(registry_mutex_);
    json list = json::array();
    for (const auto& iri : registry_.load_order())
        list.push_back({{"iri", iri}, {"short_name", registry_.short_name(iri)}});
    auto forest = registry_.tree();
    return {200, {{"ontologies", list}, {"tree", tree_to_json(forest)}, {"text", render_tree(forest)}}, {}};
}

std::string Service::add_session(AxiomModel model) {
    auto s = std::make_shared<Session>();
    s->engine = std::make_unique<Engine>(registry_, std::move(model));
    s->registry_generation = registry_generation_.load();
    std::lock_guard lock(sessions_mutex_);
    std::string id = "s" + std::to_string(next_session_++);
    sessions_[id] = std::move(s);
    return id;
}

std::shared_ptr<Service::Session> Service::session(const std::string& id) {
    std::lock_guard lock(sessions_mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw Error(errc::UnknownSession, "no axiom session " + id);
    return it->second;
}

void Service::sync(Session& s) {
    std::uint64_t g = registry_generation_.load();
    if (s.registry_generation != g) {
        s.engine->refresh();
        s.registry_generation = g;
    }
}

json Service::state_of(Session& s) {
    return graph_state(s.engine->model(), registry_, s.engine->mode(), s.revision, s.engine->can_undo(),
                       s.engine->can_redo());
}

void Service::bump_counter_past(const std::string& axiom_name) {
    if (auto n = auto_number(axiom_name)) {
        std::uint64_t cur = counter_.load();
        while (cur <= *n && !counter_.compare_exchange_weak(cur, *n + 1)) {
        }
    }
}

Service::Reply Service::create_axiom() {
    return guarded([&]() -> Reply {
        std::shared_lock lock(registry_mutex_);
        std::string id = add_session(AxiomModel(auto_axiom_name(counter_++)));
        auto s = session(id);
        std::lock_guard sl(s->mutex);
        return {201, {{"id", id}, {"state", state_of(*s)}}, {}};
    });
}

Service::Reply Service::get_axiom(const std::string& id) {
    return guarded([&]() -> Reply {
        auto s = session(id);
        std::shared_lock lock(registry_mutex_);
        std::lock_guard sl(s->mutex);
        sync(*s);
        return {200, state_of(*s), {}};
    });
}

Service::Reply Service::apply_op(const std::string& id, const json& body) {
    return guarded([&]() -> Reply {
        auto s = session(id);
        if (!body.is_object() || !body.contains("op") || !body.at("op").is_string())
            throw Error(errc::BadRequest, "op request needs a string 'op'");
        ScriptRecord rec;
        rec.op = body.at("op").get<std::string>();
        if (body.contains("args")) rec.args = body.at("args");
        if (body.contains("as")) rec.as = body.at("as").get<std::string>();
        if (body.contains("as_connection")) rec.as_connection = body.at("as_connection").get<std::string>();

        // ontology loads mutate the shared registry; everything else only reads it
        std::unique_lock<std::shared_mutex> exclusive(registry_mutex_, std::defer_lock);
        std::shared_lock<std::shared_mutex> shared(registry_mutex_, std::defer_lock);
        if (rec.op == "load_ontology") exclusive.lock();
        else shared.lock();

        std::lock_guard sl(s->mutex);
        sync(*s);
        if (body.contains("revision") && !body.at("revision").is_null() &&
            body.at("revision").get<std::uint64_t>() != s->revision)
            throw Error(errc::StaleRevision, "revision " + body.at("revision").dump() + " is stale; current is " +
                                                 std::to_string(s->revision));
        ScriptRunner runner(registry_, warehouse_ ? &*warehouse_ : nullptr, *s->engine);
        runner.labels() = s->labels;
        OpResult r = runner.apply(rec);
        s->labels = runner.labels();
        if (rec.op == "load_ontology") {
            ++registry_generation_;
            s->registry_generation = registry_generation_.load();
        }
        ++s->revision;
        json state = state_of(*s);
        json result = json::object();
        if (r.node) result["node"] = *r.node;
        if (r.connection) result["connection"] = *r.connection;
        state["result"] = std::move(result);
        return {200, std::move(state), {}};
    });
}

Service::Reply Service::candidates(const std::string& id, const std::string& target) {
    return guarded([&]() -> Reply {
        auto s = session(id);
        MenuTarget t = MenuTarget::parse(target.empty() ? "surface" : target);
        std::shared_lock lock(registry_mutex_);
        std::lock_guard sl(s->mutex);
        sync(*s);
        return {200, menu_to_json(candidates_for(s->engine->model(), registry_, s->engine->mode(), t)), {}};
    });
}

Service::Reply Service::undo(const std::string& id) {
    return guarded([&]() -> Reply {
        auto s = session(id);
        std::shared_lock lock(registry_mutex_);
        std::lock_guard sl(s->mutex);
        sync(*s);
        s->engine->undo();
        ++s->revision;
        return {200, state_of(*s), {}};
    });
}

Service::Reply Service::redo(const std::string& id) {
    return guarded([&]() -> Reply {
        auto s = session(id);
        std::shared_lock lock(registry_mutex_);
        std::lock_guard sl(s->mutex);
        sync(*s);
        s->engine->redo();
        ++s->revision;
        return {200, state_of(*s), {}};
    });
}

Service::Reply Service::wsml(const std::string& id) {
    return guarded([&]() -> Reply {
        auto s = session(id);
        std::shared_lock lock(registry_mutex_);
        std::lock_guard sl(s->mutex);
        sync(*s);
        return {200, {}, generate_axiom_text(s->engine->model(), registry_)};
    });
}

Service::Reply Service::persist(const std::string& id) {
    return guarded([&]() -> Reply {
        auto s = session(id);
        std::shared_lock lock(registry_mutex_);
        std::lock_guard sl(s->mutex);
        return {200, persist_model(s->engine->model(), registry_), {}};
    });
}

Service::Reply Service::restore(const json& body) {
    return guarded([&]() -> Reply {
        std::unique_lock lock(registry_mutex_);
        std::size_t before = registry_.load_order().size();
        AxiomModel m = restore_model(registry_, warehouse_ ? &*warehouse_ : nullptr, body);
        if (registry_.load_order().size() != before) ++registry_generation_;
        bump_counter_past(m.axiom_name);
        std::string id = add_session(std::move(m));
        auto s = session(id);
        std::lock_guard sl(s->mutex);
        return {201, {{"id", id}, {"state", state_of(*s)}}, {}};
    });
}

void Service::mount(httplib::Server& server) {
    auto send = [](httplib::Response& res, const Reply& r) {
        res.status = r.status;
        if (!r.text.empty() || r.body.is_null()) res.set_content(r.text, "text/plain; charset=utf-8");
        else res.set_content(r.body.dump(), "application/json");
    };
    auto body_of = [](const httplib::Request& req) -> std::optional<json> {
        if (req.body.empty()) return json::object();
        try {
            return json::parse(req.body);
        } catch (const json::exception&) {
            return std::nullopt;
        }
    };
    auto bad_json = Reply{400, {{"code", errc::BadRequest}, {"message", "request body is not valid JSON"}}, {}};

    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Methods", "GET, POST, PUT, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});
    server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    server.Get("/health", [=, this](const httplib::Request&, httplib::Response& res) { send(res, health()); });
    server.Get("/ontologies", [=, this](const httplib::Request&, httplib::Response& res) { send(res, list_ontologies()); });
    server.Post("/ontologies", [=, this](const httplib::Request& req, httplib::Response& res) {
        auto b = body_of(req);
        send(res, b ? load_ontology(*b) : bad_json);
    });
    server.Post("/axioms", [=, this](const httplib::Request&, httplib::Response& res) { send(res, create_axiom()); });
    server.Post("/axioms/restore", [=, this](const httplib::Request& req, httplib::Response& res) {
        auto b = body_of(req);
        send(res, b ? restore(*b) : bad_json);
    });
    server.Get(R"(/axioms/([^/]+))", [=, this](const httplib::Request& req, httplib::Response& res) {
        send(res, get_axiom(req.matches[1]));
    });
    server.Post(R"(/axioms/([^/]+)/ops)", [=, this](const httplib::Request& req, httplib::Response& res) {
        auto b = body_of(req);
        send(res, b ? apply_op(req.matches[1], *b) : bad_json);
    });
    server.Get(R"(/axioms/([^/]+)/candidates)", [=, this](const httplib::Request& req, httplib::Response& res) {
        send(res, candidates(req.matches[1], req.get_param_value("target")));
    });
    server.Post(R"(/axioms/([^/]+)/undo)", [=, this](const httplib::Request& req, httplib::Response& res) {
        send(res, undo(req.matches[1]));
    });
    server.Post(R"(/axioms/([^/]+)/redo)", [=, this](const httplib::Request& req, httplib::Response& res) {
        send(res, redo(req.matches[1]));
    });
    server.Get(R"(/axioms/([^/]+)/wsml)", [=, this](const httplib::Request& req, httplib::Response& res) {
        send(res, wsml(req.matches[1]));
    });
    server.Put(R"(/axioms/([^/]+)/persist)", [=, this](const httplib::Request& req, httplib::Response& res) {
        send(res, persist(req.matches[1]));
    });
}

}  // namespace axiomkit
