#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include <json.hpp>

#include "axiomkit/op_engine.hpp"
#include "axiomkit/script.hpp"
#include "axiomkit/wsml_codegen.hpp"

namespace httplib {
class Server;
}

namespace axiomkit {

/// Tree of live elements: operators as inner nodes, variables, instances and values as labelled entries.
nlohmann::json outline_tree(const AxiomModel& model, const OntologyRegistry& registry);

/// UI-facing snapshot of a model; a pure function of its arguments.
nlohmann::json graph_state(const AxiomModel& model, const OntologyRegistry& registry, EditMode mode,
                           std::uint64_t revision, bool can_undo, bool can_redo);

nlohmann::json menu_to_json(const Menu& menu);
nlohmann::json tree_to_json(const std::vector<OntologyTreeNode>& forest);

/// HTTP status for an error code: 400, 404, 409 or 422.
int http_status_for(const std::string& code);

/// Persisted model document; restoring loads every listed ontology from the warehouse first.
nlohmann::json persist_model(const AxiomModel& model, const OntologyRegistry& registry);
AxiomModel restore_model(OntologyRegistry& registry, const OntologyWarehouse* warehouse, const nlohmann::json& doc);

/// Sessions over one shared registry. Every handler is also callable directly, which is how the
/// HTTP routes use it.
class Service {
public:
    struct Reply {
        int status = 200;
        nlohmann::json body;
        std::string text;  // non-empty for text/plain replies
    };

    explicit Service(std::optional<OntologyWarehouse> warehouse = std::nullopt);

    Reply health() const;
    Reply load_ontology(const nlohmann::json& body);
    Reply list_ontologies();
    Reply create_axiom();
    Reply get_axiom(const std::string& id);
    Reply apply_op(const std::string& id, const nlohmann::json& body);
    Reply candidates(const std::string& id, const std::string& target);
    Reply undo(const std::string& id);
    Reply redo(const std::string& id);
    Reply wsml(const std::string& id);
    Reply persist(const std::string& id);
    Reply restore(const nlohmann::json& body);

    /// Registers every route (with permissive CORS) on `server`.
    void mount(httplib::Server& server);

    std::uint64_t axiom_counter() const { return counter_.load(); }

private:
    struct Session {
        std::mutex mutex;
        std::unique_ptr<Engine> engine;
        Labels labels;
        std::uint64_t revision = 0;
        std::uint64_t registry_generation = 0;
    };

    std::shared_ptr<Session> session(const std::string& id);
    std::string add_session(AxiomModel model);
    nlohmann::json state_of(Session& s);
    void sync(Session& s);
    void bump_counter_past(const std::string& axiom_name);

    std::optional<OntologyWarehouse> warehouse_;
    OntologyRegistry registry_;
    std::shared_mutex registry_mutex_;
    std::atomic<std::uint64_t> registry_generation_{0};

    std::mutex sessions_mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::uint64_t next_session_ = 1;
    std::atomic<std::uint64_t> counter_{1};
};

}  // namespace axiomkit
