#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "axiomkit/op_engine.hpp"

namespace axiomkit {

/// Symbolic names a script binds with `"as"`.
struct Labels {
    std::map<std::string, NodeId> nodes;
    std::map<std::string, ConnId> connections;
};

/// Decodes `{op, args}` into an engine command. Names of concepts, instances and relations are
/// resolved through the registry; node and connection references may be ids or labels.
Command command_from_json(const std::string& op, const nlohmann::json& args, const AxiomModel& model,
                          const OntologyRegistry& registry, const Labels& labels);

BindingSpec spec_from_json(const nlohmann::json& j, const AxiomModel& model, const OntologyRegistry& registry,
                           const Labels& labels);

/// One parsed script record.
struct ScriptRecord {
    std::string op;
    nlohmann::json args = nlohmann::json::object();
    std::optional<std::string> as;
    std::optional<std::string> as_connection;
    std::optional<int> step;
};

std::vector<ScriptRecord> parse_script(const nlohmann::json& doc);
std::vector<ScriptRecord> load_script(const std::string& path);

/// Applies records to an engine; handles the non-command records `load_ontology` and `set_mode`.
class ScriptRunner {
public:
    ScriptRunner(OntologyRegistry& registry, const OntologyWarehouse* warehouse, Engine& engine);

    OpResult apply(const ScriptRecord& record);
    /// Runs records in order, stopping before the first record whose step exceeds `at_step`.
    /// Errors are rethrown with the failing record's index prefixed to the message.
    void run(const std::vector<ScriptRecord>& records, std::optional<int> at_step = std::nullopt);

    Labels& labels() { return labels_; }
    const Labels& labels() const { return labels_; }

private:
    OntologyRegistry& registry_;
    const OntologyWarehouse* warehouse_;
    Engine& engine_;
    Labels labels_;
};

/// Loads `{iri}` from the warehouse or `{path}` from disk and returns the ontology IRI.
std::string load_ontology_request(OntologyRegistry& registry, const OntologyWarehouse* warehouse,
                                  const nlohmann::json& args);

}  // namespace axiomkit
