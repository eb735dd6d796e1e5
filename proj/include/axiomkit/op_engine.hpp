#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "axiomkit/axiom_graph.hpp"
#include "axiomkit/ontology_store.hpp"

namespace axiomkit {

enum class EditMode { Standard, Advanced };

const char* to_string(EditMode mode);
EditMode edit_mode_from(const std::string& text);

/// How an attribute, parameter or operator operand gets its value.
struct BindingSpec {
    enum class Kind {
        NewVarDefaultType,
        NewVarOfConcept,
        ExistingVariable,
        InstanceFromOntology,
        ExistingInstance,
        LiteralDefaultType,
        LiteralOfType,
    };

    Kind kind = Kind::NewVarDefaultType;
    std::string element;  // concept, instance or built-in type IRI
    NodeId node = 0;      // existing variable or instance node
    std::string value;    // literal text

    static BindingSpec default_type() { return {Kind::NewVarDefaultType, {}, 0, {}}; }
    static BindingSpec of_concept(std::string iri) { return {Kind::NewVarOfConcept, std::move(iri), 0, {}}; }
    static BindingSpec existing_variable(NodeId n) { return {Kind::ExistingVariable, {}, n, {}}; }
    static BindingSpec instance(std::string iri) { return {Kind::InstanceFromOntology, std::move(iri), 0, {}}; }
    static BindingSpec existing_instance(NodeId n) { return {Kind::ExistingInstance, {}, n, {}}; }
    static BindingSpec literal(std::string v) { return {Kind::LiteralDefaultType, {}, 0, std::move(v)}; }
    static BindingSpec literal_of(std::string type, std::string v) {
        return {Kind::LiteralOfType, std::move(type), 0, std::move(v)};
    }

    bool operator==(const BindingSpec&) const = default;
};

inline constexpr BindingSpec::Kind kAllBindingKinds[] = {
    BindingSpec::Kind::NewVarDefaultType,    BindingSpec::Kind::NewVarOfConcept,
    BindingSpec::Kind::ExistingVariable,     BindingSpec::Kind::InstanceFromOntology,
    BindingSpec::Kind::ExistingInstance,     BindingSpec::Kind::LiteralDefaultType,
    BindingSpec::Kind::LiteralOfType,
};

const char* to_string(BindingSpec::Kind kind);
BindingSpec::Kind binding_kind_from(const std::string& text);

namespace cmd {
struct CreateVariable { std::string concept_iri; };
struct CreateOperator { OperatorKind kind = OperatorKind::And; };
struct CreateInstanceNode { std::string instance; };
struct CreateRelationNode { std::string relation; };
struct CreateConnection { Endpoint source; NodeId target = 0; };
struct RefineAttribute { NodeId node = 0; std::string attribute; BindingSpec spec; };
struct BindParameter { NodeId node = 0; std::size_t index = 0; BindingSpec spec; };
/// With `attribute` set, renames the variable bound to that slot.
struct RenameVariable { NodeId node = 0; std::optional<std::string> attribute; std::string new_name; };
struct CopyVariable { NodeId node = 0; };
struct DeleteNode { NodeId node = 0; };
struct InsertOperator { ConnId connection = 0; OperatorKind kind = OperatorKind::And; std::optional<BindingSpec> second; };
struct AddOperand { NodeId node = 0; BindingSpec spec; };
struct ChangeOperatorType { NodeId node = 0; OperatorKind kind = OperatorKind::And; };
/// Replaces the source (when `move_source`) or the target of a connection.
struct MoveEndpoint { ConnId connection = 0; bool move_source = false; Endpoint new_source; NodeId new_target = 0; };
struct DeleteConnection { ConnId connection = 0; };
struct SetPrimitiveValue { NodeId node = 0; std::string value; };
}  // namespace cmd

using Command = std::variant<cmd::CreateVariable, cmd::CreateOperator, cmd::CreateInstanceNode,
                             cmd::CreateRelationNode, cmd::CreateConnection, cmd::RefineAttribute,
                             cmd::BindParameter, cmd::RenameVariable, cmd::CopyVariable, cmd::DeleteNode,
                             cmd::InsertOperator, cmd::AddOperand, cmd::ChangeOperatorType,
                             cmd::MoveEndpoint, cmd::DeleteConnection, cmd::SetPrimitiveValue>;

/// Script/API name of the command ("create_variable", ...).
const char* op_name(const Command& command);

struct OpResult {
    std::optional<NodeId> node;
    std::optional<ConnId> connection;
};

/// Applies one command. On error the model is left untouched.
OpResult apply_command(AxiomModel& model, const OntologyRegistry& registry, const Command& command,
                       EditMode mode);

/// `?base` when free, otherwise `?base1`, `?base2`, ...
std::string gen_variable_name(const AxiomModel& model, std::string base);

/// Lexical check of a literal against a built-in type (or a subtype of one).
bool literal_valid(const OntologyRegistry& registry, const std::string& type_iri, const std::string& value);

/// Name of the built-in base a type derives from ("integer", "date", ...), or "" when none applies.
std::string builtin_base(const OntologyRegistry& registry, const std::string& type_iri);

/// A lexically valid sample literal for a built-in type; used for menu dry runs.
std::string sample_literal(const OntologyRegistry& registry, const std::string& type_iri);

/// Variable name syntax accepted by rename.
bool valid_variable_name(const std::string& name);

/// Re-syncs every variable's slots with the registry's current effective attributes.
void refresh_slots(AxiomModel& model, const OntologyRegistry& registry);

class Engine {
public:
    explicit Engine(const OntologyRegistry& registry, AxiomModel model = AxiomModel());

    OpResult execute(const Command& command);
    void undo();
    void redo();
    bool can_undo() const { return !undo_.empty(); }
    bool can_redo() const { return !redo_.empty(); }
    std::size_t history_size() const { return undo_.size(); }

    EditMode mode() const { return mode_; }
    void set_mode(EditMode mode) { mode_ = mode; }

    const AxiomModel& model() const { return model_; }
    const OntologyRegistry& registry() const { return *registry_; }
    /// Replaces the model and clears both stacks.
    void reset(AxiomModel model);
    /// Call after loading ontologies so slot lists track the registry.
    void refresh();

private:
    struct Step {
        AxiomModel before;
        AxiomModel after;
    };

    const OntologyRegistry* registry_;
    AxiomModel model_;
    EditMode mode_ = EditMode::Standard;
    std::vector<Step> undo_;
    std::vector<Step> redo_;
};

// ---------------------------------------------------------------- menus

struct MenuTarget {
    enum class Kind { Surface, Node, Slot, Parameter, Connection };

    Kind kind = Kind::Surface;
    NodeId node = 0;
    std::string attribute;
    std::size_t index = 0;
    ConnId connection = 0;

    /// "surface", "node:N", "slot:N:attr", "param:N:i", "conn:N"
    static MenuTarget parse(const std::string& text);
    std::string str() const;
};

struct MenuEntry {
    std::string op;       // operation name
    std::string variant;  // binding kind, operator kind, "source"/"target", or empty
    bool enabled = false;
    std::string error;    // predicted error code when disabled
    /// What `options` holds: "concept", "instance", "relation", "node", "endpoint", "builtin", "literal", "".
    std::string option_kind;
    std::vector<std::string> options;
};

struct Menu {
    MenuTarget target;
    std::vector<MenuEntry> entries;

    const MenuEntry* find(const std::string& op, const std::string& variant = {}) const;
};

/// Enabled operations for a target, with filtered choice lists.
Menu candidates_for(const AxiomModel& model, const OntologyRegistry& registry, EditMode mode,
                    const MenuTarget& target);

/// Builds the command a menu entry stands for, with `option` as its chosen element (or literal).
Command command_for(const MenuTarget& target, const MenuEntry& entry, const std::string& option);

/// Every target a model currently offers (surface, nodes, slots, parameters, connections).
std::vector<MenuTarget> all_targets(const AxiomModel& model);

}  // namespace axiomkit
