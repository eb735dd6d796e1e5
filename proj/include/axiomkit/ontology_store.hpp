#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "axiomkit/error.hpp"
#include "axiomkit/wsml/ast.hpp"

namespace axiomkit {

enum class TypeKind { Concept, Builtin, Universal };
enum class ConstraintKind { OfType, ImpliesType };
enum class InheritanceKind { Own, Inherited, Overridden };

const char* to_string(ConstraintKind kind);
const char* to_string(InheritanceKind kind);

struct TypeRef {
    std::string iri;
    TypeKind kind = TypeKind::Concept;

    bool universal() const { return kind == TypeKind::Universal; }
    bool operator==(const TypeRef&) const = default;
};

struct AttributeDef {
    std::string name;
    ConstraintKind constraint_kind = ConstraintKind::OfType;
    std::vector<TypeRef> types;

    bool operator==(const AttributeDef&) const = default;
};

struct EffectiveAttribute {
    AttributeDef attr;
    InheritanceKind inheritance = InheritanceKind::Own;

    bool operator==(const EffectiveAttribute&) const = default;
};

struct ConceptDef {
    std::string iri;
    std::string ontology;
    std::vector<std::string> superconcepts;
    std::vector<AttributeDef> own_attributes;
    std::vector<EffectiveAttribute> effective_attributes;

    const EffectiveAttribute* find_attribute(std::string_view name) const;
};

struct InstanceDef {
    std::string iri;
    std::string ontology;
    std::vector<std::string> member_of;
    std::vector<std::pair<std::string, std::string>> attribute_values;
};

struct ParameterDef {
    std::optional<std::string> name;
    ConstraintKind constraint_kind = ConstraintKind::OfType;
    std::vector<TypeRef> types;

    bool operator==(const ParameterDef&) const = default;
};

struct RelationDef {
    std::string iri;
    std::string ontology;
    std::vector<ParameterDef> parameters;
    std::vector<std::string> super_relations;
};

struct LoadedOntology {
    std::string iri;
    std::string short_name;
    std::string source;
    std::vector<std::string> imports;
    /// Element IRIs in source order.
    std::vector<std::string> concepts;
    std::vector<std::string> instances;
    std::vector<std::string> relations;
};

class OntologyWarehouse {
public:
    static OntologyWarehouse open(const std::filesystem::path& root_dir);

    const std::filesystem::path& root() const { return root_; }
    const std::map<std::string, std::filesystem::path>& index() const { return index_; }
    const std::vector<std::string>& warnings() const { return warnings_; }
    std::optional<std::filesystem::path> find(const std::string& iri) const;

private:
    std::filesystem::path root_;
    std::map<std::string, std::filesystem::path> index_;
    std::vector<std::string> warnings_;
};

/// IRI an ontology document declares (or derives from its default namespace).
std::optional<std::string> declared_iri(const wsml::OntologyDocAst& doc);

struct ConceptChoice {
    std::string iri;
    std::string display;
    std::vector<std::string> attributes;  // display only, not selectable
    std::vector<ConceptChoice> children;
};

struct CompatibleConcepts {
    std::vector<ConceptChoice> forest;
    /// Selectable concept IRIs, each once, in registry order.
    std::vector<std::string> selectable;
    std::vector<std::string> notices;
};

struct OntologyTreeNode {
    char letter = 'C';  // O, C, @, I, R, p
    std::string label;
    std::string iri;
    bool stub = false;
    std::vector<OntologyTreeNode> children;
};

class OntologyRegistry {
public:
    OntologyRegistry();

    std::string load_file(const std::filesystem::path& path);
    std::string load_text(std::string_view text, const std::string& source = "<text>");
    std::string load_by_iri(const OntologyWarehouse& warehouse, const std::string& iri);
    /// Loads the ontology owning a stub superconcept.
    std::string load_imported(const OntologyWarehouse& warehouse, const std::string& stub_iri);

    /// Effective attributes are recomputed after every load; this returns the current definition.
    const ConceptDef& complete_attributes(const std::string& concept_iri) const;

    bool is_loaded(const std::string& ontology_iri) const { return ontologies_.count(ontology_iri) > 0; }
    const LoadedOntology& ontology(const std::string& iri) const;
    const std::map<std::string, LoadedOntology>& ontologies() const { return ontologies_; }
    const std::vector<std::string>& load_order() const { return load_order_; }

    std::string short_name(const std::string& ontology_iri) const;
    std::optional<std::string> ontology_by_short_name(const std::string& short_name) const;
    std::string display_name(const std::string& element_iri) const;
    /// Bare local name inside `home`, `short:local` elsewhere.
    std::string qualified_name(const std::string& element_iri, const std::string& home) const;
    std::optional<std::string> owner_of(const std::string& element_iri) const;

    const ConceptDef* find_concept(const std::string& iri) const;
    const InstanceDef* find_instance(const std::string& iri) const;
    const RelationDef* find_relation(const std::string& iri) const;
    bool is_stub(const std::string& concept_iri) const;
    /// Ontology expected to define a stub (from the importing document), if known.
    std::optional<std::string> stub_owner(const std::string& concept_iri) const;

    TypeRef type_ref(const std::string& iri) const;
    bool is_compatible(const TypeRef& candidate, const std::vector<TypeRef>& required) const;
    bool instance_compatible(const std::string& instance_iri, const std::vector<TypeRef>& required) const;
    /// Reflexive-transitive superconcepts of a loaded concept (stubs included as leaves).
    const std::set<std::string>& ancestors(const std::string& concept_iri) const;

    CompatibleConcepts list_compatible_concepts(const std::vector<TypeRef>& required) const;
    std::vector<std::string> list_compatible_instances(const std::vector<TypeRef>& required) const;
    std::vector<std::string> list_relations() const;
    std::vector<std::string> all_concepts() const;
    std::vector<std::string> all_instances() const;

    /// Accepts a full IRI, `short:local`, `short#local`, `_float`, or a unique bare local name.
    std::string resolve_concept(const std::string& text) const;
    std::string resolve_instance(const std::string& text) const;
    std::string resolve_relation(const std::string& text) const;

    std::vector<OntologyTreeNode> tree() const;

private:
    std::string register_document(const wsml::OntologyDocAst& doc, const std::string& source);
    void recompute();
    const std::vector<EffectiveAttribute>& effective_of(const std::string& iri,
                                                        std::map<std::string, int>& state);
    std::string assign_short_name(const std::string& iri) const;
    std::string resolve_element(const std::string& text, const char* code,
                                const std::map<std::string, std::string>& owners) const;

    std::map<std::string, LoadedOntology> ontologies_;
    std::vector<std::string> load_order_;
    std::map<std::string, std::string> short_names_;
    std::map<std::string, ConceptDef> concepts_;
    std::map<std::string, InstanceDef> instances_;
    std::map<std::string, RelationDef> relations_;
    std::map<std::string, std::string> concept_owner_;
    std::map<std::string, std::string> instance_owner_;
    std::map<std::string, std::string> relation_owner_;
    std::map<std::string, std::string> stub_owner_;
    std::map<std::string, std::set<std::string>> ancestors_;
};

/// Text rendering of registry trees, one element per line with its letter prefix.
std::string render_tree(const std::vector<OntologyTreeNode>& forest);

/// Source of the built-in type ontology.
std::string_view builtin_ontology_source();

}  // namespace axiomkit
