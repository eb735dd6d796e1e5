#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace axiomkit::wsml {

struct Term {
    enum class Kind { Variable, Anonymous, Identifier, QName, Iri, String, Number, DataValue, Function };

    Kind kind = Kind::Identifier;
    /// Variable: "?x"; Identifier: the name; QName: the prefix; Iri: the IRI;
    /// String: unescaped content; Number: lexeme; DataValue: "_date" etc.
    std::string text;
    /// QName local part.
    std::string local;
    /// DataValue: constructor arguments. Function: args[0] is the function name, the rest its arguments.
    std::vector<Term> args;

    bool operator==(const Term&) const = default;

    static Term variable(std::string name) { return {Kind::Variable, std::move(name), {}, {}}; }
    static Term anonymous() { return {Kind::Anonymous, "?#", {}, {}}; }
    static Term identifier(std::string name) { return {Kind::Identifier, std::move(name), {}, {}}; }
    static Term qname(std::string prefix, std::string local) {
        return {Kind::QName, std::move(prefix), std::move(local), {}};
    }
    static Term iri(std::string value) { return {Kind::Iri, std::move(value), {}, {}}; }
    static Term string(std::string value) { return {Kind::String, std::move(value), {}, {}}; }
    static Term number(std::string lexeme) { return {Kind::Number, std::move(lexeme), {}, {}}; }
};

struct AttrValue {
    Term attribute;
    std::vector<Term> values;
    bool braced = false;

    bool operator==(const AttrValue&) const = default;
};

struct Molecule {
    Term subject;
    std::vector<Term> types;
    bool types_braced = false;
    std::vector<AttrValue> attrs;
    /// `?x[...] memberOf C` rather than `?x memberOf C [...]`; always false without types.
    bool attrs_first = false;

    bool operator==(const Molecule&) const = default;
};

enum class NegationFlavor { Not, Naf, Neg };

const char* to_string(NegationFlavor flavor);

struct Expr {
    enum class Kind { Molecule, Conjunction, Disjunction, Negation, Equality, Relation, Grouping };

    Kind kind = Kind::Molecule;
    Molecule molecule;
    /// Conjunction/Disjunction: two or more; Negation/Grouping: exactly one.
    std::vector<Expr> children;
    NegationFlavor flavor = NegationFlavor::Not;
    Term lhs;
    Term rhs;
    /// Relation application: name and ordered arguments.
    Term relation;
    std::vector<Term> args;
    /// Names of `name hasValue term` arguments; empty when every argument is positional.
    std::vector<std::string> arg_names;

    bool operator==(const Expr&) const = default;

    static Expr make_molecule(Molecule m);
    static Expr conjunction(std::vector<Expr> children);
    static Expr disjunction(std::vector<Expr> children);
    static Expr negation(NegationFlavor flavor, Expr child);
    static Expr grouping(Expr child);
    static Expr equality(Term lhs, Term rhs);
    static Expr relation_application(Term name, std::vector<Term> args);
};

struct TypeList {
    std::vector<Term> items;
    bool braced = false;

    bool empty() const { return items.empty(); }
    bool operator==(const TypeList&) const = default;
};

struct NfpEntry {
    Term key;
    std::vector<Term> values;
    bool braced = false;

    bool operator==(const NfpEntry&) const = default;
};

struct NfpBlock {
    /// nonFunctionalProperties ... endNonFunctionalProperties vs nfp ... endnfp
    bool long_form = true;
    std::vector<NfpEntry> entries;

    bool operator==(const NfpBlock&) const = default;
};

struct AttributeDefAst {
    Term name;
    std::string constraint_kind;  // "ofType" | "impliesType"
    TypeList types;

    bool operator==(const AttributeDefAst&) const = default;
};

struct ConceptAst {
    Term id;
    TypeList supers;
    std::optional<NfpBlock> nfp;
    std::vector<AttributeDefAst> attributes;

    bool operator==(const ConceptAst&) const = default;
};

struct InstanceAst {
    Term id;
    TypeList member_of;
    std::optional<NfpBlock> nfp;
    std::vector<AttrValue> values;

    bool operator==(const InstanceAst&) const = default;
};

struct ParamAst {
    std::optional<Term> name;
    std::string constraint_kind;
    TypeList types;

    bool operator==(const ParamAst&) const = default;
};

struct RelationAst {
    Term id;
    std::vector<ParamAst> params;
    TypeList supers;
    std::optional<NfpBlock> nfp;

    bool operator==(const RelationAst&) const = default;
};

struct AxiomAst {
    Term id;
    std::optional<NfpBlock> nfp;
    /// Body introduced by `!-` (an integrity constraint).
    bool constraint = false;
    Expr body;

    bool operator==(const AxiomAst&) const = default;
};

struct SectionAst {
    std::string kind;  // precondition | postcondition | assumption | effect
    std::optional<Term> id;
    std::optional<NfpBlock> nfp;
    Expr body;

    bool operator==(const SectionAst&) const = default;
};

struct CapabilityAst {
    std::optional<Term> id;
    std::optional<NfpBlock> nfp;
    TypeList imports;
    TypeList shared_variables;
    std::vector<SectionAst> sections;

    bool operator==(const CapabilityAst&) const = default;
};

using Element = std::variant<ConceptAst, InstanceAst, RelationAst, AxiomAst, CapabilityAst>;

struct NamespaceDecl {
    std::string prefix;  // empty for the default namespace
    std::string iri;

    bool operator==(const NamespaceDecl&) const = default;
};

struct OntologyDocAst {
    std::optional<std::string> variant;
    bool has_namespace_block = false;
    std::vector<NamespaceDecl> namespaces;
    bool has_ontology = false;
    std::optional<Term> iri;
    std::optional<NfpBlock> nfp;
    TypeList imports;
    std::vector<Element> elements;

    bool operator==(const OntologyDocAst&) const = default;
};

}  // namespace axiomkit::wsml
