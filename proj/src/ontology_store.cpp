#include "axiomkit/ontology_store.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "axiomkit/iri.hpp"
#include "axiomkit/wsml/parser.hpp"

namespace axiomkit {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kBuiltinSource = R"(namespace { _"http://www.w3.org/2001/XMLSchema#" }

ontology _"http://www.w3.org/2001/XMLSchema#"
  nonFunctionalProperties
    dc:description hasValue "Built-in WSML data types"
  endNonFunctionalProperties

concept builtin
concept string subConceptOf builtin
concept integer subConceptOf builtin
concept float subConceptOf builtin
concept decimal subConceptOf builtin
concept date subConceptOf builtin
concept dateTime subConceptOf builtin
concept boolean subConceptOf builtin
concept dayOfMonth subConceptOf integer
)";

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(errc::IoError, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Error parse_error(const std::string& message) {
    return Error(errc::ParseError, message, Position{});
}

struct Scope {
    std::map<std::string, std::string> prefixes;
    std::string default_ns;

    std::string resolve(const wsml::Term& t) const {
        switch (t.kind) {
            case wsml::Term::Kind::Iri: return t.text;
            case wsml::Term::Kind::QName: {
                auto it = prefixes.find(t.text);
                if (it == prefixes.end())
                    throw parse_error("unknown namespace prefix '" + t.text + "'");
                return it->second + t.local;
            }
            case wsml::Term::Kind::Identifier:
                if (t.text.size() > 1 && t.text[0] == '_')
                    return std::string(iri::kBuiltinOntology) + t.text.substr(1);
                return default_ns + t.text;
            default: throw parse_error("expected an identifier, found '" + wsml::serialize(t) + "'");
        }
    }
};

Scope make_scope(const wsml::OntologyDocAst& doc) {
    Scope s;
    s.prefixes["xsd"] = std::string(iri::kBuiltinOntology);
    s.prefixes["wsml"] = std::string(iri::kWsmlNamespace);
    s.prefixes["dc"] = std::string(iri::kDublinCore);
    for (const auto& ns : doc.namespaces) {
        if (ns.prefix.empty()) s.default_ns = ns.iri;
        else s.prefixes[ns.prefix] = ns.iri;
    }
    return s;
}

ConstraintKind constraint_kind(const std::string& text) {
    return text == "impliesType" ? ConstraintKind::ImpliesType : ConstraintKind::OfType;
}

template <class T>
void push_unique(std::vector<T>& v, const T& x) {
    if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

}  // namespace

const char* to_string(ConstraintKind kind) {
    return kind == ConstraintKind::ImpliesType ? "impliesType" : "ofType";
}

const char* to_string(InheritanceKind kind) {
    switch (kind) {
        case InheritanceKind::Own: return "own";
        case InheritanceKind::Inherited: return "inherited";
        case InheritanceKind::Overridden: return "overridden";
    }
    return "own";
}

std::string_view builtin_ontology_source() { return kBuiltinSource; }

const EffectiveAttribute* ConceptDef::find_attribute(std::string_view name) const {
    for (const auto& ea : effective_attributes)
        if (ea.attr.name == name) return &ea;
    return nullptr;
}

std::optional<std::string> declared_iri(const wsml::OntologyDocAst& doc) {
    if (!doc.has_ontology || !doc.iri) return std::nullopt;
    Scope scope = make_scope(doc);
    if (doc.iri->kind == wsml::Term::Kind::Identifier && scope.default_ns.empty()) return doc.iri->text;
    return scope.resolve(*doc.iri);
}

// ---------------------------------------------------------------- warehouse

OntologyWarehouse OntologyWarehouse::open(const fs::path& root_dir) {
    std::error_code ec;
    if (!fs::is_directory(root_dir, ec))
        throw Error(errc::DirectoryNotFound, "warehouse directory not found: " + root_dir.string());
    OntologyWarehouse w;
    w.root_ = root_dir;
    std::vector<fs::path> files;
    try {
        for (const auto& entry : fs::recursive_directory_iterator(root_dir)) {
            if (entry.is_regular_file() && entry.path().extension() == ".wsml")
                files.push_back(entry.path());
        }
    } catch (const fs::filesystem_error& e) {
        throw Error(errc::IoError, e.what());
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
        std::optional<std::string> declared;
        try {
            declared = declared_iri(wsml::parse_document(read_file(file)));
        } catch (const Error& e) {
            w.warnings_.push_back(file.string() + ": " + e.what());
            continue;
        }
        if (!declared) {
            w.warnings_.push_back(file.string() + ": no ontology identifier");
            continue;
        }
        auto [it, inserted] = w.index_.emplace(*declared, file);
        if (!inserted)
            throw Error(errc::DuplicateIri, "ontology " + *declared + " declared by both " +
                                                it->second.string() + " and " + file.string());
    }
    return w;
}

std::optional<fs::path> OntologyWarehouse::find(const std::string& iri) const {
    auto it = index_.find(iri);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

// ---------------------------------------------------------------- registry

OntologyRegistry::OntologyRegistry() { load_text(kBuiltinSource, "<builtin>"); }

std::string OntologyRegistry::load_file(const fs::path& path) {
    return load_text(read_file(path), path.string());
}

std::string OntologyRegistry::load_text(std::string_view text, const std::string& source) {
    wsml::OntologyDocAst doc = wsml::parse_document(text);
    auto iri = declared_iri(doc);
    if (!iri) throw parse_error(source + ": document declares no ontology");
    if (is_loaded(*iri)) return *iri;
    OntologyRegistry next = *this;
    next.register_document(doc, source);
    next.recompute();
    *this = std::move(next);
    return *iri;
}

std::string OntologyRegistry::load_by_iri(const OntologyWarehouse& warehouse, const std::string& iri) {
    if (is_loaded(iri)) return iri;
    auto path = warehouse.find(iri);
    if (!path) throw Error(errc::NotInWarehouse, "ontology not in warehouse: " + iri);
    std::string loaded = load_file(*path);
    return loaded;
}

std::string OntologyRegistry::load_imported(const OntologyWarehouse& warehouse,
                                            const std::string& stub_iri) {
    if (auto owner = owner_of(stub_iri)) return *owner;
    auto owner = stub_owner(stub_iri);
    if (!owner) throw Error(errc::NotInWarehouse, "no known ontology defines " + stub_iri);
    return load_by_iri(warehouse, *owner);
}

const ConceptDef& OntologyRegistry::complete_attributes(const std::string& concept_iri) const {
    const ConceptDef* c = find_concept(concept_iri);
    if (!c) throw Error(errc::UnknownConcept, "unknown concept " + concept_iri);
    return *c;
}

std::string OntologyRegistry::register_document(const wsml::OntologyDocAst& doc,
                                                const std::string& source) {
    Scope scope = make_scope(doc);
    std::string oiri = *declared_iri(doc);
    if (scope.default_ns.empty()) {
        char last = oiri.empty() ? '#' : oiri.back();
        scope.default_ns = (last == '#' || last == '/') ? oiri : oiri + "#";
    }

    LoadedOntology ont;
    ont.iri = oiri;
    ont.source = source;
    ont.short_name = assign_short_name(oiri);
    for (const auto& t : doc.imports.items) ont.imports.push_back(scope.resolve(t));

    auto check_new = [&](const std::string& element) {
        for (auto* owners : {&concept_owner_, &instance_owner_, &relation_owner_}) {
            auto it = owners->find(element);
            if (it != owners->end() && it->second != oiri)
                throw parse_error(source + ": " + element + " is already defined by ontology " +
                                  it->second);
        }
        std::string ns = iri::namespace_of(element);
        for (const auto& [other, _] : ontologies_) {
            if (other == oiri) continue;
            if (other == ns || other == iri::ontology_of_namespace(ns))
                throw parse_error(source + ": " + element + " belongs to the namespace of ontology " +
                                  other);
        }
    };
    auto type_of = [&](const wsml::Term& t) { return type_ref(scope.resolve(t)); };
    auto note_reference = [&](const std::string& referenced) {
        if (referenced == iri::kUniversal) return;
        std::string ns = iri::namespace_of(referenced);
        std::string guess = iri::ontology_of_namespace(ns);
        for (const auto& imp : ont.imports)
            if (imp == ns || imp == guess) guess = imp;
        if (ontologies_.count(ns)) guess = ns;
        if (guess != oiri && !stub_owner_.count(referenced)) stub_owner_[referenced] = guess;
    };

    std::set<std::string> seen;
    for (const auto& element : doc.elements) {
        if (auto* c = std::get_if<wsml::ConceptAst>(&element)) {
            ConceptDef def;
            def.iri = scope.resolve(c->id);
            def.ontology = oiri;
            check_new(def.iri);
            if (!seen.insert(def.iri).second)
                throw parse_error(source + ": concept " + def.iri + " defined twice");
            for (const auto& s : c->supers.items) {
                std::string sup = scope.resolve(s);
                def.superconcepts.push_back(sup);
                note_reference(sup);
            }
            for (const auto& a : c->attributes) {
                AttributeDef ad;
                ad.name = a.name.kind == wsml::Term::Kind::QName ? a.name.local : a.name.text;
                ad.constraint_kind = constraint_kind(a.constraint_kind);
                for (const auto& t : a.types.items) {
                    ad.types.push_back(type_of(t));
                    note_reference(ad.types.back().iri);
                }
                def.own_attributes.push_back(std::move(ad));
            }
            concept_owner_[def.iri] = oiri;
            ont.concepts.push_back(def.iri);
            concepts_[def.iri] = std::move(def);
        } else if (auto* i = std::get_if<wsml::InstanceAst>(&element)) {
            InstanceDef def;
            def.iri = scope.resolve(i->id);
            def.ontology = oiri;
            check_new(def.iri);
            if (!seen.insert(def.iri).second)
                throw parse_error(source + ": instance " + def.iri + " defined twice");
            for (const auto& m : i->member_of.items) {
                def.member_of.push_back(scope.resolve(m));
                note_reference(def.member_of.back());
            }
            for (const auto& v : i->values) {
                std::string name = v.attribute.kind == wsml::Term::Kind::QName ? v.attribute.local
                                                                                : v.attribute.text;
                for (const auto& value : v.values) def.attribute_values.emplace_back(name, wsml::serialize(value));
            }
            instance_owner_[def.iri] = oiri;
            ont.instances.push_back(def.iri);
            instances_[def.iri] = std::move(def);
        } else if (auto* r = std::get_if<wsml::RelationAst>(&element)) {
            RelationDef def;
            def.iri = scope.resolve(r->id);
            def.ontology = oiri;
            check_new(def.iri);
            if (!seen.insert(def.iri).second)
                throw parse_error(source + ": relation " + def.iri + " defined twice");
            for (const auto& p : r->params) {
                ParameterDef pd;
                if (p.name) pd.name = p.name->text;
                pd.constraint_kind = constraint_kind(p.constraint_kind);
                for (const auto& t : p.types.items) {
                    pd.types.push_back(type_of(t));
                    note_reference(pd.types.back().iri);
                }
                def.parameters.push_back(std::move(pd));
            }
            for (const auto& s : r->supers.items) def.super_relations.push_back(scope.resolve(s));
            relation_owner_[def.iri] = oiri;
            ont.relations.push_back(def.iri);
            relations_[def.iri] = std::move(def);
        }
    }
    short_names_[oiri] = ont.short_name;
    load_order_.push_back(oiri);
    ontologies_[oiri] = std::move(ont);
    return oiri;
}

void OntologyRegistry::recompute() {
    ancestors_.clear();
    std::map<std::string, int> state;
    // ancestors with cycle detection
    std::function<const std::set<std::string>&(const std::string&)> visit =
        [&](const std::string& c) -> const std::set<std::string>& {
        auto done = ancestors_.find(c);
        if (done != ancestors_.end()) return done->second;
        if (state[c] == 1) throw Error(errc::CyclicInheritance, "inheritance cycle through " + c);
        state[c] = 1;
        std::set<std::string> result{c};
        for (const auto& s : concepts_.at(c).superconcepts) {
            if (concepts_.count(s)) {
                const auto& up = visit(s);
                result.insert(up.begin(), up.end());
            } else {
                result.insert(s);
            }
        }
        state[c] = 2;
        return ancestors_[c] = std::move(result);
    };
    for (const auto& [iri, _] : concepts_) visit(iri);

    std::map<std::string, int> eff_state;
    for (auto& [iri, def] : concepts_) def.effective_attributes.clear();
    for (const auto& [iri, _] : concepts_) effective_of(iri, eff_state);
}

const std::vector<EffectiveAttribute>& OntologyRegistry::effective_of(const std::string& iri,
                                                                      std::map<std::string, int>& state) {
    ConceptDef& def = concepts_.at(iri);
    if (state[iri] == 2) return def.effective_attributes;
    state[iri] = 1;

    std::vector<AttributeDef> inherited;
    for (const auto& s : def.superconcepts) {
        if (!concepts_.count(s)) continue;
        for (const auto& ea : effective_of(s, state)) {
            auto it = std::find_if(inherited.begin(), inherited.end(),
                                   [&](const AttributeDef& a) { return a.name == ea.attr.name; });
            if (it == inherited.end()) {
                inherited.push_back(ea.attr);
            } else {
                for (const auto& t : ea.attr.types) push_unique(it->types, t);
            }
        }
    }

    std::vector<EffectiveAttribute> result;
    for (const auto& own : def.own_attributes) {
        EffectiveAttribute ea{own, InheritanceKind::Own};
        auto it = std::find_if(inherited.begin(), inherited.end(),
                               [&](const AttributeDef& a) { return a.name == own.name; });
        if (it != inherited.end()) {
            ea.inheritance = InheritanceKind::Overridden;
            for (const auto& t : it->types) push_unique(ea.attr.types, t);
        }
        result.push_back(std::move(ea));
    }
    for (const auto& a : inherited) {
        bool overridden = std::any_of(def.own_attributes.begin(), def.own_attributes.end(),
                                      [&](const AttributeDef& o) { return o.name == a.name; });
        if (!overridden) result.push_back({a, InheritanceKind::Inherited});
    }
    def.effective_attributes = std::move(result);
    state[iri] = 2;
    return def.effective_attributes;
}

std::string OntologyRegistry::assign_short_name(const std::string& iri) const {
    if (iri == iri::kBuiltinOntology) return "xsd";
    std::string base = iri::last_segment(iri);
    if (base.empty()) base = "ontology";
    auto taken = [&](const std::string& s) {
        if (s == "xsd") return true;
        for (const auto& [other, name] : short_names_)
            if (name == s) return true;
        return false;
    };
    std::string candidate = base;
    for (int n = 1; taken(candidate); ++n) candidate = base + std::to_string(n);
    return candidate;
}

const LoadedOntology& OntologyRegistry::ontology(const std::string& iri) const {
    auto it = ontologies_.find(iri);
    if (it == ontologies_.end()) throw Error(errc::UnknownElement, "ontology not loaded: " + iri);
    return it->second;
}

std::string OntologyRegistry::short_name(const std::string& ontology_iri) const {
    return ontology(ontology_iri).short_name;
}

std::optional<std::string> OntologyRegistry::ontology_by_short_name(const std::string& name) const {
    for (const auto& [iri, s] : short_names_)
        if (s == name) return iri;
    return std::nullopt;
}

std::optional<std::string> OntologyRegistry::owner_of(const std::string& element) const {
    for (auto* owners : {&concept_owner_, &instance_owner_, &relation_owner_}) {
        auto it = owners->find(element);
        if (it != owners->end()) return it->second;
    }
    return std::nullopt;
}

std::string OntologyRegistry::display_name(const std::string& element) const {
    auto owner = owner_of(element);
    if (!owner) throw Error(errc::UnknownElement, "element of unloaded ontology: " + element);
    return short_name(*owner) + ":" + iri::local_name(element);
}

std::string OntologyRegistry::qualified_name(const std::string& element, const std::string& home) const {
    if (element == iri::kUniversal) return "wsml:true";
    auto owner = owner_of(element);
    if (!owner) {
        auto stub = stub_owner(element);
        std::string prefix = stub ? iri::last_segment(*stub) : iri::last_segment(iri::namespace_of(element));
        return prefix + ":" + iri::local_name(element);
    }
    if (*owner == home) return iri::local_name(element);
    return short_name(*owner) + ":" + iri::local_name(element);
}

const ConceptDef* OntologyRegistry::find_concept(const std::string& iri) const {
    auto it = concepts_.find(iri);
    return it == concepts_.end() ? nullptr : &it->second;
}

const InstanceDef* OntologyRegistry::find_instance(const std::string& iri) const {
    auto it = instances_.find(iri);
    return it == instances_.end() ? nullptr : &it->second;
}

const RelationDef* OntologyRegistry::find_relation(const std::string& iri) const {
    auto it = relations_.find(iri);
    return it == relations_.end() ? nullptr : &it->second;
}

bool OntologyRegistry::is_stub(const std::string& concept_iri) const {
    return !concepts_.count(concept_iri) && concept_iri != iri::kUniversal;
}

std::optional<std::string> OntologyRegistry::stub_owner(const std::string& concept_iri) const {
    auto it = stub_owner_.find(concept_iri);
    if (it == stub_owner_.end()) return std::nullopt;
    return it->second;
}

TypeRef OntologyRegistry::type_ref(const std::string& iri) const {
    if (iri == iri::kUniversal) return {iri, TypeKind::Universal};
    if (iri::namespace_of(iri) == iri::kBuiltinOntology) return {iri, TypeKind::Builtin};
    return {iri, TypeKind::Concept};
}

const std::set<std::string>& OntologyRegistry::ancestors(const std::string& concept_iri) const {
    auto it = ancestors_.find(concept_iri);
    if (it == ancestors_.end()) throw Error(errc::UnresolvedStub, "concept not loaded: " + concept_iri);
    return it->second;
}

bool OntologyRegistry::is_compatible(const TypeRef& candidate, const std::vector<TypeRef>& required) const {
    if (candidate.universal()) {
        return std::all_of(required.begin(), required.end(), [](const TypeRef& r) { return r.universal(); });
    }
    if (!concepts_.count(candidate.iri))
        throw Error(errc::UnresolvedStub, "load the ontology defining " + candidate.iri + " first");
    const auto& up = ancestors_.at(candidate.iri);
    for (const auto& r : required) {
        if (r.universal()) continue;
        if (!concepts_.count(r.iri))
            throw Error(errc::UnresolvedStub, "load the ontology defining " + r.iri + " first");
        if (!up.count(r.iri)) return false;
    }
    return true;
}

bool OntologyRegistry::instance_compatible(const std::string& instance_iri,
                                           const std::vector<TypeRef>& required) const {
    const InstanceDef* inst = find_instance(instance_iri);
    if (!inst) return false;
    for (const auto& r : required) {
        if (r.universal()) continue;
        bool satisfied = false;
        for (const auto& m : inst->member_of) {
            auto it = ancestors_.find(m);
            if (it != ancestors_.end() && concepts_.count(r.iri) && it->second.count(r.iri)) {
                satisfied = true;
                break;
            }
        }
        if (!satisfied) return false;
    }
    return true;
}

std::vector<std::string> OntologyRegistry::all_concepts() const {
    std::vector<std::string> out;
    for (const auto& o : load_order_) {
        const auto& c = ontologies_.at(o).concepts;
        out.insert(out.end(), c.begin(), c.end());
    }
    return out;
}

std::vector<std::string> OntologyRegistry::all_instances() const {
    std::vector<std::string> out;
    for (const auto& o : load_order_) {
        const auto& c = ontologies_.at(o).instances;
        out.insert(out.end(), c.begin(), c.end());
    }
    return out;
}

CompatibleConcepts OntologyRegistry::list_compatible_concepts(const std::vector<TypeRef>& required) const {
    CompatibleConcepts out;
    for (const auto& r : required) {
        if (!r.universal() && !concepts_.count(r.iri)) {
            auto owner = stub_owner(r.iri);
            out.notices.push_back(std::string(errc::UnresolvedStub) + ": load ontology " +
                                  (owner ? *owner : iri::namespace_of(r.iri)) + " first");
            return out;
        }
    }
    std::set<std::string> selected;
    for (const auto& c : all_concepts()) {
        if (is_compatible(type_ref(c), required)) {
            out.selectable.push_back(c);
            selected.insert(c);
        }
    }
    std::function<ConceptChoice(const std::string&)> build = [&](const std::string& c) {
        ConceptChoice node;
        node.iri = c;
        node.display = display_name(c);
        for (const auto& ea : concepts_.at(c).effective_attributes) {
            std::string types;
            for (const auto& t : ea.attr.types) types += (types.empty() ? "" : ", ") + qualified_name(t.iri, "");
            node.attributes.push_back(ea.attr.name + " " + to_string(ea.attr.constraint_kind) + " " + types);
        }
        for (const auto& sub : out.selectable) {
            const auto& supers = concepts_.at(sub).superconcepts;
            if (std::find(supers.begin(), supers.end(), c) != supers.end()) node.children.push_back(build(sub));
        }
        return node;
    };
    for (const auto& c : out.selectable) {
        const auto& supers = concepts_.at(c).superconcepts;
        bool has_selected_super = std::any_of(supers.begin(), supers.end(),
                                              [&](const std::string& s) { return selected.count(s) > 0; });
        if (!has_selected_super) out.forest.push_back(build(c));
    }
    return out;
}

std::vector<std::string> OntologyRegistry::list_compatible_instances(const std::vector<TypeRef>& required) const {
    std::vector<std::string> out;
    for (const auto& i : all_instances())
        if (instance_compatible(i, required)) out.push_back(i);
    return out;
}

std::vector<std::string> OntologyRegistry::list_relations() const {
    std::vector<std::string> out;
    for (const auto& o : load_order_) {
        const auto& r = ontologies_.at(o).relations;
        out.insert(out.end(), r.begin(), r.end());
    }
    return out;
}

std::string OntologyRegistry::resolve_element(const std::string& text, const char* code,
                                              const std::map<std::string, std::string>& owners) const {
    if (owners.count(text)) return text;
    if (text.size() > 1 && text[0] == '_') {
        std::string b = std::string(iri::kBuiltinOntology) + text.substr(1);
        if (owners.count(b)) return b;
    }
    std::vector<std::string> matches;
    auto sep = text.find_first_of(":#");
    if (text.find("://") == std::string::npos && sep != std::string::npos) {
        auto ont = ontology_by_short_name(text.substr(0, sep));
        std::string local = text.substr(sep + 1);
        if (ont) {
            for (const auto& [element, owner] : owners)
                if (owner == *ont && iri::local_name(element) == local) matches.push_back(element);
        }
    } else if (text.find("://") == std::string::npos) {
        for (const auto& [element, owner] : owners)
            if (iri::local_name(element) == text) matches.push_back(element);
    }
    if (matches.size() == 1) return matches.front();
    if (matches.size() > 1) throw Error(code, "ambiguous name '" + text + "'; qualify it as short:local");
    throw Error(code, "unknown element '" + text + "'");
}

std::string OntologyRegistry::resolve_concept(const std::string& text) const {
    try {
        return resolve_element(text, errc::UnknownConcept, concept_owner_);
    } catch (const Error&) {
        // stubs are resolvable so that callers can report StubConcept
        if (stub_owner_.count(text)) return text;
        std::vector<std::string> matches;
        for (const auto& [stub, owner] : stub_owner_)
            if (!concepts_.count(stub) && iri::local_name(stub) == text) matches.push_back(stub);
        if (matches.size() == 1) return matches.front();
        throw;
    }
}

std::string OntologyRegistry::resolve_instance(const std::string& text) const {
    return resolve_element(text, errc::UnknownInstance, instance_owner_);
}

std::string OntologyRegistry::resolve_relation(const std::string& text) const {
    return resolve_element(text, errc::UnknownRelation, relation_owner_);
}

std::vector<OntologyTreeNode> OntologyRegistry::tree() const {
    std::vector<OntologyTreeNode> forest;
    for (const auto& oiri : load_order_) {
        const LoadedOntology& ont = ontologies_.at(oiri);
        OntologyTreeNode root{'O', ont.short_name + " <" + oiri + ">", oiri, false, {}};

        auto types_text = [&](const std::vector<TypeRef>& types) {
            std::string s;
            for (const auto& t : types) s += (s.empty() ? "" : ", ") + qualified_name(t.iri, oiri);
            return types.size() > 1 ? "{" + s + "}" : s;
        };
        std::function<OntologyTreeNode(const std::string&)> concept_node = [&](const std::string& c) {
            const ConceptDef& def = concepts_.at(c);
            OntologyTreeNode n{'C', iri::local_name(c), c, false, {}};
            for (const auto& ea : def.effective_attributes) {
                std::string label = ea.attr.name + " " + to_string(ea.attr.constraint_kind) + " " +
                                    types_text(ea.attr.types);
                if (ea.inheritance != InheritanceKind::Own) label += std::string(" (") + to_string(ea.inheritance) + ")";
                n.children.push_back({'@', label, "", false, {}});
            }
            for (const auto& i : ont.instances) {
                const auto& m = instances_.at(i).member_of;
                if (std::find(m.begin(), m.end(), c) != m.end())
                    n.children.push_back({'I', iri::local_name(i), i, false, {}});
            }
            for (const auto& sub : ont.concepts) {
                const auto& supers = concepts_.at(sub).superconcepts;
                if (std::find(supers.begin(), supers.end(), c) != supers.end())
                    n.children.push_back(concept_node(sub));
            }
            return n;
        };

        std::vector<std::string> external;
        for (const auto& c : ont.concepts)
            for (const auto& s : concepts_.at(c).superconcepts)
                if (concept_owner_.count(s) == 0 || concept_owner_.at(s) != oiri) push_unique(external, s);
        for (const auto& i : ont.instances)
            for (const auto& m : instances_.at(i).member_of)
                if (concept_owner_.count(m) == 0 || concept_owner_.at(m) != oiri) push_unique(external, m);

        for (const auto& c : ont.concepts)
            if (concepts_.at(c).superconcepts.empty()) root.children.push_back(concept_node(c));
        for (const auto& e : external) {
            OntologyTreeNode ref{'C', qualified_name(e, oiri), e, is_stub(e), {}};
            for (const auto& c : ont.concepts) {
                const auto& supers = concepts_.at(c).superconcepts;
                if (std::find(supers.begin(), supers.end(), e) != supers.end())
                    ref.children.push_back(concept_node(c));
            }
            for (const auto& i : ont.instances) {
                const auto& m = instances_.at(i).member_of;
                if (std::find(m.begin(), m.end(), e) != m.end())
                    ref.children.push_back({'I', iri::local_name(i), i, false, {}});
            }
            root.children.push_back(std::move(ref));
        }
        for (const auto& r : ont.relations) {
            const RelationDef& def = relations_.at(r);
            OntologyTreeNode rn{'R', iri::local_name(r) + "/" + std::to_string(def.parameters.size()), r, false, {}};
            for (std::size_t k = 0; k < def.parameters.size(); ++k) {
                const auto& p = def.parameters[k];
                std::string label = (p.name ? *p.name : "#" + std::to_string(k + 1)) + " " +
                                    to_string(p.constraint_kind) + " " + types_text(p.types);
                rn.children.push_back({'p', label, "", false, {}});
            }
            root.children.push_back(std::move(rn));
        }
        forest.push_back(std::move(root));
    }
    return forest;
}

std::string render_tree(const std::vector<OntologyTreeNode>& forest) {
    std::ostringstream out;
    std::function<void(const OntologyTreeNode&, int)> emit = [&](const OntologyTreeNode& n, int depth) {
        out << std::string(static_cast<std::size_t>(depth) * 2, ' ') << n.letter << ' ' << n.label;
        if (n.stub) out << " [unloaded]";
        out << '\n';
        for (const auto& c : n.children) emit(c, depth + 1);
    };
    for (const auto& n : forest) emit(n, 0);
    return out.str();
}

}  // namespace axiomkit
