#include "axiomkit/wsml_codegen.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "axiomkit/error.hpp"
#include "axiomkit/iri.hpp"
#include "axiomkit/op_engine.hpp"
#include "axiomkit/wsml/parser.hpp"

namespace axiomkit {

using wsml::Expr;
using wsml::Term;

namespace {

Term name_term(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) return Term::identifier(text);
    return Term::qname(text.substr(0, colon), text.substr(colon + 1));
}

std::vector<std::string> split(const std::string& s, const std::string& seps) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (seps.find(c) != std::string::npos) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

Term literal_term(const OntologyRegistry& reg, const std::string& type, const std::string& value) {
    std::string base = builtin_base(reg, type);
    if (base == "integer" || base == "dayOfMonth" || base == "float" || base == "decimal") return Term::number(value);
    if (base == "date" || base == "dateTime") {
        Term d;
        d.kind = Term::Kind::DataValue;
        d.text = "_" + base;
        for (const auto& part : split(value, "-T:")) d.args.push_back(Term::number(part));
        return d;
    }
    if (base == "boolean") {
        Term d;
        d.kind = Term::Kind::DataValue;
        d.text = "_boolean";
        d.args.push_back(Term::string(value));
        return d;
    }
    return Term::string(value);
}

class Builder {
public:
    Builder(const AxiomModel& m, const OntologyRegistry& reg, const RenderOptions& opt) : m_(m), reg_(reg), opt_(opt) {
        live_ = m_.live_nodes();
        // invalid operators are pruned together with everything only they reach
        for (auto it = live_.begin(); it != live_.end();) {
            const Node& n = m_.node(*it);
            it = n.kind == NodeKind::Operator && !m_.validity(*it).valid ? live_.erase(it) : std::next(it);
        }
        for (const auto& [id, c] : m_.connections()) {
            if (!live(c)) continue;
            if (c.source.kind != EndpointKind::Parameter) has_site_.insert(c.target);
        }
    }

    std::optional<Expr> build() {
        auto out = m_.outgoing(Endpoint::root(m_.root()));
        for (ConnId c : out)
            if (live(m_.connection(c)))
                if (auto e = target(m_.connection(c).target, std::nullopt)) return e;
        return std::nullopt;
    }

private:
    bool live(const Connection& c) const { return live_.count(c.source.node) && live_.count(c.target); }

    Term type_term(const std::string& iri) const { return name_term(reg_.qualified_name(iri, m_.home_ontology)); }

    std::optional<ConnId> live_out(const Endpoint& e) const {
        for (ConnId c : m_.outgoing(e))
            if (live(m_.connection(c))) return c;
        return std::nullopt;
    }

    Expr plain_molecule(const Node& v) const {
        wsml::Molecule mol;
        mol.subject = Term::variable(v.name);
        mol.types.push_back(type_term(v.type));
        return Expr::make_molecule(std::move(mol));
    }

    Expr variable(NodeId id) {
        const Node& v = m_.node(id);
        if (!defined_.insert(id).second) return plain_molecule(v);
        wsml::Molecule mol;
        mol.subject = Term::variable(v.name);
        mol.types.push_back(type_term(v.type));
        std::vector<Expr> conjuncts;
        for (const auto& s : v.slots) {
            auto c = live_out(Endpoint::attribute_of(id, s.attribute));
            if (!c) continue;
            std::string bound = s.bound_name.value_or("?#");
            auto value = target(m_.connection(*c).target, bound);
            if (!value) continue;
            mol.attrs.push_back({name_term(s.attribute), {Term::variable(bound)}, false});
            conjuncts.push_back(Expr::grouping(std::move(*value)));
        }
        Expr head = Expr::make_molecule(std::move(mol));
        if (conjuncts.empty()) return head;
        conjuncts.insert(conjuncts.begin(), std::move(head));
        return Expr::conjunction(std::move(conjuncts));
    }

    Expr relation(NodeId id) {
        const Node& r = m_.node(id);
        std::vector<Term> args;
        std::vector<NodeId> bound;
        for (std::size_t i = 0; i < r.params.size(); ++i) {
            auto c = live_out(Endpoint::parameter_of(id, i));
            if (!c) {
                args.push_back(Term::anonymous());
                continue;
            }
            NodeId t = m_.connection(*c).target;
            args.push_back(Term::variable(m_.node(t).name));
            bound.push_back(t);
        }
        Expr app = Expr::relation_application(type_term(r.element), std::move(args));
        std::vector<Expr> conjuncts;
        for (NodeId t : bound) {
            if (has_site_.count(t) || defined_.count(t)) continue;
            conjuncts.push_back(Expr::grouping(variable(t)));
        }
        if (conjuncts.empty()) return app;
        conjuncts.insert(conjuncts.begin(), std::move(app));
        return Expr::conjunction(std::move(conjuncts));
    }

    /// `slot` is the name an attribute chain binds, if any.
    /// Empty when the node contributes nothing (an operator left without renderable operands).
    std::optional<Expr> target(NodeId id, const std::optional<std::string>& slot) {
        const Node& n = m_.node(id);
        switch (n.kind) {
            case NodeKind::Variable: return variable(id);
            case NodeKind::Instance: {
                Term inst = type_term(n.element);
                if (slot) return Expr::equality(Term::variable(*slot), inst);
                wsml::Molecule mol;
                mol.subject = inst;
                mol.types.push_back(type_term(n.type));
                return Expr::make_molecule(std::move(mol));
            }
            case NodeKind::Primitive:
                return Expr::equality(Term::variable(slot ? *slot : n.bound_name), literal_term(reg_, n.type, n.value));
            case NodeKind::Relation: return relation(id);
            case NodeKind::Operator: {
                std::vector<Expr> operands;
                for (ConnId c : m_.outgoing_of(id))
                    if (live(m_.connection(c)))
                        if (auto e = target(m_.connection(c).target, slot)) operands.push_back(Expr::grouping(std::move(*e)));
                if (operands.empty()) return std::nullopt;
                if (operands.size() == 1 && n.op != OperatorKind::Not) return std::move(operands.front());
                if (n.op == OperatorKind::Not) return Expr::negation(opt_.negation, std::move(operands.front()));
                if (n.op == OperatorKind::And) return Expr::conjunction(std::move(operands));
                return Expr::disjunction(std::move(operands));
            }
            case NodeKind::Root: break;
        }
        throw Error(errc::BadRequest, "Start cannot be rendered");
    }

    const AxiomModel& m_;
    const OntologyRegistry& reg_;
    const RenderOptions& opt_;
    std::set<NodeId> live_;
    std::set<NodeId> has_site_;
    std::set<NodeId> defined_;
};

// ---------------------------------------------------------------- layout

struct Printer {
    std::vector<std::string> lines;

    void line(int indent, const std::string& text) { lines.push_back(std::string(indent, ' ') + text); }

    void print(const Expr& e, int indent) {
        switch (e.kind) {
            case Expr::Kind::Molecule: {
                const auto& mol = e.molecule;
                std::string head = wsml::serialize(mol.subject);
                if (!mol.types.empty()) {
                    head += " memberOf ";
                    if (mol.types_braced) head += "{";
                    for (std::size_t i = 0; i < mol.types.size(); ++i)
                        head += (i ? ", " : "") + wsml::serialize(mol.types[i]);
                    if (mol.types_braced) head += "}";
                }
                line(indent, head);
                if (mol.attrs.empty()) return;
                line(indent, "[");
                for (std::size_t i = 0; i < mol.attrs.size(); ++i) {
                    const auto& a = mol.attrs[i];
                    std::string values;
                    for (std::size_t j = 0; j < a.values.size(); ++j)
                        values += (j ? ", " : "") + wsml::serialize(a.values[j]);
                    if (a.braced) values = "{" + values + "}";
                    line(indent + 2, wsml::serialize(a.attribute) + " hasValue " + values +
                                         (i + 1 < mol.attrs.size() ? "," : ""));
                }
                line(indent, "]");
                return;
            }
            case Expr::Kind::Conjunction:
            case Expr::Kind::Disjunction: {
                const char* op = e.kind == Expr::Kind::Conjunction ? "and" : "or";
                // A variable's own conjuncts chain inline ("] and"); operator operands get the keyword on its own line.
                bool inline_op = e.kind == Expr::Kind::Conjunction && e.children.front().kind == Expr::Kind::Molecule &&
                                 !e.children.front().molecule.attrs.empty();
                for (std::size_t i = 0; i < e.children.size(); ++i) {
                    if (i) {
                        if (inline_op) lines.back() += std::string(" ") + op;
                        else line(indent, op);
                    }
                    print(e.children[i], indent);
                }
                return;
            }
            case Expr::Kind::Negation:
                line(indent, wsml::to_string(e.flavor));
                print(e.children.front(), indent);
                return;
            case Expr::Kind::Grouping:
                line(indent, "(");
                print(e.children.front(), indent + 2);
                line(indent, ")");
                return;
            case Expr::Kind::Equality:
                line(indent, wsml::serialize(e.lhs) + " = " + wsml::serialize(e.rhs));
                return;
            case Expr::Kind::Relation: {
                std::string args;
                for (std::size_t i = 0; i < e.args.size(); ++i) args += (i ? ", " : "") + wsml::serialize(e.args[i]);
                line(indent, wsml::serialize(e.relation) + "(" + args + ")");
                return;
            }
        }
    }

    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < lines.size(); ++i) out += (i ? "\n" : "") + lines[i];
        return out;
    }
};

const char* kSectionOrder[] = {"precondition", "postcondition", "assumption", "effect"};

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out + "\"";
}

}  // namespace

std::optional<Expr> build_expression(const AxiomModel& model, const OntologyRegistry& registry,
                                     const RenderOptions& options) {
    return Builder(model, registry, options).build();
}

std::string layout_expression(const Expr& expr, int indent) {
    Printer p;
    p.print(expr, indent);
    return p.str();
}

std::string auto_axiom_name(std::uint64_t n) { return "autoGeneratedAxiom_" + std::to_string(n); }

std::string generate_axiom_text(const AxiomModel& model, const OntologyRegistry& registry,
                                const RenderOptions& options) {
    std::ostringstream out;
    out << "axiom " << model.axiom_name << "\n"
        << "  nonFunctionalProperties\n"
        << "    dc:description hasValue " << quote(kAxiomDescription) << "\n"
        << "  endNonFunctionalProperties\n"
        << "  definedBy\n";
    auto body = build_expression(model, registry, options);
    if (body) out << layout_expression(*body, 4) << ".\n";
    else out << "  .\n";
    return out.str();
}

std::string namespace_preamble(const OntologyRegistry& registry, const AxiomModel& model) {
    std::set<std::string> used;
    auto add = [&](const std::string& element) {
        if (auto owner = registry.owner_of(element)) used.insert(*owner);
    };
    for (const auto& [id, n] : model.nodes()) {
        if (!n.type.empty()) add(n.type);
        if (!n.element.empty()) add(n.element);
    }
    std::map<std::string, std::string> by_short;
    for (const auto& o : used) by_short[registry.short_name(o)] = o;
    std::string out;
    for (const auto& [s, o] : by_short) out += s + " _\"" + o + "\"\n";
    return out;
}

std::string emit_capability(const std::vector<CapabilitySection>& sections) {
    if (sections.empty()) throw Error(errc::EmptySections, "a capability needs at least one section");
    std::vector<std::string> shared;
    for (const auto& s : sections) {
        if (std::find(std::begin(kSectionOrder), std::end(kSectionOrder), s.kind) == std::end(kSectionOrder))
            throw Error(errc::BadRequest, "unknown section kind '" + s.kind + "'");
        for (const auto& v : s.shared_variables)
            if (std::find(shared.begin(), shared.end(), v) == shared.end()) shared.push_back(v);
    }
    std::ostringstream out;
    out << "capability\n";
    if (!shared.empty()) {
        out << "  sharedVariables ";
        if (shared.size() > 1) out << "{";
        for (std::size_t i = 0; i < shared.size(); ++i) out << (i ? ", " : "") << shared[i];
        if (shared.size() > 1) out << "}";
        out << "\n";
    }
    for (const char* kind : kSectionOrder) {
        for (const auto& s : sections) {
            if (s.kind != kind) continue;
            out << "  " << kind << "\n";
            if (!s.description.empty())
                out << "    nonFunctionalProperties\n"
                    << "      dc:description hasValue " << quote(s.description) << "\n"
                    << "    endNonFunctionalProperties\n";
            out << "    definedBy\n" << layout_expression(s.body, 6) << ".\n";
        }
    }
    return out.str();
}

}  // namespace axiomkit
