#include "axiomkit/wsml/parser.hpp"

#include <sstream>

namespace axiomkit::wsml {

const char* to_string(NegationFlavor flavor) {
    switch (flavor) {
        case NegationFlavor::Not: return "not";
        case NegationFlavor::Naf: return "naf";
        case NegationFlavor::Neg: return "neg";
    }
    return "not";
}

Expr Expr::make_molecule(Molecule m) {
    Expr e;
    e.kind = Kind::Molecule;
    e.molecule = std::move(m);
    return e;
}

Expr Expr::conjunction(std::vector<Expr> children) {
    Expr e;
    e.kind = Kind::Conjunction;
    e.children = std::move(children);
    return e;
}

Expr Expr::disjunction(std::vector<Expr> children) {
    Expr e;
    e.kind = Kind::Disjunction;
    e.children = std::move(children);
    return e;
}

Expr Expr::negation(NegationFlavor flavor, Expr child) {
    Expr e;
    e.kind = Kind::Negation;
    e.flavor = flavor;
    e.children.push_back(std::move(child));
    return e;
}

Expr Expr::grouping(Expr child) {
    Expr e;
    e.kind = Kind::Grouping;
    e.children.push_back(std::move(child));
    return e;
}

Expr Expr::equality(Term lhs, Term rhs) {
    Expr e;
    e.kind = Kind::Equality;
    e.lhs = std::move(lhs);
    e.rhs = std::move(rhs);
    return e;
}

Expr Expr::relation_application(Term name, std::vector<Term> args) {
    Expr e;
    e.kind = Kind::Relation;
    e.relation = std::move(name);
    e.args = std::move(args);
    return e;
}

namespace {

bool is_section_keyword(const Token& t) {
    return t.is_keyword("precondition") || t.is_keyword("postcondition") ||
           t.is_keyword("assumption") || t.is_keyword("effect");
}

bool is_element_keyword(const Token& t) {
    return t.is_keyword("concept") || t.is_keyword("instance") || t.is_keyword("relation") ||
           t.is_keyword("axiom") || t.is_keyword("capability");
}

std::string describe(const Token& t) {
    if (t.kind == TokenKind::End) return "end of input";
    return std::string(to_string(t.kind)) + " '" + t.lexeme + "'";
}

class Parser {
public:
    explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

    OntologyDocAst document() {
        OntologyDocAst doc;
        if (cur().is_keyword("wsmlVariant")) {
            advance();
            doc.variant = expect(TokenKind::Iri, "IRI").lexeme;
        }
        if (cur().is_keyword("namespace")) {
            advance();
            doc.has_namespace_block = true;
            namespaces(doc.namespaces);
        }
        if (cur().is_keyword("ontology")) {
            advance();
            doc.has_ontology = true;
            if (is_name_token(cur())) doc.iri = name_term();
            for (;;) {
                if (is_nfp_start(cur())) {
                    if (doc.nfp) fail({"element"});
                    doc.nfp = nfp_block();
                } else if (cur().is_keyword("importsOntology")) {
                    advance();
                    type_list_into(doc.imports);
                } else {
                    break;
                }
            }
        }
        while (cur().kind != TokenKind::End) {
            const Token& t = cur();
            if (t.is_keyword("concept")) doc.elements.emplace_back(concept_decl());
            else if (t.is_keyword("instance")) doc.elements.emplace_back(instance());
            else if (t.is_keyword("relation")) doc.elements.emplace_back(relation());
            else if (t.is_keyword("axiom")) doc.elements.emplace_back(axiom());
            else if (t.is_keyword("capability")) doc.elements.emplace_back(capability());
            else fail({"concept", "instance", "relation", "axiom", "capability"});
        }
        return doc;
    }

    Expr standalone_expression() {
        Expr e = expression();
        if (cur().is_punct(".")) advance();
        check_unsupported(cur());
        if (cur().kind != TokenKind::End) fail({"'.'", "end of input"});
        return e;
    }

private:
    const Token& cur() const { return tokens_[i_]; }
    const Token& ahead(std::size_t k) const {
        return tokens_[std::min(i_ + k, tokens_.size() - 1)];
    }
    void advance() {
        if (i_ + 1 < tokens_.size()) ++i_;
    }

    [[noreturn]] void fail(std::vector<std::string> expected) {
        check_unsupported(cur());
        std::ostringstream msg;
        msg << "expected ";
        for (std::size_t k = 0; k < expected.size(); ++k) {
            if (k) msg << (k + 1 == expected.size() ? " or " : ", ");
            msg << expected[k];
        }
        msg << ", found " << describe(cur());
        throw ParseError(msg.str(), cur().position, std::move(expected), cur().lexeme);
    }

    void check_unsupported(const Token& t) {
        if ((t.kind == TokenKind::Keyword || t.kind == TokenKind::Punct) &&
            is_unsupported_keyword(t.lexeme)) {
            throw ParseError("unsupported construct '" + t.lexeme + "'", t.position, {}, t.lexeme);
        }
    }

    const Token& expect(TokenKind kind, const std::string& what) {
        if (cur().kind != kind) fail({what});
        const Token& t = cur();
        advance();
        return t;
    }

    void expect_punct(const char* p) {
        if (!cur().is_punct(p)) fail({std::string("'") + p + "'"});
        advance();
    }

    void expect_keyword(const char* k) {
        if (!cur().is_keyword(k)) fail({k});
        advance();
    }

    static bool is_name_token(const Token& t) {
        return t.kind == TokenKind::Identifier || t.kind == TokenKind::QName ||
               t.kind == TokenKind::Iri;
    }

    static bool is_nfp_start(const Token& t) {
        return t.is_keyword("nonFunctionalProperties") || t.is_keyword("nfp");
    }

    static Term split_qname(const std::string& lexeme) {
        auto sep = lexeme.find_first_of("#:");
        return Term::qname(lexeme.substr(0, sep), lexeme.substr(sep + 1));
    }

    Term name_term() {
        const Token& t = cur();
        switch (t.kind) {
            case TokenKind::Identifier: advance(); return Term::identifier(t.lexeme);
            case TokenKind::QName: advance(); return split_qname(t.lexeme);
            case TokenKind::Iri: advance(); return Term::iri(t.lexeme);
            default: fail({"identifier"});
        }
    }

    // Terms usable as values, arguments and molecule subjects.
    Term term(bool allow_function) {
        const Token& t = cur();
        switch (t.kind) {
            case TokenKind::Variable: advance(); return Term::variable(t.lexeme);
            case TokenKind::AnonVariable: advance(); return Term::anonymous();
            case TokenKind::String: advance(); return Term::string(t.lexeme);
            case TokenKind::Number: advance(); return Term::number(t.lexeme);
            case TokenKind::DateCtor: {
                Term d;
                d.kind = Term::Kind::DataValue;
                d.text = t.lexeme;
                advance();
                d.args = argument_list();
                return d;
            }
            case TokenKind::Identifier:
            case TokenKind::QName:
            case TokenKind::Iri: {
                Term name = name_term();
                if (allow_function && cur().is_punct("(")) {
                    Term f;
                    f.kind = Term::Kind::Function;
                    f.args.push_back(std::move(name));
                    auto rest = argument_list();
                    f.args.insert(f.args.end(), rest.begin(), rest.end());
                    return f;
                }
                return name;
            }
            default: fail({"term"});
        }
    }

    // args := arg (',' arg)* ; arg := term | identifier 'hasValue' term
    Expr relation_arguments(Expr e) {
        expect_punct("(");
        std::vector<std::string> names;
        bool any_named = false;
        while (!cur().is_punct(")")) {
            if (!e.args.empty()) expect_punct(",");
            std::string name;
            if (cur().kind == TokenKind::Identifier && ahead(1).is_keyword("hasValue")) {
                name = cur().lexeme;
                any_named = true;
                advance();
                advance();
            }
            names.push_back(std::move(name));
            e.args.push_back(term(true));
        }
        expect_punct(")");
        if (any_named) e.arg_names = std::move(names);
        return e;
    }

    std::vector<Term> argument_list() {
        expect_punct("(");
        std::vector<Term> args;
        if (!cur().is_punct(")")) {
            args.push_back(term(true));
            while (cur().is_punct(",")) {
                advance();
                args.push_back(term(true));
            }
        }
        expect_punct(")");
        return args;
    }

    void values_into(std::vector<Term>& out, bool& braced) {
        if (cur().is_punct("{")) {
            braced = true;
            advance();
            out.push_back(term(true));
            while (cur().is_punct(",")) {
                advance();
                out.push_back(term(true));
            }
            expect_punct("}");
        } else {
            braced = false;
            out.push_back(term(true));
        }
    }

    void type_list_into(TypeList& list) {
        if (cur().is_punct("{")) {
            list.braced = true;
            advance();
            list.items.push_back(name_term());
            while (cur().is_punct(",")) {
                advance();
                list.items.push_back(name_term());
            }
            expect_punct("}");
        } else {
            list.items.push_back(name_term());
        }
    }

    void namespaces(std::vector<NamespaceDecl>& out) {
        if (cur().kind == TokenKind::Iri) {
            out.push_back({"", cur().lexeme});
            advance();
            return;
        }
        expect_punct("{");
        while (!cur().is_punct("}")) {
            if (cur().kind == TokenKind::Iri) {
                out.push_back({"", cur().lexeme});
                advance();
            } else if (cur().kind == TokenKind::Identifier) {
                std::string prefix = cur().lexeme;
                advance();
                out.push_back({prefix, expect(TokenKind::Iri, "IRI").lexeme});
            } else {
                fail({"IRI", "prefix"});
            }
            if (cur().is_punct(",")) advance();
            else if (!cur().is_punct("}")) fail({"','", "'}'"});
        }
        advance();
    }

    NfpBlock nfp_block() {
        NfpBlock block;
        block.long_form = cur().is_keyword("nonFunctionalProperties");
        advance();
        const char* end = block.long_form ? "endNonFunctionalProperties" : "endnfp";
        while (!cur().is_keyword(end)) {
            if (cur().kind != TokenKind::Identifier && cur().kind != TokenKind::QName &&
                cur().kind != TokenKind::Iri)
                fail({"property", end});
            NfpEntry entry;
            entry.key = name_term();
            expect_keyword("hasValue");
            values_into(entry.values, entry.braced);
            block.entries.push_back(std::move(entry));
            if (cur().is_punct(",")) advance();
        }
        advance();
        return block;
    }

    bool at_attribute_start() const {
        return (cur().kind == TokenKind::Identifier || cur().kind == TokenKind::QName) &&
               (ahead(1).is_keyword("ofType") || ahead(1).is_keyword("impliesType") ||
                ahead(1).is_keyword("hasValue"));
    }

    ConceptAst concept_decl() {
        advance();
        ConceptAst c;
        c.id = name_term();
        if (cur().is_keyword("subConceptOf")) {
            advance();
            type_list_into(c.supers);
        }
        if (is_nfp_start(cur())) c.nfp = nfp_block();
        while (at_attribute_start()) {
            AttributeDefAst a;
            a.name = name_term();
            if (cur().is_keyword("hasValue")) fail({"ofType", "impliesType"});
            a.constraint_kind = cur().lexeme;
            advance();
            type_list_into(a.types);
            c.attributes.push_back(std::move(a));
            if (cur().is_punct(",")) advance();
        }
        end_of_element();
        return c;
    }

    InstanceAst instance() {
        advance();
        InstanceAst inst;
        inst.id = name_term();
        if (cur().is_keyword("memberOf")) {
            advance();
            type_list_into(inst.member_of);
        }
        if (is_nfp_start(cur())) inst.nfp = nfp_block();
        while (at_attribute_start()) {
            AttrValue v;
            v.attribute = name_term();
            expect_keyword("hasValue");
            values_into(v.values, v.braced);
            inst.values.push_back(std::move(v));
            if (cur().is_punct(",")) advance();
        }
        end_of_element();
        return inst;
    }

    RelationAst relation() {
        advance();
        RelationAst r;
        r.id = name_term();
        if (cur().is_punct("(")) {
            advance();
            while (!cur().is_punct(")")) {
                ParamAst p;
                if (cur().kind == TokenKind::Identifier &&
                    (ahead(1).is_keyword("ofType") || ahead(1).is_keyword("impliesType"))) {
                    p.name = Term::identifier(cur().lexeme);
                    advance();
                }
                if (!cur().is_keyword("ofType") && !cur().is_keyword("impliesType"))
                    fail({"ofType", "impliesType"});
                p.constraint_kind = cur().lexeme;
                advance();
                type_list_into(p.types);
                r.params.push_back(std::move(p));
                if (cur().is_punct(",")) advance();
                else if (!cur().is_punct(")")) fail({"','", "')'"});
            }
            advance();
        }
        if (cur().is_keyword("subRelationOf")) {
            advance();
            type_list_into(r.supers);
        }
        if (is_nfp_start(cur())) r.nfp = nfp_block();
        end_of_element();
        return r;
    }

    AxiomAst axiom() {
        advance();
        AxiomAst a;
        a.id = name_term();
        if (is_nfp_start(cur())) a.nfp = nfp_block();
        expect_keyword("definedBy");
        if (cur().is_punct("!-")) {
            a.constraint = true;
            advance();
        }
        a.body = expression();
        if (cur().is_punct(".")) advance();
        end_of_element();
        return a;
    }

    CapabilityAst capability() {
        advance();
        CapabilityAst cap;
        if (is_name_token(cur())) cap.id = name_term();
        for (;;) {
            if (is_nfp_start(cur()) && !cap.nfp) {
                cap.nfp = nfp_block();
            } else if (cur().is_keyword("importsOntology")) {
                advance();
                type_list_into(cap.imports);
            } else if (cur().is_keyword("sharedVariables")) {
                advance();
                if (cur().is_punct("{")) {
                    cap.shared_variables.braced = true;
                    advance();
                    cap.shared_variables.items.push_back(
                        Term::variable(expect(TokenKind::Variable, "variable").lexeme));
                    while (cur().is_punct(",")) {
                        advance();
                        cap.shared_variables.items.push_back(
                            Term::variable(expect(TokenKind::Variable, "variable").lexeme));
                    }
                    expect_punct("}");
                } else {
                    cap.shared_variables.items.push_back(
                        Term::variable(expect(TokenKind::Variable, "variable").lexeme));
                }
            } else {
                break;
            }
        }
        while (is_section_keyword(cur())) {
            SectionAst s;
            s.kind = cur().lexeme;
            advance();
            if (is_name_token(cur())) s.id = name_term();
            if (is_nfp_start(cur())) s.nfp = nfp_block();
            expect_keyword("definedBy");
            s.body = expression();
            if (cur().is_punct(".")) advance();
            cap.sections.push_back(std::move(s));
        }
        end_of_element();
        return cap;
    }

    void end_of_element() {
        if (cur().kind == TokenKind::End || is_element_keyword(cur())) return;
        fail({"element", "end of input"});
    }

    // expr := conj ('or' conj)* ; conj := unary ('and' unary)*
    Expr expression() {
        std::vector<Expr> parts;
        parts.push_back(conjunction());
        while (cur().is_keyword("or")) {
            advance();
            parts.push_back(conjunction());
        }
        check_unsupported(cur());
        if (parts.size() == 1) return std::move(parts.front());
        return Expr::disjunction(std::move(parts));
    }

    Expr conjunction() {
        std::vector<Expr> parts;
        parts.push_back(unary());
        while (cur().is_keyword("and")) {
            advance();
            parts.push_back(unary());
        }
        check_unsupported(cur());
        if (parts.size() == 1) return std::move(parts.front());
        return Expr::conjunction(std::move(parts));
    }

    Expr unary() {
        check_unsupported(cur());
        if (cur().is_keyword("not") || cur().is_keyword("naf") || cur().is_keyword("neg")) {
            NegationFlavor f = cur().lexeme == "not"   ? NegationFlavor::Not
                               : cur().lexeme == "naf" ? NegationFlavor::Naf
                                                       : NegationFlavor::Neg;
            advance();
            return Expr::negation(f, unary());
        }
        if (cur().is_punct("(")) {
            advance();
            Expr inner = expression();
            expect_punct(")");
            return Expr::grouping(std::move(inner));
        }
        return atom();
    }

    Expr atom() {
        const Token& start = cur();
        bool named = start.kind == TokenKind::Identifier || start.kind == TokenKind::QName ||
                     start.kind == TokenKind::Iri;
        if (named && ahead(1).is_punct("(")) {
            Term name = name_term();
            return relation_arguments(Expr::relation_application(std::move(name), {}));
        }
        if (start.kind != TokenKind::Variable && !named && start.kind != TokenKind::String &&
            start.kind != TokenKind::Number && start.kind != TokenKind::DateCtor &&
            start.kind != TokenKind::AnonVariable)
            fail({"expression"});
        Term subject = term(false);
        if (cur().is_punct("=")) {
            advance();
            return Expr::equality(std::move(subject), term(true));
        }
        Molecule m;
        m.subject = std::move(subject);
        if (cur().is_punct("[")) {
            m.attrs_first = true;
            attribute_values(m.attrs);
            if (cur().is_keyword("memberOf")) {
                advance();
                member_types(m);
            } else {
                m.attrs_first = false;  // order only matters when both parts are present
            }
        } else if (cur().is_keyword("memberOf")) {
            advance();
            member_types(m);
            if (cur().is_punct("[")) attribute_values(m.attrs);
        } else {
            fail({"memberOf", "'['", "'='"});
        }
        return Expr::make_molecule(std::move(m));
    }

    void member_types(Molecule& m) {
        TypeList list;
        type_list_into(list);
        m.types = std::move(list.items);
        m.types_braced = list.braced;
    }

    void attribute_values(std::vector<AttrValue>& out) {
        expect_punct("[");
        while (!cur().is_punct("]")) {
            AttrValue v;
            if (cur().kind == TokenKind::Variable) {
                v.attribute = Term::variable(cur().lexeme);
                advance();
            } else {
                v.attribute = name_term();
            }
            expect_keyword("hasValue");
            values_into(v.values, v.braced);
            out.push_back(std::move(v));
            if (cur().is_punct(",")) advance();
        }
        advance();
    }

    std::vector<Token> tokens_;
    std::size_t i_ = 0;
};

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string join_terms(const std::vector<Term>& terms) {
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) out += ", ";
        out += serialize(terms[i]);
    }
    return out;
}

std::string values_text(const std::vector<Term>& values, bool braced) {
    if (braced) return "{" + join_terms(values) + "}";
    return join_terms(values);
}

std::string type_list_text(const TypeList& list) { return values_text(list.items, list.braced); }

std::string attrs_text(const std::vector<AttrValue>& attrs) {
    std::string out = "[";
    for (std::size_t i = 0; i < attrs.size(); ++i) {
        if (i) out += ", ";
        out += serialize(attrs[i].attribute) + " hasValue " +
               values_text(attrs[i].values, attrs[i].braced);
    }
    return out + "]";
}

void write_nfp(std::ostringstream& out, const NfpBlock& nfp, const std::string& indent) {
    out << indent << (nfp.long_form ? "nonFunctionalProperties" : "nfp") << "\n";
    for (const auto& e : nfp.entries)
        out << indent << "  " << serialize(e.key) << " hasValue " << values_text(e.values, e.braced)
            << "\n";
    out << indent << (nfp.long_form ? "endNonFunctionalProperties" : "endnfp") << "\n";
}

}  // namespace

OntologyDocAst parse_document(std::string_view text) { return Parser(text).document(); }

Expr parse_logical_expression(std::string_view text) { return Parser(text).standalone_expression(); }

std::string serialize(const Term& t) {
    switch (t.kind) {
        case Term::Kind::Variable:
        case Term::Kind::Identifier:
        case Term::Kind::Number:
            return t.text;
        case Term::Kind::Anonymous: return "?#";
        case Term::Kind::QName: return t.text + ":" + t.local;
        case Term::Kind::Iri: return "_\"" + t.text + "\"";
        case Term::Kind::String: return quote(t.text);
        case Term::Kind::DataValue: return t.text + "(" + join_terms(t.args) + ")";
        case Term::Kind::Function: {
            std::vector<Term> rest(t.args.begin() + 1, t.args.end());
            return serialize(t.args.front()) + "(" + join_terms(rest) + ")";
        }
    }
    return {};
}

std::string serialize_body(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Molecule: {
            const Molecule& m = e.molecule;
            std::string out = serialize(m.subject);
            if (m.attrs_first && !m.attrs.empty()) out += attrs_text(m.attrs);
            if (!m.types.empty()) out += " memberOf " + values_text(m.types, m.types_braced);
            if (!m.attrs_first && !m.attrs.empty()) out += " " + attrs_text(m.attrs);
            return out;
        }
        case Expr::Kind::Conjunction:
        case Expr::Kind::Disjunction: {
            const char* op = e.kind == Expr::Kind::Conjunction ? " and " : " or ";
            std::string out;
            for (std::size_t i = 0; i < e.children.size(); ++i) {
                if (i) out += op;
                out += serialize_body(e.children[i]);
            }
            return out;
        }
        case Expr::Kind::Negation:
            return std::string(to_string(e.flavor)) + " " + serialize_body(e.children.front());
        case Expr::Kind::Grouping: return "( " + serialize_body(e.children.front()) + " )";
        case Expr::Kind::Equality: return serialize(e.lhs) + " = " + serialize(e.rhs);
        case Expr::Kind::Relation: {
            if (e.arg_names.empty()) return serialize(e.relation) + "(" + join_terms(e.args) + ")";
            std::string out = serialize(e.relation) + "(";
            for (std::size_t i = 0; i < e.args.size(); ++i) {
                if (i) out += ", ";
                if (i < e.arg_names.size() && !e.arg_names[i].empty()) out += e.arg_names[i] + " hasValue ";
                out += serialize(e.args[i]);
            }
            return out + ")";
        }
    }
    return {};
}

std::string serialize(const Expr& e) { return serialize_body(e) + "."; }

std::string serialize(const OntologyDocAst& doc) {
    std::ostringstream out;
    if (doc.variant) out << "wsmlVariant _\"" << *doc.variant << "\"\n";
    if (doc.has_namespace_block) {
        out << "namespace {";
        for (std::size_t i = 0; i < doc.namespaces.size(); ++i) {
            const auto& ns = doc.namespaces[i];
            out << (i ? ",\n  " : " ");
            if (!ns.prefix.empty()) out << ns.prefix << " ";
            out << "_\"" << ns.iri << "\"";
        }
        out << " }\n";
    }
    if (doc.has_ontology) {
        out << "\nontology";
        if (doc.iri) out << " " << serialize(*doc.iri);
        out << "\n";
        if (doc.nfp) write_nfp(out, *doc.nfp, "  ");
        if (!doc.imports.empty()) out << "  importsOntology " << type_list_text(doc.imports) << "\n";
    }
    for (const auto& element : doc.elements) {
        out << "\n";
        if (auto* c = std::get_if<ConceptAst>(&element)) {
            out << "concept " << serialize(c->id);
            if (!c->supers.empty()) out << " subConceptOf " << type_list_text(c->supers);
            out << "\n";
            if (c->nfp) write_nfp(out, *c->nfp, "  ");
            for (const auto& a : c->attributes)
                out << "  " << serialize(a.name) << " " << a.constraint_kind << " "
                    << type_list_text(a.types) << "\n";
        } else if (auto* inst = std::get_if<InstanceAst>(&element)) {
            out << "instance " << serialize(inst->id);
            if (!inst->member_of.empty()) out << " memberOf " << type_list_text(inst->member_of);
            out << "\n";
            if (inst->nfp) write_nfp(out, *inst->nfp, "  ");
            for (const auto& v : inst->values)
                out << "  " << serialize(v.attribute) << " hasValue "
                    << values_text(v.values, v.braced) << "\n";
        } else if (auto* r = std::get_if<RelationAst>(&element)) {
            out << "relation " << serialize(r->id);
            if (!r->params.empty()) {
                out << "(";
                for (std::size_t i = 0; i < r->params.size(); ++i) {
                    const auto& p = r->params[i];
                    if (i) out << ", ";
                    if (p.name) out << serialize(*p.name) << " ";
                    out << p.constraint_kind << " " << type_list_text(p.types);
                }
                out << ")";
            }
            if (!r->supers.empty()) out << " subRelationOf " << type_list_text(r->supers);
            out << "\n";
            if (r->nfp) write_nfp(out, *r->nfp, "  ");
        } else if (auto* ax = std::get_if<AxiomAst>(&element)) {
            out << "axiom " << serialize(ax->id) << "\n";
            if (ax->nfp) write_nfp(out, *ax->nfp, "  ");
            out << "  definedBy\n    " << (ax->constraint ? "!- " : "") << serialize(ax->body) << "\n";
        } else if (auto* cap = std::get_if<CapabilityAst>(&element)) {
            out << "capability";
            if (cap->id) out << " " << serialize(*cap->id);
            out << "\n";
            if (cap->nfp) write_nfp(out, *cap->nfp, "  ");
            if (!cap->imports.empty()) out << "  importsOntology " << type_list_text(cap->imports) << "\n";
            if (!cap->shared_variables.empty())
                out << "  sharedVariables " << type_list_text(cap->shared_variables) << "\n";
            for (const auto& s : cap->sections) {
                out << "  " << s.kind;
                if (s.id) out << " " << serialize(*s.id);
                out << "\n";
                if (s.nfp) write_nfp(out, *s.nfp, "    ");
                out << "    definedBy\n      " << serialize(s.body) << "\n";
            }
        }
    }
    return out.str();
}

}  // namespace axiomkit::wsml
