#include <gtest/gtest.h>

#include <random>

#include "axiomkit/wsml/parser.hpp"
#include "support.hpp"

using namespace axiomkit;
using namespace axiomkit::wsml;
using namespace testsupport;

namespace {

std::string corpus(const std::string& name) { return read_file(data_dir() / "corpus" / (name + ".wsml")); }

template <class T>
const T& only(const OntologyDocAst& doc) {
    EXPECT_EQ(doc.elements.size(), 1u);
    return std::get<T>(doc.elements.at(0));
}

Error error_of(std::string_view text, bool document = false) {
    try {
        if (document) parse_document(text);
        else parse_logical_expression(text);
    } catch (const Error& e) {
        return e;
    }
    ADD_FAILURE() << "accepted: " << text;
    return Error("", "");
}

// ---------------------------------------------------------------- random expressions

struct ExprGen {
    std::mt19937 rng;
    explicit ExprGen(std::uint32_t seed) : rng(seed) {}

    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

    Term term() {
        switch (pick(6)) {
            case 0: return Term::variable("?v" + std::to_string(pick(5)));
            case 1: return Term::anonymous();
            case 2: return Term::identifier("c" + std::to_string(pick(5)));
            case 3: return Term::qname("p" + std::to_string(pick(2)), "x" + std::to_string(pick(3)));
            case 4: return Term::string("s " + std::to_string(pick(9)));
            default: return Term::number(std::to_string(pick(100)));
        }
    }

    Term subject() { return pick(3) ? Term::variable("?v" + std::to_string(pick(5))) : Term::identifier("i" + std::to_string(pick(4))); }

    Expr atom() {
        switch (pick(3)) {
            case 0: {
                Molecule m;
                m.subject = subject();
                int types = pick(3);
                for (int i = 0; i < types; ++i) m.types.push_back(Term::identifier("C" + std::to_string(pick(6))));
                m.types_braced = m.types.size() > 1;
                int attrs = m.types.empty() ? 1 + pick(2) : pick(3);
                for (int i = 0; i < attrs; ++i) {
                    AttrValue a{Term::identifier("a" + std::to_string(pick(4))), {term()}, false};
                    if (pick(4) == 0) {
                        a.values.push_back(term());
                        a.braced = true;
                    }
                    m.attrs.push_back(a);
                }
                m.attrs_first = !m.attrs.empty() && !m.types.empty() && pick(2);
                return Expr::make_molecule(m);
            }
            case 1: return Expr::equality(subject(), term());
            default: {
                std::vector<Term> args;
                int n = 1 + pick(3);
                for (int i = 0; i < n; ++i) args.push_back(term());
                return Expr::relation_application(Term::identifier("r" + std::to_string(pick(3))), args);
            }
        }
    }

    /// Expression at a given precedence level: 0 = or, 1 = and, 2 = not/primary.
    Expr expr(int depth, int level = 0) {
        if (depth <= 0) return atom();
        int choice = pick(5);
        if (choice == 0 && level == 0) {
            std::vector<Expr> c;
            int n = 2 + pick(2);
            for (int i = 0; i < n; ++i) c.push_back(expr(depth - 1, 1));
            return Expr::disjunction(c);
        }
        if (choice == 1 && level <= 1) {
            std::vector<Expr> c;
            int n = 2 + pick(2);
            for (int i = 0; i < n; ++i) c.push_back(expr(depth - 1, 2));
            return Expr::conjunction(c);
        }
        if (choice == 2) {
            Expr inner = pick(2) ? Expr::grouping(expr(depth - 1, 0)) : atom();
            if (inner.kind == Expr::Kind::Equality) inner = Expr::grouping(inner);
            return Expr::negation(static_cast<NegationFlavor>(pick(3)), inner);
        }
        if (choice == 3) return Expr::grouping(expr(depth - 1, 0));
        return atom();
    }
};

}  // namespace

// ---------------------------------------------------------------- tokenizer

TEST(Tokenizer, VariableKeywordIdentifier) {
    auto t = tokenize("?x memberOf Human");
    ASSERT_EQ(t.size(), 4u);
    EXPECT_EQ(t[0].kind, TokenKind::Variable);
    EXPECT_EQ(t[0].lexeme, "?x");
    EXPECT_TRUE(t[1].is_keyword("memberOf"));
    EXPECT_EQ(t[2].kind, TokenKind::Identifier);
    EXPECT_EQ(t[2].lexeme, "Human");
    EXPECT_EQ(t[3].kind, TokenKind::End);
}

TEST(Tokenizer, EmptyInput) {
    auto t = tokenize("");
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t[0].kind, TokenKind::End);
}

TEST(Tokenizer, AnonymousVariable) {
    auto t = tokenize("?#");
    EXPECT_EQ(t[0].kind, TokenKind::AnonVariable);
    EXPECT_EQ(t[0].lexeme, "?#");
}

TEST(Tokenizer, CommentsSkipped) {
    auto t = tokenize("/* block\n comment */ ?x // line\n memberOf C");
    ASSERT_EQ(t.size(), 4u);
    EXPECT_EQ(t[0].position.line, 2u);
    EXPECT_EQ(t[1].position.line, 3u);
}

TEST(Tokenizer, PositionsStrictlyIncrease) {
    auto t = tokenize(corpus("capability"));
    for (std::size_t i = 1; i + 1 < t.size(); ++i) EXPECT_LT(t[i - 1].position.offset, t[i].position.offset);
}

TEST(Tokenizer, LiteralKinds) {
    auto t = tokenize("_\"http://x/y#z\" \"text\" -1.5 _date(1949,9,12) dc#title loc:location");
    EXPECT_EQ(t[0].kind, TokenKind::Iri);
    EXPECT_EQ(t[0].lexeme, "http://x/y#z");
    EXPECT_EQ(t[1].kind, TokenKind::String);
    EXPECT_EQ(t[1].lexeme, "text");
    EXPECT_EQ(t[2].kind, TokenKind::Number);
    EXPECT_EQ(t[2].lexeme, "-1.5");
    EXPECT_EQ(t[3].kind, TokenKind::DateCtor);
    auto qn = std::find_if(t.begin(), t.end(), [](const Token& k) { return k.kind == TokenKind::QName; });
    EXPECT_NE(qn, t.end());
}

TEST(Tokenizer, LexErrorHasPosition) {
    try {
        tokenize("?x memberOf\n  Human $ Primate");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), errc::LexError);
        ASSERT_TRUE(e.position());
        EXPECT_EQ(e.position()->line, 2u);
        EXPECT_EQ(e.position()->column, 9u);
    }
}

TEST(Tokenizer, UnterminatedStringIsLexError) {
    try {
        tokenize("?x[name hasValue \"open");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), errc::LexError);
    }
}

TEST(Tokenizer, TotalityOverRandomBytes) {
    std::mt19937 rng(3);
    const std::string alphabet = "?#_\"()[]{},.:=!-/* \n\tabcXYZ019memberOf and or not";
    for (int i = 0; i < 2000; ++i) {
        std::string s;
        int n = std::uniform_int_distribution<int>(0, 40)(rng);
        for (int k = 0; k < n; ++k) s += alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)];
        try {
            auto t = tokenize(s);
            EXPECT_EQ(t.back().kind, TokenKind::End);
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), errc::LexError) << s;
            ASSERT_TRUE(e.position());
            EXPECT_LE(e.position()->offset, s.size());
        }
    }
}

// ---------------------------------------------------------------- documents

TEST(Document, HumanConcept) {
    auto doc = parse_document(corpus("human"));
    const auto& c = only<ConceptAst>(doc);
    EXPECT_EQ(c.id.text, "Human");
    EXPECT_EQ(c.supers.items.size(), 2u);
    EXPECT_TRUE(c.supers.braced);
    // the listing declares eleven attributes, hasName through hasCitizenship
    EXPECT_EQ(c.attributes.size(), 11u);
    ASSERT_TRUE(c.nfp);
    EXPECT_EQ(c.nfp->entries.size(), 2u);
    EXPECT_EQ(c.attributes[1].constraint_kind, "impliesType");
}

TEST(Document, MaryInstance) {
    auto doc = parse_document(corpus("mary"));
    const auto& i = only<InstanceAst>(doc);
    EXPECT_EQ(i.member_of.items.size(), 2u);
    ASSERT_TRUE(i.nfp);
    EXPECT_FALSE(i.nfp->long_form);
    const AttrValue* child = nullptr;
    for (const auto& v : i.values)
        if (v.attribute.text == "hasChild") child = &v;
    ASSERT_NE(child, nullptr);
    ASSERT_EQ(child->values.size(), 2u);
    EXPECT_EQ(child->values[0].text, "Paul");
    EXPECT_EQ(child->values[1].text, "Susan");
    EXPECT_EQ(i.values[1].values[0].kind, Term::Kind::DataValue);
}

TEST(Document, DistanceRelation) {
    auto doc = parse_document(corpus("distance"));
    const auto& r = only<RelationAst>(doc);
    EXPECT_EQ(r.params.size(), 3u);
    EXPECT_EQ(r.params[2].constraint_kind, "impliesType");
    ASSERT_EQ(r.supers.items.size(), 1u);
    EXPECT_EQ(r.supers.items[0].text, "measurement");
}

TEST(Document, BmiAxiomAndCapabilityParse) {
    auto bmi = parse_document(corpus("bmi_axiom"));
    EXPECT_TRUE(std::holds_alternative<AxiomAst>(bmi.elements.at(0)));
    auto cap = parse_document(corpus("capability"));
    const auto& c = only<CapabilityAst>(cap);
    EXPECT_GE(c.sections.size(), 3u);
    EXPECT_EQ(c.sections[0].kind, "precondition");
}

TEST(Document, FullOntologyHeader) {
    auto doc = parse_document(read_file(warehouse_dir() / "trainConnection.wsml"));
    EXPECT_TRUE(doc.variant.has_value());
    EXPECT_TRUE(doc.has_ontology);
    ASSERT_TRUE(doc.iri);
    EXPECT_EQ(doc.iri->text, "http://www.example.org/ontologies/trainConnection");
    EXPECT_EQ(doc.imports.items.size(), 1u);
    EXPECT_GE(doc.namespaces.size(), 2u);
    EXPECT_EQ(doc.namespaces[0].prefix, "");
}

TEST(Document, RoundTripAllCorpusFiles) {
    std::vector<std::filesystem::path> files;
    for (const char* n : {"human", "mary", "distance", "bmi_axiom", "capability"})
        files.push_back(data_dir() / "corpus" / (std::string(n) + ".wsml"));
    for (const auto& e : std::filesystem::directory_iterator(warehouse_dir())) files.push_back(e.path());
    for (const auto& f : files) {
        auto doc = parse_document(read_file(f));
        std::string text = serialize(doc);
        auto again = parse_document(text);
        EXPECT_EQ(again, doc) << f << "\n" << text;
        EXPECT_EQ(serialize(again), text) << f;
    }
}

TEST(Document, CapabilityReserializesTokenIdentical) {
    std::string original = corpus("capability");
    std::string text = serialize(parse_document(original));
    // the dc#description separators normalise to ':'; compare everything else token by token
    auto norm = [](std::string s) {
        for (std::size_t p; (p = s.find("dc#")) != std::string::npos;) s.replace(p, 3, "dc:");
        for (std::size_t p; (p = s.find("wsmI#")) != std::string::npos;) s.replace(p, 5, "wsmI:");
        for (std::size_t p; (p = s.find("oo#")) != std::string::npos;) s.replace(p, 3, "oo:");
        return s;
    };
    EXPECT_EQ(token_diff(norm(original), norm(text)), "");
}

TEST(Document, ParseErrorCarriesExpectedAndFound) {
    try {
        parse_document("concept Human\n  hasName ofType\nconcept Other");
        FAIL();
    } catch (const ParseError& e) {
        ASSERT_TRUE(e.position());
        EXPECT_EQ(e.position()->line, 3u);
        EXPECT_FALSE(e.expected().empty());
        EXPECT_EQ(e.found(), "concept");
    }
}

// ---------------------------------------------------------------- expressions

TEST(Expression, Equality) {
    Expr e = parse_logical_expression("?end = innsbruckHbf");
    ASSERT_EQ(e.kind, Expr::Kind::Equality);
    EXPECT_EQ(e.lhs, Term::variable("?end"));
    EXPECT_EQ(e.rhs, Term::identifier("innsbruckHbf"));
}

TEST(Expression, RelationWithAnonymousArgument) {
    Expr e = parse_logical_expression("equalDistance(?d1, ?#)");
    ASSERT_EQ(e.kind, Expr::Kind::Relation);
    EXPECT_EQ(e.relation.text, "equalDistance");
    ASSERT_EQ(e.args.size(), 2u);
    EXPECT_EQ(e.args[0], Term::variable("?d1"));
    EXPECT_EQ(e.args[1].kind, Term::Kind::Anonymous);
    EXPECT_TRUE(e.arg_names.empty());
}

TEST(Expression, PrecedenceNotAndOr) {
    Expr e = parse_logical_expression("?a memberOf A or not ?b memberOf B and ?c memberOf C.");
    ASSERT_EQ(e.kind, Expr::Kind::Disjunction);
    ASSERT_EQ(e.children.size(), 2u);
    EXPECT_EQ(e.children[0].kind, Expr::Kind::Molecule);
    const Expr& conj = e.children[1];
    ASSERT_EQ(conj.kind, Expr::Kind::Conjunction);
    EXPECT_EQ(conj.children[0].kind, Expr::Kind::Negation);
    EXPECT_EQ(conj.children[1].kind, Expr::Kind::Molecule);
}

TEST(Expression, GroupingPreserved) {
    Expr e = parse_logical_expression("( ?a memberOf A or ?b memberOf B ) and ?c memberOf C");
    ASSERT_EQ(e.kind, Expr::Kind::Conjunction);
    EXPECT_EQ(e.children[0].kind, Expr::Kind::Grouping);
    EXPECT_EQ(e.children[0].children[0].kind, Expr::Kind::Disjunction);
}

TEST(Expression, NegationFlavours) {
    EXPECT_EQ(parse_logical_expression("not ?x memberOf C").flavor, NegationFlavor::Not);
    EXPECT_EQ(parse_logical_expression("naf ?x memberOf C").flavor, NegationFlavor::Naf);
    EXPECT_EQ(parse_logical_expression("neg ?x memberOf C").flavor, NegationFlavor::Neg);
}

TEST(Expression, SerializeNegation) {
    Molecule m;
    m.subject = Term::variable("?x");
    m.types = {Term::identifier("C")};
    Expr grouped = Expr::negation(NegationFlavor::Not, Expr::grouping(Expr::make_molecule(m)));
    EXPECT_EQ(token_diff("not ( ?x memberOf C ).", serialize(grouped)), "");
    EXPECT_EQ(parse_logical_expression(serialize(grouped)), grouped);
    // groupings are explicit nodes, so a bare operand prints bare
    Expr bare = Expr::negation(NegationFlavor::Not, Expr::make_molecule(m));
    EXPECT_EQ(token_diff("not ?x memberOf C.", serialize(bare)), "");
    EXPECT_EQ(parse_logical_expression(serialize(bare)), bare);
}

TEST(Expression, MoleculeForms) {
    Expr e = parse_logical_expression("?x[gender hasValue {?y, ?z}] memberOf Human");
    ASSERT_EQ(e.kind, Expr::Kind::Molecule);
    EXPECT_TRUE(e.molecule.attrs_first);
    ASSERT_EQ(e.molecule.attrs.size(), 1u);
    EXPECT_TRUE(e.molecule.attrs[0].braced);
    EXPECT_EQ(e.molecule.attrs[0].values.size(), 2u);
    EXPECT_EQ(e.molecule.types.size(), 1u);
}

TEST(Expression, TrailingPeriodOptional) {
    EXPECT_EQ(parse_logical_expression("?x memberOf C"), parse_logical_expression("?x memberOf C."));
    EXPECT_EQ(serialize(parse_logical_expression("?x memberOf C")).back(), '.');
}

TEST(Expression, UnsupportedConstructs) {
    struct Case {
        const char* text;
        std::size_t line, column;
    };
    for (const Case& c : {Case{"forAll ?x ( ?x memberOf Human ).", 1, 1},
                          Case{"?x memberOf Human and\n  exists ?y ( ?y memberOf Human ).", 2, 3},
                          Case{"?x memberOf Human implies ?x memberOf Primate.", 1, 19},
                          Case{"?x memberOf Human impliedBy ?x memberOf Primate.", 1, 19},
                          Case{"?x memberOf Human equivalent ?x memberOf Primate.", 1, 19},
                          Case{"?x memberOf Human :- ?x memberOf Primate.", 1, 19},
                          Case{"!- ?x memberOf Human.", 1, 1}}) {
        Error e = error_of(c.text);
        EXPECT_NE(std::string(e.what()).find("unsupported construct"), std::string::npos) << c.text;
        ASSERT_TRUE(e.position()) << c.text;
        EXPECT_EQ(e.position()->line, c.line) << c.text;
        EXPECT_EQ(e.position()->column, c.column) << c.text;
    }
}

TEST(Expression, ConstraintAxiomAccepted) {
    auto doc = parse_document("axiom a1 definedBy !- ?x memberOf Human and ?x memberOf Robot.");
    const auto& a = only<AxiomAst>(doc);
    EXPECT_TRUE(a.constraint);
    EXPECT_EQ(parse_document(serialize(doc)), doc);
}

TEST(Expression, NamedRelationArguments) {
    Expr e = parse_logical_expression("bmi(weight hasValue ?w, height hasValue ?h, ?b)");
    ASSERT_EQ(e.kind, Expr::Kind::Relation);
    EXPECT_EQ(e.arg_names, (std::vector<std::string>{"weight", "height", ""}));
    EXPECT_EQ(parse_logical_expression(serialize(e)), e);
}

TEST(Expression, ErrorPositionsWithinInput) {
    for (const char* bad : {"?x memberOf", "?x and", "( ?x memberOf C", "?x[a hasValue ] memberOf C", "or ?x", "?x = "}) {
        Error e = error_of(bad);
        ASSERT_TRUE(e.position()) << bad;
        EXPECT_LE(e.position()->offset, std::string_view(bad).size()) << bad;
    }
}

TEST(Expression, RandomAstRoundTrip) {
    ExprGen gen(20061);
    for (int i = 0; i < 1500; ++i) {
        Expr e = gen.expr(6);
        std::string text = serialize(e);
        Expr back;
        try {
            back = parse_logical_expression(text);
        } catch (const Error& err) {
            ADD_FAILURE() << text << "\n" << err.what();
            continue;
        }
        EXPECT_EQ(back, e) << text;
        EXPECT_EQ(serialize(back), text);
    }
}
