#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "axiomkit/iri.hpp"
#include "axiomkit/ontology_store.hpp"
#include "scenarios.hpp"
#include "support.hpp"

using namespace axiomkit;
using namespace testsupport;

namespace {

const std::string kTrain = "http://www.example.org/ontologies/trainConnection";
const std::string kLoc = "http://www.example.org/ontologies/loc";
const std::string kTrainNs = kTrain + "#";
const std::string kXsd = std::string(iri::kBuiltinOntology);

bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

std::string code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return "";
}

const char* kBiology = R"(namespace { _"http://www.example.org/биология#" }
ontology _"http://www.example.org/биология"
concept Човек
  произлиза-от ofType Човек
)";

const char* kPersons = R"(namespace { _"http://www.example.org/личности#",
  bio _"http://www.example.org/биология#" }
ontology _"http://www.example.org/личности"
  importsOntology _"http://www.example.org/биология"
concept Личност subConceptOf bio#Човек
  име ofType _string
)";

// Five concepts: C inherits attribute a from A (type T1) and from B (type T2).
const char* kConjunction = R"(namespace { _"http://www.example.org/conj#" }
ontology _"http://www.example.org/conj"
concept T1
concept T2
concept A
  a ofType T1
  x ofType _string
concept B
  a ofType T2
  y ofType _integer
concept C subConceptOf {A, B}
  z ofType _float
)";

struct Travel : ::testing::Test {
    OntologyWarehouse warehouse = OntologyWarehouse::open(warehouse_dir());
    OntologyRegistry reg;
    void SetUp() override {
        reg.load_by_iri(warehouse, kTrain);
        reg.load_by_iri(warehouse, kLoc);
    }
};

}  // namespace

// ---------------------------------------------------------------- warehouse

TEST(Warehouse, IndexesByDeclaredIri) {
    TempDir dir;
    dir.write("whatever-name.wsml", read_file(data_dir() / "warehouses/datetime/wsmo_dateTime.wsml"));
    auto w = OntologyWarehouse::open(dir.path());
    ASSERT_EQ(w.index().size(), 1u);
    EXPECT_EQ(w.index().begin()->first, "http://www.wsmo.org/ontologies/dateTime");
    EXPECT_EQ(w.find("http://www.wsmo.org/ontologies/dateTime"), dir.path() / "whatever-name.wsml");
}

TEST(Warehouse, EmptyDirectoryHasEmptyIndex) {
    TempDir dir;
    EXPECT_TRUE(OntologyWarehouse::open(dir.path()).index().empty());
}

TEST(Warehouse, MissingDirectory) {
    EXPECT_EQ(code_of([] { OntologyWarehouse::open("/nonexistent/axiomkit/warehouse"); }), errc::DirectoryNotFound);
}

TEST(Warehouse, DuplicateIriNamesBothFiles) {
    TempDir dir;
    std::string text = read_file(data_dir() / "warehouses/datetime/wsmo_dateTime.wsml");
    dir.write("one.wsml", text);
    dir.write("two.wsml", text);
    try {
        OntologyWarehouse::open(dir.path());
        FAIL() << "expected DuplicateIri";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), errc::DuplicateIri);
        std::string msg = e.what();
        EXPECT_NE(msg.find("one.wsml"), std::string::npos);
        EXPECT_NE(msg.find("two.wsml"), std::string::npos);
    }
}

TEST(Warehouse, UnparsableFilesBecomeWarnings) {
    TempDir dir;
    dir.write("bad.wsml", "ontology _\"http://x/broken\"\nconcept (((\n");
    dir.write("good.wsml", read_file(data_dir() / "warehouses/datetime/wsmo_dateTime.wsml"));
    auto w = OntologyWarehouse::open(dir.path());
    EXPECT_EQ(w.index().size(), 1u);
    EXPECT_EQ(w.warnings().size(), 1u);
}

TEST(Warehouse, RescanIsStable) {
    auto a = OntologyWarehouse::open(warehouse_dir());
    auto b = OntologyWarehouse::open(warehouse_dir());
    EXPECT_EQ(a.index(), b.index());
    for (const auto& [iri, path] : a.index()) EXPECT_TRUE(std::filesystem::is_regular_file(path)) << iri;
}

// ---------------------------------------------------------------- loading

TEST(Registry, BuiltinOntologyAlwaysPresent) {
    OntologyRegistry reg;
    EXPECT_TRUE(reg.is_loaded(kXsd));
    EXPECT_EQ(reg.short_name(kXsd), "xsd");
    EXPECT_EQ(reg.display_name(kXsd + "float"), "xsd:float");
    EXPECT_TRUE(reg.list_relations().empty());
}

TEST_F(Travel, LoadsItineraryAndImport) {
    EXPECT_NE(reg.find_concept(kTrainNs + "itinerary"), nullptr);
    EXPECT_TRUE(reg.is_loaded(kLoc));
    EXPECT_EQ(reg.short_name(kTrain), "trainConnection");
    EXPECT_EQ(reg.short_name(kLoc), "loc");
}

TEST(Registry, ImportsLoadOnDemand) {
    auto w = OntologyWarehouse::open(warehouse_dir());
    OntologyRegistry reg;
    reg.load_by_iri(w, kTrain);
    EXPECT_FALSE(reg.is_loaded(kLoc));
    EXPECT_TRUE(reg.is_stub(kLoc + "#location"));
    EXPECT_EQ(reg.load_imported(w, kLoc + "#location"), kLoc);
    EXPECT_FALSE(reg.is_stub(kLoc + "#location"));
    EXPECT_TRUE(reg.is_compatible(reg.type_ref(kTrainNs + "station"), {reg.type_ref(kLoc + "#location")}));
}

TEST_F(Travel, LoadIsIdempotent) {
    auto before = reg.all_concepts();
    auto order = reg.load_order();
    EXPECT_EQ(reg.load_by_iri(warehouse, kTrain), kTrain);
    EXPECT_EQ(reg.load_file(warehouse_dir() / "trainConnection.wsml"), kTrain);
    EXPECT_EQ(reg.all_concepts(), before);
    EXPECT_EQ(reg.load_order(), order);
    EXPECT_EQ(reg.short_name(kTrain), "trainConnection");
}

TEST(Registry, NotInWarehouse) {
    auto w = OntologyWarehouse::open(warehouse_dir());
    OntologyRegistry reg;
    EXPECT_EQ(code_of([&] { reg.load_by_iri(w, "http://www.example.org/nowhere"); }), errc::NotInWarehouse);
}

TEST(Registry, ParseErrorCarriesPosition) {
    TempDir dir;
    auto p = dir.write("bad.wsml", "ontology _\"http://x/o\"\nconcept A\n  a ofType\n");
    OntologyRegistry reg;
    try {
        reg.load_file(p);
        FAIL() << "expected ParseError";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), errc::ParseError);
        ASSERT_TRUE(e.position().has_value());
        EXPECT_GE(e.position()->line, 3u);
    }
}

TEST(Registry, MissingFileIsIoError) {
    OntologyRegistry reg;
    EXPECT_EQ(code_of([&] { reg.load_file("/nonexistent/file.wsml"); }), errc::IoError);
}

TEST(Registry, AbsentImportLeavesStubs) {
    TempDir dir;
    auto p = dir.write("persons.wsml", kPersons);
    OntologyRegistry reg;
    reg.load_file(p);
    const std::string stub = "http://www.example.org/биология#Човек";
    EXPECT_TRUE(reg.is_stub(stub));
    EXPECT_EQ(reg.stub_owner(stub), "http://www.example.org/биология");
    const ConceptDef& person = reg.complete_attributes("http://www.example.org/личности#Личност");
    EXPECT_EQ(person.effective_attributes.size(), 1u);
    // stubs are not selectable
    auto all = reg.list_compatible_concepts({TypeRef{std::string(iri::kUniversal), TypeKind::Universal}});
    EXPECT_FALSE(contains(all.selectable, stub));
    // compatibility against a stub asks for the import first
    EXPECT_EQ(code_of([&] { reg.is_compatible(reg.type_ref(stub), {reg.type_ref(stub)}); }), errc::UnresolvedStub);
    auto only_stub = reg.list_compatible_concepts({reg.type_ref(stub)});
    EXPECT_TRUE(only_stub.selectable.empty());
    EXPECT_FALSE(only_stub.notices.empty());
}

TEST(Registry, LoadingImportCompletesAttributes) {
    TempDir dir;
    dir.write("biology.wsml", kBiology);
    auto p = dir.write("persons.wsml", kPersons);
    auto w = OntologyWarehouse::open(dir.path());
    OntologyRegistry reg;
    reg.load_file(p);
    const std::string stub = "http://www.example.org/биология#Човек";
    EXPECT_EQ(reg.load_imported(w, stub), "http://www.example.org/биология");
    EXPECT_FALSE(reg.is_stub(stub));
    const ConceptDef& person = reg.complete_attributes("http://www.example.org/личности#Личност");
    ASSERT_EQ(person.effective_attributes.size(), 2u);
    EXPECT_EQ(person.effective_attributes[0].attr.name, "име");
    EXPECT_EQ(person.effective_attributes[1].attr.name, "произлиза-от");
    EXPECT_EQ(person.effective_attributes[1].inheritance, InheritanceKind::Inherited);
    // already resolved: no-op
    auto order = reg.load_order();
    reg.load_imported(w, stub);
    EXPECT_EQ(reg.load_order(), order);
}

TEST(Registry, LoadImportedMissingFromWarehouse) {
    TempDir dir;
    auto p = dir.write("persons.wsml", kPersons);
    auto w = OntologyWarehouse::open(dir.path());
    OntologyRegistry reg;
    reg.load_file(p);
    EXPECT_EQ(code_of([&] { reg.load_imported(w, "http://www.example.org/биология#Човек"); }), errc::NotInWarehouse);
}

TEST(Registry, MonotonicLoading) {
    auto w = OntologyWarehouse::open(warehouse_dir());
    OntologyRegistry reg;
    reg.load_by_iri(w, kLoc);
    auto concepts = reg.all_concepts();
    auto instances = reg.all_instances();
    reg.load_by_iri(w, kTrain);
    for (const auto& c : concepts) EXPECT_TRUE(contains(reg.all_concepts(), c)) << c;
    for (const auto& i : instances) EXPECT_TRUE(contains(reg.all_instances(), i)) << i;
}

// ---------------------------------------------------------------- attribute completion

TEST(Attributes, NoSuperconceptsMeansOwn) {
    OntologyRegistry reg;
    reg.load_text(kConjunction);
    const ConceptDef& a = reg.complete_attributes("http://www.example.org/conj#A");
    ASSERT_EQ(a.effective_attributes.size(), a.own_attributes.size());
    for (std::size_t i = 0; i < a.own_attributes.size(); ++i) {
        EXPECT_EQ(a.effective_attributes[i].attr, a.own_attributes[i]);
        EXPECT_EQ(a.effective_attributes[i].inheritance, InheritanceKind::Own);
    }
}

TEST(Attributes, ConjunctionOfInheritedConstraints) {
    OntologyRegistry reg;
    reg.load_text(kConjunction);
    const std::string ns = "http://www.example.org/conj#";
    const ConceptDef& c = reg.complete_attributes(ns + "C");
    // hand-computed: own z, then A's a and x, then B's y; a carries {T1, T2}
    std::vector<std::string> names;
    for (const auto& e : c.effective_attributes) names.push_back(e.attr.name);
    EXPECT_EQ(names, (std::vector<std::string>{"z", "a", "x", "y"}));
    const EffectiveAttribute* a = c.find_attribute("a");
    ASSERT_NE(a, nullptr);
    std::vector<std::string> types;
    for (const auto& t : a->attr.types) types.push_back(t.iri);
    std::sort(types.begin(), types.end());
    EXPECT_EQ(types, (std::vector<std::string>{ns + "T1", ns + "T2"}));
    EXPECT_EQ(a->inheritance, InheritanceKind::Inherited);
}

TEST(Attributes, OverrideKeepsLocalAndInherited) {
    OntologyRegistry reg;
    reg.load_text(R"(namespace { _"http://www.example.org/ov#" }
ontology _"http://www.example.org/ov"
concept T1
concept T2
concept P
  a ofType T1
concept Q subConceptOf P
  a ofType T2
)");
    const std::string ns = "http://www.example.org/ov#";
    const EffectiveAttribute* a = reg.complete_attributes(ns + "Q").find_attribute("a");
    ASSERT_NE(a, nullptr);
    EXPECT_EQ(a->inheritance, InheritanceKind::Overridden);
    ASSERT_EQ(a->attr.types.size(), 2u);
    EXPECT_EQ(a->attr.types[0].iri, ns + "T2");
    EXPECT_EQ(a->attr.types[1].iri, ns + "T1");
}

TEST(Attributes, CompletionIsIdempotent) {
    OntologyRegistry reg;
    reg.load_text(kConjunction);
    auto first = reg.complete_attributes("http://www.example.org/conj#C").effective_attributes;
    auto second = reg.complete_attributes("http://www.example.org/conj#C").effective_attributes;
    EXPECT_EQ(first, second);
    OntologyRegistry again;
    again.load_text(kConjunction);
    EXPECT_EQ(again.complete_attributes("http://www.example.org/conj#C").effective_attributes, first);
}

TEST(Attributes, CyclicInheritanceIsRejected) {
    OntologyRegistry reg;
    EXPECT_EQ(code_of([&] {
                  reg.load_text(R"(namespace { _"http://www.example.org/cyc#" }
ontology _"http://www.example.org/cyc"
concept A subConceptOf B
concept B subConceptOf A
)");
              }),
              errc::CyclicInheritance);
}

// ---------------------------------------------------------------- names

TEST(ShortNames, SegmentRuleAndCollisions) {
    auto s = short_name_scenario();
    EXPECT_EQ(s, (std::vector<std::string>{"dateTime", "dateTime1"}));
    EXPECT_EQ(iri::last_segment(iri::kBuiltinOntology), "XMLSchema");
}

TEST(ShortNames, Bijection) {
    auto w = OntologyWarehouse::open(data_dir() / "warehouses" / "datetime");
    OntologyRegistry reg;
    for (const auto& [iri, path] : w.index()) reg.load_by_iri(w, iri);
    reg.load_by_iri(OntologyWarehouse::open(warehouse_dir()), kTrain);
    std::set<std::string> seen;
    for (const auto& [iri, o] : reg.ontologies()) {
        EXPECT_TRUE(seen.insert(reg.short_name(iri)).second) << iri;
        EXPECT_EQ(reg.ontology_by_short_name(reg.short_name(iri)), iri);
    }
}

TEST(ShortNames, LoadIdempotenceKeepsName) {
    auto w = OntologyWarehouse::open(data_dir() / "warehouses" / "datetime");
    OntologyRegistry reg;
    reg.load_by_iri(w, "http://www.wsmo.org/ontologies/dateTime");
    reg.load_by_iri(w, "http://infrawebs.org/repository/dateTime");
    reg.load_by_iri(w, "http://www.wsmo.org/ontologies/dateTime");
    EXPECT_EQ(reg.short_name("http://www.wsmo.org/ontologies/dateTime"), "dateTime");
    EXPECT_EQ(reg.short_name("http://infrawebs.org/repository/dateTime"), "dateTime1");
}

TEST_F(Travel, DisplayNames) {
    EXPECT_EQ(reg.display_name(kTrainNs + "station"), "trainConnection:station");
    EXPECT_EQ(reg.display_name(kLoc + "#location"), "loc:location");
    EXPECT_EQ(reg.display_name(kXsd + "float"), "xsd:float");
    EXPECT_EQ(reg.qualified_name(kTrainNs + "station", kTrain), "station");
    EXPECT_EQ(reg.qualified_name(kLoc + "#location", kTrain), "loc:location");
    EXPECT_EQ(code_of([&] { reg.display_name("http://www.example.org/unloaded#X"); }), errc::UnknownElement);
}

TEST(DisplayNames, SameLocalNameInTwoOntologies) {
    OntologyRegistry reg;
    reg.load_text("namespace { _\"http://www.example.org/biology#\" }\nontology _\"http://www.example.org/biology\"\nconcept Human\n");
    reg.load_text("namespace { _\"http://www.example.org/scifi#\" }\nontology _\"http://www.example.org/scifi\"\nconcept Human\n");
    EXPECT_EQ(reg.display_name("http://www.example.org/biology#Human"), "biology:Human");
    EXPECT_EQ(reg.display_name("http://www.example.org/scifi#Human"), "scifi:Human");
    EXPECT_EQ(code_of([&] { reg.resolve_concept("Human"); }), errc::UnknownConcept);
    EXPECT_EQ(reg.resolve_concept("scifi:Human"), "http://www.example.org/scifi#Human");
}

// ---------------------------------------------------------------- compatibility

TEST_F(Travel, CompatibilityExamples) {
    TypeRef station = reg.type_ref(kTrainNs + "station");
    TypeRef trip = reg.type_ref(kTrainNs + "trip");
    TypeRef train_trip = reg.type_ref(kTrainNs + "trainTrip");
    TypeRef location = reg.type_ref(kLoc + "#location");
    TypeRef universal = reg.type_ref(std::string(iri::kUniversal));
    EXPECT_TRUE(universal.universal());
    EXPECT_TRUE(reg.is_compatible(station, {station}));
    EXPECT_TRUE(reg.is_compatible(train_trip, {trip}));
    EXPECT_FALSE(reg.is_compatible(trip, {train_trip}));
    EXPECT_TRUE(reg.is_compatible(station, {location, universal}));
    EXPECT_FALSE(reg.is_compatible(station, {location, trip}));
}

TEST(Compatibility, BuiltinSubtypes) {
    OntologyRegistry reg;
    EXPECT_TRUE(reg.is_compatible(reg.type_ref(kXsd + "dayOfMonth"), {reg.type_ref(kXsd + "integer")}));
    EXPECT_FALSE(reg.is_compatible(reg.type_ref(kXsd + "integer"), {reg.type_ref(kXsd + "dayOfMonth")}));
    EXPECT_FALSE(reg.is_compatible(reg.type_ref(kXsd + "float"), {reg.type_ref(kXsd + "integer")}));
    EXPECT_EQ(reg.type_ref(kXsd + "float").kind, TypeKind::Builtin);
}

TEST(Compatibility, RandomDagsAgreeWithClosure) {
    std::mt19937 rng(41);
    for (int i = 0; i < 25; ++i) {
        Dag d = random_dag(rng, 30);
        EXPECT_EQ(subsumption_mismatches(d), 0u) << d.wsml;
    }
}

TEST_F(Travel, CompatibleConceptListing) {
    auto trips = reg.list_compatible_concepts({reg.type_ref(kTrainNs + "trip")});
    EXPECT_TRUE(contains(trips.selectable, kTrainNs + "trip"));
    EXPECT_TRUE(contains(trips.selectable, kTrainNs + "trainTrip"));
    EXPECT_FALSE(contains(trips.selectable, kTrainNs + "station"));
    auto all = reg.list_compatible_concepts({reg.type_ref(std::string(iri::kUniversal))});
    for (const auto& c : reg.all_concepts()) EXPECT_TRUE(contains(all.selectable, c)) << c;
    std::set<std::string> unique(all.selectable.begin(), all.selectable.end());
    EXPECT_EQ(unique.size(), all.selectable.size());
}

TEST_F(Travel, CompatibleInstanceListing) {
    auto at_station = reg.list_compatible_instances({reg.type_ref(kTrainNs + "station")});
    EXPECT_TRUE(contains(at_station, kTrainNs + "innsbruckHbf"));
    EXPECT_TRUE(reg.list_compatible_instances({reg.type_ref(kXsd + "float")}).empty());
    auto locations = reg.list_compatible_instances({reg.type_ref(kLoc + "#location")});
    EXPECT_TRUE(contains(locations, kTrainNs + "innsbruckHbf"));
    EXPECT_TRUE(contains(locations, kLoc + "#austria"));
}

TEST(Compatibility, InstanceListingMatchesClosureFilter) {
    std::mt19937 rng(5);
    for (int round = 0; round < 10; ++round) {
        Dag d = random_dag(rng, 20);
        std::string text = d.wsml;
        std::uniform_int_distribution<int> pick(0, d.size - 1);
        std::vector<int> member(d.size);
        for (int i = 0; i < d.size; ++i) {
            member[i] = pick(rng);
            text += "instance i" + std::to_string(i) + " memberOf c" + std::to_string(member[i]) + "\n";
        }
        OntologyRegistry reg;
        reg.load_text(text);
        // closure by DFS over parents
        auto ancestors = [&](int c) {
            std::set<int> out;
            std::vector<int> stack{c};
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                if (!out.insert(x).second) continue;
                for (int p : d.parents[x]) stack.push_back(p);
            }
            return out;
        };
        for (int r = 0; r < d.size; ++r) {
            std::set<std::string> expected;
            for (int i = 0; i < d.size; ++i)
                if (ancestors(member[i]).count(r)) expected.insert(iri::namespace_of(dag_concept_iri(0)) + "i" + std::to_string(i));
            auto got = reg.list_compatible_instances({reg.type_ref(dag_concept_iri(r))});
            EXPECT_EQ(std::set<std::string>(got.begin(), got.end()), expected) << "required c" << r;
        }
    }
}

TEST_F(Travel, RelationsListed) {
    auto rels = reg.list_relations();
    ASSERT_TRUE(contains(rels, kTrainNs + "equalDistance"));
    const RelationDef* r = reg.find_relation(kTrainNs + "equalDistance");
    ASSERT_NE(r, nullptr);
    ASSERT_EQ(r->parameters.size(), 2u);
    EXPECT_EQ(r->parameters[0].name, "d1");
    EXPECT_EQ(r->parameters[1].types.front().iri, kTrainNs + "distance");
}

TEST(Relations, UnionOverOntologies) {
    OntologyRegistry reg;
    reg.load_text("namespace { _\"http://www.example.org/r1#\" }\nontology _\"http://www.example.org/r1\"\nrelation near(ofType _string, ofType _string)\n");
    reg.load_text("namespace { _\"http://www.example.org/r2#\" }\nontology _\"http://www.example.org/r2\"\nrelation near(ofType _integer)\n");
    auto rels = reg.list_relations();
    EXPECT_EQ(rels.size(), 2u);
    EXPECT_EQ(reg.display_name("http://www.example.org/r1#near"), "r1:near");
    EXPECT_EQ(reg.display_name("http://www.example.org/r2#near"), "r2:near");
}

// ---------------------------------------------------------------- tree

TEST_F(Travel, TreeShowsConceptsUnderEachSuperconcept) {
    std::string text = render_tree(reg.tree());
    EXPECT_NE(text.find("itinerary"), std::string::npos);
    EXPECT_NE(text.find("@"), std::string::npos);
    EXPECT_NE(text.find("innsbruckHbf"), std::string::npos);
    EXPECT_NE(text.find("equalDistance"), std::string::npos);
    // station sits under loc:location and, through trainTrip's attribute list, is not duplicated as a concept
    std::size_t count = 0;
    std::function<void(const std::vector<OntologyTreeNode>&)> walk = [&](const auto& forest) {
        for (const auto& n : forest) {
            if (n.letter == 'C' && n.iri == kTrainNs + "trainTrip") ++count;
            walk(n.children);
        }
    };
    walk(reg.tree());
    EXPECT_EQ(count, 1u);
}

TEST(Tree, MultipleSuperconceptsAppearOncePerParent) {
    OntologyRegistry reg;
    reg.load_text(kConjunction);
    std::size_t count = 0;
    std::function<void(const std::vector<OntologyTreeNode>&)> walk = [&](const auto& forest) {
        for (const auto& n : forest) {
            if (n.letter == 'C' && n.iri == "http://www.example.org/conj#C") ++count;
            walk(n.children);
        }
    };
    walk(reg.tree());
    EXPECT_EQ(count, 2u);
}
