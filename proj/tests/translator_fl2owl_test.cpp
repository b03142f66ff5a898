#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "owl2fl/flogic/parser.hpp"
#include "owl2fl/owl/parser.hpp"
#include "owl2fl/owl/writer.hpp"
#include "owl2fl/translate/flogic_to_owl.hpp"
#include "owl2fl/translate/owl_to_flogic.hpp"
#include "construct_corpus.hpp"

using namespace owl2fl;
using namespace owl2fl::translate;

namespace {

const char* kNs = "http://example.org/wine#";
owl::Iri W(const std::string& local) { return owl::Iri(kNs + local); }
owl::ClassExpressionPtr N(const std::string& local) { return owl::named(W(local)); }

flogic::Program program(const std::string& text) {
  auto r = flogic::parse_program(":- iribase{'http://example.org/wine#'}.\n" + text);
  EXPECT_TRUE(r.diagnostics.empty()) << (r.diagnostics.empty() ? "" : r.diagnostics[0].message);
  return r.program;
}

owl::OntologyDocument parse_row(const std::string& body) {
  auto r = owl::parse_document(test::wrap_owl(body));
  EXPECT_TRUE(r.document);
  return r.document.value_or(owl::OntologyDocument{});
}

std::string show(const owl::OntologyDocument& doc) { return owl::write_document(doc); }

owl::OntologyDocument round_trip(const owl::OntologyDocument& doc, Diagnostics* diags = nullptr) {
  auto fl = translate_ontology(doc);
  auto back = translate_program(fl.program);
  if (diags) *diags = back.diagnostics;
  return back.document;
}

bool has_code(const Diagnostics& d, std::string_view code) {
  return std::any_of(d.begin(), d.end(), [&](const Diagnostic& x) { return x.code == code; });
}

std::vector<owl::Axiom> axioms(std::initializer_list<owl::Axiom> a) { return a; }
owl::Axiom ax(owl::ClassAxiom a) { return {std::move(a), std::nullopt}; }
owl::Axiom ax(owl::PropertyAxiom a) { return {std::move(a), std::nullopt}; }
owl::Axiom ax(owl::Assertion a) { return {std::move(a), std::nullopt}; }

TEST(Fl2Owl, SubclassWithPrefix) {
  auto p = program(":- iriprefix{food = 'http://example.org/food#'}.\nWine::food:PotableLiquid.");
  auto rec = recognize_templates(p);
  ASSERT_EQ(rec.matches.size(), 1u);
  EXPECT_TRUE(rec.unmatched.empty());
  EXPECT_EQ(rec.matches[0].template_id, "rdfs:subClassOf");
  const auto doc = translate_program(p).document;
  EXPECT_TRUE(owl::same_axiom_set(
      doc.axioms, axioms({ax(owl::SubClassOf{N("Wine"), owl::named("http://example.org/food#PotableLiquid")})})));
}

TEST(Fl2Owl, DualPairConsumedTogether) {
  auto p = program("Wine::_object[hasMaker *=> Winery].\n?Y:Winery :- ?X:Wine, ?X[hasMaker -> ?Y].");
  auto rec = recognize_templates(p);
  ASSERT_EQ(rec.matches.size(), 1u);
  EXPECT_EQ(rec.matches[0].template_id, "owl:allValuesFrom");
  EXPECT_EQ(rec.matches[0].consumed, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(std::get<owl::Iri>(rec.matches[0].bindings.at("P")), W("hasMaker"));
  EXPECT_TRUE(rec.unmatched.empty());
}

TEST(Fl2Owl, HalfOfDualPairIsNotEnough) {
  auto p = program("Wine::_object[hasMaker *=> Winery].");
  auto r = translate_program(p);
  EXPECT_TRUE(r.document.axioms.empty());
  EXPECT_TRUE(has_code(r.diagnostics, codes::kUnrepresentableInOwl));
}

TEST(Fl2Owl, HandWrittenRuleUnmatched) {
  auto p = program("?X:A :- ?X[p -> ?Y], ?Y:B.");
  auto rec = recognize_templates(p);
  EXPECT_TRUE(rec.matches.empty());
  EXPECT_EQ(rec.unmatched, (std::vector<std::size_t>{0}));
  auto r = translate_program(p);
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].code, codes::kUnrepresentableInOwl);
  EXPECT_EQ(r.diagnostics[0].severity, Severity::Warning);
}

TEST(Fl2Owl, GrapeAssertions) {
  auto p = program("CabernetSauvignonGrape:WineGrape[hasColor -> 'Red'].");
  const auto doc = translate_program(p).document;
  const auto want = axioms({ax(owl::ClassAssertion{W("CabernetSauvignonGrape"), W("WineGrape")}),
                            ax(owl::PropertyAssertion{W("CabernetSauvignonGrape"), W("hasColor"), owl::Literal{"Red", "_string"}})});
  EXPECT_TRUE(owl::same_axiom_set(doc.axioms, want)) << show(doc);
}

TEST(Fl2Owl, EmptyProgram) {
  auto r = translate_program(flogic::Program{});
  EXPECT_TRUE(r.document.axioms.empty());
  EXPECT_TRUE(r.diagnostics.empty());
}

TEST(Fl2Owl, EquivalenceGroupToleratesVariableNames) {
  auto p = program("?Z:A :- ?Z:B. ?Z:B :- ?Z:A. ?W::A :- ?W::B. ?W::B :- ?W::A.");
  auto rec = recognize_templates(p);
  ASSERT_EQ(rec.matches.size(), 1u);
  EXPECT_EQ(rec.matches[0].template_id, "owl:equivalentClass");
  EXPECT_EQ(rec.matches[0].consumed.size(), 4u);
  // Three of the four rules are only three implications.
  auto partial = recognize_templates(program("?X:A :- ?X:B. ?X:B :- ?X:A. ?X::A :- ?X::B."));
  for (const auto& m : partial.matches) EXPECT_NE(m.template_id, "owl:equivalentClass");
}

TEST(Fl2Owl, CheckerLibraryNeverUnmatched) {
  owl::OntologyDocument doc;
  auto fl = translate_ontology(doc);
  auto rec = recognize_templates(fl.program);
  EXPECT_TRUE(rec.unmatched.empty());
  ASSERT_EQ(rec.matches.size(), 1u);
  EXPECT_EQ(rec.matches[0].template_id, "checker-library");
  EXPECT_EQ(rec.matches[0].consumed.size(), checker_library().size());
  EXPECT_TRUE(translate_program(fl.program).diagnostics.empty());
}

TEST(Fl2Owl, LossyLoweringsReportedAsInfo) {
  // Fruit ⊆ Sweet ∪ Sour gives case rules; ∀p.F ⊆ G gives a Lloyd-Topor auxiliary.
  owl::OntologyDocument doc;
  doc.base = "http://example.org/wine";
  doc.add(owl::ClassAxiom{owl::SubClassOf{N("Fruit"), owl::union_of({N("Sweet"), N("Sour")})}});
  doc.add(owl::ClassAxiom{owl::SubClassOf{owl::restriction(W("p"), owl::AllValuesFrom{N("F")}), N("G")}});
  Diagnostics d;
  auto back = round_trip(doc, &d);
  EXPECT_TRUE(back.axioms.empty()) << show(back);
  std::size_t lossy = 0;
  for (const auto& x : d) {
    EXPECT_NE(x.code, codes::kUnrepresentableInOwl) << x.message;
    if (x.code == codes::kLossyOrigin) {
      EXPECT_EQ(x.severity, Severity::Info);
      ++lossy;
    }
  }
  EXPECT_EQ(lossy, 4u);  // two case rules, the auxiliary, and the rule using it
  // Without provenance the shapes are still recognized.
  auto fl = translate_ontology(doc).program;
  fl.provenance.clear();
  auto rec = recognize_templates(fl);
  EXPECT_TRUE(rec.unmatched.empty());
}

TEST(Fl2Owl, GeneralInclusionRules) {
  auto p = program("?X:D :- ?X:A, ?X:B. ?X[p -> v] :- ?X:_object, \\naf ?X:C.");
  const auto doc = translate_program(p).document;
  const auto want = axioms(
      {ax(owl::SubClassOf{owl::intersection_of({N("A"), N("B")}), N("D")}),
       ax(owl::SubClassOf{owl::complement_of(N("C")), owl::restriction(W("p"), owl::HasValue{W("v")})})});
  EXPECT_TRUE(owl::same_axiom_set(doc.axioms, want)) << show(doc);
}

TEST(Fl2Owl, CardinalityForms) {
  auto p = program("A[p{0:3} *=> _object]. A[q{2:*} *=> _object]. A[r{2:2} *=> _object]. _object[s{1:1} *=> _object].");
  const auto doc = translate_program(p).document;
  const auto want = axioms(
      {ax(owl::SubClassOf{N("A"), owl::restriction(W("p"), owl::MaxCardinality{3})}),
       ax(owl::SubClassOf{N("A"), owl::restriction(W("q"), owl::MinCardinality{2})}),
       ax(owl::SubClassOf{N("A"), owl::restriction(W("r"), owl::ExactCardinality{2})}),
       ax(owl::PropertyCharacteristic{W("s"), owl::Characteristic::Functional})});
  EXPECT_TRUE(owl::same_axiom_set(doc.axioms, want)) << show(doc);
}

TEST(Fl2Owl, InverseFunctionalReadsBackAsEquivalentPair) {
  const auto& row = *std::find_if(test::construct_rows().begin(), test::construct_rows().end(),
                                  [](const test::CorpusRow& r) { return r.name == "InverseFunctionalProperty"; });
  const auto back = round_trip(parse_row(row.owl));
  const auto want = axioms({ax(owl::InverseOf{W("producesWine"), W("hasMaker")}),
                            ax(owl::PropertyCharacteristic{W("hasMaker"), owl::Characteristic::Functional})});
  EXPECT_TRUE(owl::same_axiom_set(back.axioms, want)) << show(back);
}

TEST(Fl2Owl, ConstructCorpusRoundTrip) {
  for (const auto& row : test::construct_rows()) {
    if (!row.invertible) continue;
    const auto doc = parse_row(row.owl);
    Diagnostics d;
    const auto back = round_trip(doc, &d);
    EXPECT_TRUE(owl::same_axiom_set(back.axioms, doc.axioms)) << row.name << "\n" << show(back);
    EXPECT_FALSE(has_code(d, codes::kUnrepresentableInOwl)) << row.name;
  }
}

TEST(Fl2Owl, GrapeRoundTrip) {
  const auto doc = parse_row(test::kGrapeOwl);
  EXPECT_TRUE(owl::same_axiom_set(round_trip(doc).axioms, doc.axioms));
}

// Random documents built only from invertible rows. Every axiom gets fresh
// names so no two axioms can merge into one template group.
class InvertibleGen {
 public:
  explicit InvertibleGen(unsigned seed) : rng_(seed) {}

  owl::OntologyDocument make() {
    owl::OntologyDocument doc;
    doc.base = "http://example.org/g";
    doc.prefixes["ex"] = "http://example.org/ex#";
    const int n = pick(1, 10);
    for (int i = 0; i < n; ++i) add_row(doc);
    return doc;
  }

 private:
  std::mt19937 rng_;
  int counter_ = 0;

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  owl::Iri fresh(const std::string& stem) {
    const std::string ns = pick(0, 2) == 0 ? "http://example.org/ex#" : "http://example.org/g#";
    return owl::Iri(ns + stem + std::to_string(counter_++));
  }
  owl::ClassExpressionPtr cls() { return owl::named(fresh("C")); }
  std::vector<owl::ClassExpressionPtr> classes() {
    std::vector<owl::ClassExpressionPtr> v;
    for (int k = pick(2, 3); k > 0; --k) v.push_back(cls());
    return v;
  }
  owl::Value value() {
    if (pick(0, 1)) return fresh("i");
    return owl::Literal{std::to_string(pick(0, 50)), "_integer"};
  }

  void add_row(owl::OntologyDocument& doc) {
    using namespace owl;
    auto c = [&](ClassAxiom a) { doc.add(std::move(a)); };
    auto p = [&](PropertyAxiom a) { doc.add(std::move(a)); };
    auto u = [](int v) { return static_cast<std::uint32_t>(v); };
    switch (pick(0, 20)) {
      case 0: c(SubClassOf{cls(), cls()}); break;
      case 1: c(EquivalentClass{cls(), cls()}); break;
      case 2: c(EquivalentClass{cls(), union_of(classes())}); break;
      case 3: c(EquivalentClass{cls(), intersection_of(classes())}); break;
      case 4: c(EquivalentClass{cls(), complement_of(cls())}); break;
      case 5: c(EquivalentClass{cls(), one_of({fresh("i"), fresh("i")})}); break;
      case 6: c(DisjointWith{fresh("C"), fresh("C")}); break;
      case 7: c(SubClassOf{cls(), restriction(fresh("p"), AllValuesFrom{cls()})}); break;
      case 8: c(SubClassOf{cls(), restriction(fresh("p"), SomeValuesFrom{cls()})}); break;
      case 9: c(SubClassOf{cls(), restriction(fresh("p"), HasValue{value()})}); break;
      case 10: c(SubClassOf{cls(), restriction(fresh("p"), MaxCardinality{u(pick(0, 4))})}); break;
      case 11: c(SubClassOf{cls(), restriction(fresh("p"), MinCardinality{u(pick(0, 4))})}); break;
      case 12: c(SubClassOf{cls(), restriction(fresh("p"), ExactCardinality{u(pick(1, 4))})}); break;
      case 13: {
        const auto prop = fresh("p");
        p(Domain{prop, fresh("C")});
        p(Range{prop, pick(0, 1) ? fresh("C") : Iri(std::string(kXsdNs) + "string")});
        break;
      }
      case 14: p(SubPropertyOf{fresh("p"), fresh("p")}); break;
      case 15: p(EquivalentProperty{fresh("p"), fresh("p")}); break;
      case 16: p(InverseOf{fresh("p"), fresh("p")}); break;
      case 17: p(PropertyCharacteristic{fresh("p"), static_cast<Characteristic>(pick(0, 3))}); break;
      case 18: doc.add(Assertion{ClassAssertion{fresh("i"), fresh("C")}}); break;
      case 19: doc.add(Assertion{PropertyAssertion{fresh("i"), fresh("p"), value()}}); break;
      default: pick(0, 1) ? p(Domain{fresh("p"), fresh("C")}) : p(Range{fresh("p"), fresh("C")}); break;
    }
  }
};

TEST(Fl2OwlProperty, InvertibleRoundTrip) {
  for (unsigned seed = 1; seed <= 300; ++seed) {
    const auto doc = InvertibleGen(seed).make();
    Diagnostics d;
    const auto back = round_trip(doc, &d);
    ASSERT_TRUE(owl::same_axiom_set(back.axioms, doc.axioms)) << seed << "\n" << show(doc) << "\n---\n" << show(back);
    ASSERT_FALSE(has_code(d, codes::kUnrepresentableInOwl)) << seed;
  }
}

TEST(Fl2OwlProperty, ConsumedSetsDisjoint) {
  for (unsigned seed = 1; seed <= 100; ++seed) {
    const auto fl = translate_ontology(InvertibleGen(seed).make());
    const auto rec = recognize_templates(fl.program);
    std::vector<int> seen(fl.program.rules.size(), 0);
    for (const auto& m : rec.matches) {
      for (auto i : m.consumed) ++seen[i];
    }
    for (auto i : rec.unmatched) ++seen[i];
    for (std::size_t i = 0; i < seen.size(); ++i) ASSERT_EQ(seen[i], 1) << seed << " rule " << i;
  }
}

}  // namespace
