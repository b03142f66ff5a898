#pragma once

// The nineteen construct rows of the OWL -> F-logic mapping table: the OWL
// snippet exactly as tabulated and the canonical F-logic text it must produce.
// Expected text lists the tabulated right column first, followed by the
// membership/expansion rules the definitions imply; `checkers` names the
// checker-library clauses the row shows alongside its facts.

#include <string>
#include <vector>

namespace owl2fl::test {

struct CorpusRow {
  std::string name;
  std::string owl;
  std::vector<std::string> flogic;
  std::vector<std::string> checkers;
  bool invertible = true;
};

inline std::string wrap_owl(const std::string& body) {
  return R"(<?xml version="1.0"?>
<!DOCTYPE rdf:RDF [
  <!ENTITY owl "http://www.w3.org/2002/07/owl#">
  <!ENTITY xsd "http://www.w3.org/2001/XMLSchema#">
]>
<rdf:RDF xmlns="http://example.org/wine#"
         xml:base="http://example.org/wine"
         xmlns:rdf="http://www.w3.org/1999/02/22-rdf-syntax-ns#"
         xmlns:rdfs="http://www.w3.org/2000/01/rdf-schema#"
         xmlns:owl="http://www.w3.org/2002/07/owl#"
         xmlns:food="http://example.org/food#">
)" + body + "\n</rdf:RDF>\n";
}

inline const std::vector<CorpusRow>& construct_rows() {
  static const std::vector<CorpusRow> rows = {
      {"subClassOf",
       R"(<owl:Class rdf:ID="Wine"> <rdfs:subClassOf rdf:resource="#food:PotableLiquid" /> </owl:Class>)",
       {"Wine::food:PotableLiquid."},
       {}},
      {"equivalentClass",
       R"(<owl:Class rdf:ID="Wine"> <owl:equivalentClass rdf:resource="Vin" /> </owl:Class>)",
       {"Wine :=: Vin.", "?X:Wine :- ?X:Vin.", "?X:Vin :- ?X:Wine.", "?X::Wine :- ?X::Vin.",
        "?X::Vin :- ?X::Wine."},
       {}},
      {"unionOf",
       R"(<owl:Class rdf:ID="Fruit"> <owl:unionOf rdf:parseType="Collection"> <owl:Class rdf:about="#SweetFruit" /> <owl:Class rdf:about="#NonSweetFruit" /> </owl:unionOf> </owl:Class>)",
       {"Fruit :=: (SweetFruit ; NonSweetFruit).", "?X:Fruit :- ?X:SweetFruit.",
        "?X:Fruit :- ?X:NonSweetFruit.", "?X:SweetFruit :- ?X:Fruit, \\naf ?X:NonSweetFruit.",
        "?X:NonSweetFruit :- ?X:Fruit, \\naf ?X:SweetFruit."},
       {}},
      {"intersectionOf",
       R"(<owl:Class rdf:ID="WhiteBurgundy"> <owl:intersectionOf rdf:parseType="Collection"> <owl:Class rdf:about="#Burgundy" /> <owl:Class rdf:about="#WhiteWine" /> </owl:intersectionOf> </owl:Class>)",
       {"WhiteBurgundy :=: (Burgundy , WhiteWine).",
        "?X:WhiteBurgundy :- ?X:Burgundy, ?X:WhiteWine.", "?X:Burgundy :- ?X:WhiteBurgundy.",
        "?X:WhiteWine :- ?X:WhiteBurgundy."},
       {}},
      {"complementOf",
       R"(<owl:Class rdf:ID="NonConsumableThing"> <owl:complementOf rdf:resource="#ConsumableThing" /> </owl:Class>)",
       {"NonConsumableThing :=: (_object - ConsumableThing).",
        "?X:NonConsumableThing :- ?X:_object, \\naf ?X:ConsumableThing."},
       {}},
      {"disjointWith",
       R"(<owl:Class rdf:ID="Female"> <owl:disjointWith rdf:resource="#Male" /> </owl:Class>)",
       {"disjoint_classes(Male, Female)."},
       {"check_disjoint_constraints :- disjoint_classes(?C1, ?C2), ?X:?C1, ?X:?C2, "
        "format('[OWL2FLORA] disjointWith constraint violation: ~w disjoint with ~w', "
        "[?C1, ?C2])@_prolog(format)."}},
      {"oneOf",
       R"(<owl:Class rdf:ID="WineColor"> <owl:oneOf rdf:parseType="Collection"> <owl:Thing rdf:about="#White"/> <owl:Thing rdf:about="#Rose"/> <owl:Thing rdf:about="#Red"/> </owl:oneOf> </owl:Class>)",
       {"White:WineColor.", "Rose:WineColor.", "Red:WineColor.",
        "oneOf(WineColor, [White, Rose, Red])."},
       {"check_oneOf_constraints :- oneOf(?C, ?List), ?X:?C, not(member(?X, ?List)), "
        "format(2, '[OWL2FLORA] oneOf constraint: extraneous class member ~w : ~w', "
        "[?X, ?C])@_prolog(format)."}},
      {"allValuesFrom",
       R"(<owl:Class rdf:ID="Wine"> <rdfs:subClassOf> <owl:Restriction> <owl:onProperty rdf:resource="#hasMaker" /> <owl:allValuesFrom rdf:resource="#Winery"/> </owl:Restriction> </rdfs:subClassOf> </owl:Class>)",
       {"Wine::_object[hasMaker *=> Winery].", "?Y:Winery :- ?X:Wine, ?X[hasMaker -> ?Y]."},
       {}},
      {"someValuesFrom",
       R"(<owl:Class rdf:ID="Wine"> <rdfs:subClassOf> <owl:Restriction> <owl:onProperty rdf:resource="#hasMaker" /> <owl:someValuesFrom rdf:resource="#Winery" /> </owl:Restriction> </rdfs:subClassOf> </owl:Class>)",
       {"someValuesFrom(Wine, hasMaker, Winery)."},
       {"check_someValuesFrom_constraints :- someValuesFrom(?Class, ?Property, ?PropertyClass), "
        "?O:?Class, \\naf (?O[?Property -> ?V], ?V:?PropertyClass), "
        "format(2, '[OWL2FLORA] someValuesFrom constraint violation: ~w:~w and ~w.~w disjoint "
        "from ~w', [?O, ?Class, ?O, ?Property, ?PropertyClass])@_prolog(format)."}},
      {"hasValue",
       R"(<owl:Class rdf:ID="Burgundy"> <rdfs:subClassOf> <owl:Restriction> <owl:onProperty rdf:resource="#hasSugar" /> <owl:hasValue rdf:resource="#Dry" /> </owl:Restriction> </rdfs:subClassOf> </owl:Class>)",
       {"hasValue(Burgundy, hasSugar, Dry)."},
       {"check_hasValue_constraints :- hasValue(?Class, ?Property, ?Value), ?O:?Class, "
        "not(?O[?Property -> ?Value]), format(2, '[OWL2FLORA] hasValue constraint violation..', "
        "[])@_prolog(format)."}},
      {"maxCardinality",
       R"(<owl:Class rdf:ID="Person"> <rdfs:subClassOf> <owl:Restriction> <owl:onProperty rdf:resource="#hasParent"/> <owl:maxCardinality rdf:datatype="&xsd:nonNegativeInteger">2 </owl:maxCardinality> </owl:Restriction> </rdfs:subClassOf> </owl:Class>)",
       {"Person[hasParent{0:2} *=> _object]."},
       {}},
      {"domainRange",
       R"(<owl:ObjectProperty rdf:ID="locatedIn"> <rdfs:domain rdf:resource=" #Country" /> <rdfs:range rdf:resource="#Region" /> </owl:ObjectProperty>)",
       {"Country[locatedIn *=> Region]."},
       {}},
      {"subPropertyOf",
       R"(<owl:ObjectProperty rdf:ID="hasColor"> <rdfs:subPropertyOf rdf:resource="#hasWineDescriptor" /> </owl:ObjectProperty>)",
       {"?X[hasWineDescriptor -> ?Y] :- ?X[hasColor -> ?Y]."},
       {}},
      {"equivalentProperty",
       R"(<owl:ObjectProperty rdf:about="#hasChild"> <owl:equivalentProperty rdf:resource="hasOffspring"/> </owl:ObjectProperty>)",
       {"?X[hasChild -> ?Y] :- ?X[hasOffspring -> ?Y].",
        "?X[hasOffspring -> ?Y] :- ?X[hasChild -> ?Y]."},
       {}},
      {"inverseOf",
       R"(<owl:ObjectProperty rdf:ID="producesWine"> <owl:inverseOf rdf:resource="#hasMaker" /> </owl:ObjectProperty>)",
       {"?X[producesWine -> ?Y] :- ?Y[hasMaker -> ?X].",
        "?X[hasMaker -> ?Y] :- ?Y[producesWine -> ?X]."},
       {}},
      {"FunctionalProperty",
       R"(<owl:ObjectProperty rdf:ID="hasVintageYear"> <rdf:type rdf:resource="&owl:FunctionalProperty" /> </owl:ObjectProperty>)",
       {"_object[hasVintageYear{1:1} *=> _object]."},
       {}},
      {"InverseFunctionalProperty",
       R"(<owl:ObjectProperty rdf:ID="producesWine"> <rdf:type rdf:resource="&owl:InverseFunctionalProperty" /> <owl:inverseOf rdf:resource="#hasMaker" /> </owl:ObjectProperty>)",
       {"?X[producesWine -> ?Y] :- ?Y[hasMaker -> ?X].",
        "?X[hasMaker -> ?Y] :- ?Y[producesWine -> ?X].", "_object[hasMaker{1:1} *=> _object]."},
       {},
       // Read back as InverseOf plus Functional on the inverse, which is
       // equivalent but not the same axiom set.
       false},
      {"TransitiveProperty",
       R"(<owl:ObjectProperty rdf:ID="locatedIn"> <rdf:type rdf:resource="&owl:TransitiveProperty" /> </owl:ObjectProperty>)",
       {"'TransitiveProperty'(locatedIn).",
        "?X[?P -> ?Z] :- 'TransitiveProperty'(?P), ?X[?P -> ?Y], ?Y[?P -> ?Z]."},
       {}},
      {"SymmetricProperty",
       R"(<owl:ObjectProperty rdf:ID="adjacentRegion"> <rdf:type rdf:resource="&owl:SymmetricProperty" /> </owl:ObjectProperty>)",
       {"'SymmetricProperty'(adjacentRegion).",
        "?X[?P -> ?Y] :- 'SymmetricProperty'(?P), ?Y[?P -> ?X]."},
       {}},
  };
  return rows;
}

/// The grape ABox example and its two combined facts.
inline const char* kGrapeOwl = R"(<WineGrape rdf:ID="CabernetSauvignonGrape" hasColor="Red"/>
<owl:Thing rdf:about="#PinotGrape" hasColor="White">
  <rdf:type rdf:resource="#WineGrape"/>
</owl:Thing>)";

inline const std::vector<std::string> kGrapeFlogic = {
    "CabernetSauvignonGrape:WineGrape[hasColor -> 'Red'].",
    "PinotGrape:WineGrape[hasColor -> 'White'].",
};

}  // namespace owl2fl::test
