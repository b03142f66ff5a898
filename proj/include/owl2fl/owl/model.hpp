#pragma once

// In-memory form of the OWL subset the translator understands. Everything
// here is a value type; documents are immutable once the parser returns them.

#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "owl2fl/diagnostic.hpp"

namespace owl2fl::owl {

inline constexpr const char* kOwlNs = "http://www.w3.org/2002/07/owl#";
inline constexpr const char* kRdfNs = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr const char* kRdfsNs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr const char* kXsdNs = "http://www.w3.org/2001/XMLSchema#";
inline constexpr const char* kXmlNs = "http://www.w3.org/XML/1998/namespace#";
inline constexpr const char* kDefaultBase = "http://example.org/ontology";

inline bool has_iri_scheme(std::string_view s) {
  if (s.starts_with("_:")) return true;
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (std::size_t i = 1; i < s.size(); ++i) {
    const char c = s[i];
    if (c == ':') return true;
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.') {
      return false;
    }
  }
  return false;
}

/// Absolute IRI. Blank nodes use the `_:` pseudo-scheme.
class Iri {
 public:
  Iri() = default;
  explicit Iri(std::string value) : value_(std::move(value)) {}

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }
  bool is_blank() const noexcept { return value_.starts_with("_:"); }

  friend auto operator<=>(const Iri&, const Iri&) = default;

 private:
  std::string value_;
};

/// Data value with its mapped builtin type tag (`_string`, `_integer`, ...).
struct Literal {
  std::string lexical;
  std::string type_tag = "_string";

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

using Value = std::variant<Iri, Literal>;

struct ClassExpression;
using ClassExpressionPtr = std::shared_ptr<const ClassExpression>;

struct AllValuesFrom {
  ClassExpressionPtr filler;
};
struct SomeValuesFrom {
  ClassExpressionPtr filler;
};
struct HasValue {
  Value value;
};
struct MaxCardinality {
  std::uint32_t n = 0;
};
struct MinCardinality {
  std::uint32_t n = 0;
};
struct ExactCardinality {
  std::uint32_t n = 0;
};

using RestrictionKind =
    std::variant<AllValuesFrom, SomeValuesFrom, HasValue, MaxCardinality, MinCardinality,
                 ExactCardinality>;

struct Named {
  Iri iri;
};
struct UnionOf {
  std::vector<ClassExpressionPtr> operands;
};
struct IntersectionOf {
  std::vector<ClassExpressionPtr> operands;
};
struct ComplementOf {
  ClassExpressionPtr operand;
};
struct OneOf {
  std::vector<Iri> individuals;
};
struct Restriction {
  Iri property;
  RestrictionKind kind;
};

struct ClassExpression {
  std::variant<Named, UnionOf, IntersectionOf, ComplementOf, OneOf, Restriction> node;

  bool is_named() const { return std::holds_alternative<Named>(node); }
  const Iri* named() const {
    const auto* n = std::get_if<Named>(&node);
    return n ? &n->iri : nullptr;
  }
};

bool operator==(const ClassExpression& a, const ClassExpression& b);

inline bool same_expr(const ClassExpressionPtr& a, const ClassExpressionPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

inline bool same_exprs(const std::vector<ClassExpressionPtr>& a,
                       const std::vector<ClassExpressionPtr>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!same_expr(a[i], b[i])) return false;
  }
  return true;
}

inline bool operator==(const RestrictionKind& a, const RestrictionKind& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b);
        if constexpr (std::is_same_v<T, AllValuesFrom> || std::is_same_v<T, SomeValuesFrom>) {
          return same_expr(x.filler, y.filler);
        } else if constexpr (std::is_same_v<T, HasValue>) {
          return x.value == y.value;
        } else {
          return x.n == y.n;
        }
      },
      a);
}

inline bool operator==(const ClassExpression& a, const ClassExpression& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, Named>) {
          return x.iri == y.iri;
        } else if constexpr (std::is_same_v<T, UnionOf> || std::is_same_v<T, IntersectionOf>) {
          return same_exprs(x.operands, y.operands);
        } else if constexpr (std::is_same_v<T, ComplementOf>) {
          return same_expr(x.operand, y.operand);
        } else if constexpr (std::is_same_v<T, OneOf>) {
          return x.individuals == y.individuals;
        } else {
          return x.property == y.property && x.kind == y.kind;
        }
      },
      a.node);
}

// Constructors. Boolean combinations need at least two operands and oneOf at
// least one individual; violations throw std::invalid_argument.

inline ClassExpressionPtr named(Iri iri) {
  return std::make_shared<const ClassExpression>(ClassExpression{Named{std::move(iri)}});
}
inline ClassExpressionPtr named(std::string iri) { return named(Iri(std::move(iri))); }

inline ClassExpressionPtr union_of(std::vector<ClassExpressionPtr> ops) {
  if (ops.size() < 2) throw std::invalid_argument("unionOf needs at least two operands");
  return std::make_shared<const ClassExpression>(ClassExpression{UnionOf{std::move(ops)}});
}
inline ClassExpressionPtr intersection_of(std::vector<ClassExpressionPtr> ops) {
  if (ops.size() < 2) throw std::invalid_argument("intersectionOf needs at least two operands");
  return std::make_shared<const ClassExpression>(ClassExpression{IntersectionOf{std::move(ops)}});
}
inline ClassExpressionPtr complement_of(ClassExpressionPtr op) {
  return std::make_shared<const ClassExpression>(ClassExpression{ComplementOf{std::move(op)}});
}
inline ClassExpressionPtr one_of(std::vector<Iri> individuals) {
  if (individuals.empty()) throw std::invalid_argument("oneOf needs at least one individual");
  return std::make_shared<const ClassExpression>(ClassExpression{OneOf{std::move(individuals)}});
}
inline ClassExpressionPtr restriction(Iri property, RestrictionKind kind) {
  return std::make_shared<const ClassExpression>(
      ClassExpression{Restriction{std::move(property), std::move(kind)}});
}

struct SubClassOf {
  ClassExpressionPtr sub;
  ClassExpressionPtr super;
};
struct EquivalentClass {
  ClassExpressionPtr a;
  ClassExpressionPtr b;
};
struct DisjointWith {
  Iri a;
  Iri b;
};

using ClassAxiom = std::variant<SubClassOf, EquivalentClass, DisjointWith>;

enum class Characteristic { Functional, InverseFunctional, Transitive, Symmetric };

struct Domain {
  Iri property;
  Iri cls;
};
struct Range {
  Iri property;
  Iri cls;
};
struct SubPropertyOf {
  Iri sub;
  Iri super;
};
struct EquivalentProperty {
  Iri a;
  Iri b;
};
struct InverseOf {
  Iri a;
  Iri b;
};
struct PropertyCharacteristic {
  Iri property;
  Characteristic kind;
};

using PropertyAxiom = std::variant<Domain, Range, SubPropertyOf, EquivalentProperty, InverseOf,
                                   PropertyCharacteristic>;

struct ClassAssertion {
  Iri individual;
  Iri cls;
};
struct PropertyAssertion {
  Iri subject;
  Iri property;
  Value object;
};

using Assertion = std::variant<ClassAssertion, PropertyAssertion>;

/// One axiom of any kind, kept in document order.
struct Axiom {
  std::variant<ClassAxiom, PropertyAxiom, Assertion> body;
  std::optional<SourceLocation> location;
};

bool operator==(const ClassAxiom& a, const ClassAxiom& b);
bool operator==(const PropertyAxiom& a, const PropertyAxiom& b);
bool operator==(const Assertion& a, const Assertion& b);

inline bool operator==(const ClassAxiom& a, const ClassAxiom& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b);
        if constexpr (std::is_same_v<T, SubClassOf>) {
          return same_expr(x.sub, y.sub) && same_expr(x.super, y.super);
        } else if constexpr (std::is_same_v<T, EquivalentClass>) {
          return same_expr(x.a, y.a) && same_expr(x.b, y.b);
        } else {
          return x.a == y.a && x.b == y.b;
        }
      },
      a);
}

inline bool operator==(const PropertyAxiom& a, const PropertyAxiom& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b);
        if constexpr (std::is_same_v<T, Domain> || std::is_same_v<T, Range>) {
          return x.property == y.property && x.cls == y.cls;
        } else if constexpr (std::is_same_v<T, SubPropertyOf>) {
          return x.sub == y.sub && x.super == y.super;
        } else if constexpr (std::is_same_v<T, PropertyCharacteristic>) {
          return x.property == y.property && x.kind == y.kind;
        } else {
          return x.a == y.a && x.b == y.b;
        }
      },
      a);
}

inline bool operator==(const Assertion& a, const Assertion& b) {
  if (a.index() != b.index()) return false;
  if (const auto* x = std::get_if<ClassAssertion>(&a)) {
    const auto& y = std::get<ClassAssertion>(b);
    return x->individual == y.individual && x->cls == y.cls;
  }
  const auto& x = std::get<PropertyAssertion>(a);
  const auto& y = std::get<PropertyAssertion>(b);
  return x.subject == y.subject && x.property == y.property && x.object == y.object;
}

/// Source location is not part of axiom identity.
inline bool operator==(const Axiom& a, const Axiom& b) {
  if (a.body.index() != b.body.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        return x == std::get<T>(b.body);
      },
      a.body);
}

struct OntologyDocument {
  /// Document IRI that `rdf:ID` and `#name` references resolve against.
  std::string base = kDefaultBase;
  /// Short prefix -> namespace IRI (from xmlns declarations and entities).
  std::map<std::string, std::string> prefixes;
  std::vector<Axiom> axioms;

  /// Namespace of locally defined names: the base followed by `#`.
  std::string base_namespace() const {
    std::string ns = base;
    while (!ns.empty() && ns.back() == '#') ns.pop_back();
    return ns + "#";
  }

  template <class T>
  std::vector<T> collect() const {
    std::vector<T> out;
    for (const auto& ax : axioms) {
      std::visit(
          [&](const auto& body) {
            if constexpr (std::is_same_v<std::decay_t<decltype(body)>, T>) out.push_back(body);
          },
          ax.body);
    }
    return out;
  }

  std::vector<ClassAxiom> class_axioms() const { return collect<ClassAxiom>(); }
  std::vector<PropertyAxiom> property_axioms() const { return collect<PropertyAxiom>(); }
  std::vector<Assertion> assertions() const { return collect<Assertion>(); }

  void add(ClassAxiom ax, std::optional<SourceLocation> loc = std::nullopt) {
    axioms.push_back(Axiom{std::move(ax), loc});
  }
  void add(PropertyAxiom ax, std::optional<SourceLocation> loc = std::nullopt) {
    axioms.push_back(Axiom{std::move(ax), loc});
  }
  void add(Assertion ax, std::optional<SourceLocation> loc = std::nullopt) {
    axioms.push_back(Axiom{std::move(ax), loc});
  }
};

/// Documents compare by their axioms; prefixes and base are presentation.
inline bool same_axioms(const OntologyDocument& a, const OntologyDocument& b) {
  return a.axioms == b.axioms;
}

/// Order-insensitive comparison (multiset of axioms).
inline bool same_axiom_set(const std::vector<Axiom>& a, const std::vector<Axiom>& b) {
  auto contains = [](const std::vector<Axiom>& haystack, const Axiom& needle) {
    for (const auto& x : haystack) {
      if (x == needle) return true;
    }
    return false;
  };
  for (const auto& x : a) {
    if (!contains(b, x)) return false;
  }
  for (const auto& x : b) {
    if (!contains(a, x)) return false;
  }
  return true;
}

inline const char* to_string(Characteristic c) {
  switch (c) {
    case Characteristic::Functional: return "FunctionalProperty";
    case Characteristic::InverseFunctional: return "InverseFunctionalProperty";
    case Characteristic::Transitive: return "TransitiveProperty";
    case Characteristic::Symmetric: return "SymmetricProperty";
  }
  return "";
}

}  // namespace owl2fl::owl
