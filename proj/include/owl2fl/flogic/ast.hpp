#pragma once

// F-logic abstract syntax: terms, class expressions, frame molecules, body
// literals, rules and programs. All nodes are plain values with structural
// equality.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace owl2fl::flogic {

inline constexpr const char* kObject = "_object";

struct Term {
  enum class Kind : std::uint8_t { Symbol, Variable, Literal, List, Compound };

  Kind kind = Kind::Symbol;
  /// Symbol name, variable name (without `?`), literal lexical form, or
  /// compound functor.
  std::string name;
  /// Builtin type tag of a literal (`_string`, `_integer`, ...).
  std::string type_tag;
  /// List elements or compound arguments.
  std::vector<Term> args;

  static Term symbol(std::string n) { return Term{Kind::Symbol, std::move(n), {}, {}}; }
  static Term variable(std::string n) { return Term{Kind::Variable, std::move(n), {}, {}}; }
  static Term literal(std::string v, std::string tag = "_string") {
    return Term{Kind::Literal, std::move(v), std::move(tag), {}};
  }
  static Term list(std::vector<Term> elems) { return Term{Kind::List, {}, {}, std::move(elems)}; }
  static Term compound(std::string f, std::vector<Term> a) {
    return Term{Kind::Compound, std::move(f), {}, std::move(a)};
  }

  bool is_symbol() const { return kind == Kind::Symbol; }
  bool is_variable() const { return kind == Kind::Variable; }
  bool is_symbol(std::string_view n) const { return kind == Kind::Symbol && name == n; }

  bool is_ground() const {
    if (kind == Kind::Variable) return false;
    for (const auto& a : args) {
      if (!a.is_ground()) return false;
    }
    return true;
  }

  friend bool operator==(const Term&, const Term&) = default;
  friend bool operator<(const Term& a, const Term& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.name != b.name) return a.name < b.name;
    if (a.type_tag != b.type_tag) return a.type_tag < b.type_tag;
    return std::lexicographical_compare(a.args.begin(), a.args.end(), b.args.begin(), b.args.end());
  }
};

inline Term sym(std::string n) { return Term::symbol(std::move(n)); }
inline Term var(std::string n) { return Term::variable(std::move(n)); }

struct ClassExpr {
  enum class Kind : std::uint8_t { Atom, Union, Intersection, Difference };

  Kind kind = Kind::Atom;
  Term atom;
  /// Exactly two operands for the binary kinds.
  std::vector<ClassExpr> ops;

  ClassExpr() = default;
  ClassExpr(Term t) : kind(Kind::Atom), atom(std::move(t)) {}  // NOLINT: implicit by design
  ClassExpr(Kind k, ClassExpr a, ClassExpr b) : kind(k), ops{std::move(a), std::move(b)} {}

  bool is_atom() const { return kind == Kind::Atom; }
  const Term* as_atom() const { return kind == Kind::Atom ? &atom : nullptr; }

  friend bool operator==(const ClassExpr&, const ClassExpr&) = default;
};

/// Left-associated n-ary combination.
inline ClassExpr fold(ClassExpr::Kind k, std::vector<ClassExpr> operands) {
  ClassExpr acc = std::move(operands.at(0));
  for (std::size_t i = 1; i < operands.size(); ++i) acc = ClassExpr(k, std::move(acc), std::move(operands[i]));
  return acc;
}

struct Cardinality {
  std::uint32_t low = 0;
  /// Absent means unbounded, printed `*`.
  std::optional<std::uint32_t> high;

  friend bool operator==(const Cardinality&, const Cardinality&) = default;
};

struct IsA {
  Term obj;
  ClassExpr cls;
  friend bool operator==(const IsA&, const IsA&) = default;
};
struct SubClass {
  ClassExpr sub;
  ClassExpr super;
  friend bool operator==(const SubClass&, const SubClass&) = default;
};
struct Equiv {
  ClassExpr a;
  ClassExpr b;
  friend bool operator==(const Equiv&, const Equiv&) = default;
};
struct AttrValue {
  Term obj;
  Term prop;
  Term value;
  friend bool operator==(const AttrValue&, const AttrValue&) = default;
};
/// `C[P{L:H} *=> R]`. `via` holds the superclass of the `C::via[...]` form,
/// which states the signature for C's members only.
struct Signature {
  ClassExpr cls;
  std::optional<ClassExpr> via;
  Term prop;
  std::optional<Cardinality> card;
  ClassExpr range;
  friend bool operator==(const Signature&, const Signature&) = default;
};

using Molecule = std::variant<IsA, SubClass, Equiv, AttrValue, Signature>;

struct Pred {
  std::string name;
  std::vector<Term> args;
  friend bool operator==(const Pred&, const Pred&) = default;
};

enum class BuiltinKind : std::uint8_t { Member, FormatCall, NotEqual, Cardinality };

inline constexpr const char* kCardinalityBuiltin = "_cardinality_violation";

/// Member: (elem, list). FormatCall: ([stream,] format, args). NotEqual: (a, b).
/// Cardinality: (obj, prop, low, high, count) - true when obj has `count`
/// distinct values for prop outside [low, high].
struct Builtin {
  BuiltinKind kind = BuiltinKind::Member;
  std::vector<Term> args;
  friend bool operator==(const Builtin&, const Builtin&) = default;
};

enum class NafStyle : std::uint8_t { Naf, Not };

struct Literal;

/// Negation as failure over a conjunction.
struct Naf {
  std::vector<Literal> body;
  NafStyle style = NafStyle::Naf;
  friend bool operator==(const Naf&, const Naf&) = default;
};

struct Literal {
  std::variant<Molecule, Pred, Naf, Builtin> node;

  Literal() = default;
  Literal(Molecule m) : node(std::move(m)) {}  // NOLINT
  Literal(IsA m) : node(Molecule{std::move(m)}) {}  // NOLINT
  Literal(SubClass m) : node(Molecule{std::move(m)}) {}  // NOLINT
  Literal(Equiv m) : node(Molecule{std::move(m)}) {}  // NOLINT
  Literal(AttrValue m) : node(Molecule{std::move(m)}) {}  // NOLINT
  Literal(Signature m) : node(Molecule{std::move(m)}) {}  // NOLINT
  Literal(Pred p) : node(std::move(p)) {}  // NOLINT
  Literal(Naf n) : node(std::move(n)) {}  // NOLINT
  Literal(Builtin b) : node(std::move(b)) {}  // NOLINT

  const Molecule* molecule() const { return std::get_if<Molecule>(&node); }
  const Pred* pred() const { return std::get_if<Pred>(&node); }
  const Naf* naf() const { return std::get_if<Naf>(&node); }
  const Builtin* builtin() const { return std::get_if<Builtin>(&node); }
  template <class M>
  const M* as() const {
    const auto* m = molecule();
    return m ? std::get_if<M>(m) : nullptr;
  }

  friend bool operator==(const Literal&, const Literal&) = default;
};

inline Naf naf(Literal l, NafStyle style = NafStyle::Naf) { return Naf{{std::move(l)}, style}; }

struct Rule {
  Literal head;
  std::vector<Literal> body;

  bool is_fact() const { return body.empty(); }
  friend bool operator==(const Rule&, const Rule&) = default;
};

inline Rule fact(Literal head) { return Rule{std::move(head), {}}; }

/// Where a rule came from: indices of the source axioms and a tag such as
/// "case-split", "lloyd-topor" or "checker".
struct Provenance {
  std::vector<std::size_t> axioms;
  std::string kind;
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct Program {
  /// Short prefix -> namespace, for `p:local` symbols.
  std::map<std::string, std::string> prefixes;
  /// Namespace of bare symbols (empty when unknown).
  std::string base;
  std::vector<Rule> rules;
  std::map<std::size_t, Provenance> provenance;

  /// Provenance is bookkeeping and not part of program identity.
  friend bool operator==(const Program& a, const Program& b) {
    return a.prefixes == b.prefixes && a.base == b.base && a.rules == b.rules;
  }
};

// --- traversal helpers ----------------------------------------------------

template <class F>
void for_each_term(const Term& t, F&& f) {
  f(t);
  for (const auto& a : t.args) for_each_term(a, f);
}

template <class F>
void for_each_term(const ClassExpr& c, F&& f) {
  if (c.is_atom()) {
    for_each_term(c.atom, f);
  } else {
    for (const auto& o : c.ops) for_each_term(o, f);
  }
}

template <class F>
void for_each_term(const Literal& l, F&& f) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Molecule>) {
          std::visit(
              [&](const auto& m) {
                using M = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<M, IsA>) {
                  for_each_term(m.obj, f);
                  for_each_term(m.cls, f);
                } else if constexpr (std::is_same_v<M, SubClass>) {
                  for_each_term(m.sub, f);
                  for_each_term(m.super, f);
                } else if constexpr (std::is_same_v<M, Equiv>) {
                  for_each_term(m.a, f);
                  for_each_term(m.b, f);
                } else if constexpr (std::is_same_v<M, AttrValue>) {
                  for_each_term(m.obj, f);
                  for_each_term(m.prop, f);
                  for_each_term(m.value, f);
                } else {
                  for_each_term(m.cls, f);
                  if (m.via) for_each_term(*m.via, f);
                  for_each_term(m.prop, f);
                  for_each_term(m.range, f);
                }
              },
              n);
        } else if constexpr (std::is_same_v<T, Naf>) {
          for (const auto& b : n.body) for_each_term(b, f);
        } else {
          for (const auto& a : n.args) for_each_term(a, f);
        }
      },
      l.node);
}

inline bool is_ground(const Literal& l) {
  bool ground = true;
  for_each_term(l, [&](const Term& t) {
    if (t.is_variable()) ground = false;
  });
  return ground;
}

}  // namespace owl2fl::flogic
