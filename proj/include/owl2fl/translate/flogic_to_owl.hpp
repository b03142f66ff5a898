#pragma once

// F-logic -> OWL. The mapping table is read right to left: groups of rules
// that the forward translator emits for one axiom are recognized and turned
// back into that axiom. Groups are tried before single rules so that, for
// example, the four rules of a named equivalence are not read as four
// inclusions. Rules that no template explains are reported, never guessed.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "owl2fl/diagnostic.hpp"
#include "owl2fl/flogic/ast.hpp"
#include "owl2fl/flogic/printer.hpp"
#include "owl2fl/owl/model.hpp"
#include "owl2fl/translate/checker_library.hpp"
#include "owl2fl/translate/naming.hpp"

namespace owl2fl::translate {

struct TemplateMatch {
  /// Mapping-table row, e.g. "owl:equivalentClass" or "rdfs:domain+rdfs:range".
  std::string template_id;
  std::map<std::string, owl::Value> bindings;
  /// Program rule indices, ascending.
  std::vector<std::size_t> consumed;
  std::vector<owl::Axiom> axioms;
  /// Recognized but deliberately not turned into OWL.
  bool lossy = false;
};

struct RecognitionResult {
  std::vector<TemplateMatch> matches;
  std::vector<std::size_t> unmatched;
};

struct ReverseResult {
  owl::OntologyDocument document;
  Diagnostics diagnostics;
};

namespace detail {

inline void rename_vars(flogic::Term& t, std::map<std::string, std::string>& names) {
  if (t.is_variable()) {
    auto [it, fresh] = names.emplace(t.name, "V" + std::to_string(names.size()));
    t.name = it->second;
    return;
  }
  for (auto& a : t.args) rename_vars(a, names);
}

inline void rename_vars(flogic::ClassExpr& c, std::map<std::string, std::string>& names) {
  if (c.is_atom()) rename_vars(c.atom, names);
  for (auto& o : c.ops) rename_vars(o, names);
}

inline void rename_vars(flogic::Literal& l, std::map<std::string, std::string>& names) {
  std::visit(
      [&](auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, flogic::Molecule>) {
          std::visit(
              [&](auto& m) {
                using M = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<M, flogic::IsA>) {
                  rename_vars(m.obj, names);
                  rename_vars(m.cls, names);
                } else if constexpr (std::is_same_v<M, flogic::SubClass>) {
                  rename_vars(m.sub, names);
                  rename_vars(m.super, names);
                } else if constexpr (std::is_same_v<M, flogic::Equiv>) {
                  rename_vars(m.a, names);
                  rename_vars(m.b, names);
                } else if constexpr (std::is_same_v<M, flogic::AttrValue>) {
                  rename_vars(m.obj, names);
                  rename_vars(m.prop, names);
                  rename_vars(m.value, names);
                } else {
                  rename_vars(m.cls, names);
                  if (m.via) rename_vars(*m.via, names);
                  rename_vars(m.prop, names);
                  rename_vars(m.range, names);
                }
              },
              n);
        } else if constexpr (std::is_same_v<T, flogic::Naf>) {
          for (auto& b : n.body) rename_vars(b, names);
        } else {
          for (auto& a : n.args) rename_vars(a, names);
        }
      },
      l.node);
}

/// Printed form with variables renamed by first occurrence, so that rules
/// differing only in variable names share a key.
inline std::string canonical_key(flogic::Rule r) {
  std::map<std::string, std::string> names;
  rename_vars(r.head, names);
  for (auto& b : r.body) rename_vars(b, names);
  return flogic::Printer{}.rule(r);
}

/// Left-nested operands of a chain of one operator.
inline void flatten(const flogic::ClassExpr& c, flogic::ClassExpr::Kind k, std::vector<const flogic::ClassExpr*>& out) {
  if (c.kind == k) {
    flatten(c.ops[0], k, out);
    flatten(c.ops[1], k, out);
  } else {
    out.push_back(&c);
  }
}

}  // namespace detail

class FlogicToOwl {
 public:
  explicit FlogicToOwl(const flogic::Program& program) : program_(program), resolver_(program) {
    for (std::size_t i = 0; i < program.rules.size(); ++i) index_[detail::canonical_key(program.rules[i])].push_back(i);
    consumed_.assign(program.rules.size(), false);
  }

  RecognitionResult recognize() {
    RecognitionResult out;
    const auto& rules = program_.rules;
    // Longest match first: the checker library, multi-rule groups, the
    // lossy lowerings, then single rules and facts.
    checker_pass(out);
    for (std::size_t i = 0; i < rules.size(); ++i) try_group(i, out, &FlogicToOwl::named_equivalence);
    for (std::size_t i = 0; i < rules.size(); ++i) try_group(i, out, &FlogicToOwl::class_definition);
    for (std::size_t i = 0; i < rules.size(); ++i) try_group(i, out, &FlogicToOwl::enumeration);
    for (std::size_t i = 0; i < rules.size(); ++i) try_group(i, out, &FlogicToOwl::universal_pair);
    for (std::size_t i = 0; i < rules.size(); ++i) try_group(i, out, &FlogicToOwl::property_pair);
    for (std::size_t i = 0; i < rules.size(); ++i) try_group(i, out, &FlogicToOwl::lossy_lowering);
    for (std::size_t i = 0; i < rules.size(); ++i) try_group(i, out, &FlogicToOwl::single);
    for (std::size_t i = 0; i < rules.size(); ++i) {
      if (!consumed_[i]) out.unmatched.push_back(i);
    }
    std::stable_sort(out.matches.begin(), out.matches.end(),
                     [](const TemplateMatch& a, const TemplateMatch& b) { return a.consumed.front() < b.consumed.front(); });
    return out;
  }

  ReverseResult run() {
    ReverseResult out;
    auto& doc = out.document;
    doc.base = resolver_.base_namespace();
    while (!doc.base.empty() && doc.base.back() == '#') doc.base.pop_back();
    doc.prefixes = program_.prefixes;
    const auto rec = recognize();
    const flogic::Printer printer(&program_.prefixes);
    for (const auto& m : rec.matches) {
      if (m.lossy) {
        std::string text;
        for (auto i : m.consumed) text += (text.empty() ? "" : " ") + printer.rule(program_.rules[i]);
        out.diagnostics.push_back(make_diagnostic(Severity::Info, codes::kLossyOrigin,
                                                  m.template_id + " rules are not read back as OWL: " + text));
      }
      for (const auto& ax : m.axioms) {
        if (std::find(doc.axioms.begin(), doc.axioms.end(), ax) == doc.axioms.end()) doc.axioms.push_back(ax);
      }
    }
    for (auto i : rec.unmatched) {
      out.diagnostics.push_back(make_diagnostic(Severity::Warning, codes::kUnrepresentableInOwl,
                                                "no OWL counterpart for " + printer.rule(program_.rules[i])));
    }
    return out;
  }

 private:
  using Term = flogic::Term;
  using Rule = flogic::Rule;
  using Literal = flogic::Literal;
  using Matcher = bool (FlogicToOwl::*)(std::size_t, TemplateMatch&);

  const flogic::Program& program_;
  IriResolver resolver_;
  std::map<std::string, std::vector<std::size_t>> index_;
  std::vector<bool> consumed_;

  void try_group(std::size_t i, RecognitionResult& out, Matcher m) {
    if (consumed_[i]) return;
    TemplateMatch match;
    match.consumed.push_back(i);
    if (!(this->*m)(i, match)) return;
    std::sort(match.consumed.begin(), match.consumed.end());
    for (auto c : match.consumed) consumed_[c] = true;
    out.matches.push_back(std::move(match));
  }

  /// Unconsumed rule equal to `r` up to variable names, other than `except`.
  std::optional<std::size_t> find(const Rule& r, const std::vector<std::size_t>& except = {}) const {
    const auto it = index_.find(detail::canonical_key(r));
    if (it == index_.end()) return std::nullopt;
    for (auto i : it->second) {
      if (!consumed_[i] && std::find(except.begin(), except.end(), i) == except.end()) return i;
    }
    return std::nullopt;
  }

  // --- term helpers ----------------------------------------------------------

  static Term var(const char* n) { return flogic::var(n); }
  static Literal isa(Term o, Term c) { return flogic::IsA{std::move(o), flogic::ClassExpr(std::move(c))}; }
  static Literal attr(Term o, Term p, Term v) { return flogic::AttrValue{std::move(o), std::move(p), std::move(v)}; }

  static const Term* atom_symbol(const flogic::ClassExpr& c) {
    return c.is_atom() && c.atom.is_symbol() ? &c.atom : nullptr;
  }
  static bool is_object(const Term& t) { return t.is_symbol(flogic::kObject); }

  std::optional<owl::Iri> iri(const Term& t) const { return t.is_symbol() ? resolver_.iri(t) : std::nullopt; }

  owl::ClassExpressionPtr named(const Term& t) const {
    auto i = iri(t);
    return i ? owl::named(*i) : nullptr;
  }

  /// Class expression of a `:=:` / `::` operand, or null.
  owl::ClassExpressionPtr decode(const flogic::ClassExpr& c) const {
    using K = flogic::ClassExpr::Kind;
    if (c.is_atom()) return c.atom.is_symbol() ? named(c.atom) : nullptr;
    if (c.kind == K::Difference) {
      auto right = decode(c.ops[1]);
      if (!right) return nullptr;
      auto comp = owl::complement_of(right);
      if (const auto* l = atom_symbol(c.ops[0]); l && is_object(*l)) return comp;
      auto left = decode(c.ops[0]);
      return left ? owl::intersection_of({left, comp}) : nullptr;
    }
    std::vector<const flogic::ClassExpr*> parts;
    detail::flatten(c, c.kind, parts);
    std::vector<owl::ClassExpressionPtr> ops;
    for (const auto* p : parts) {
      auto e = decode(*p);
      if (!e) return nullptr;
      ops.push_back(std::move(e));
    }
    return c.kind == K::Union ? owl::union_of(std::move(ops)) : owl::intersection_of(std::move(ops));
  }

  static void add(TemplateMatch& m, owl::ClassAxiom ax) { m.axioms.push_back(owl::Axiom{std::move(ax), std::nullopt}); }
  static void add(TemplateMatch& m, owl::PropertyAxiom ax) { m.axioms.push_back(owl::Axiom{std::move(ax), std::nullopt}); }
  static void add(TemplateMatch& m, owl::Assertion ax) { m.axioms.push_back(owl::Axiom{std::move(ax), std::nullopt}); }

  void consume(TemplateMatch& m, std::size_t i) const {
    if (std::find(m.consumed.begin(), m.consumed.end(), i) == m.consumed.end()) m.consumed.push_back(i);
  }
  /// Consumes the rule if present and not yet taken by this match.
  bool take(TemplateMatch& m, const Rule& r) const {
    auto i = find(r, m.consumed);
    if (i) consume(m, *i);
    return i.has_value();
  }

  // --- templates -------------------------------------------------------------

  void checker_pass(RecognitionResult& out) {
    TemplateMatch m{"checker-library", {}, {}, {}, false};
    for (const auto& c : checker_library()) {
      while (auto i = find(c, m.consumed)) consume(m, *i);
    }
    if (m.consumed.empty()) return;
    std::sort(m.consumed.begin(), m.consumed.end());
    for (auto c : m.consumed) consumed_[c] = true;
    out.matches.push_back(std::move(m));
  }

  /// `?X:A :- ?X:B` with its three companions.
  bool named_equivalence(std::size_t i, TemplateMatch& m) {
    const auto& r = program_.rules[i];
    if (r.body.size() != 1) return false;
    const auto* h = r.head.as<flogic::IsA>();
    const auto* b = r.body[0].as<flogic::IsA>();
    if (!h || !b || !h->obj.is_variable() || h->obj != b->obj) return false;
    const auto* ta = atom_symbol(h->cls);
    const auto* tb = atom_symbol(b->cls);
    if (!ta || !tb || *ta == *tb) return false;
    const Term x = var("X");
    for (const auto& other : {Rule{isa(x, *tb), {isa(x, *ta)}}, Rule{flogic::SubClass{x, *ta}, {flogic::SubClass{x, *tb}}},
                              Rule{flogic::SubClass{x, *tb}, {flogic::SubClass{x, *ta}}}}) {
      if (!take(m, other)) return false;
    }
    auto a = named(*ta), bb = named(*tb);
    if (!a || !bb) return false;
    m.template_id = "owl:equivalentClass";
    m.bindings = {{"A", *iri(*ta)}, {"B", *iri(*tb)}};
    if (take(m, flogic::fact(flogic::Equiv{*tb, *ta}))) std::swap(a, bb);
    take(m, flogic::fact(flogic::Equiv{*ta, *tb}));
    add(m, owl::ClassAxiom{owl::EquivalentClass{a, bb}});
    return true;
  }

  /// `N :=: E.` with the rules of E's definition row, when present.
  bool class_definition(std::size_t i, TemplateMatch& m) {
    const auto& r = program_.rules[i];
    const auto* eq = r.is_fact() ? r.head.as<flogic::Equiv>() : nullptr;
    if (!eq) return false;
    const auto* n = atom_symbol(eq->a);
    auto left = n ? named(*n) : decode(eq->a);
    auto right = decode(eq->b);
    if (!left || !right) return false;
    add(m, owl::ClassAxiom{owl::EquivalentClass{left, right}});
    m.template_id = "owl:equivalentClass";
    if (!n) return true;
    m.bindings["N"] = *iri(*n);
    using K = flogic::ClassExpr::Kind;
    const Term x = var("X");
    const Term object = flogic::sym(flogic::kObject);
    std::vector<const flogic::ClassExpr*> parts;
    if (eq->b.kind != K::Atom) detail::flatten(eq->b, eq->b.kind, parts);
    std::vector<Term> ops;
    for (const auto* p : parts) {
      if (const auto* s = atom_symbol(*p)) ops.push_back(*s);
    }
    if (ops.size() != parts.size()) return true;
    if (eq->b.kind == K::Difference && ops.size() == 2 && is_object(ops[0])) {
      m.template_id = "owl:complementOf";
      take(m, Rule{isa(x, *n), {isa(x, object), flogic::naf(isa(x, ops[1]))}});
    } else if (eq->b.kind == K::Intersection) {
      m.template_id = "owl:intersectionOf";
      std::vector<Literal> body;
      for (const auto& o : ops) body.push_back(isa(x, o));
      take(m, Rule{isa(x, *n), body});
      for (const auto& o : ops) take(m, Rule{isa(x, o), {isa(x, *n)}});
    } else if (eq->b.kind == K::Union) {
      m.template_id = "owl:unionOf";
      for (const auto& o : ops) take(m, Rule{isa(x, *n), {isa(x, o)}});
      // The case rules approximate the other half of this same definition.
      for (std::size_t k = 0; k < ops.size(); ++k) {
        std::vector<Literal> body{isa(x, *n)};
        for (std::size_t j = 0; j < ops.size(); ++j) {
          if (j != k) body.push_back(flogic::naf(isa(x, ops[j])));
        }
        take(m, Rule{isa(x, ops[k]), body});
      }
    }
    return true;
  }

  /// `oneOf(N, [e1, ...])` with every `ei:N` fact is the enumeration
  /// definition; the constraint fact alone is an inclusion.
  bool enumeration(std::size_t i, TemplateMatch& m) {
    const auto& r = program_.rules[i];
    const auto* p = r.is_fact() ? r.head.pred() : nullptr;
    if (!p || p->name != "oneOf" || p->args.size() != 2 || p->args[1].kind != Term::Kind::List) return false;
    auto n = named(p->args[0]);
    if (!n || p->args[1].args.empty()) return false;
    std::vector<owl::Iri> inds;
    for (const auto& e : p->args[1].args) {
      auto ei = iri(e);
      if (!ei) return false;
      inds.push_back(*ei);
    }
    m.template_id = "owl:oneOf";
    m.bindings["N"] = *n->named();
    std::vector<std::size_t> members;
    for (const auto& e : p->args[1].args) {
      auto f = find(flogic::fact(isa(e, p->args[0])), members);
      if (!f) {
        members.clear();
        break;
      }
      members.push_back(*f);
    }
    if (members.empty()) {
      add(m, owl::ClassAxiom{owl::SubClassOf{n, owl::one_of(inds)}});
      return true;
    }
    for (auto f : members) consume(m, f);
    add(m, owl::ClassAxiom{owl::EquivalentClass{n, owl::one_of(inds)}});
    return true;
  }

  /// `C::_object[p *=> F]` and `?Y:F :- ?X:C, ?X[p -> ?Y]`.
  bool universal_pair(std::size_t i, TemplateMatch& m) {
    const auto& r = program_.rules[i];
    const auto* s = r.is_fact() ? r.head.as<flogic::Signature>() : nullptr;
    if (!s || !s->via || s->card) return false;
    const auto* via = atom_symbol(*s->via);
    const auto* c = atom_symbol(s->cls);
    const auto* f = atom_symbol(s->range);
    if (!via || !is_object(*via) || !c || !f) return false;
    const Term x = var("X"), y = var("Y");
    if (!take(m, Rule{isa(y, *f), {isa(x, *c), attr(x, s->prop, y)}})) return false;
    auto cc = named(*c), ff = named(*f);
    auto p = iri(s->prop);
    if (!cc || !ff || !p) return false;
    m.template_id = "owl:allValuesFrom";
    m.bindings = {{"C", *iri(*c)}, {"P", *p}, {"F", *iri(*f)}};
    add(m, owl::ClassAxiom{owl::SubClassOf{cc, owl::restriction(*p, owl::AllValuesFrom{ff})}});
    return true;
  }

  /// Inverse and equivalent property pairs, subproperties, the generic
  /// transitive and symmetric rules, and the optional domain/range rules.
  bool property_pair(std::size_t i, TemplateMatch& m) {
    const auto& r = program_.rules[i];
    const Term x = var("X"), y = var("Y"), z = var("Z"), pv = var("P");
    if (canonical_key(r) == canonical_key(Rule{attr(x, pv, z), {flogic::Pred{"TransitiveProperty", {pv}}, attr(x, pv, y), attr(y, pv, z)}})) {
      m.template_id = "owl:TransitiveProperty";
      return true;
    }
    if (canonical_key(r) == canonical_key(Rule{attr(x, pv, y), {flogic::Pred{"SymmetricProperty", {pv}}, attr(y, pv, x)}})) {
      m.template_id = "owl:SymmetricProperty";
      return true;
    }
    if (r.body.size() != 1) return false;
    const auto* h = r.head.as<flogic::AttrValue>();
    if (const auto* hi = r.head.as<flogic::IsA>(); hi && hi->obj.is_variable()) {
      // ?X:C :- ?X[p -> ?Y]  (domain)   ?Y:C :- ?X[p -> ?Y]  (range)
      const auto* b = r.body[0].as<flogic::AttrValue>();
      const auto* c = atom_symbol(hi->cls);
      if (!b || !c || !b->obj.is_variable() || !b->value.is_variable() || b->obj == b->value) return false;
      auto p = iri(b->prop), cc = iri(*c);
      if (!p || !cc) return false;
      if (hi->obj == b->obj) {
        m.template_id = "rdfs:domain";
        add(m, owl::PropertyAxiom{owl::Domain{*p, *cc}});
        return true;
      }
      if (hi->obj == b->value) {
        m.template_id = "rdfs:range";
        add(m, owl::PropertyAxiom{owl::Range{*p, *cc}});
        return true;
      }
      return false;
    }
    const auto* b = r.body[0].as<flogic::AttrValue>();
    if (!h || !b) return false;
    if (!h->obj.is_variable() || !h->value.is_variable() || h->obj == h->value) return false;
    auto pa = iri(h->prop), pb = iri(b->prop);
    if (!pa || !pb) return false;
    if (b->obj == h->value && b->value == h->obj) {
      take(m, Rule{attr(x, b->prop, y), {attr(y, h->prop, x)}});
      m.template_id = "owl:inverseOf";
      m.bindings = {{"A", *pa}, {"B", *pb}};
      add(m, owl::PropertyAxiom{owl::InverseOf{*pa, *pb}});
      return true;
    }
    if (b->obj == h->obj && b->value == h->value && *pa != *pb) {
      m.bindings = {{"A", *pa}, {"B", *pb}};
      if (take(m, Rule{attr(x, b->prop, y), {attr(x, h->prop, y)}})) {
        m.template_id = "owl:equivalentProperty";
        add(m, owl::PropertyAxiom{owl::EquivalentProperty{*pa, *pb}});
      } else {
        m.template_id = "rdfs:subPropertyOf";
        add(m, owl::PropertyAxiom{owl::SubPropertyOf{*pb, *pa}});
      }
      return true;
    }
    return false;
  }

  static std::string canonical_key(const Rule& r) { return detail::canonical_key(r); }

  /// NAF case rules and Lloyd-Topor auxiliaries change the semantics of the
  /// axiom they came from, so they are recognized but not reversed.
  bool lossy_lowering(std::size_t i, TemplateMatch& m) {
    const auto& r = program_.rules[i];
    std::string kind;
    if (auto it = program_.provenance.find(i); it != program_.provenance.end()) {
      if (it->second.kind == "case-split" || it->second.kind == "lloyd-topor") kind = it->second.kind;
    }
    bool aux = false;
    auto mentions_aux = [&](const Literal& l) {
      if (const auto* p = l.pred()) aux = aux || p->name.starts_with("_lt_aux");
      if (const auto* n = l.naf()) {
        for (const auto& b : n->body) {
          if (const auto* p = b.pred()) aux = aux || p->name.starts_with("_lt_aux");
        }
      }
    };
    mentions_aux(r.head);
    for (const auto& b : r.body) mentions_aux(b);
    if (aux) kind = "lloyd-topor";
    if (kind.empty() && is_case_rule(r)) kind = "case-split";
    if (kind.empty()) return false;
    m.template_id = kind;
    m.lossy = true;
    return true;
  }

  static bool is_case_rule(const Rule& r) {
    const auto* h = r.head.as<flogic::IsA>();
    if (!h || !h->obj.is_variable() || r.body.size() < 2) return false;
    const auto* d = r.body[0].as<flogic::IsA>();
    const auto* dc = d ? atom_symbol(d->cls) : nullptr;
    if (!d || d->obj != h->obj || !dc || is_object(*dc)) return false;
    for (std::size_t j = 1; j < r.body.size(); ++j) {
      const auto* n = r.body[j].naf();
      if (!n || n->body.size() != 1) return false;
      const auto* c = n->body[0].as<flogic::IsA>();
      if (!c || c->obj != h->obj || !atom_symbol(c->cls)) return false;
    }
    return true;
  }

  bool single(std::size_t i, TemplateMatch& m) {
    const auto& r = program_.rules[i];
    if (!r.is_fact()) return general_inclusion(r, m);
    if (!flogic::is_ground(r.head)) return false;
    if (const auto* p = r.head.pred()) return predicate_fact(*p, m);
    const auto* mol = r.head.molecule();
    if (!mol) return false;
    return std::visit(
        [&](const auto& x) -> bool {
          using M = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<M, flogic::IsA>) {
            auto ind = iri(x.obj);
            const auto* c = atom_symbol(x.cls);
            auto cc = c ? iri(*c) : std::nullopt;
            if (!ind || !cc) return false;
            m.template_id = "rdf:type";
            add(m, owl::Assertion{owl::ClassAssertion{*ind, *cc}});
            return true;
          } else if constexpr (std::is_same_v<M, flogic::AttrValue>) {
            auto s = iri(x.obj), p = iri(x.prop);
            auto v = resolver_.value(x.value);
            if (!s || !p || !v) return false;
            m.template_id = "property-value";
            add(m, owl::Assertion{owl::PropertyAssertion{*s, *p, *v}});
            return true;
          } else if constexpr (std::is_same_v<M, flogic::SubClass>) {
            auto a = decode(x.sub), b = decode(x.super);
            if (!a || !b) return false;
            m.template_id = "rdfs:subClassOf";
            add(m, owl::ClassAxiom{owl::SubClassOf{a, b}});
            return true;
          } else if constexpr (std::is_same_v<M, flogic::Signature>) {
            return signature(x, m);
          } else {
            return false;  // equivalences were handled as definitions
          }
        },
        *mol);
  }

  bool signature(const flogic::Signature& s, TemplateMatch& m) const {
    if (s.via) return false;
    const auto* c = atom_symbol(s.cls);
    const auto* r = atom_symbol(s.range);
    auto p = iri(s.prop);
    if (!c || !r || !p) return false;
    auto cc = iri(*c), rr = iri(*r);
    if (!cc || !rr) return false;
    if (!s.card) {
      m.template_id = "rdfs:domain+rdfs:range";
      if (!is_object(*c) || is_object(*r)) add(m, owl::PropertyAxiom{owl::Domain{*p, *cc}});
      if (!is_object(*r)) add(m, owl::PropertyAxiom{owl::Range{*p, *rr}});
      return true;
    }
    if (!is_object(*r)) return false;
    const auto& k = *s.card;
    if (is_object(*c) && k.low == 1 && k.high == 1u) {
      m.template_id = "owl:FunctionalProperty";
      add(m, owl::PropertyAxiom{owl::PropertyCharacteristic{*p, owl::Characteristic::Functional}});
      return true;
    }
    auto restrict = [&](owl::RestrictionKind rk) {
      add(m, owl::ClassAxiom{owl::SubClassOf{owl::named(*cc), owl::restriction(*p, std::move(rk))}});
    };
    if (k.high && *k.high == k.low && k.low > 0) {
      m.template_id = "owl:cardinality";
      restrict(owl::ExactCardinality{k.low});
    } else if (k.high && k.low == 0) {
      m.template_id = "owl:maxCardinality";
      restrict(owl::MaxCardinality{*k.high});
    } else if (!k.high) {
      m.template_id = "owl:minCardinality";
      restrict(owl::MinCardinality{k.low});
    } else {
      m.template_id = "owl:minCardinality+owl:maxCardinality";
      restrict(owl::MinCardinality{k.low});
      restrict(owl::MaxCardinality{*k.high});
    }
    return true;
  }

  bool predicate_fact(const flogic::Pred& p, TemplateMatch& m) const {
    const auto& a = p.args;
    auto restriction_on = [&](owl::RestrictionKind rk) -> bool {
      auto c = named(a[0]);
      auto prop = iri(a[1]);
      if (!c || !prop) return false;
      add(m, owl::ClassAxiom{owl::SubClassOf{c, owl::restriction(*prop, std::move(rk))}});
      return true;
    };
    if (p.name == "disjoint_classes" && a.size() == 2) {
      auto c1 = iri(a[0]), c2 = iri(a[1]);
      if (!c1 || !c2) return false;
      m.template_id = "owl:disjointWith";
      add(m, owl::ClassAxiom{owl::DisjointWith{*c2, *c1}});
      return true;
    }
    if (p.name == "someValuesFrom" && a.size() == 3) {
      auto f = named(a[2]);
      m.template_id = "owl:someValuesFrom";
      return f && restriction_on(owl::SomeValuesFrom{f});
    }
    if (p.name == "hasValue" && a.size() == 3) {
      auto v = resolver_.value(a[2]);
      m.template_id = "owl:hasValue";
      return v && restriction_on(owl::HasValue{*v});
    }
    if (a.size() == 1) {
      auto prop = iri(a[0]);
      if (!prop) return false;
      static const std::map<std::string, owl::Characteristic> kinds = {
          {"inverseFunctional", owl::Characteristic::InverseFunctional},
          {"TransitiveProperty", owl::Characteristic::Transitive},
          {"SymmetricProperty", owl::Characteristic::Symmetric}};
      const auto it = kinds.find(p.name);
      if (it == kinds.end()) return false;
      m.template_id = std::string("owl:") + owl::to_string(it->second);
      add(m, owl::PropertyAxiom{owl::PropertyCharacteristic{*prop, it->second}});
      return true;
    }
    return false;
  }

  /// `?X:D :- body.` or `?X[p -> v] :- body.` where the body only constrains
  /// ?X through memberships, values and complements: the Horn lowering of an
  /// inclusion with a complex subclass.
  bool general_inclusion(const Rule& r, TemplateMatch& m) const {
    Term x;
    owl::ClassExpressionPtr super;
    if (const auto* h = r.head.as<flogic::IsA>()) {
      const auto* d = atom_symbol(h->cls);
      if (!h->obj.is_variable() || !d || is_object(*d)) return false;
      x = h->obj;
      super = named(*d);
    } else if (const auto* h = r.head.as<flogic::AttrValue>()) {
      auto p = iri(h->prop);
      auto v = h->value.is_ground() ? resolver_.value(h->value) : std::nullopt;
      if (!h->obj.is_variable() || !p || !v) return false;
      x = h->obj;
      super = owl::restriction(*p, owl::HasValue{*v});
    }
    if (!super) return false;
    std::vector<owl::ClassExpressionPtr> ops;
    for (std::size_t j = 0; j < r.body.size(); ++j) {
      const auto& l = r.body[j];
      if (const auto* b = l.as<flogic::IsA>()) {
        const auto* c = atom_symbol(b->cls);
        if (b->obj != x || !c) return false;
        if (is_object(*c)) {
          // ?X:_object, \naf ?X:C is the complement of C.
          const auto* n = j + 1 < r.body.size() ? r.body[j + 1].naf() : nullptr;
          const auto* nc = n && n->body.size() == 1 ? n->body[0].as<flogic::IsA>() : nullptr;
          const auto* cs = nc ? atom_symbol(nc->cls) : nullptr;
          if (!cs || nc->obj != x) return false;
          auto e = named(*cs);
          if (!e) return false;
          ops.push_back(owl::complement_of(e));
          ++j;
          continue;
        }
        auto e = named(*c);
        if (!e) return false;
        ops.push_back(e);
      } else if (const auto* b = l.as<flogic::AttrValue>()) {
        auto p = iri(b->prop);
        auto v = b->value.is_ground() ? resolver_.value(b->value) : std::nullopt;
        if (b->obj != x || !p || !v) return false;
        ops.push_back(owl::restriction(*p, owl::HasValue{*v}));
      } else {
        return false;
      }
    }
    if (ops.empty()) return false;
    auto sub = ops.size() == 1 ? ops[0] : owl::intersection_of(ops);
    m.template_id = "rdfs:subClassOf";
    add(m, owl::ClassAxiom{owl::SubClassOf{sub, super}});
    return true;
  }
};

inline RecognitionResult recognize_templates(const flogic::Program& program) {
  return FlogicToOwl(program).recognize();
}

inline ReverseResult translate_program(const flogic::Program& program) { return FlogicToOwl(program).run(); }

}  // namespace owl2fl::translate
