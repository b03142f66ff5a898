#pragma once

// OWL -> F-logic. Each axiom becomes the rules of its mapping-table row;
// general inclusions with complex sides are lowered to Horn rules, NAF case
// rules or Lloyd-Topor auxiliaries, and the rest is reported as untranslatable.

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

struct TranslationOptions {
  bool emit_checkers = true;
  /// Adds OWL's domain/range inference rules next to the signature.
  bool owl_domain_range_rules = false;
  bool case_split_rhs_disjunction = true;
};

struct Translatability {
  enum class Kind { Direct, RequiresNafCases, RequiresLloydTopor, Untranslatable };
  Kind kind = Kind::Direct;
  std::string reason;

  bool ok() const { return kind != Kind::Untranslatable; }
  /// Keeps the most demanding of the two.
  void merge(const Translatability& o) {
    if (o.kind > kind) *this = o;
  }
};

inline const char* to_string(Translatability::Kind k) {
  switch (k) {
    case Translatability::Kind::Direct: return "Direct";
    case Translatability::Kind::RequiresNafCases: return "RequiresNafCases";
    case Translatability::Kind::RequiresLloydTopor: return "RequiresLloydTopor";
    case Translatability::Kind::Untranslatable: return "Untranslatable";
  }
  return "";
}

/// Rule plus the provenance tag it should carry ("" for plain rules).
struct TaggedRule {
  flogic::Rule rule;
  std::string kind;
};

struct LoweringResult {
  std::vector<TaggedRule> rules;
  Translatability translatability;
  Diagnostics diagnostics;

  void fail(std::string_view code, std::string reason) {
    translatability = {Translatability::Kind::Untranslatable, std::string(code)};
    diagnostics.push_back(make_diagnostic(Severity::Error, code, std::move(reason)));
  }
  void append(LoweringResult other) {
    for (auto& r : other.rules) rules.push_back(std::move(r));
    translatability.merge(other.translatability);
    for (auto& d : other.diagnostics) diagnostics.push_back(std::move(d));
  }
  std::vector<flogic::Rule> plain_rules() const {
    std::vector<flogic::Rule> out;
    for (const auto& r : rules) out.push_back(r.rule);
    return out;
  }
};

struct TranslationResult {
  flogic::Program program;
  Diagnostics diagnostics;
};

namespace detail {

using flogic::AttrValue;
using flogic::ClassExpr;
using flogic::IsA;
using flogic::Literal;
using flogic::Pred;
using flogic::Rule;
using flogic::Term;

inline Literal isa(Term o, Term c) { return IsA{std::move(o), ClassExpr(std::move(c))}; }
inline Literal attr(Term o, Term p, Term v) { return AttrValue{std::move(o), std::move(p), std::move(v)}; }
inline Literal pred(std::string name, std::vector<Term> args) { return Pred{std::move(name), std::move(args)}; }
inline Rule rule(Literal head, std::vector<Literal> body) { return Rule{std::move(head), std::move(body)}; }

}  // namespace detail

class OwlToFlogic {
 public:
  OwlToFlogic(const owl::OntologyDocument& doc, TranslationOptions opts = {})
      : doc_(doc), opts_(opts), namer_(doc) {
    index_properties();
  }

  /// Whole document, in document order, followed by the checker library.
  TranslationResult run() {
    TranslationResult out;
    out.program.base = namer_.base_namespace();
    std::map<std::string, std::size_t> seen;  // printed rule -> index, for dedup
    const flogic::Printer printer;
    auto emit = [&](TaggedRule tr, std::vector<std::size_t> axioms) {
      const auto key = printer.rule(tr.rule);
      if (auto it = seen.find(key); it != seen.end()) {
        auto& prov = out.program.provenance[it->second];
        for (auto a : axioms) {
          if (std::find(prov.axioms.begin(), prov.axioms.end(), a) == prov.axioms.end()) prov.axioms.push_back(a);
        }
        return;
      }
      const auto idx = out.program.rules.size();
      seen.emplace(key, idx);
      out.program.rules.push_back(std::move(tr.rule));
      out.program.provenance[idx] = flogic::Provenance{std::move(axioms), std::move(tr.kind)};
    };

    for (std::size_t i = 0; i < doc_.axioms.size(); ++i) {
      auto res = translate_axiom(i);
      const auto& loc = doc_.axioms[i].location;
      for (auto& d : res.diagnostics) {
        if (!d.location) d.location = loc;
        out.diagnostics.push_back(std::move(d));
      }
      if (!res.translatability.ok()) continue;
      for (auto& r : res.rules) {
        std::vector<std::size_t> axioms{i};
        if (auto it = partner_.find(i); it != partner_.end() && r.kind == "signature") axioms.push_back(it->second);
        emit(std::move(r), std::move(axioms));
      }
    }
    if (opts_.emit_checkers) {
      for (const auto& r : emit_checker_library()) emit(TaggedRule{r, "checker"}, {});
    }
    out.program.prefixes = namer_.used_prefixes();
    return out;
  }

  LoweringResult translate_axiom(std::size_t index) {
    const auto& ax = doc_.axioms.at(index);
    return std::visit(
        [&](const auto& body) -> LoweringResult {
          using T = std::decay_t<decltype(body)>;
          if constexpr (std::is_same_v<T, owl::ClassAxiom>) {
            return translate_class_axiom_ex(body);
          } else if constexpr (std::is_same_v<T, owl::PropertyAxiom>) {
            return translate_property_axiom_ex(body, index);
          } else {
            return LoweringResult{{TaggedRule{translate_assertion(body), ""}}, {}, {}};
          }
        },
        ax.body);
  }

  std::pair<std::vector<flogic::Rule>, Diagnostics> translate_class_axiom(const owl::ClassAxiom& ax) {
    auto res = translate_class_axiom_ex(ax);
    if (!res.translatability.ok()) return {{}, std::move(res.diagnostics)};
    return {res.plain_rules(), std::move(res.diagnostics)};
  }

  std::vector<flogic::Rule> translate_class_definition(const owl::Iri& name, const owl::ClassExpression& expr) {
    return class_definition(name, expr).plain_rules();
  }

  std::vector<flogic::Rule> translate_restriction(const owl::Iri& cls, const owl::Restriction& r) {
    return restriction(cls, r).plain_rules();
  }

  std::vector<flogic::Rule> translate_property_axiom(const owl::PropertyAxiom& ax) {
    return translate_property_axiom_ex(ax, std::nullopt).plain_rules();
  }

  flogic::Rule translate_assertion(const owl::Assertion& a) {
    using namespace detail;
    if (const auto* ca = std::get_if<owl::ClassAssertion>(&a)) {
      return flogic::fact(isa(namer_.symbol(ca->individual), namer_.class_symbol(ca->cls)));
    }
    const auto& pa = std::get<owl::PropertyAssertion>(a);
    return flogic::fact(attr(namer_.symbol(pa.subject), namer_.symbol(pa.property), namer_.value(pa.object)));
  }

  LoweringResult lower_general_inclusion(const owl::ClassExpression& sub, const owl::ClassExpression& super) {
    LoweringResult res;
    const Term x = flogic::var("X");
    if (const auto* oneof = std::get_if<owl::OneOf>(&sub.node)) {
      // {a, b} ⊆ E is a set of memberships; only named E can take them as facts.
      const auto* d = super.named();
      if (!d) {
        res.fail(codes::kUnsupportedExpression, "oneOf subclass needs a named superclass");
        return res;
      }
      for (const auto& i : oneof->individuals) {
        res.rules.push_back({flogic::fact(detail::isa(namer_.symbol(i), namer_.class_symbol(*d))), ""});
      }
      return res;
    }
    fresh_ = 0;
    std::vector<std::vector<flogic::Literal>> alts;
    if (!condition(sub, x, res, alts)) return res;
    head(alts, super, x, res);
    return res;
  }

  std::vector<flogic::Rule> emit_checker_library() const {
    if (!opts_.emit_checkers) return {};
    return checker_library();
  }

 private:
  using Term = flogic::Term;
  using Literal = flogic::Literal;
  using Alts = std::vector<std::vector<Literal>>;

  const owl::OntologyDocument& doc_;
  TranslationOptions opts_;
  SymbolNamer namer_;
  std::size_t lt_counter_ = 0;
  std::size_t fresh_ = 0;
  bool transitive_done_ = false;
  bool symmetric_done_ = false;
  /// Domain/Range axiom index -> its paired counterpart.
  std::map<std::size_t, std::size_t> partner_;
  /// Property -> first InverseOf axiom that mentions it.
  std::map<owl::Iri, owl::InverseOf> inverse_;

  void index_properties() {
    std::map<owl::Iri, std::vector<std::size_t>> domains, ranges;
    for (std::size_t i = 0; i < doc_.axioms.size(); ++i) {
      const auto* pa = std::get_if<owl::PropertyAxiom>(&doc_.axioms[i].body);
      if (!pa) continue;
      if (const auto* d = std::get_if<owl::Domain>(pa)) domains[d->property].push_back(i);
      if (const auto* r = std::get_if<owl::Range>(pa)) ranges[r->property].push_back(i);
      if (const auto* inv = std::get_if<owl::InverseOf>(pa)) {
        inverse_.emplace(inv->a, *inv);
        inverse_.emplace(inv->b, *inv);
      }
    }
    for (const auto& [p, ds] : domains) {
      const auto rit = ranges.find(p);
      if (rit == ranges.end()) continue;
      for (std::size_t k = 0; k < ds.size() && k < rit->second.size(); ++k) {
        partner_[ds[k]] = rit->second[k];
        partner_[rit->second[k]] = ds[k];
      }
    }
  }

  Term fresh_var() {
    ++fresh_;
    return flogic::var(fresh_ == 1 ? "Y" : "Y" + std::to_string(fresh_));
  }

  std::string next_aux() { return "_lt_aux" + std::to_string(++lt_counter_); }

  static bool all_named(const std::vector<owl::ClassExpressionPtr>& ops) {
    return std::all_of(ops.begin(), ops.end(), [](const auto& o) { return o->is_named(); });
  }

  flogic::ClassExpr fl_class(const owl::ClassExpression& e) {
    using K = flogic::ClassExpr::Kind;
    if (const auto* n = e.named()) return namer_.class_symbol(*n);
    auto fold_ops = [&](K k, const std::vector<owl::ClassExpressionPtr>& ops) {
      std::vector<flogic::ClassExpr> parts;
      for (const auto& o : ops) parts.push_back(fl_class(*o));
      return flogic::fold(k, std::move(parts));
    };
    if (const auto* u = std::get_if<owl::UnionOf>(&e.node)) return fold_ops(K::Union, u->operands);
    if (const auto* i = std::get_if<owl::IntersectionOf>(&e.node)) return fold_ops(K::Intersection, i->operands);
    const auto& c = std::get<owl::ComplementOf>(e.node);
    return flogic::ClassExpr(K::Difference, flogic::sym(flogic::kObject), fl_class(*c.operand));
  }

  // --- class axioms --------------------------------------------------------

  LoweringResult translate_class_axiom_ex(const owl::ClassAxiom& ax) {
    using namespace detail;
    LoweringResult res;
    if (const auto* d = std::get_if<owl::DisjointWith>(&ax)) {
      res.rules.push_back({flogic::fact(pred("disjoint_classes", {namer_.class_symbol(d->b), namer_.class_symbol(d->a)})), ""});
      return res;
    }
    if (const auto* s = std::get_if<owl::SubClassOf>(&ax)) return inclusion(*s->sub, *s->super);

    const auto& eq = std::get<owl::EquivalentClass>(ax);
    const auto* a = eq.a->named();
    const auto* b = eq.b->named();
    if (a && b) {
      const Term ta = namer_.class_symbol(*a), tb = namer_.class_symbol(*b);
      const Term x = flogic::var("X");
      res.rules.push_back({flogic::fact(flogic::Equiv{ta, tb}), ""});
      res.rules.push_back({rule(isa(x, ta), {isa(x, tb)}), ""});
      res.rules.push_back({rule(isa(x, tb), {isa(x, ta)}), ""});
      res.rules.push_back({rule(flogic::SubClass{x, ta}, {flogic::SubClass{x, tb}}), ""});
      res.rules.push_back({rule(flogic::SubClass{x, tb}, {flogic::SubClass{x, ta}}), ""});
      return res;
    }
    const owl::ClassExpression* name_side = a ? eq.a.get() : b ? eq.b.get() : nullptr;
    const owl::ClassExpression* other = a ? eq.b.get() : eq.a.get();
    if (name_side && definable(*other)) return class_definition(*name_side->named(), *other);
    // Anything else is the pair of inclusions; both must translate.
    res = inclusion(*eq.a, *eq.b);
    if (res.translatability.ok()) res.append(inclusion(*eq.b, *eq.a));
    return res;
  }

  /// Expressions with a direct definition row (named operands only).
  static bool definable(const owl::ClassExpression& e) {
    if (const auto* u = std::get_if<owl::UnionOf>(&e.node)) return all_named(u->operands);
    if (const auto* i = std::get_if<owl::IntersectionOf>(&e.node)) return all_named(i->operands);
    if (const auto* c = std::get_if<owl::ComplementOf>(&e.node)) return c->operand->is_named();
    return std::holds_alternative<owl::OneOf>(e.node);
  }

  LoweringResult inclusion(const owl::ClassExpression& sub, const owl::ClassExpression& super) {
    using namespace detail;
    LoweringResult res;
    const auto* d = sub.named();
    if (d && super.is_named()) {
      res.rules.push_back({flogic::fact(flogic::SubClass{namer_.class_symbol(*d), namer_.class_symbol(*super.named())}), ""});
      return res;
    }
    if (d) {
      if (const auto* r = std::get_if<owl::Restriction>(&super.node)) return restriction(*d, *r);
      if (const auto* c = std::get_if<owl::ComplementOf>(&super.node); c && c->operand->is_named()) {
        // D ⊆ ¬C is disjointness.
        res.rules.push_back(
            {flogic::fact(pred("disjoint_classes", {namer_.class_symbol(*c->operand->named()), namer_.class_symbol(*d)})), ""});
        return res;
      }
      if (const auto* o = std::get_if<owl::OneOf>(&super.node)) {
        res.rules.push_back({flogic::fact(pred("oneOf", {namer_.class_symbol(*d), individuals(*o)})), ""});
        return res;
      }
    }
    return lower_general_inclusion(sub, super);
  }

  Term individuals(const owl::OneOf& o) {
    std::vector<Term> elems;
    for (const auto& i : o.individuals) elems.push_back(namer_.symbol(i));
    return Term::list(std::move(elems));
  }

  LoweringResult class_definition(const owl::Iri& name, const owl::ClassExpression& expr) {
    using namespace detail;
    LoweringResult res;
    const Term n = namer_.class_symbol(name);
    const Term x = flogic::var("X");
    if (const auto* o = std::get_if<owl::OneOf>(&expr.node)) {
      for (const auto& i : o->individuals) res.rules.push_back({flogic::fact(isa(namer_.symbol(i), n)), ""});
      res.rules.push_back({flogic::fact(pred("oneOf", {n, individuals(*o)})), ""});
      return res;
    }
    res.rules.push_back({flogic::fact(flogic::Equiv{n, fl_class(expr)}), ""});
    if (const auto* c = std::get_if<owl::ComplementOf>(&expr.node)) {
      res.rules.push_back({rule(isa(x, n), {isa(x, flogic::sym(flogic::kObject)),
                                            flogic::naf(isa(x, namer_.class_symbol(*c->operand->named())))}),
                           ""});
      return res;
    }
    if (const auto* i = std::get_if<owl::IntersectionOf>(&expr.node)) {
      std::vector<Literal> body;
      for (const auto& op : i->operands) body.push_back(isa(x, namer_.class_symbol(*op->named())));
      res.rules.push_back({rule(isa(x, n), body), ""});
      for (const auto& op : i->operands) res.rules.push_back({rule(isa(x, namer_.class_symbol(*op->named())), {isa(x, n)}), ""});
      return res;
    }
    const auto& u = std::get<owl::UnionOf>(expr.node);
    for (const auto& op : u.operands) res.rules.push_back({rule(isa(x, n), {isa(x, namer_.class_symbol(*op->named()))}), ""});
    if (!opts_.case_split_rhs_disjunction) {
      res.diagnostics.push_back(make_diagnostic(Severity::Warning, codes::kUntranslatableDisjunction,
                                                "only the membership direction of the union defining " +
                                                    flogic::print_term(n) + " is translated"));
      return res;
    }
    case_split({{isa(x, n)}}, u.operands, x, res);
    return res;
  }

  void case_split(const Alts& alts, const std::vector<owl::ClassExpressionPtr>& ops, const Term& x, LoweringResult& res) {
    using namespace detail;
    std::vector<Term> cs;
    for (const auto& op : ops) cs.push_back(namer_.class_symbol(*op->named()));
    for (const auto& alt : alts) {
      for (std::size_t i = 0; i < cs.size(); ++i) {
        auto body = alt;
        for (std::size_t j = 0; j < cs.size(); ++j) {
          if (j != i) body.push_back(flogic::naf(isa(x, cs[j])));
        }
        res.rules.push_back({rule(isa(x, cs[i]), std::move(body)), "case-split"});
      }
    }
    res.translatability.merge({Translatability::Kind::RequiresNafCases, {}});
    res.diagnostics.push_back(make_diagnostic(Severity::Warning, codes::kCaseSplitDisjunction,
                                              "disjunction in a superclass is approximated by NAF case rules"));
  }

  LoweringResult restriction(const owl::Iri& cls, const owl::Restriction& r) {
    using namespace detail;
    LoweringResult res;
    const Term c = namer_.class_symbol(cls);
    const Term p = namer_.symbol(r.property);
    const Term object = flogic::sym(flogic::kObject);
    auto signature = [&](std::optional<flogic::Cardinality> card) {
      res.rules.push_back({flogic::fact(flogic::Signature{c, std::nullopt, p, card, object}), ""});
    };
    std::visit(
        [&](const auto& k) {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, owl::AllValuesFrom>) {
            const Term x = flogic::var("X"), y = flogic::var("Y");
            if (const auto* f = k.filler->named()) {
              const Term ft = namer_.class_symbol(*f);
              res.rules.push_back({flogic::fact(flogic::Signature{c, flogic::ClassExpr(object), p, std::nullopt, ft}), ""});
              res.rules.push_back({rule(isa(y, ft), {isa(x, c), attr(x, p, y)}), ""});
            } else {
              // No signature for a complex range; the inference half still applies.
              fresh_ = 1;
              head({{isa(x, c), attr(x, p, y)}}, *k.filler, y, res);
            }
          } else if constexpr (std::is_same_v<K, owl::SomeValuesFrom>) {
            if (const auto* f = k.filler->named()) {
              res.rules.push_back({flogic::fact(pred("someValuesFrom", {c, p, namer_.class_symbol(*f)})), ""});
            } else {
              res.fail(codes::kUntranslatableExistential,
                       "existential restriction with a complex filler on " + flogic::print_term(p));
            }
          } else if constexpr (std::is_same_v<K, owl::HasValue>) {
            res.rules.push_back({flogic::fact(pred("hasValue", {c, p, namer_.value(k.value)})), ""});
          } else if constexpr (std::is_same_v<K, owl::MaxCardinality>) {
            signature(flogic::Cardinality{0, k.n});
          } else if constexpr (std::is_same_v<K, owl::MinCardinality>) {
            signature(flogic::Cardinality{k.n, std::nullopt});
          } else {
            signature(flogic::Cardinality{k.n, k.n});
          }
        },
        r.kind);
    return res;
  }

  // --- general inclusions ----------------------------------------------------

  /// Bodies (a disjunction of conjunctions) stating that `x` is in `e`.
  bool condition(const owl::ClassExpression& e, const Term& x, LoweringResult& res, Alts& out) {
    using namespace detail;
    if (const auto* n = e.named()) {
      out.push_back({isa(x, namer_.class_symbol(*n))});
      return true;
    }
    if (const auto* u = std::get_if<owl::UnionOf>(&e.node)) {
      for (const auto& op : u->operands) {
        if (!condition(*op, x, res, out)) return false;
      }
      return true;
    }
    if (const auto* in = std::get_if<owl::IntersectionOf>(&e.node)) {
      Alts acc{{}};
      for (const auto& op : in->operands) {
        Alts part;
        if (!condition(*op, x, res, part)) return false;
        Alts next;
        for (const auto& a : acc) {
          for (const auto& b : part) {
            auto conj = a;
            conj.insert(conj.end(), b.begin(), b.end());
            next.push_back(std::move(conj));
          }
        }
        acc = std::move(next);
      }
      out.insert(out.end(), acc.begin(), acc.end());
      return true;
    }
    if (const auto* c = std::get_if<owl::ComplementOf>(&e.node)) {
      auto neg = negation(*c->operand, x, res);
      if (!neg) return false;
      out.push_back({isa(x, flogic::sym(flogic::kObject)), std::move(*neg)});
      return true;
    }
    if (std::holds_alternative<owl::OneOf>(e.node)) {
      res.fail(codes::kUnsupportedExpression, "oneOf nested inside a subclass expression");
      return false;
    }
    const auto& r = std::get<owl::Restriction>(e.node);
    const Term p = namer_.symbol(r.property);
    if (const auto* hv = std::get_if<owl::HasValue>(&r.kind)) {
      out.push_back({attr(x, p, namer_.value(hv->value))});
      return true;
    }
    if (std::holds_alternative<owl::SomeValuesFrom>(r.kind)) {
      res.fail(codes::kUntranslatableExistential,
               "existential restriction on " + flogic::print_term(p) + " used as a subclass");
      return false;
    }
    if (const auto* av = std::get_if<owl::AllValuesFrom>(&r.kind)) {
      // Lloyd-Topor: x is in ∀P.F unless some P-value of x is outside F.
      const Term y = fresh_var();
      auto neg = negation(*av->filler, y, res);
      if (!neg) return false;
      const auto aux = next_aux();
      res.rules.push_back({rule(pred(aux, {x}), {attr(x, p, y), std::move(*neg)}), "lloyd-topor"});
      res.translatability.merge({Translatability::Kind::RequiresLloydTopor, {}});
      res.diagnostics.push_back(make_diagnostic(Severity::Info, codes::kLloydTopor,
                                                "universal restriction on " + flogic::print_term(p) +
                                                    " lowered through " + aux));
      out.push_back({isa(x, flogic::sym(flogic::kObject)), flogic::naf(pred(aux, {x}))});
      return true;
    }
    res.fail(codes::kUnsupportedExpression, "cardinality restriction used as a subclass");
    return false;
  }

  /// A literal that holds when `x` is not in `e`.
  std::optional<Literal> negation(const owl::ClassExpression& e, const Term& x, LoweringResult& res) {
    using namespace detail;
    if (const auto* n = e.named()) return Literal(flogic::naf(isa(x, namer_.class_symbol(*n))));
    Alts alts;
    if (!condition(e, x, res, alts)) return std::nullopt;
    const auto aux = next_aux();
    for (auto& alt : alts) res.rules.push_back({rule(pred(aux, {x}), std::move(alt)), "lloyd-topor"});
    res.translatability.merge({Translatability::Kind::RequiresLloydTopor, {}});
    return Literal(flogic::naf(pred(aux, {x})));
  }

  /// Rules deriving membership of `x` in `e` from each body in `alts`.
  void head(const Alts& alts, const owl::ClassExpression& e, const Term& x, LoweringResult& res) {
    using namespace detail;
    if (!res.translatability.ok()) return;
    if (const auto* n = e.named()) {
      for (const auto& alt : alts) res.rules.push_back({rule(isa(x, namer_.class_symbol(*n)), alt), ""});
      return;
    }
    if (const auto* in = std::get_if<owl::IntersectionOf>(&e.node)) {
      for (const auto& op : in->operands) head(alts, *op, x, res);
      return;
    }
    if (const auto* u = std::get_if<owl::UnionOf>(&e.node)) {
      if (!opts_.case_split_rhs_disjunction) {
        res.fail(codes::kUntranslatableDisjunction, "disjunction in a superclass (case splitting disabled)");
        return;
      }
      if (!all_named(u->operands)) {
        res.fail(codes::kUnsupportedExpression, "disjunction of complex classes in a superclass");
        return;
      }
      case_split(alts, u->operands, x, res);
      return;
    }
    if (const auto* r = std::get_if<owl::Restriction>(&e.node)) {
      const Term p = namer_.symbol(r->property);
      if (const auto* av = std::get_if<owl::AllValuesFrom>(&r->kind)) {
        const Term y = fresh_var();
        Alts ext = alts;
        for (auto& alt : ext) alt.push_back(attr(x, p, y));
        head(ext, *av->filler, y, res);
        return;
      }
      if (const auto* hv = std::get_if<owl::HasValue>(&r->kind)) {
        for (const auto& alt : alts) res.rules.push_back({rule(attr(x, p, namer_.value(hv->value)), alt), ""});
        return;
      }
      if (std::holds_alternative<owl::SomeValuesFrom>(r->kind)) {
        res.fail(codes::kUntranslatableExistential,
                 "existential restriction on " + flogic::print_term(p) + " as the superclass of a complex class");
        return;
      }
      res.fail(codes::kUnsupportedExpression, "cardinality restriction as the superclass of a complex class");
      return;
    }
    res.fail(codes::kUnsupportedExpression, "complement or enumeration as the superclass of a complex class");
  }

  // --- property axioms -------------------------------------------------------

  LoweringResult translate_property_axiom_ex(const owl::PropertyAxiom& ax, std::optional<std::size_t> index) {
    using namespace detail;
    LoweringResult res;
    const Term x = flogic::var("X"), y = flogic::var("Y"), z = flogic::var("Z"), pv = flogic::var("P");
    const Term object = flogic::sym(flogic::kObject);
    auto add = [&](flogic::Rule r, std::string kind = "") { res.rules.push_back({std::move(r), std::move(kind)}); };
    auto inverse_pair = [&](const owl::Iri& a, const owl::Iri& b) {
      const Term ta = namer_.symbol(a), tb = namer_.symbol(b);
      add(rule(attr(x, ta, y), {attr(y, tb, x)}));
      add(rule(attr(x, tb, y), {attr(y, ta, x)}));
    };

    if (const auto* d = std::get_if<owl::Domain>(&ax)) {
      const Term p = namer_.symbol(d->property), c = namer_.class_symbol(d->cls);
      const auto partner = index ? partner_.find(*index) : partner_.end();
      if (partner == partner_.end()) {
        add(flogic::fact(flogic::Signature{c, std::nullopt, p, std::nullopt, object}));
      } else if (*index < partner->second) {
        const auto& r = std::get<owl::Range>(std::get<owl::PropertyAxiom>(doc_.axioms[partner->second].body));
        add(flogic::fact(flogic::Signature{c, std::nullopt, p, std::nullopt, namer_.class_symbol(r.cls)}), "signature");
      }
      if (opts_.owl_domain_range_rules) add(rule(isa(x, c), {attr(x, p, y)}));
      return res;
    }
    if (const auto* r = std::get_if<owl::Range>(&ax)) {
      const Term p = namer_.symbol(r->property), c = namer_.class_symbol(r->cls);
      const auto partner = index ? partner_.find(*index) : partner_.end();
      if (partner == partner_.end()) {
        add(flogic::fact(flogic::Signature{object, std::nullopt, p, std::nullopt, c}));
      } else if (*index < partner->second) {
        const auto& d = std::get<owl::Domain>(std::get<owl::PropertyAxiom>(doc_.axioms[partner->second].body));
        add(flogic::fact(flogic::Signature{namer_.class_symbol(d.cls), std::nullopt, p, std::nullopt, c}), "signature");
      }
      if (opts_.owl_domain_range_rules) add(rule(isa(y, c), {attr(x, p, y)}));
      return res;
    }
    if (const auto* s = std::get_if<owl::SubPropertyOf>(&ax)) {
      add(rule(attr(x, namer_.symbol(s->super), y), {attr(x, namer_.symbol(s->sub), y)}));
      return res;
    }
    if (const auto* e = std::get_if<owl::EquivalentProperty>(&ax)) {
      const Term a = namer_.symbol(e->a), b = namer_.symbol(e->b);
      add(rule(attr(x, a, y), {attr(x, b, y)}));
      add(rule(attr(x, b, y), {attr(x, a, y)}));
      return res;
    }
    if (const auto* inv = std::get_if<owl::InverseOf>(&ax)) {
      inverse_pair(inv->a, inv->b);
      return res;
    }
    const auto& ch = std::get<owl::PropertyCharacteristic>(ax);
    const Term p = namer_.symbol(ch.property);
    switch (ch.kind) {
      case owl::Characteristic::Functional:
        add(flogic::fact(flogic::Signature{object, std::nullopt, p, flogic::Cardinality{1, 1}, object}));
        break;
      case owl::Characteristic::InverseFunctional:
        if (auto it = inverse_.find(ch.property); it != inverse_.end()) {
          // P is injective exactly when its inverse Q is functional.
          inverse_pair(it->second.a, it->second.b);
          const auto& q = it->second.a == ch.property ? it->second.b : it->second.a;
          add(flogic::fact(flogic::Signature{object, std::nullopt, namer_.symbol(q), flogic::Cardinality{1, 1}, object}));
        } else {
          add(flogic::fact(pred("inverseFunctional", {p})));
        }
        break;
      case owl::Characteristic::Transitive:
        add(flogic::fact(pred("TransitiveProperty", {p})));
        if (!std::exchange(transitive_done_, true)) {
          add(rule(attr(x, pv, z), {pred("TransitiveProperty", {pv}), attr(x, pv, y), attr(y, pv, z)}));
        }
        break;
      case owl::Characteristic::Symmetric:
        add(flogic::fact(pred("SymmetricProperty", {p})));
        if (!std::exchange(symmetric_done_, true)) {
          add(rule(attr(x, pv, y), {pred("SymmetricProperty", {pv}), attr(y, pv, x)}));
        }
        break;
    }
    return res;
  }
};

inline TranslationResult translate_ontology(const owl::OntologyDocument& doc, TranslationOptions opts = {}) {
  return OwlToFlogic(doc, opts).run();
}

}  // namespace owl2fl::translate
