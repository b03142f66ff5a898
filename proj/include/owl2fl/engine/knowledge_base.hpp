#pragma once

// Bottom-up evaluation of translated programs: stratified negation as
// failure, semi-naive saturation over a finite constant domain, conjunctive
// queries, integrity checks and fact insertion.
//
// Class membership, subclassing, attribute values, signatures and predicates
// live in separate relations. Three structural rules hold in every stratum:
// membership is inherited along `::`, `::` is transitive (not reflexive), and
// every constant seen in an individual position is a member of `_object`.
// Literals are members of their type tag class instead.
//
// Groups of NAF case rules produced for a disjunctive superclass
// (`?X:Ci :- ?X:D, \naf ?X:Cj, ...` for every alternative) form a negative
// cycle and cannot be stratified. They are evaluated after saturation: an
// object in D with none of the alternatives is put in the first one, and the
// program is saturated again.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "owl2fl/diagnostic.hpp"
#include "owl2fl/engine/store.hpp"
#include "owl2fl/flogic/ast.hpp"
#include "owl2fl/flogic/printer.hpp"

namespace owl2fl::engine {

struct EngineOptions {
  /// Also report objects with fewer values than a signature's lower bound.
  bool check_min_cardinality = false;
};

using Bindings = std::map<std::string, flogic::Term>;

struct ConstraintViolation {
  std::string checker;
  std::string message;
  std::vector<Bindings> witnesses;
};

struct Stratification {
  /// Program rule indices per stratum, lowest first.
  std::vector<std::vector<std::size_t>> strata;
  /// Dependency node (`isa:C`, `attr:p`, `sub`, `p:name/n`, ...) -> stratum.
  std::map<std::string, std::size_t> level;
};

namespace detail {

struct Arg {
  enum class Kind : std::uint8_t { Var, Const, Any, Pattern };
  Kind kind = Kind::Any;
  Id v = kNone;  // variable index or constant id
  flogic::Term pattern;

  static Arg var(Id i) { return Arg{Kind::Var, i, {}}; }
  static Arg constant(Id i) { return Arg{Kind::Const, i, {}}; }
  static Arg any() { return Arg{}; }
};

struct Atom {
  std::string rel;
  std::vector<Arg> args;
};

struct CLit {
  enum class Kind : std::uint8_t { Pos, Neg, Member, NotEqual, Card, Format };
  Kind kind = Kind::Pos;
  Atom atom;                 // Pos
  std::vector<CLit> inner;   // Neg
  std::vector<Id> inner_plan;
  std::vector<Arg> args;     // builtins
  std::set<Id> vars;
  /// Variables that must be bound before the literal can be evaluated.
  std::set<Id> needs;

  bool generator() const { return kind == Kind::Pos || kind == Kind::Card; }
};

struct CRule {
  std::optional<Atom> head;
  std::vector<CLit> body;
  std::vector<std::string> var_names;
  std::size_t source = 0;
  /// Evaluation order per delta literal; the last entry is the plain order.
  std::map<std::size_t, std::vector<Id>> plans;
  std::vector<Id> plan;
  bool has_format = false;
};

inline constexpr std::size_t kNoDelta = static_cast<std::size_t>(-1);

}  // namespace detail

class KnowledgeBase {
 public:
  using Term = flogic::Term;

  explicit KnowledgeBase(EngineOptions opts = {}) : opts_(opts) { init_constants(); }

  /// Loads facts and rules. Rules that cannot be evaluated are skipped with
  /// an Error diagnostic; the rest of the program still loads.
  static KnowledgeBase load(const flogic::Program& program, Diagnostics& diags, EngineOptions opts = {}) {
    KnowledgeBase kb(opts);
    kb.prefixes_ = program.prefixes;
    for (std::size_t i = 0; i < program.rules.size(); ++i) kb.load_rule(program.rules[i], i, diags);
    kb.find_case_groups(program);
    return kb;
  }

  std::size_t fact_count() const { return edb_.size(); }
  std::size_t rule_count() const { return rules_.size(); }
  bool saturated() const { return saturated_; }

  /// Dependency analysis over the loaded rules (case-split groups excluded).
  std::optional<Stratification> stratify(Diagnostics& diags) {
    Graph g = dependency_graph();
    return g.stratify(*this, diags);
  }

  /// Computes the stratified model. Returns false when the program cannot be
  /// stratified; the store is then left empty.
  bool saturate(Diagnostics& diags) {
    auto strat = stratify(diags);
    saturated_ = false;
    store_ = FactStore{};
    if (!strat) return false;
    std::vector<std::pair<std::string, Tuple>> chosen;
    for (;;) {
      run_strata(*strat, chosen);
      std::vector<std::pair<std::string, Tuple>> more;
      for (const auto& g : case_groups_) choose(g, more);
      if (more.empty()) break;
      chosen.insert(chosen.end(), more.begin(), more.end());
    }
    saturated_ = true;
    return true;
  }

  const FactStore& store() const { return store_; }

  /// All answers to a conjunctive goal, as bindings of its named variables.
  /// A true ground goal yields one empty binding set.
  std::vector<Bindings> query(const std::vector<flogic::Literal>& goal, Diagnostics& diags) const {
    detail::CRule q;
    if (!compile_goal(goal, q, diags)) return {};
    std::set<Bindings> out;
    std::vector<Id> env(q.var_names.size(), kUnbound);
    solve(q, q.plan, 0, env, detail::kNoDelta, 0, 0, [&](const std::vector<Id>& e) {
      Bindings b;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] != kUnbound && !q.var_names[i].starts_with("_")) b[q.var_names[i]] = terms_.term(e[i]);
      }
      out.insert(std::move(b));
    });
    return {out.begin(), out.end()};
  }

  /// Distinct values of `var` over all answers, sorted by printed form.
  std::vector<Term> collect_set(const std::string& var, const std::vector<flogic::Literal>& goal,
                                Diagnostics& diags) const {
    bool occurs = false;
    for (const auto& l : goal) {
      flogic::for_each_term(l, [&](const Term& t) {
        if (t.is_variable() && t.name == var) occurs = true;
      });
    }
    if (!occurs) {
      diags.push_back(make_diagnostic(Severity::Error, codes::kUnsafeGoal, "?" + var + " does not occur in the goal"));
      return {};
    }
    std::map<std::string, Term> sorted;
    for (const auto& b : query(goal, diags)) {
      if (auto it = b.find(var); it != b.end()) sorted.emplace(show(it->second), it->second);
    }
    std::vector<Term> out;
    for (auto& [k, t] : sorted) out.push_back(std::move(t));
    return out;
  }

  /// Evaluates every rule that reports through `format`, grouping identical
  /// messages. Checkers appear in program order, messages sorted within one.
  std::vector<ConstraintViolation> run_constraint_checks() const {
    std::vector<ConstraintViolation> out;
    for (const auto& r : rules_) {
      if (!r.has_format || !r.head) continue;
      const auto checker = r.head->rel.substr(2, r.head->rel.rfind('/') - 2);
      std::map<std::string, std::vector<Bindings>> found;
      std::vector<Id> env(r.var_names.size(), kUnbound);
      std::string message;
      format_sink_ = [&](const std::string& m) { message = m; };
      solve(r, r.plan, 0, env, detail::kNoDelta, 0, 0, [&](const std::vector<Id>& e) {
        Bindings b;
        for (std::size_t i = 0; i < e.size(); ++i) {
          if (e[i] != kUnbound) b[r.var_names[i]] = terms_.term(e[i]);
        }
        auto& w = found[message];
        if (std::find(w.begin(), w.end(), b) == w.end()) w.push_back(std::move(b));
      });
      format_sink_ = nullptr;
      for (auto& [m, w] : found) out.push_back(ConstraintViolation{checker, m, std::move(w)});
    }
    return out;
  }

  /// Adds a ground fact and re-saturates. Returns the number of facts that
  /// appeared in the store, 0 for a duplicate, nothing on error.
  std::optional<std::size_t> insert_fact(const flogic::Literal& fact, Diagnostics& diags) {
    if (!flogic::is_ground(fact)) {
      diags.push_back(make_diagnostic(Severity::Error, codes::kNonGroundInsert,
                                      "cannot insert non-ground " + printer().literal(fact)));
      return std::nullopt;
    }
    Diagnostics local;
    auto compiled = compile_fact(fact, local);
    if (!compiled) {
      diags.insert(diags.end(), local.begin(), local.end());
      return std::nullopt;
    }
    if (!edb_set_.insert(*compiled).second) return 0;
    edb_.push_back(*compiled);
    const auto before = saturated_ ? store_.size() : 0;
    if (!saturate(diags)) {
      edb_.pop_back();
      edb_set_.erase(*compiled);
      saturate(local);
      return std::nullopt;
    }
    return store_.size() - before;
  }

  /// Every stored fact in canonical text, for comparisons and dumps.
  std::set<std::string> snapshot() const {
    std::set<std::string> out;
    for (const auto& [name, r] : store_.relations()) {
      for (std::size_t i = 0; i < r.size(); ++i) out.insert(show_fact(name, r.row(i)));
    }
    return out;
  }

  std::string show(const Term& t) const { return printer().term(t); }
  std::string show(Id id) const { return show(terms_.term(id)); }

  std::string show_fact(const std::string& relation, const Tuple& t) const {
    return printer().literal(decode_fact(relation, t));
  }

  flogic::Printer printer() const { return flogic::Printer(&prefixes_); }
  /// True when `t` occurs anywhere in the loaded program or the model.
  bool knows(const Term& t) const { return terms_.find(t).has_value(); }
  const std::map<std::string, std::string>& prefixes() const { return prefixes_; }

 private:
  using CRule = detail::CRule;
  using CLit = detail::CLit;
  using Arg = detail::Arg;
  using Atom = detail::Atom;

  struct CaseGroup {
    Id domain = kNone;
    std::vector<Id> alternatives;
    std::vector<std::size_t> rules;
  };

  EngineOptions opts_;
  std::map<std::string, std::string> prefixes_;
  mutable TermTable terms_;
  std::vector<CRule> rules_;
  std::vector<std::pair<std::string, Tuple>> edb_;
  std::set<std::pair<std::string, Tuple>> edb_set_;
  std::vector<CaseGroup> case_groups_;
  std::set<std::size_t> case_rules_;  // indices into rules_
  FactStore store_;
  bool saturated_ = false;
  mutable std::function<void(const std::string&)> format_sink_;

  Id object_ = kNone, star_ = kNone;
  std::map<std::string, Id> type_tags_;

  void init_constants() {
    object_ = terms_.intern(flogic::sym(flogic::kObject));
    star_ = terms_.intern(flogic::sym("*"));
    for (const auto* t : {"_string", "_integer", "_double", "_boolean"}) type_tags_[t] = terms_.intern(flogic::sym(t));
  }

  Id intern(const Term& t) const {
    for (const auto& a : t.args) intern(a);
    return terms_.intern(t);
  }

  // --- compilation -----------------------------------------------------------

  class Compiler {
   public:
    Compiler(const KnowledgeBase& kb, CRule& rule) : kb_(kb), rule_(rule) {}

    Arg term(const Term& t) {
      if (t.is_variable()) return Arg::var(var(t.name));
      if (t.is_ground()) return Arg::constant(kb_.intern(t));
      flogic::for_each_term(t, [&](const Term& s) {
        if (s.is_variable()) var(s.name);
      });
      return Arg{Arg::Kind::Pattern, kNone, t};
    }

    std::optional<Arg> cls(const flogic::ClassExpr& c) {
      if (!c.is_atom()) return std::nullopt;
      return term(c.atom);
    }

    Id var(const std::string& name) {
      auto& names = rule_.var_names;
      const auto it = std::find(names.begin(), names.end(), name);
      if (it != names.end()) return static_cast<Id>(it - names.begin());
      names.push_back(name);
      return static_cast<Id>(names.size() - 1);
    }

    /// `head` selects the encoding of absent signature parts.
    std::optional<Atom> molecule(const flogic::Molecule& m, bool head, std::string& error) {
      return std::visit(
          [&](const auto& x) -> std::optional<Atom> {
            using M = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<M, flogic::IsA>) {
              auto c = cls(x.cls);
              if (!c) return fail(error);
              return Atom{rel::kIsa, {term(x.obj), *c}};
            } else if constexpr (std::is_same_v<M, flogic::SubClass>) {
              auto a = cls(x.sub), b = cls(x.super);
              if (!a || !b) return fail(error);
              return Atom{rel::kSub, {*a, *b}};
            } else if constexpr (std::is_same_v<M, flogic::Equiv>) {
              if (!head && (!x.a.is_atom() || !x.b.is_atom())) return fail(error);
              return Atom{rel::kEquiv, {term(encode(x.a)), term(encode(x.b))}};
            } else if constexpr (std::is_same_v<M, flogic::AttrValue>) {
              return Atom{rel::kAttr, {term(x.obj), term(x.prop), term(x.value)}};
            } else {
              auto c = cls(x.cls), r = cls(x.range);
              if (!c || !r) return fail(error);
              std::optional<Arg> via = head ? Arg::constant(kNone) : Arg::any();
              if (x.via) {
                via = cls(*x.via);
                if (!via) return fail(error);
              }
              Arg low = head ? Arg::constant(kNone) : Arg::any();
              Arg high = low;
              if (x.card) {
                low = Arg::constant(kb_.intern(Term::literal(std::to_string(x.card->low), "_integer")));
                high = x.card->high ? Arg::constant(kb_.intern(Term::literal(std::to_string(*x.card->high), "_integer")))
                                    : Arg::constant(kb_.star_);
              }
              return Atom{rel::kSig, {*c, *via, term(x.prop), low, high, *r}};
            }
          },
          m);
    }

    std::optional<Atom> head(const flogic::Literal& l, std::string& error) {
      if (const auto* m = l.molecule()) return molecule(*m, true, error);
      if (const auto* p = l.pred()) return pred(*p);
      error = "rule head must be a molecule or predicate";
      return std::nullopt;
    }

    Atom pred(const flogic::Pred& p) {
      Atom a{rel::pred(p.name, p.args.size()), {}};
      for (const auto& t : p.args) a.args.push_back(term(t));
      return a;
    }

    std::optional<CLit> literal(const flogic::Literal& l, std::string& error) {
      CLit out;
      if (const auto* m = l.molecule()) {
        auto a = molecule(*m, false, error);
        if (!a) return std::nullopt;
        out.atom = std::move(*a);
      } else if (const auto* p = l.pred()) {
        out.atom = pred(*p);
      } else if (const auto* n = l.naf()) {
        out.kind = CLit::Kind::Neg;
        for (const auto& b : n->body) {
          auto c = literal(b, error);
          if (!c) return std::nullopt;
          out.inner.push_back(std::move(*c));
        }
      } else {
        const auto& b = *l.builtin();
        using BK = flogic::BuiltinKind;
        out.kind = b.kind == BK::Member     ? CLit::Kind::Member
                   : b.kind == BK::NotEqual ? CLit::Kind::NotEqual
                   : b.kind == BK::Cardinality ? CLit::Kind::Card
                                               : CLit::Kind::Format;
        for (const auto& t : b.args) out.args.push_back(term(t));
      }
      flogic::for_each_term(l, [&](const Term& t) {
        if (t.is_variable()) out.vars.insert(var(t.name));
      });
      return out;
    }

    static flogic::Term encode(const flogic::ClassExpr& c) {
      using K = flogic::ClassExpr::Kind;
      if (c.is_atom()) return c.atom;
      const char* f = c.kind == K::Union ? "_union" : c.kind == K::Intersection ? "_intersection" : "_difference";
      return Term::compound(f, {encode(c.ops[0]), encode(c.ops[1])});
    }

   private:
    const KnowledgeBase& kb_;
    CRule& rule_;

    static std::optional<Atom> fail(std::string& error) {
      error = "complex class expression";
      return std::nullopt;
    }
  };

  static flogic::ClassExpr decode_class(const Term& t) {
    using K = flogic::ClassExpr::Kind;
    if (t.kind != Term::Kind::Compound || t.args.size() != 2) return t;
    const K k = t.name == "_union" ? K::Union : t.name == "_intersection" ? K::Intersection : K::Difference;
    return flogic::ClassExpr(k, decode_class(t.args[0]), decode_class(t.args[1]));
  }

  flogic::Literal decode_fact(const std::string& relation, const Tuple& t) const {
    auto T = [&](Id id) { return terms_.term(id); };
    if (relation == rel::kIsa) return flogic::IsA{T(t[0]), T(t[1])};
    if (relation == rel::kSub) return flogic::SubClass{T(t[0]), T(t[1])};
    if (relation == rel::kEquiv) return flogic::Equiv{decode_class(T(t[0])), decode_class(T(t[1]))};
    if (relation == rel::kAttr) return flogic::AttrValue{T(t[0]), T(t[1]), T(t[2])};
    if (relation == rel::kSig) {
      flogic::Signature s{T(t[0]), std::nullopt, T(t[2]), std::nullopt, T(t[5])};
      if (t[1] != kNone) s.via = flogic::ClassExpr(T(t[1]));
      if (t[3] != kNone) {
        flogic::Cardinality c{static_cast<std::uint32_t>(std::stoul(T(t[3]).name)), std::nullopt};
        if (t[4] != star_) c.high = static_cast<std::uint32_t>(std::stoul(T(t[4]).name));
        s.card = c;
      }
      return s;
    }
    flogic::Pred p{relation.substr(2, relation.rfind('/') - 2), {}};
    for (Id id : t) p.args.push_back(T(id));
    return p;
  }

  std::optional<std::pair<std::string, Tuple>> compile_fact(const flogic::Literal& l, Diagnostics& diags) const {
    CRule scratch;
    Compiler c(*this, scratch);
    std::string error;
    auto a = c.head(l, error);
    if (!a) {
      diags.push_back(make_diagnostic(Severity::Error, codes::kUnsupportedClassExpression,
                                      error + " in fact " + printer().literal(l)));
      return std::nullopt;
    }
    Tuple t;
    for (const auto& arg : a->args) t.push_back(arg.v);
    return std::make_pair(a->rel, t);
  }

  void load_rule(const flogic::Rule& r, std::size_t source, Diagnostics& diags) {
    const auto text = printer().rule(r);
    if (r.is_fact()) {
      if (!flogic::is_ground(r.head)) {
        diags.push_back(make_diagnostic(Severity::Error, codes::kNonRangeRestricted, "non-ground fact " + text));
        return;
      }
      if (auto f = compile_fact(r.head, diags); f && edb_set_.insert(*f).second) edb_.push_back(std::move(*f));
      return;
    }
    CRule cr;
    cr.source = source;
    Compiler c(*this, cr);
    std::string error;
    auto head = c.head(r.head, error);
    if (!head) {
      diags.push_back(make_diagnostic(Severity::Error, codes::kUnsupportedClassExpression, error + " in rule " + text));
      return;
    }
    for (const auto& a : head->args) {
      if (a.kind == Arg::Kind::Pattern) {
        diags.push_back(make_diagnostic(Severity::Error, codes::kFunctionSymbols,
                                        "rule head builds new terms: " + text));
        return;
      }
    }
    cr.head = std::move(*head);
    for (const auto& l : r.body) {
      auto lit = c.literal(l, error);
      if (!lit) {
        diags.push_back(make_diagnostic(Severity::Error, codes::kUnsupportedClassExpression, error + " in rule " + text));
        return;
      }
      cr.has_format = cr.has_format || lit->kind == CLit::Kind::Format;
      cr.body.push_back(std::move(*lit));
    }
    std::set<Id> head_vars;
    for (const auto& a : cr.head->args) {
      if (a.kind == Arg::Kind::Var) head_vars.insert(a.v);
    }
    if (!plan_rule(cr, head_vars, false)) {
      diags.push_back(make_diagnostic(Severity::Error, codes::kNonRangeRestricted,
                                      "variables not bound by a positive body literal in " + text));
      return;
    }
    rules_.push_back(std::move(cr));
  }

  bool compile_goal(const std::vector<flogic::Literal>& goal, CRule& q, Diagnostics& diags) const {
    Compiler c(*this, q);
    std::string error;
    for (const auto& l : goal) {
      auto lit = c.literal(l, error);
      if (!lit) {
        diags.push_back(make_diagnostic(Severity::Error, codes::kUnsupportedClassExpression, error + " in goal"));
        return false;
      }
      q.body.push_back(std::move(*lit));
    }
    if (!plan_rule(q, {}, true)) {
      diags.push_back(make_diagnostic(Severity::Error, codes::kUnsafeGoal,
                                      "a variable under negation or in a builtin is not bound by the goal"));
      return false;
    }
    return true;
  }

  /// Orders literals so every non-generator runs once its inputs are bound.
  /// `strict` forbids variables local to a negation (used for goals).
  static bool plan_rule(CRule& r, const std::set<Id>& head_vars, bool strict) {
    for (std::size_t i = 0; i < r.body.size(); ++i) {
      auto& l = r.body[i];
      if (l.generator()) continue;
      if (l.kind != CLit::Kind::Neg || strict) {
        l.needs = l.vars;
      } else {
        for (Id v : l.vars) {
          bool elsewhere = head_vars.count(v) > 0;
          for (std::size_t j = 0; j < r.body.size() && !elsewhere; ++j) elsewhere = j != i && r.body[j].vars.count(v);
          if (elsewhere) l.needs.insert(v);
        }
      }
      if (l.kind == CLit::Kind::Neg && !plan_inner(l)) return false;
    }
    auto order = [&](std::size_t first, std::vector<Id>& out) {
      std::set<Id> bound;
      std::vector<bool> placed(r.body.size(), false);
      auto place_ready = [&] {
        for (std::size_t i = 0; i < r.body.size(); ++i) {
          const auto& l = r.body[i];
          if (placed[i] || l.generator()) continue;
          if (std::includes(bound.begin(), bound.end(), l.needs.begin(), l.needs.end())) {
            placed[i] = true;
            out.push_back(static_cast<Id>(i));
          }
        }
      };
      auto place = [&](std::size_t i) {
        placed[i] = true;
        out.push_back(static_cast<Id>(i));
        bound.insert(r.body[i].vars.begin(), r.body[i].vars.end());
        place_ready();
      };
      place_ready();
      if (first != detail::kNoDelta) place(first);
      for (std::size_t i = 0; i < r.body.size(); ++i) {
        if (!placed[i] && r.body[i].generator()) place(i);
      }
      if (std::find(placed.begin(), placed.end(), false) != placed.end()) return false;
      return std::includes(bound.begin(), bound.end(), head_vars.begin(), head_vars.end());
    };
    if (!order(detail::kNoDelta, r.plan)) return false;
    for (std::size_t i = 0; i < r.body.size(); ++i) {
      if (r.body[i].kind != CLit::Kind::Pos) continue;
      if (!order(i, r.plans[i])) return false;
    }
    return true;
  }

  static bool plan_inner(CLit& neg) {
    std::set<Id> bound = neg.needs;
    std::vector<bool> placed(neg.inner.size(), false);
    for (auto& l : neg.inner) {
      if (l.kind == CLit::Kind::Neg) {
        l.needs = l.vars;  // nested negations see no locals of their own
        if (!plan_inner(l)) return false;
      } else if (!l.generator()) {
        l.needs = l.vars;
      }
    }
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t i = 0; i < neg.inner.size(); ++i) {
        if (placed[i]) continue;
        const auto& l = neg.inner[i];
        if (l.generator() || std::includes(bound.begin(), bound.end(), l.needs.begin(), l.needs.end())) {
          placed[i] = true;
          progress = true;
          neg.inner_plan.push_back(static_cast<Id>(i));
          bound.insert(l.vars.begin(), l.vars.end());
        }
      }
    }
    return neg.inner_plan.size() == neg.inner.size();
  }

  // --- case-split groups -----------------------------------------------------

  void find_case_groups(const flogic::Program& program) {
    struct Candidate {
      std::size_t rule;  // index into rules_
      Id domain, head;
      std::set<Id> negated;
    };
    auto const_class = [&](const flogic::ClassExpr& c) -> std::optional<Id> {
      if (!c.is_atom() || !c.atom.is_ground()) return std::nullopt;
      return terms_.find(c.atom);
    };
    std::vector<Candidate> cands;
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      const auto& r = program.rules[rules_[i].source];
      const auto* h = r.head.as<flogic::IsA>();
      if (!h || !h->obj.is_variable() || r.body.size() < 2) continue;
      const auto* d = r.body[0].as<flogic::IsA>();
      if (!d || d->obj != h->obj) continue;
      auto hc = const_class(h->cls), dc = const_class(d->cls);
      if (!hc || !dc || *dc == object_) continue;
      Candidate c{i, *dc, *hc, {}};
      bool ok = true;
      for (std::size_t j = 1; j < r.body.size() && ok; ++j) {
        const auto* n = r.body[j].naf();
        const auto* m = n && n->body.size() == 1 ? n->body[0].as<flogic::IsA>() : nullptr;
        auto mc = m && m->obj == h->obj ? const_class(m->cls) : std::nullopt;
        ok = mc.has_value();
        if (ok) c.negated.insert(*mc);
      }
      if (ok) cands.push_back(std::move(c));
    }
    std::set<std::size_t> used;
    for (const auto& c : cands) {
      if (used.count(c.rule)) continue;
      std::set<Id> all = c.negated;
      all.insert(c.head);
      CaseGroup g{c.domain, {}, {}};
      for (const auto& o : cands) {
        if (used.count(o.rule) || o.domain != c.domain) continue;
        std::set<Id> mine = o.negated;
        mine.insert(o.head);
        if (mine != all || o.negated.count(o.head)) continue;
        if (std::find(g.alternatives.begin(), g.alternatives.end(), o.head) != g.alternatives.end()) continue;
        g.alternatives.push_back(o.head);
        g.rules.push_back(o.rule);
      }
      if (g.alternatives.size() != all.size()) continue;
      for (auto r : g.rules) {
        used.insert(r);
        case_rules_.insert(r);
      }
      case_groups_.push_back(std::move(g));
    }
  }

  void choose(const CaseGroup& g, std::vector<std::pair<std::string, Tuple>>& out) const {
    const auto* isa = store_.find(rel::kIsa);
    if (!isa) return;
    const auto* members = isa->rows_with(1, g.domain);
    if (!members) return;
    std::map<std::string, Id> objects;  // sorted by printed form
    for (auto row : *members) objects.emplace(show(isa->row(row)[0]), isa->row(row)[0]);
    // An alternative is ruled out for x when x already belongs to a class
    // declared disjoint from it.
    const auto* disjoint = store_.find(rel::pred("disjoint_classes", 2));
    auto excluded = [&](Id x, Id c) {
      if (!disjoint) return false;
      for (std::size_t col = 0; col < 2; ++col) {
        if (const auto* rows = disjoint->rows_with(col, c)) {
          for (auto row : *rows) {
            if (isa->contains({x, disjoint->row(row)[1 - col]})) return true;
          }
        }
      }
      return false;
    };
    for (const auto& [name, x] : objects) {
      bool any = false;
      for (Id c : g.alternatives) any = any || isa->contains({x, c});
      if (any) continue;
      Id pick = g.alternatives.front();
      for (Id c : g.alternatives) {
        if (!excluded(x, c)) {
          pick = c;
          break;
        }
      }
      out.emplace_back(rel::kIsa, Tuple{x, pick});
    }
  }

  // --- stratification --------------------------------------------------------

  struct Graph {
    std::map<std::string, std::size_t> ids;
    std::vector<std::string> labels;
    std::vector<std::vector<std::pair<std::size_t, bool>>> deps;  // (node, negative)
    std::vector<std::pair<std::size_t, std::size_t>> rule_heads;   // (rule index, node)

    std::size_t node(const std::string& label) {
      auto [it, fresh] = ids.emplace(label, labels.size());
      if (fresh) {
        labels.push_back(label);
        deps.emplace_back();
      }
      return it->second;
    }
    void edge(std::size_t from, std::size_t to, bool negative) { deps[from].emplace_back(to, negative); }

    std::optional<Stratification> stratify(const KnowledgeBase& kb, Diagnostics& diags) const {
      // Tarjan; components come out dependencies first.
      const std::size_t n = labels.size();
      std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
      std::vector<bool> on(n, false);
      std::vector<std::size_t> stack;
      int counter = 0, ncomp = 0;
      std::function<void(std::size_t)> visit = [&](std::size_t v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on[v] = true;
        for (auto [w, neg] : deps[v]) {
          if (index[w] < 0) {
            visit(w);
            low[v] = std::min(low[v], low[w]);
          } else if (on[w]) {
            low[v] = std::min(low[v], index[w]);
          }
        }
        if (low[v] == index[v]) {
          std::size_t w;
          do {
            w = stack.back();
            stack.pop_back();
            on[w] = false;
            comp[w] = ncomp;
          } while (w != v);
          ++ncomp;
        }
      };
      for (std::size_t v = 0; v < n; ++v) {
        if (index[v] < 0) visit(v);
      }
      std::vector<std::size_t> comp_level(ncomp, 0);
      std::vector<std::vector<std::size_t>> members(ncomp);
      for (std::size_t v = 0; v < n; ++v) members[comp[v]].push_back(v);
      for (int c = 0; c < ncomp; ++c) {
        for (auto v : members[c]) {
          for (auto [w, neg] : deps[v]) {
            if (comp[w] == c) {
              if (neg) {
                std::string cycle;
                for (auto m : members[c]) cycle += (cycle.empty() ? "" : ", ") + kb.label(labels[m]);
                diags.push_back(make_diagnostic(Severity::Error, codes::kNonStratified,
                                                "negation inside a recursive cycle through " + cycle));
                return std::nullopt;
              }
              continue;
            }
            comp_level[c] = std::max(comp_level[c], comp_level[comp[w]] + (neg ? 1 : 0));
          }
        }
      }
      Stratification s;
      for (std::size_t v = 0; v < n; ++v) s.level[kb.label(labels[v])] = comp_level[comp[v]];
      std::size_t top = 0;
      for (auto [r, h] : rule_heads) top = std::max(top, comp_level[comp[h]]);
      s.strata.resize(rule_heads.empty() ? 0 : top + 1);
      for (auto [r, h] : rule_heads) s.strata[comp_level[comp[h]]].push_back(r);
      return s;
    }
  };

  /// Node labels use interned ids; `label` renders them for messages.
  std::string label(const std::string& node) const {
    const auto colon = node.find(':');
    if (colon == std::string::npos || node.starts_with("p:")) return node;
    const auto tail = node.substr(colon + 1);
    if (tail == "*") return node;
    return node.substr(0, colon + 1) + show(static_cast<Id>(std::stoul(tail)));
  }

  static std::string isa_node(Id c) { return "isa:" + std::to_string(c); }
  static std::string attr_node(Id p) { return "attr:" + std::to_string(p); }

  std::string head_node(const Atom& a) const {
    if (a.rel == rel::kIsa) return a.args[1].kind == Arg::Kind::Const ? isa_node(a.args[1].v) : "isa:*";
    if (a.rel == rel::kAttr) return a.args[1].kind == Arg::Kind::Const ? attr_node(a.args[1].v) : "attr:*";
    return a.rel;
  }

  /// Over-approximation of the `::` relation: sub facts closed under the sub
  /// rules with every non-`::` body literal assumed true. `wild` means a rule
  /// can derive `::` between arbitrary classes.
  std::set<std::pair<Id, Id>> sub_closure(bool& wild) const {
    std::set<std::pair<Id, Id>> sub;
    for (const auto& [r, t] : edb_) {
      if (r == rel::kSub) sub.emplace(t[0], t[1]);
    }
    wild = false;
    for (bool changed = true; changed && !wild;) {
      changed = false;
      std::set<std::pair<Id, Id>> next = sub;
      for (const auto& a : sub) {
        for (const auto& b : sub) {
          if (a.second == b.first) next.emplace(a.first, b.second);
        }
      }
      for (std::size_t i = 0; i < rules_.size(); ++i) {
        const auto& r = rules_[i];
        if (r.head->rel != rel::kSub || case_rules_.count(i)) continue;
        std::vector<const Atom*> subs;
        for (const auto& l : r.body) {
          if (l.kind == CLit::Kind::Pos && l.atom.rel == rel::kSub) subs.push_back(&l.atom);
        }
        std::vector<Id> env(r.var_names.size(), kUnbound);
        std::function<void(std::size_t)> join = [&](std::size_t k) {
          if (wild) return;
          if (k == subs.size()) {
            Id out[2];
            for (int j = 0; j < 2; ++j) {
              const auto& a = r.head->args[j];
              out[j] = a.kind == Arg::Kind::Const ? a.v : env[a.v];
              if (out[j] == kUnbound) {
                wild = true;
                return;
              }
            }
            next.emplace(out[0], out[1]);
            return;
          }
          for (const auto& [x, y] : sub) {
            std::vector<Id> saved = env;
            bool ok = true;
            const Id vals[2] = {x, y};
            for (int j = 0; j < 2 && ok; ++j) {
              const auto& a = subs[k]->args[j];
              if (a.kind == Arg::Kind::Const) ok = a.v == vals[j];
              else if (a.kind == Arg::Kind::Var) {
                if (env[a.v] == kUnbound) env[a.v] = vals[j];
                else ok = env[a.v] == vals[j];
              }
            }
            if (ok) join(k + 1);
            env = saved;
          }
        };
        join(0);
      }
      if (next.size() != sub.size()) {
        sub = std::move(next);
        changed = true;
      }
    }
    return sub;
  }

  Graph dependency_graph() const {
    Graph g;
    struct Read {
      std::string node;  // "isa:#all" / "attr:#all" expand later
      bool negative;
    };
    std::vector<std::pair<std::size_t, std::vector<Read>>> pending;
    std::function<void(const CLit&, bool, std::vector<Read>&)> reads = [&](const CLit& l, bool neg,
                                                                          std::vector<Read>& out) {
      switch (l.kind) {
        case CLit::Kind::Pos: {
          const auto& a = l.atom;
          if (a.rel == rel::kIsa) {
            if (a.args[1].kind == Arg::Kind::Const) {
              if (a.args[1].v != object_ || neg) out.push_back({isa_node(a.args[1].v), neg});
            } else {
              out.push_back({"isa:#all", neg});
            }
          } else if (a.rel == rel::kAttr) {
            out.push_back({a.args[1].kind == Arg::Kind::Const ? attr_node(a.args[1].v) : "attr:#all", neg});
          } else {
            out.push_back({a.rel, neg});
          }
          break;
        }
        case CLit::Kind::Neg:
          for (const auto& i : l.inner) reads(i, true, out);
          break;
        case CLit::Kind::Card:
          out.push_back({"isa:#all", true});
          out.push_back({"attr:#all", true});
          out.push_back({rel::kSig, true});
          break;
        default: break;
      }
    };
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      if (case_rules_.count(i)) continue;
      const auto h = g.node(head_node(*rules_[i].head));
      g.rule_heads.emplace_back(rules_[i].source, h);
      std::vector<Read> rs;
      for (const auto& l : rules_[i].body) reads(l, false, rs);
      for (const auto& r : rs) {
        if (!r.node.ends_with("#all")) g.node(r.node);
      }
      pending.emplace_back(h, std::move(rs));
    }
    bool wild = false;
    const auto sub = sub_closure(wild);
    for (const auto& [a, b] : sub) {
      g.node(isa_node(a));
      g.node(isa_node(b));
    }
    const auto object = g.node(isa_node(object_));
    g.node(rel::kSub);
    auto all_with = [&](const std::string& prefix) {
      std::vector<std::size_t> out;
      for (const auto& [label, id] : g.ids) {
        if (label.starts_with(prefix)) out.push_back(id);
      }
      return out;
    };
    const auto isa_all = all_with("isa:");
    const auto attr_all = all_with("attr:");
    for (const auto& [h, rs] : pending) {
      for (const auto& r : rs) {
        if (r.node == "isa:#all") {
          for (auto n : isa_all) g.edge(h, n, r.negative);
        } else if (r.node == "attr:#all") {
          for (auto n : attr_all) g.edge(h, n, r.negative);
        } else {
          g.edge(h, g.ids.at(r.node), r.negative);
        }
      }
    }
    // Structural rules.
    const auto sub_node = g.ids.at(rel::kSub);
    g.edge(sub_node, sub_node, false);
    const auto isa_star = g.ids.find("isa:*");
    const auto attr_star = g.ids.find("attr:*");
    for (auto n : isa_all) {
      g.edge(n, sub_node, false);
      if (isa_star != g.ids.end()) g.edge(n, isa_star->second, false);
      g.edge(object, n, false);
    }
    for (auto n : attr_all) {
      if (attr_star != g.ids.end()) g.edge(n, attr_star->second, false);
      g.edge(object, n, false);
      for (const auto& [tag, id] : type_tags_) {
        if (auto t = g.ids.find(isa_node(id)); t != g.ids.end()) g.edge(t->second, n, false);
      }
    }
    if (auto o = g.ids.find(rel::pred("oneOf", 2)); o != g.ids.end()) g.edge(object, o->second, false);
    if (wild) {
      for (auto a : isa_all) {
        for (auto b : isa_all) g.edge(a, b, false);
      }
    } else {
      for (const auto& [a, b] : sub) g.edge(g.ids.at(isa_node(b)), g.ids.at(isa_node(a)), false);
    }
    return g;
  }

  // --- evaluation ------------------------------------------------------------

  void add(const std::string& relation, const Tuple& t) {
    if (!store_.relation(relation).insert(t)) return;
    if (relation == rel::kIsa) {
      seed(t[0]);
    } else if (relation == rel::kAttr) {
      seed(t[0]);
      seed(t[2]);
    } else if (relation == rel::pred("oneOf", 2)) {
      const auto& list = terms_.term(t[1]);
      if (list.kind == Term::Kind::List) {
        for (const auto& e : list.args) seed(intern(e));
      }
    }
  }

  void seed(Id x) {
    const auto& t = terms_.term(x);
    if (t.kind == Term::Kind::Literal) {
      const auto it = type_tags_.find(t.type_tag);
      add(rel::kIsa, {x, it != type_tags_.end() ? it->second : terms_.intern(flogic::sym(t.type_tag))});
    } else if (t.kind == Term::Kind::Symbol || t.kind == Term::Kind::Compound) {
      add(rel::kIsa, {x, object_});
    }
  }

  void run_strata(const Stratification& strat, const std::vector<std::pair<std::string, Tuple>>& chosen) {
    store_ = FactStore{};
    for (const auto& [r, t] : edb_) add(r, t);
    for (const auto& [r, t] : chosen) add(r, t);
    std::map<std::size_t, std::size_t> by_source;
    for (std::size_t i = 0; i < rules_.size(); ++i) by_source[rules_[i].source] = i;
    const auto structural = structural_rules();
    // Stratum 0 also runs when the program has no rules, for the closure.
    const std::size_t n = std::max<std::size_t>(strat.strata.size(), 1);
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<const CRule*> rules;
      for (const auto& r : structural) rules.push_back(&r);
      if (s < strat.strata.size()) {
        for (auto src : strat.strata[s]) rules.push_back(&rules_[by_source.at(src)]);
      }
      eval_stratum(rules);
    }
  }

  std::vector<CRule> structural_rules() const {
    // ?X:?C2 :- ?X:?C1, ?C1::?C2.   ?A::?C :- ?A::?B, ?B::?C.
    std::vector<CRule> out(2);
    out[0].var_names = {"X", "C1", "C2"};
    out[0].head = Atom{rel::kIsa, {Arg::var(0), Arg::var(2)}};
    out[1].var_names = {"A", "B", "C"};
    out[1].head = Atom{rel::kSub, {Arg::var(0), Arg::var(2)}};
    CLit l;
    l.atom = Atom{rel::kIsa, {Arg::var(0), Arg::var(1)}};
    l.vars = {0, 1};
    out[0].body.push_back(l);
    l.atom = Atom{rel::kSub, {Arg::var(1), Arg::var(2)}};
    l.vars = {1, 2};
    out[0].body.push_back(l);
    l.atom = Atom{rel::kSub, {Arg::var(0), Arg::var(1)}};
    l.vars = {0, 1};
    out[1].body.push_back(l);
    l.atom = Atom{rel::kSub, {Arg::var(1), Arg::var(2)}};
    l.vars = {1, 2};
    out[1].body.push_back(l);
    for (auto& r : out) plan_rule(r, {0, 2}, false);
    return out;
  }

  void eval_stratum(const std::vector<const CRule*>& rules) {
    std::vector<std::pair<std::string, Tuple>> buffer;
    auto fire = [&](const CRule& r, std::size_t delta, std::size_t lo, std::size_t hi) {
      std::vector<Id> env(r.var_names.size(), kUnbound);
      const auto& plan = delta == detail::kNoDelta ? r.plan : r.plans.at(delta);
      solve(r, plan, 0, env, delta, lo, hi, [&](const std::vector<Id>& e) {
        Tuple t;
        for (const auto& a : r.head->args) t.push_back(a.kind == Arg::Kind::Var ? e[a.v] : a.v);
        buffer.emplace_back(r.head->rel, std::move(t));
      });
      for (const auto& [rl, t] : buffer) add(rl, t);
      buffer.clear();
    };
    auto before = store_.sizes();
    for (const auto* r : rules) fire(*r, detail::kNoDelta, 0, 0);
    for (;;) {
      const auto now = store_.sizes();
      if (now == before) break;
      for (const auto* r : rules) {
        for (std::size_t j = 0; j < r->body.size(); ++j) {
          if (r->body[j].kind != CLit::Kind::Pos) continue;
          const auto& rl = r->body[j].atom.rel;
          const auto it_now = now.find(rl);
          if (it_now == now.end()) continue;
          const auto it_before = before.find(rl);
          const std::size_t lo = it_before == before.end() ? 0 : it_before->second;
          if (lo == it_now->second) continue;
          fire(*r, j, lo, it_now->second);
        }
      }
      before = now;
    }
  }

  bool match_arg(const CRule& r, const Arg& a, Id value, std::vector<Id>& env, std::vector<Id>& trail) const {
    switch (a.kind) {
      case Arg::Kind::Any: return true;
      case Arg::Kind::Const: return a.v == value;
      case Arg::Kind::Var:
        if (value == kNone) return false;
        if (env[a.v] == kUnbound) {
          env[a.v] = value;
          trail.push_back(a.v);
          return true;
        }
        return env[a.v] == value;
      case Arg::Kind::Pattern: return value != kNone && match_term(r, a.pattern, terms_.term(value), env, trail);
    }
    return false;
  }

  bool match_term(const CRule& r, const Term& p, const Term& t, std::vector<Id>& env, std::vector<Id>& trail) const {
    if (p.is_variable()) {
      const auto idx = static_cast<Id>(std::find(r.var_names.begin(), r.var_names.end(), p.name) - r.var_names.begin());
      const Id v = intern(t);
      if (env[idx] == kUnbound) {
        env[idx] = v;
        trail.push_back(idx);
        return true;
      }
      return env[idx] == v;
    }
    if (p.kind != t.kind || p.name != t.name || p.type_tag != t.type_tag || p.args.size() != t.args.size()) return false;
    for (std::size_t i = 0; i < p.args.size(); ++i) {
      if (!match_term(r, p.args[i], t.args[i], env, trail)) return false;
    }
    return true;
  }

  Id resolve(const CRule& r, const Arg& a, const std::vector<Id>& env) const {
    if (a.kind == Arg::Kind::Var) return env[a.v];
    if (a.kind == Arg::Kind::Const) return a.v;
    if (a.kind == Arg::Kind::Pattern) return intern(substitute(r, a.pattern, env));
    return kUnbound;
  }

  Term substitute(const CRule& r, const Term& t, const std::vector<Id>& env) const {
    if (t.is_variable()) {
      const auto idx = std::find(r.var_names.begin(), r.var_names.end(), t.name) - r.var_names.begin();
      return env[idx] == kUnbound ? t : terms_.term(env[idx]);
    }
    Term out = t;
    for (auto& a : out.args) a = substitute(r, a, env);
    return out;
  }

  template <class F>
  void solve(const CRule& r, const std::vector<Id>& plan, std::size_t step, std::vector<Id>& env, std::size_t delta,
             std::size_t lo, std::size_t hi, F&& emit) const {
    if (step == plan.size()) {
      emit(env);
      return;
    }
    const auto i = plan[step];
    const CLit& l = r.body[i];
    auto next = [&] { solve(r, plan, step + 1, env, delta, lo, hi, emit); };
    switch (l.kind) {
      case CLit::Kind::Pos: scan(r, l.atom, env, i == delta, lo, hi, next); break;
      case CLit::Kind::Neg:
        if (!holds(r, l, env)) next();
        break;
      case CLit::Kind::Member: {
        const Id x = resolve(r, l.args[0], env);
        const auto& list = terms_.term(resolve(r, l.args[1], env));
        for (const auto& e : list.args) {
          if (intern(e) == x) {
            next();
            break;
          }
        }
        break;
      }
      case CLit::Kind::NotEqual:
        if (resolve(r, l.args[0], env) != resolve(r, l.args[1], env)) next();
        break;
      case CLit::Kind::Card: cardinality(r, l, env, next); break;
      case CLit::Kind::Format:
        if (format_sink_) format_sink_(render_format(r, l, env));
        next();
        break;
    }
  }

  /// True when the conjunction under a negation has a solution.
  bool holds(const CRule& r, const CLit& neg, std::vector<Id>& env) const {
    std::vector<Id> local = env;
    bool found = false;
    std::function<void(std::size_t)> step = [&](std::size_t k) {
      if (found) return;
      if (k == neg.inner_plan.size()) {
        found = true;
        return;
      }
      const CLit& l = neg.inner[neg.inner_plan[k]];
      auto next = [&] { step(k + 1); };
      switch (l.kind) {
        case CLit::Kind::Pos: scan(r, l.atom, local, false, 0, 0, next); break;
        case CLit::Kind::Neg:
          if (!holds(r, l, local)) next();
          break;
        case CLit::Kind::Member: {
          const Id x = resolve(r, l.args[0], local);
          for (const auto& e : terms_.term(resolve(r, l.args[1], local)).args) {
            if (intern(e) == x) {
              next();
              break;
            }
          }
          break;
        }
        case CLit::Kind::NotEqual:
          if (resolve(r, l.args[0], local) != resolve(r, l.args[1], local)) next();
          break;
        case CLit::Kind::Card: cardinality(r, l, local, next); break;
        case CLit::Kind::Format: next(); break;
      }
    };
    step(0);
    return found;
  }

  template <class F>
  void scan(const CRule& r, const Atom& a, std::vector<Id>& env, bool is_delta, std::size_t lo, std::size_t hi,
            F&& next) const {
    const auto* relation = store_.find(a.rel);
    if (!relation) return;
    // Use the index of the first bound column.
    const std::vector<std::uint32_t>* candidates = nullptr;
    for (std::size_t c = 0; c < a.args.size(); ++c) {
      const auto& arg = a.args[c];
      Id v = kUnbound;
      if (arg.kind == Arg::Kind::Const) v = arg.v;
      if (arg.kind == Arg::Kind::Var) v = env[arg.v];
      if (v == kUnbound) continue;
      candidates = relation->rows_with(c, v);
      if (!candidates) return;
      break;
    }
    const std::size_t end = is_delta ? hi : relation->size();
    const std::size_t begin = is_delta ? lo : 0;
    std::vector<Id> trail;
    auto try_row = [&](std::size_t row) {
      const auto& t = relation->row(row);
      bool ok = true;
      for (std::size_t c = 0; c < a.args.size() && ok; ++c) ok = match_arg(r, a.args[c], t[c], env, trail);
      if (ok) next();
      for (auto v : trail) env[v] = kUnbound;
      trail.clear();
    };
    if (candidates) {
      auto it = std::lower_bound(candidates->begin(), candidates->end(), static_cast<std::uint32_t>(begin));
      for (; it != candidates->end() && *it < end; ++it) try_row(*it);
    } else {
      for (std::size_t row = begin; row < end; ++row) try_row(row);
    }
  }

  /// `'_cardinality_violation'(O, P, L, H, N)`: for each bounded signature
  /// `C[P{L:H} *=> R]` and member O of C, the number N of distinct P-values
  /// of O exceeds H (or, with the min check on, falls below L).
  template <class F>
  void cardinality(const CRule& r, const CLit& l, std::vector<Id>& env, F&& next) const {
    const auto* sig = store_.find(rel::kSig);
    const auto* isa = store_.find(rel::kIsa);
    const auto* attr = store_.find(rel::kAttr);
    if (!sig || !isa) return;
    std::set<std::tuple<Id, Id, Id, Id, Id>> hits;
    for (std::size_t i = 0; i < sig->size(); ++i) {
      const auto& s = sig->row(i);
      if (s[3] == kNone) continue;
      const auto low = std::stoul(terms_.term(s[3]).name);
      const bool bounded = s[4] != star_;
      const auto high = bounded ? std::stoul(terms_.term(s[4]).name) : 0;
      const auto* members = isa->rows_with(1, s[0]);
      if (!members) continue;
      for (auto m : *members) {
        const Id o = isa->row(m)[0];
        std::set<Id> values;
        if (attr) {
          if (const auto* rows = attr->rows_with(0, o)) {
            for (auto a : *rows) {
              if (attr->row(a)[1] == s[2]) values.insert(attr->row(a)[2]);
            }
          }
        }
        const auto n = values.size();
        if ((bounded && n > high) || (opts_.check_min_cardinality && n < low)) {
          hits.emplace(o, s[2], s[3], s[4], intern(Term::literal(std::to_string(n), "_integer")));
        }
      }
    }
    std::vector<Id> trail;
    for (const auto& [o, p, lo, hi, n] : hits) {
      const Id vals[5] = {o, p, lo, hi, n};
      bool ok = true;
      for (std::size_t k = 0; k < 5 && ok; ++k) ok = match_arg(r, l.args[k], vals[k], env, trail);
      if (ok) next();
      for (auto v : trail) env[v] = kUnbound;
      trail.clear();
    }
  }

  /// Text of a term as Prolog's write/1 would show it.
  std::string plain(const Term& t) const {
    if (t.kind == Term::Kind::Literal) return t.name;
    if (t.kind == Term::Kind::Symbol) return t.name;
    return show(t);
  }

  std::string render_format(const CRule& r, const CLit& l, const std::vector<Id>& env) const {
    const std::size_t base = l.args.size() == 3 ? 1 : 0;
    const auto fmt = terms_.term(resolve(r, l.args[base], env)).name;
    const auto list = substitute(r, l.args[base + 1].kind == Arg::Kind::Pattern ? l.args[base + 1].pattern
                                                                                 : terms_.term(l.args[base + 1].v),
                                 env);
    std::string out;
    std::size_t next = 0;
    for (std::size_t i = 0; i < fmt.size(); ++i) {
      if (fmt[i] == '~' && i + 1 < fmt.size() && fmt[i + 1] == 'w') {
        if (next < list.args.size()) out += plain(list.args[next++]);
        ++i;
      } else if (fmt[i] == '~' && i + 1 < fmt.size() && fmt[i + 1] == 'n') {
        out += '\n';
        ++i;
      } else {
        out += fmt[i];
      }
    }
    return out;
  }
};

}  // namespace owl2fl::engine
