#pragma once

// Canonical F-logic text. One clause per line; facts about the same object
// that follow its membership fact are folded into one frame, e.g.
// `o:C[p -> v, q -> w].`

#include <cctype>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include "owl2fl/flogic/ast.hpp"
#include "owl2fl/owl/model.hpp"

namespace owl2fl::flogic {

namespace lexical {

inline bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
inline bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

/// `[A-Za-z_][A-Za-z0-9_]*`
inline bool is_plain_name(std::string_view s) {
  if (s.empty() || !is_ident_start(s[0])) return false;
  for (char c : s) {
    if (!is_ident_char(c)) return false;
  }
  return true;
}

/// `p:local` with a letter-initial prefix and a plain local part.
inline bool is_prefixed_name(std::string_view s) {
  const auto colon = s.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  return std::isalpha(static_cast<unsigned char>(s[0])) && is_plain_name(s.substr(0, colon)) &&
         is_plain_name(s.substr(colon + 1));
}

/// Predicate names print bare when they look like Prolog atoms.
inline bool is_bare_predicate(std::string_view s) {
  return !s.empty() && std::islower(static_cast<unsigned char>(s[0])) && is_plain_name(s);
}

inline bool is_integer(std::string_view s) {
  if (!s.empty() && s[0] == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

/// A quoted token denotes a symbol exactly when it looks like an IRI or a
/// prefixed name; any other quoted text is a string literal.
inline bool quoted_is_symbol(std::string_view s) { return owl::has_iri_scheme(s); }

inline std::string quote(std::string_view s, char q) {
  std::string out(1, q);
  for (char c : s) {
    if (c == q || c == '\\') out += '\\';
    out += c;
  }
  out += q;
  return out;
}

}  // namespace lexical

class Printer {
 public:
  explicit Printer(const std::map<std::string, std::string>* prefixes = nullptr) {
    if (prefixes) {
      for (const auto& [p, ns] : *prefixes) declared_.insert(p);
    }
  }

  std::string term(const Term& t) const {
    using K = Term::Kind;
    switch (t.kind) {
      case K::Variable: return "?" + t.name;
      case K::Symbol:
        if (lexical::is_plain_name(t.name) || lexical::is_prefixed_name(t.name)) return t.name;
        return lexical::quote(t.name, '\'');
      case K::Literal: return literal(t);
      case K::List: return "[" + terms(t.args) + "]";
      case K::Compound: return predicate_name(t.name) + "(" + terms(t.args) + ")";
    }
    return {};
  }

  /// Term in the leading position of a molecule, where `a:b` would read as
  /// membership unless `a` is a declared prefix.
  std::string subject(const Term& t) const {
    if (t.kind == Term::Kind::Symbol && lexical::is_prefixed_name(t.name) &&
        !declared_.count(t.name.substr(0, t.name.find(':')))) {
      return lexical::quote(t.name, '\'');
    }
    return term(t);
  }

  std::string class_expr(const ClassExpr& c, bool leading = false) const {
    using K = ClassExpr::Kind;
    if (c.kind == K::Atom) return leading ? subject(c.atom) : term(c.atom);
    const char* op = c.kind == K::Union ? " ; " : c.kind == K::Intersection ? " , " : " - ";
    return "(" + class_expr(c.ops[0]) + op + class_expr(c.ops[1]) + ")";
  }

  std::string molecule(const Molecule& m) const {
    return std::visit(
        [&](const auto& x) -> std::string {
          using M = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<M, IsA>) {
            return subject(x.obj) + ":" + class_expr(x.cls);
          } else if constexpr (std::is_same_v<M, SubClass>) {
            return class_expr(x.sub, true) + "::" + class_expr(x.super);
          } else if constexpr (std::is_same_v<M, Equiv>) {
            return class_expr(x.a, true) + " :=: " + class_expr(x.b);
          } else if constexpr (std::is_same_v<M, AttrValue>) {
            return subject(x.obj) + "[" + attr_entry(x) + "]";
          } else {
            std::string s = class_expr(x.cls, true);
            if (x.via) s += "::" + class_expr(*x.via);
            s += "[" + term(x.prop);
            if (x.card) {
              s += "{" + std::to_string(x.card->low) + ":" +
                   (x.card->high ? std::to_string(*x.card->high) : std::string("*")) + "}";
            }
            return s + " *=> " + class_expr(x.range) + "]";
          }
        },
        m);
  }

  std::string literal(const Literal& l) const {
    return std::visit(
        [&](const auto& n) -> std::string {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Molecule>) {
            return molecule(n);
          } else if constexpr (std::is_same_v<T, Pred>) {
            if (n.args.empty() && lexical::is_bare_predicate(n.name)) return n.name;
            return predicate_name(n.name) + "(" + terms(n.args) + ")";
          } else if constexpr (std::is_same_v<T, Naf>) {
            const std::string inner = conjunction(n.body);
            if (n.style == NafStyle::Not) return "not(" + inner + ")";
            if (n.body.size() == 1 && inner.front() != '(') return "\\naf " + inner;
            return "\\naf (" + inner + ")";
          } else {
            switch (n.kind) {
              case BuiltinKind::Member: return "member(" + terms(n.args) + ")";
              case BuiltinKind::FormatCall: return "format(" + terms(n.args) + ")@_prolog(format)";
              case BuiltinKind::NotEqual: return subject(n.args.at(0)) + " != " + term(n.args.at(1));
              case BuiltinKind::Cardinality:
                return predicate_name(kCardinalityBuiltin) + "(" + terms(n.args) + ")";
            }
            return {};
          }
        },
        l.node);
  }

  std::string rule(const Rule& r) const {
    std::string s = literal(r.head);
    if (!r.body.empty()) s += " :- " + conjunction(r.body);
    return s + ".";
  }

  std::string attr_entry(const AttrValue& a) const { return term(a.prop) + " -> " + term(a.value); }

 private:
  std::set<std::string> declared_;

  std::string terms(const std::vector<Term>& ts) const {
    std::string s;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (i) s += ", ";
      s += term(ts[i]);
    }
    return s;
  }

  std::string conjunction(const std::vector<Literal>& ls) const {
    std::string s;
    for (std::size_t i = 0; i < ls.size(); ++i) {
      if (i) s += ", ";
      s += literal(ls[i]);
    }
    return s;
  }

  static std::string predicate_name(const std::string& n) {
    return lexical::is_bare_predicate(n) ? n : lexical::quote(n, '\'');
  }

  static std::string literal(const Term& t) {
    if (t.type_tag == "_string" && !lexical::quoted_is_symbol(t.name)) {
      return lexical::quote(t.name, '\'');
    }
    if (t.type_tag == "_integer" && lexical::is_integer(t.name)) return t.name;
    const std::string tag =
        lexical::is_plain_name(t.type_tag) ? t.type_tag : lexical::quote(t.type_tag, '\'');
    return lexical::quote(t.name, '"') + "^^" + tag;
  }
};

inline std::string print_term(const Term& t) { return Printer{}.term(t); }
inline std::string print_literal(const Literal& l) { return Printer{}.literal(l); }
inline std::string print_rule(const Rule& r) { return Printer{}.rule(r); }

/// Clauses only, without the prefix preamble.
inline std::string print_rules(const Program& p) {
  const Printer pr(&p.prefixes);
  std::ostringstream out;
  for (std::size_t i = 0; i < p.rules.size(); ++i) {
    const auto& r = p.rules[i];
    const auto* isa = r.is_fact() ? r.head.as<IsA>() : nullptr;
    if (isa && isa->cls.is_atom() && isa->obj.is_ground()) {
      std::string frame;
      std::size_t j = i + 1;
      for (; j < p.rules.size() && p.rules[j].is_fact(); ++j) {
        const auto* av = p.rules[j].head.as<AttrValue>();
        if (!av || av->obj != isa->obj) break;
        if (!frame.empty()) frame += ", ";
        frame += pr.attr_entry(*av);
      }
      if (!frame.empty()) {
        out << pr.molecule(*r.head.molecule()) << "[" << frame << "].\n";
        i = j - 1;
        continue;
      }
    }
    out << pr.rule(r) << '\n';
  }
  return out.str();
}

inline std::string print_program(const Program& p) {
  std::ostringstream out;
  for (const auto& [prefix, ns] : p.prefixes) {
    out << ":- iriprefix{" << prefix << " = " << lexical::quote(ns, '\'') << "}.\n";
  }
  if (!p.base.empty()) out << ":- iribase{" << lexical::quote(p.base, '\'') << "}.\n";
  out << print_rules(p);
  return out.str();
}

}  // namespace owl2fl::flogic
