#pragma once

// Reader for the canonical F-logic syntax produced by printer.hpp, tolerant
// of whitespace, comments and the en-dash difference operator. A clause with
// a syntax error is reported and skipped; parsing resumes after its `.`.

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "owl2fl/diagnostic.hpp"
#include "owl2fl/flogic/ast.hpp"
#include "owl2fl/flogic/printer.hpp"

namespace owl2fl::flogic {

struct ProgramParseResult {
  Program program;
  Diagnostics diagnostics;
};

namespace detail {

struct Token {
  enum class Kind { Var, Ident, Quoted, DQuoted, Number, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  SourceLocation loc;
  bool space_before = false;
};

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& what, SourceLocation loc)
      : std::runtime_error(what), loc_(loc) {}
  SourceLocation location() const { return loc_; }

 private:
  SourceLocation loc_;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run(Diagnostics& diags) {
    std::vector<Token> out;
    while (true) {
      const bool space = skip_space();
      Token t;
      t.loc = {line_, col_};
      t.space_before = space;
      if (pos_ >= text_.size()) {
        out.push_back(t);
        return out;
      }
      try {
        lex_one(t);
      } catch (const SyntaxError& e) {
        diags.push_back(make_diagnostic(Severity::Error, codes::kSyntaxError, e.what(), e.location()));
        continue;
      }
      out.push_back(std::move(t));
    }
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;

  char peek(std::size_t k = 0) const { return pos_ + k < text_.size() ? text_[pos_ + k] : '\0'; }
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) != 0x80) {
      ++col_;
    }
    ++pos_;
  }

  bool skip_space() {
    bool any = false;
    while (pos_ < text_.size()) {
      const char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < text_.size() && peek() != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        advance();
        advance();
        while (pos_ < text_.size() && !(peek() == '*' && peek(1) == '/')) advance();
        if (pos_ < text_.size()) {
          advance();
          advance();
        }
      } else {
        break;
      }
      any = true;
    }
    return any;
  }

  std::string quoted_body(char q) {
    const SourceLocation start{line_, col_};
    advance();
    std::string s;
    while (true) {
      if (pos_ >= text_.size()) throw SyntaxError("unterminated quoted text", start);
      const char c = peek();
      if (c == '\\' && pos_ + 1 < text_.size()) {
        advance();
        s += peek();
        advance();
      } else if (c == q) {
        advance();
        return s;
      } else {
        s += c;
        advance();
      }
    }
  }

  void lex_one(Token& t) {
    const char c = peek();
    using K = Token::Kind;
    if (c == '?' && lexical::is_ident_start(peek(1))) {
      advance();
      t.kind = K::Var;
      while (lexical::is_ident_char(peek())) {
        t.text += peek();
        advance();
      }
      return;
    }
    if (lexical::is_ident_start(c)) {
      t.kind = K::Ident;
      while (lexical::is_ident_char(peek())) {
        t.text += peek();
        advance();
      }
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = K::Number;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        t.text += peek();
        advance();
      }
      return;
    }
    if (c == '\'' || c == '"') {
      t.kind = c == '\'' ? K::Quoted : K::DQuoted;
      t.text = quoted_body(c);
      return;
    }
    if (c == '\\' && text_.substr(pos_).starts_with("\\naf")) {
      for (int i = 0; i < 4; ++i) advance();
      t.kind = K::Punct;
      t.text = "\\naf";
      return;
    }
    // En-dash, accepted as the difference operator.
    if (text_.substr(pos_).starts_with("\xE2\x80\x93")) {
      for (int i = 0; i < 3; ++i) advance();
      t.kind = K::Punct;
      t.text = "-";
      return;
    }
    static constexpr std::string_view puncts[] = {":=:", ":-", "::", "*=>", "->", "!=", "^^", ":",
                                                  "[",   "]",  "(",  ")",   "{",  "}",  ",",  ";",
                                                  ".",   "-",  "@",  "*",   "="};
    for (auto p : puncts) {
      if (text_.substr(pos_).starts_with(p)) {
        for (std::size_t i = 0; i < p.size(); ++i) advance();
        t.kind = K::Punct;
        t.text = std::string(p);
        return;
      }
    }
    const SourceLocation here{line_, col_};
    advance();
    throw SyntaxError(std::string("unexpected character '") + c + "'", here);
  }
};

class ProgramParser {
 public:
  ProgramParser(std::vector<Token> tokens, Diagnostics& diags)
      : toks_(std::move(tokens)), diags_(diags) {}

  Program run() {
    Program prog;
    while (!at_end()) {
      const std::size_t start = i_;
      try {
        clause(prog);
      } catch (const SyntaxError& e) {
        diags_.push_back(make_diagnostic(Severity::Error, codes::kSyntaxError, e.what(), e.location()));
        if (i_ == start) ++i_;
        recover();
      }
    }
    return prog;
  }

 private:
  std::vector<Token> toks_;
  std::size_t i_ = 0;
  Diagnostics& diags_;
  std::set<std::string> prefixes_;

  using K = Token::Kind;

  const Token& cur() const { return toks_[i_]; }
  const Token& ahead(std::size_t k) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }
  bool at_end() const { return cur().kind == K::End; }
  bool is(std::string_view p) const { return cur().kind == K::Punct && cur().text == p; }
  bool is_at(std::size_t k, std::string_view p) const {
    return ahead(k).kind == K::Punct && ahead(k).text == p;
  }
  const Token& take() {
    const Token& t = toks_[i_];
    if (t.kind != K::End) ++i_;
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    const std::string found = at_end() ? "end of input" : "'" + cur().text + "'";
    throw SyntaxError(msg + ", found " + found, cur().loc);
  }
  void expect(std::string_view p) {
    if (!is(p)) fail("expected '" + std::string(p) + "'");
    take();
  }

  void recover() {
    while (!at_end() && !is(".")) take();
    if (is(".")) take();
  }

  void clause(Program& prog) {
    if (is(":-")) {
      take();
      directive(prog);
      expect(".");
      return;
    }
    auto heads = literal_group();
    std::vector<Literal> body;
    if (is(":-")) {
      take();
      body = conjunction();
    }
    expect(".");
    for (auto& h : heads) {
      if (!h.molecule() && !h.pred()) throw SyntaxError("rule head must be a molecule or predicate", cur().loc);
    }
    for (auto& h : heads) prog.rules.push_back(Rule{std::move(h), body});
  }

  void directive(Program& prog) {
    if (cur().kind != K::Ident) fail("expected directive name");
    const std::string name = take().text;
    expect("{");
    if (name == "iriprefix") {
      if (cur().kind != K::Ident) fail("expected prefix name");
      const std::string p = take().text;
      expect("=");
      if (cur().kind != K::Quoted) fail("expected quoted namespace");
      prog.prefixes[p] = take().text;
      prefixes_.insert(p);
    } else if (name == "iribase") {
      if (cur().kind != K::Quoted) fail("expected quoted namespace");
      prog.base = take().text;
    } else {
      fail("unknown directive '" + name + "'");
    }
    expect("}");
  }

  std::vector<Literal> conjunction() {
    std::vector<Literal> out;
    while (true) {
      for (auto& l : literal_group()) out.push_back(std::move(l));
      if (!is(",")) return out;
      take();
    }
  }

  // One source literal; frames with several entries expand to several.
  std::vector<Literal> literal_group() {
    if (is("\\naf")) {
      take();
      if (is("(")) {
        take();
        auto body = conjunction();
        expect(")");
        return {Literal{Naf{std::move(body), NafStyle::Naf}}};
      }
      return {Literal{Naf{literal_group(), NafStyle::Naf}}};
    }
    const bool callable = (cur().kind == K::Ident || cur().kind == K::Quoted) && is_at(1, "(") &&
                          !ahead(1).space_before;
    if (cur().kind == K::Ident && cur().text == "not" && is_at(1, "(")) {
      take();
      take();
      auto body = conjunction();
      expect(")");
      return {Literal{Naf{std::move(body), NafStyle::Not}}};
    }
    if (callable) {
      const std::string name = take().text;
      take();
      auto args = arguments(")");
      if (is(":") || is("::") || is("[") || is("!=") || is(":=:")) {
        return molecule(ClassExpr(Term::compound(name, std::move(args))));
      }
      if (name == "member") {
        if (args.size() != 2) fail("member/2 expected");
        return {Literal{Builtin{BuiltinKind::Member, std::move(args)}}};
      }
      if (name == "format") {
        expect("@");
        if (!(cur().kind == K::Ident && cur().text == "_prolog")) fail("expected _prolog");
        take();
        expect("(");
        if (!(cur().kind == K::Ident && cur().text == "format")) fail("expected format");
        take();
        expect(")");
        if (args.size() < 2 || args.size() > 3) fail("format/2 or format/3 expected");
        return {Literal{Builtin{BuiltinKind::FormatCall, std::move(args)}}};
      }
      if (name == kCardinalityBuiltin) {
        if (args.size() != 5) fail("cardinality builtin takes 5 arguments");
        return {Literal{Builtin{BuiltinKind::Cardinality, std::move(args)}}};
      }
      return {Literal{Pred{name, std::move(args)}}};
    }
    const Token first = cur();
    ClassExpr subj = is("(") ? class_expr() : ClassExpr(term(true));
    if (is(":") || is("::") || is("[") || is("!=") || is(":=:")) return molecule(std::move(subj));
    if (first.kind == K::Ident && subj.is_atom() && subj.atom.is_symbol() &&
        lexical::is_bare_predicate(first.text)) {
      return {Literal{Pred{first.text, {}}}};
    }
    fail("expected a molecule or predicate");
  }

  Term subject_term(const ClassExpr& c) const {
    if (!c.is_atom()) throw SyntaxError("a class expression cannot be an object", cur().loc);
    return c.atom;
  }

  std::vector<Literal> molecule(ClassExpr subj) {
    if (is("!=")) {
      take();
      Term rhs = term(false);
      return {Literal{Builtin{BuiltinKind::NotEqual, {subject_term(subj), std::move(rhs)}}}};
    }
    if (is(":=:")) {
      take();
      return {Literal{Equiv{std::move(subj), class_expr()}}};
    }
    if (is("::")) {
      take();
      ClassExpr super = class_expr();
      if (!is("[")) return {Literal{SubClass{std::move(subj), std::move(super)}}};
      std::vector<Literal> out;
      for (auto& l : frame(subj, false)) {
        auto sig = std::get<Signature>(std::get<Molecule>(l.node));
        sig.via = super;
        out.emplace_back(std::move(sig));
      }
      return out;
    }
    if (is(":")) {
      take();
      Term obj = subject_term(subj);
      ClassExpr cls = class_expr();
      std::vector<Literal> out{Literal{IsA{obj, std::move(cls)}}};
      if (is("[")) {
        for (auto& l : frame(ClassExpr(obj), true)) out.push_back(std::move(l));
      }
      return out;
    }
    return frame(subj, std::nullopt);
  }

  // `[entry, ...]`; `values_only` restricts entries to `->` or `*=>`.
  std::vector<Literal> frame(const ClassExpr& subj, std::optional<bool> values_only) {
    expect("[");
    std::vector<Literal> out;
    while (true) {
      Term prop = term(false);
      if (is("->")) {
        if (values_only == false) fail("expected '*=>' in a signature frame");
        take();
        Term value = term(false);
        out.emplace_back(AttrValue{subject_term(subj), std::move(prop), std::move(value)});
      } else {
        if (values_only == true) fail("expected '->'");
        std::optional<Cardinality> card;
        if (is("{")) {
          take();
          card = Cardinality{number(), std::nullopt};
          expect(":");
          if (is("*")) {
            take();
          } else {
            card->high = number();
            if (*card->high < card->low) fail("cardinality upper bound below lower bound");
          }
          expect("}");
        }
        expect("*=>");
        ClassExpr range = class_expr();
        out.emplace_back(Signature{subj, std::nullopt, std::move(prop), card, std::move(range)});
      }
      if (!is(",")) break;
      take();
    }
    expect("]");
    return out;
  }

  std::uint32_t number() {
    if (cur().kind != K::Number) fail("expected a number");
    return static_cast<std::uint32_t>(std::stoul(take().text));
  }

  ClassExpr class_expr() {
    if (!is("(")) return ClassExpr(term(false));
    take();
    ClassExpr acc = class_expr();
    while (is(";") || is(",") || is("-")) {
      const std::string op = take().text;
      const auto kind = op == ";"   ? ClassExpr::Kind::Union
                        : op == "," ? ClassExpr::Kind::Intersection
                                    : ClassExpr::Kind::Difference;
      acc = ClassExpr(kind, std::move(acc), class_expr());
    }
    expect(")");
    return acc;
  }

  std::vector<Term> arguments(std::string_view close) {
    std::vector<Term> args;
    if (is(close)) {
      take();
      return args;
    }
    while (true) {
      args.push_back(term(false));
      if (is(close)) {
        take();
        return args;
      }
      expect(",");
    }
  }

  // `leading`: first term of a literal, where `a:b` is only a prefixed name
  // when `a` is a declared prefix.
  Term term(bool leading) {
    const Token& t = cur();
    switch (t.kind) {
      case K::Var: return Term::variable(take().text);
      case K::Number: return Term::literal(take().text, "_integer");
      case K::Quoted: {
        std::string s = take().text;
        if (lexical::quoted_is_symbol(s)) return Term::symbol(std::move(s));
        return Term::literal(std::move(s), "_string");
      }
      case K::DQuoted: {
        std::string s = take().text;
        std::string tag = "_string";
        if (is("^^")) {
          take();
          if (cur().kind != K::Ident && cur().kind != K::Quoted) fail("expected type tag");
          tag = take().text;
        }
        return Term::literal(std::move(s), std::move(tag));
      }
      case K::Ident: {
        std::string name = take().text;
        if (is(":") && !cur().space_before && ahead(1).kind == K::Ident && !ahead(1).space_before &&
            std::isalpha(static_cast<unsigned char>(name[0])) &&
            (!leading || prefixes_.count(name))) {
          take();
          name += ":" + take().text;
        }
        if (!leading && is("(") && !cur().space_before) {
          take();
          return Term::compound(std::move(name), arguments(")"));
        }
        return Term::symbol(std::move(name));
      }
      case K::Punct:
        if (t.text == "[") {
          take();
          return Term::list(arguments("]"));
        }
        if (t.text == "-" && ahead(1).kind == K::Number && !ahead(1).space_before) {
          take();
          return Term::literal("-" + take().text, "_integer");
        }
        break;
      default: break;
    }
    fail("expected a term");
  }
};

}  // namespace detail

inline ProgramParseResult parse_program(std::string_view text) {
  ProgramParseResult r;
  auto tokens = detail::Lexer(text).run(r.diagnostics);
  r.program = detail::ProgramParser(std::move(tokens), r.diagnostics).run();
  return r;
}

struct GoalParseResult {
  std::vector<Literal> goal;
  Diagnostics diagnostics;
};

/// A conjunctive query such as `?- ?X:Wine, ?X[hasColor -> Red].` The leading
/// `?-` and the final `.` are optional. `prefixes` decides how a leading
/// `a:b` reads, as in a program that declares them.
inline GoalParseResult parse_goal(std::string_view text, const std::map<std::string, std::string>& prefixes = {}) {
  std::string_view g = text;
  while (!g.empty() && std::isspace(static_cast<unsigned char>(g.front()))) g.remove_prefix(1);
  while (!g.empty() && std::isspace(static_cast<unsigned char>(g.back()))) g.remove_suffix(1);
  if (g.starts_with("?-")) g.remove_prefix(2);
  if (g.ends_with(".")) g.remove_suffix(1);
  std::string wrapped;
  for (const auto& [p, ns] : prefixes) wrapped += ":- iriprefix{" + p + " = " + lexical::quote(ns, '\'') + "}.\n";
  wrapped += "query_goal :- " + std::string(g) + ".";
  GoalParseResult r;
  auto parsed = parse_program(wrapped);
  r.diagnostics = std::move(parsed.diagnostics);
  if (g.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    r.diagnostics.push_back(make_diagnostic(Severity::Error, codes::kSyntaxError, "empty goal"));
  }
  if (!has_errors(r.diagnostics) && parsed.program.rules.size() == 1) r.goal = parsed.program.rules[0].body;
  return r;
}

}  // namespace owl2fl::flogic
