#pragma once

// The command-line surface as plain functions over streams, so tests can run
// every command without spawning a process. Exit codes: 0 clean, 1 constraint
// violations only, 2 any Error diagnostic.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "owl2fl/diagnostic.hpp"
#include "owl2fl/engine/knowledge_base.hpp"
#include "owl2fl/flogic/parser.hpp"
#include "owl2fl/flogic/printer.hpp"
#include "owl2fl/owl/parser.hpp"
#include "owl2fl/owl/writer.hpp"
#include "owl2fl/translate/checker_library.hpp"
#include "owl2fl/translate/flogic_to_owl.hpp"
#include "owl2fl/translate/naming.hpp"
#include "owl2fl/translate/owl_to_flogic.hpp"

namespace owl2fl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolations = 1;
inline constexpr int kExitError = 2;

enum class Format { Owl, Flora };

struct TranslateOptions {
  Format from = Format::Owl;
  Format to = Format::Flora;
  std::string input;
  std::string output;
  translate::TranslationOptions translation;
};

struct QueryRequest {
  enum class Kind { GroundMembership, OpenMembership, AllClasses, Subsumption, SuperClasses, SubClasses, Satisfiability };
  Kind kind = Kind::Satisfiability;
  std::vector<std::string> names;
  bool most_specific = false;
  bool most_general = false;
};

inline const std::vector<std::string>& query_verbs() {
  static const std::vector<std::string> verbs = {"is",           "instances",  "classes-of", "subclass",
                                                 "superclasses", "subclasses", "check"};
  return verbs;
}

inline bool is_query_verb(const std::string& s) {
  const auto& v = query_verbs();
  return std::find(v.begin(), v.end(), s) != v.end();
}

/// Builds a request from `<verb> <args...>`; nothing on a malformed command.
inline std::optional<QueryRequest> parse_query_request(const std::string& verb, const std::vector<std::string>& args,
                                                       bool most_specific, bool most_general, Diagnostics& diags) {
  using K = QueryRequest::Kind;
  struct Shape {
    K kind;
    std::size_t arity;
  };
  static const std::map<std::string, Shape> shapes = {
      {"is", {K::GroundMembership, 2}},    {"instances", {K::OpenMembership, 1}}, {"classes-of", {K::AllClasses, 1}},
      {"subclass", {K::Subsumption, 2}},   {"superclasses", {K::SuperClasses, 1}},
      {"subclasses", {K::SubClasses, 1}},  {"check", {K::Satisfiability, 0}},
  };
  const auto it = shapes.find(verb);
  if (it == shapes.end()) {
    diags.push_back(make_diagnostic(Severity::Error, codes::kSyntaxError, "unknown query verb '" + verb + "'"));
    return std::nullopt;
  }
  if (args.size() != it->second.arity) {
    diags.push_back(make_diagnostic(Severity::Error, codes::kSyntaxError,
                                    "'" + verb + "' takes " + std::to_string(it->second.arity) + " argument(s), got " +
                                        std::to_string(args.size())));
    return std::nullopt;
  }
  if ((most_specific && it->second.kind != K::SuperClasses) || (most_general && it->second.kind != K::SubClasses)) {
    diags.push_back(make_diagnostic(Severity::Error, codes::kSyntaxError,
                                    most_specific ? "--most-specific only applies to superclasses"
                                                  : "--most-general only applies to subclasses"));
    return std::nullopt;
  }
  return QueryRequest{it->second.kind, args, most_specific, most_general};
}

namespace detail {

inline std::optional<std::string> read_file(const std::string& path, Diagnostics& diags) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    diags.push_back(make_diagnostic(Severity::Error, codes::kIoError, "cannot read " + path));
    return std::nullopt;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline bool write_file(const std::string& path, const std::string& text, Diagnostics& diags) {
  std::ofstream out(path, std::ios::binary);
  if (out) out << text;
  if (!out) {
    diags.push_back(make_diagnostic(Severity::Error, codes::kIoError, "cannot write " + path));
    return false;
  }
  return true;
}

inline bool blank(const std::string& s) { return s.find_first_not_of(" \t\r\n") == std::string::npos; }

inline bool is_owl_path(const std::string& path) {
  const auto ext = std::filesystem::path(path).extension().string();
  return ext == ".owl" || ext == ".rdf" || ext == ".xml";
}

inline void report(std::ostream& err, const Diagnostics& diags, const std::string& file = {}) {
  for (const auto& d : diags) print_diagnostic(err, d, file);
}

/// One source file as an F-logic program; OWL input goes through the
/// forward translator with its checker library.
inline std::optional<flogic::Program> load_program(const std::string& path, std::ostream& err, bool& failed) {
  Diagnostics diags;
  auto text = read_file(path, diags);
  std::optional<flogic::Program> out;
  if (text && is_owl_path(path)) {
    if (blank(*text)) {
      out = flogic::Program{};
    } else {
      auto parsed = owl::parse_document(*text);
      diags.insert(diags.end(), parsed.diagnostics.begin(), parsed.diagnostics.end());
      if (parsed.document) {
        auto tr = translate::translate_ontology(*parsed.document);
        diags.insert(diags.end(), tr.diagnostics.begin(), tr.diagnostics.end());
        out = std::move(tr.program);
      }
    }
  } else if (text) {
    auto parsed = flogic::parse_program(*text);
    diags.insert(diags.end(), parsed.diagnostics.begin(), parsed.diagnostics.end());
    out = std::move(parsed.program);
  }
  report(err, diags, path);
  if (has_errors(diags)) failed = true;
  return out;
}

}  // namespace detail

/// Several sources merged into one program: rules in argument order with
/// textual duplicates dropped, prefix maps united, first base wins.
struct LoadedKb {
  flogic::Program program;
  engine::KnowledgeBase kb;
};

inline std::optional<LoadedKb> load_kb(const std::vector<std::string>& paths, engine::EngineOptions opts,
                                       std::ostream& err, const std::vector<flogic::Rule>& extra_rules = {},
                                       bool ensure_checkers = false) {
  bool failed = false;
  flogic::Program merged;
  std::set<std::string> seen;
  auto add_rule = [&](const flogic::Rule& r) {
    if (seen.insert(flogic::print_rule(r)).second) merged.rules.push_back(r);
  };
  for (const auto& path : paths) {
    auto p = detail::load_program(path, err, failed);
    if (!p) continue;
    for (const auto& [prefix, ns] : p->prefixes) {
      auto [it, fresh] = merged.prefixes.emplace(prefix, ns);
      if (!fresh && it->second != ns) {
        detail::report(err,
                       {make_diagnostic(Severity::Warning, "prefix-conflict",
                                        "prefix " + prefix + " already bound to " + it->second + ", keeping it")},
                       path);
      }
    }
    if (merged.base.empty()) merged.base = p->base;
    for (const auto& r : p->rules) add_rule(r);
  }
  for (const auto& r : extra_rules) add_rule(r);
  // Hand-written KBs without the checker library get checked like translated ones.
  const bool has_library = std::any_of(merged.rules.begin(), merged.rules.end(), [](const flogic::Rule& r) {
    return translate::checker_name(r) == "check_all_constraints";
  });
  if (ensure_checkers && !has_library) {
    for (const auto& r : translate::checker_library()) add_rule(r);
  }
  if (failed) return std::nullopt;

  Diagnostics diags;
  auto kb = engine::KnowledgeBase::load(merged, diags, opts);
  if (!has_errors(diags)) kb.saturate(diags);
  detail::report(err, diags);
  if (has_errors(diags)) return std::nullopt;
  return LoadedKb{std::move(merged), std::move(kb)};
}

/// Resolves a name typed on the command line to a symbol of the KB. Accepts
/// the KB's own spelling (`Wine`, `food:Wine`) or a full IRI, bare or in
/// `<...>` or quotes.
inline std::optional<flogic::Term> resolve_name(const LoadedKb& loaded, const std::string& name, Diagnostics& diags) {
  std::string text = name;
  if (text.size() > 2 && ((text.front() == '<' && text.back() == '>') || (text.front() == '"' && text.back() == '"'))) {
    text = text.substr(1, text.size() - 2);
  }
  const auto colon = text.find(':');
  if (owl::has_iri_scheme(text) && !loaded.program.prefixes.count(text.substr(0, colon))) text = flogic::lexical::quote(text, '\'');
  auto parsed = flogic::parse_goal("q(" + text + ")", loaded.program.prefixes);
  const flogic::Term* t = nullptr;
  if (!has_errors(parsed.diagnostics) && parsed.goal.size() == 1) {
    const auto* p = parsed.goal[0].pred();
    if (p && p->args.size() == 1 && p->args[0].is_ground()) t = &p->args[0];
  }
  if (t) {
    if (loaded.kb.knows(*t)) return *t;
    const translate::IriResolver resolver(loaded.program);
    if (auto iri = resolver.iri(*t)) {
      translate::SymbolNamer namer(resolver.base_namespace(), loaded.program.prefixes);
      auto alt = namer.symbol(*iri);
      if (loaded.kb.knows(alt)) return alt;
    }
  }
  diags.push_back(make_diagnostic(Severity::Warning, "unknown-name", "unknown name '" + name + "'"));
  return std::nullopt;
}

inline int exit_code(const Diagnostics& diags) { return has_errors(diags) ? kExitError : kExitOk; }

inline int cmd_translate(const TranslateOptions& opts, std::ostream& err) {
  Diagnostics diags;
  auto text = detail::read_file(opts.input, diags);
  if (!text) {
    detail::report(err, diags);
    return kExitError;
  }
  std::string output;
  bool have_output = true;
  if (detail::blank(*text)) {
    output.clear();
  } else if (opts.from == Format::Owl) {
    auto parsed = owl::parse_document(*text);
    detail::report(err, parsed.diagnostics, opts.input);
    diags.insert(diags.end(), parsed.diagnostics.begin(), parsed.diagnostics.end());
    if (!parsed.document) {
      have_output = false;
    } else if (opts.to == Format::Flora) {
      auto tr = translate::translate_ontology(*parsed.document, opts.translation);
      detail::report(err, tr.diagnostics, opts.input);
      diags.insert(diags.end(), tr.diagnostics.begin(), tr.diagnostics.end());
      output = flogic::print_program(tr.program);
    } else {
      Diagnostics wd;
      output = owl::write_document(*parsed.document, wd);
      detail::report(err, wd, opts.input);
      diags.insert(diags.end(), wd.begin(), wd.end());
    }
  } else {
    auto parsed = flogic::parse_program(*text);
    detail::report(err, parsed.diagnostics, opts.input);
    diags.insert(diags.end(), parsed.diagnostics.begin(), parsed.diagnostics.end());
    if (has_errors(parsed.diagnostics)) {
      have_output = false;
    } else if (opts.to == Format::Owl) {
      auto rr = translate::translate_program(parsed.program);
      detail::report(err, rr.diagnostics, opts.input);
      diags.insert(diags.end(), rr.diagnostics.begin(), rr.diagnostics.end());
      Diagnostics wd;
      output = owl::write_document(rr.document, wd);
      detail::report(err, wd, opts.input);
      diags.insert(diags.end(), wd.begin(), wd.end());
    } else {
      output = flogic::print_program(parsed.program);
    }
  }
  if (have_output && !detail::write_file(opts.output, output, diags)) {
    detail::report(err, {diags.back()});
  }
  return have_output ? exit_code(diags) : kExitError;
}

/// Prints each violation message on its own line; returns the violation count.
inline std::size_t print_violations(const engine::KnowledgeBase& kb, std::ostream& out) {
  const auto violations = kb.run_constraint_checks();
  for (const auto& v : violations) out << v.message << '\n';
  return violations.size();
}

inline int cmd_check(const std::vector<std::string>& paths, engine::EngineOptions opts, std::ostream& out,
                     std::ostream& err) {
  auto loaded = load_kb(paths, opts, err, {}, true);
  if (!loaded) return kExitError;
  return print_violations(loaded->kb, out) > 0 ? kExitViolations : kExitOk;
}

/// `midInh(?Sub, ?Super)`: ?Super is reached from ?Sub through a distinct
/// middle class. The disequalities keep the transitive closure itself from
/// making every superclass a middle one.
inline flogic::Rule mid_inh_rule() {
  auto parsed = flogic::parse_program(
      "midInh(?Sub, ?Super) :- ?Sub::?Mid, ?Mid::?Super, ?Mid != ?Sub, ?Mid != ?Super.");
  return parsed.program.rules.at(0);
}

inline int cmd_query(const std::vector<std::string>& paths, const QueryRequest& req, engine::EngineOptions opts,
                     std::ostream& out, std::ostream& err) {
  using K = QueryRequest::Kind;
  std::vector<flogic::Rule> extra;
  if (req.most_specific || req.most_general) extra.push_back(mid_inh_rule());
  auto loaded = load_kb(paths, opts, err, extra, req.kind == K::Satisfiability);
  if (!loaded) return kExitError;
  const auto& kb = loaded->kb;

  if (req.kind == K::Satisfiability) {
    const auto n = print_violations(kb, out);
    out << (n == 0 ? "consistent" : "inconsistent") << '\n';
    return n == 0 ? kExitOk : kExitViolations;
  }

  Diagnostics diags;
  std::vector<flogic::Term> args;
  for (const auto& name : req.names) {
    if (auto t = resolve_name(*loaded, name, diags)) args.push_back(std::move(*t));
  }
  if (args.size() != req.names.size()) {
    detail::report(err, diags);
    return exit_code(diags);
  }

  using flogic::ClassExpr;
  using flogic::IsA;
  using flogic::Literal;
  const auto x = flogic::var("X");
  auto sub = [](flogic::Term a, flogic::Term b) -> Literal { 
    return flogic::SubClass{ClassExpr(std::move(a)), ClassExpr(std::move(b))};
  };
  auto mid = [](flogic::Term a, flogic::Term b) -> Literal {
    flogic::Naf n;
    n.body.push_back(flogic::Pred{"midInh", {std::move(a), std::move(b)}});
    return n;
  };
  auto truth = [&](std::vector<Literal> goal) { out << (kb.query(goal, diags).empty() ? "false" : "true") << '\n'; };
  auto list = [&](std::vector<Literal> goal) {
    for (const auto& t : kb.collect_set("X", goal, diags)) out << kb.show(t) << '\n';
  };

  switch (req.kind) {
    case K::GroundMembership: truth({IsA{args[0], ClassExpr(args[1])}}); break;
    case K::OpenMembership: list({IsA{x, ClassExpr(args[0])}}); break;
    case K::AllClasses: list({IsA{args[0], ClassExpr(x)}}); break;
    case K::Subsumption: truth({sub(args[0], args[1])}); break;
    case K::SuperClasses:
      if (req.most_specific) {
        list({sub(args[0], x), mid(args[0], x)});
      } else {
        list({sub(args[0], x)});
      }
      break;
    case K::SubClasses:
      if (req.most_general) {
        list({sub(x, args[0]), mid(x, args[0])});
      } else {
        list({sub(x, args[0])});
      }
      break;
    case K::Satisfiability: break;
  }
  detail::report(err, diags);
  return exit_code(diags);
}

inline int cmd_insert(const std::string& path, const std::string& fact, engine::EngineOptions opts, std::ostream& out,
                      std::ostream& err) {
  auto loaded = load_kb({path}, opts, err);
  if (!loaded) return kExitError;
  auto parsed = flogic::parse_goal(fact, loaded->program.prefixes);
  Diagnostics diags = parsed.diagnostics;
  if (!has_errors(diags) && parsed.goal.size() != 1) {
    diags.push_back(make_diagnostic(Severity::Error, codes::kSyntaxError, "insert takes exactly one fact"));
  }
  if (!has_errors(diags)) {
    if (auto n = loaded->kb.insert_fact(parsed.goal[0], diags)) out << *n << '\n';
  }
  detail::report(err, diags);
  return exit_code(diags);
}

}  // namespace owl2fl::cli
