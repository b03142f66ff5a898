#pragma once

// Mapping between absolute IRIs and the short symbols used in F-logic text.
// Names in the document's base namespace become bare symbols, names under a
// declared prefix become `p:local`, and everything else keeps its full IRI.

#include <map>
#include <optional>
#include <string>

#include "owl2fl/flogic/ast.hpp"
#include "owl2fl/flogic/printer.hpp"
#include "owl2fl/owl/model.hpp"
#include "owl2fl/owl/parser.hpp"

namespace owl2fl::translate {

inline std::string owl_thing() { return std::string(owl::kOwlNs) + "Thing"; }

/// Builtin type tag for an XSD datatype IRI, if it is one.
inline std::optional<std::string> datatype_tag(const owl::Iri& iri) {
  if (!iri.str().starts_with(owl::kXsdNs)) return std::nullopt;
  Diagnostics quiet;
  auto tag = owl::map_xml_type(iri, quiet);
  if (!quiet.empty()) return std::nullopt;
  return tag;
}

inline bool is_type_tag(const std::string& s) {
  return s == "_string" || s == "_integer" || s == "_double" || s == "_boolean";
}

class SymbolNamer {
 public:
  SymbolNamer(std::string base_ns, const std::map<std::string, std::string>& prefixes)
      : base_ns_(std::move(base_ns)), prefixes_(prefixes) {}

  explicit SymbolNamer(const owl::OntologyDocument& doc)
      : SymbolNamer(doc.base_namespace(), doc.prefixes) {}

  flogic::Term symbol(const owl::Iri& iri) {
    const auto& s = iri.str();
    if (s == owl_thing()) return flogic::sym(flogic::kObject);
    if (s.starts_with(base_ns_)) {
      const auto local = s.substr(base_ns_.size());
      if (flogic::lexical::is_plain_name(local) && local[0] != '_' && !prefixes_.count(local)) {
        return flogic::sym(local);
      }
    }
    const std::string* best = nullptr;
    const std::string* best_ns = nullptr;
    for (const auto& [p, ns] : prefixes_) {
      if (ns.empty() || !s.starts_with(ns) || p == "xml") continue;
      if (!std::isalpha(static_cast<unsigned char>(p[0])) || !flogic::lexical::is_plain_name(p)) continue;
      if (!flogic::lexical::is_plain_name(s.substr(ns.size()))) continue;
      if (!best_ns || ns.size() > best_ns->size()) {
        best = &p;
        best_ns = &ns;
      }
    }
    if (best) {
      used_[*best] = *best_ns;
      return flogic::sym(*best + ":" + s.substr(best_ns->size()));
    }
    return flogic::sym(s);
  }

  /// Class position: XSD datatypes become builtin type tags.
  flogic::Term class_symbol(const owl::Iri& iri) {
    if (auto tag = datatype_tag(iri)) return flogic::sym(*tag);
    return symbol(iri);
  }

  flogic::Term value(const owl::Value& v) {
    if (const auto* iri = std::get_if<owl::Iri>(&v)) return symbol(*iri);
    const auto& lit = std::get<owl::Literal>(v);
    return flogic::Term::literal(lit.lexical, lit.type_tag);
  }

  const std::map<std::string, std::string>& used_prefixes() const { return used_; }
  const std::string& base_namespace() const { return base_ns_; }

 private:
  std::string base_ns_;
  const std::map<std::string, std::string>& prefixes_;
  std::map<std::string, std::string> used_;
};

/// Inverse of SymbolNamer for a parsed program.
class IriResolver {
 public:
  explicit IriResolver(const flogic::Program& p)
      : base_ns_(p.base.empty() ? std::string(owl::kDefaultBase) + "#" : p.base),
        prefixes_(p.prefixes) {}

  const std::string& base_namespace() const { return base_ns_; }
  const std::map<std::string, std::string>& prefixes() const { return prefixes_; }

  std::optional<owl::Iri> iri(const flogic::Term& t) const {
    if (!t.is_symbol()) return std::nullopt;
    const auto& s = t.name;
    if (s == flogic::kObject) return owl::Iri(owl_thing());
    if (is_type_tag(s)) return owl::Iri(owl::xml_type_for_tag(s));
    if (flogic::lexical::is_prefixed_name(s)) {
      const auto colon = s.find(':');
      if (auto it = prefixes_.find(s.substr(0, colon)); it != prefixes_.end()) {
        return owl::Iri(it->second + s.substr(colon + 1));
      }
    }
    if (owl::has_iri_scheme(s)) return owl::Iri(s);
    return owl::Iri(base_ns_ + s);
  }

  std::optional<owl::Value> value(const flogic::Term& t) const {
    if (t.kind == flogic::Term::Kind::Literal) return owl::Value{owl::Literal{t.name, t.type_tag}};
    if (auto i = iri(t)) return owl::Value{*i};
    return std::nullopt;
  }

 private:
  std::string base_ns_;
  std::map<std::string, std::string> prefixes_;
};

}  // namespace owl2fl::translate
