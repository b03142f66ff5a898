#pragma once

// RDF/XML reader for the OWL constructs of the translation table. Names are
// expanded to absolute IRIs while parsing and XSD datatypes are mapped to the
// F-logic builtin type tags.

#include <charconv>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "owl2fl/diagnostic.hpp"
#include "owl2fl/owl/model.hpp"
#include "owl2fl/owl/xml_reader.hpp"

namespace owl2fl::owl {

using PrefixMap = std::map<std::string, std::string>;

inline PrefixMap builtin_prefixes() {
  return {{"owl", kOwlNs}, {"rdf", kRdfNs}, {"rdfs", kRdfsNs}, {"xsd", kXsdNs}, {"xml", kXmlNs}};
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline bool is_prefix_name(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-' && c != '.') {
      return false;
    }
  }
  return true;
}

// `p#local` joins with a '#' unless the namespace already ends in one.
inline std::string join_hash(const std::string& ns, std::string_view local) {
  if (!ns.empty() && (ns.back() == '#' || ns.back() == '/')) return ns + std::string(local);
  return ns + "#" + std::string(local);
}

}  // namespace detail

/// Expands `p#local`, `p:local`, `&p;local` and `&p:local` through the prefix
/// map. Absolute IRIs pass through unchanged. Anything else is reported as
/// `unresolved-prefix`.
inline std::optional<Iri> expand_iri(std::string_view name, const PrefixMap& prefixes,
                                     Diagnostics& diags,
                                     std::optional<SourceLocation> loc = std::nullopt) {
  const std::string_view s = detail::trim(name);
  auto unresolved = [&](std::string_view prefix) -> std::optional<Iri> {
    std::string msg = prefix.empty()
                          ? "cannot resolve '" + std::string(s) + "' to an absolute IRI"
                          : "unknown prefix '" + std::string(prefix) + "' in '" + std::string(s) + "'";
    diags.push_back(make_diagnostic(Severity::Error, codes::kUnresolvedPrefix, std::move(msg), loc));
    return std::nullopt;
  };

  if (s.starts_with('&')) {
    const auto body = s.substr(1);
    const auto sep = body.find_first_of(";:");
    if (sep == std::string_view::npos) return unresolved("");
    const auto prefix = body.substr(0, sep);
    auto it = prefixes.find(std::string(prefix));
    if (it == prefixes.end()) return unresolved(prefix);
    return Iri(it->second + std::string(body.substr(sep + 1)));
  }

  if (const auto hash = s.find('#'); hash != std::string_view::npos && hash > 0) {
    const auto prefix = s.substr(0, hash);
    if (detail::is_prefix_name(prefix)) {
      auto it = prefixes.find(std::string(prefix));
      if (it == prefixes.end()) return unresolved(prefix);
      return Iri(detail::join_hash(it->second, s.substr(hash + 1)));
    }
  }

  if (has_iri_scheme(s)) {
    const auto colon = s.find(':');
    const auto prefix = s.substr(0, colon);
    if (auto it = prefixes.find(std::string(prefix)); it != prefixes.end()) {
      return Iri(it->second + std::string(s.substr(colon + 1)));
    }
    return Iri(std::string(s));
  }
  return unresolved("");
}

/// Maps an XML Schema datatype IRI to its builtin type tag. Unknown types are
/// passed through as the IRI text with a warning.
inline std::string map_xml_type(const Iri& type, Diagnostics& diags,
                                std::optional<SourceLocation> loc = std::nullopt) {
  static const std::map<std::string, std::string> table = [] {
    std::map<std::string, std::string> t;
    for (const char* raw : {kXsdNs, kXmlNs}) {
      const std::string ns = raw;
      t[ns + "string"] = "_string";
      t[ns + "integer"] = "_integer";
      t[ns + "nonNegativeInteger"] = "_integer";
      t[ns + "int"] = "_integer";
      t[ns + "decimal"] = "_double";
      t[ns + "double"] = "_double";
      t[ns + "float"] = "_double";
      t[ns + "boolean"] = "_boolean";
    }
    return t;
  }();
  if (auto it = table.find(type.str()); it != table.end()) return it->second;
  diags.push_back(make_diagnostic(Severity::Warning, codes::kUnknownXmlType,
                                  "unknown datatype '" + type.str() + "', kept as opaque symbol",
                                  loc));
  return type.str();
}

/// XSD IRI for a builtin type tag, used when writing documents back out.
inline std::string xml_type_for_tag(const std::string& tag) {
  if (tag == "_string") return std::string(kXsdNs) + "string";
  if (tag == "_integer") return std::string(kXsdNs) + "integer";
  if (tag == "_double") return std::string(kXsdNs) + "double";
  if (tag == "_boolean") return std::string(kXsdNs) + "boolean";
  return tag;
}

struct ParseResult {
  std::optional<OntologyDocument> document;
  Diagnostics diagnostics;
};

namespace detail {

class DocumentParser {
 public:
  ParseResult run(std::string_view text) {
    ParseResult result;
    xml::Document xdoc;
    try {
      xdoc = xml::read(text);
    } catch (const xml::ParseError& e) {
      result.diagnostics.push_back(
          make_diagnostic(Severity::Error, codes::kMalformedXml, e.what(), e.location()));
      return result;
    }

    doc_.prefixes = builtin_prefixes();
    for (const auto& [p, ns] : xdoc.namespaces) doc_.prefixes[p] = ns;
    for (const auto& [name, value] : xdoc.entities) {
      if (has_iri_scheme(value)) doc_.prefixes[name] = value;
    }
    if (const auto* b = xdoc.root.attribute(kXmlNs, "base")) {
      doc_.base = std::string(trim(b->value));
    } else if (xdoc.default_namespace && has_iri_scheme(*xdoc.default_namespace)) {
      doc_.base = *xdoc.default_namespace;
    }
    while (doc_.base.size() > 1 && doc_.base.back() == '#') doc_.base.pop_back();
    base_ns_ = doc_.base_namespace();

    if (xdoc.root.is(kRdfNs, "RDF")) {
      for (const auto& child : xdoc.root.children) node_element(child);
    } else {
      node_element(xdoc.root);
    }
    result.document = std::move(doc_);
    result.diagnostics = std::move(diags_);
    return result;
  }

 private:
  OntologyDocument doc_;
  Diagnostics diags_;
  std::string base_ns_;
  std::size_t blank_counter_ = 0;

  void warn(std::string_view code, std::string msg, SourceLocation loc) {
    diags_.push_back(make_diagnostic(Severity::Warning, code, std::move(msg), loc));
  }
  void error(std::string_view code, std::string msg, SourceLocation loc) {
    diags_.push_back(make_diagnostic(Severity::Error, code, std::move(msg), loc));
  }

  Iri fresh_blank() { return Iri("_:b" + std::to_string(++blank_counter_)); }

  // Resolves rdf:about / rdf:resource style references.
  std::optional<Iri> resolve(std::string_view raw, SourceLocation loc) {
    const std::string_view s = trim(raw);
    if (s.empty()) return Iri(doc_.base);
    if (s.starts_with('&')) return expand_iri(s, doc_.prefixes, diags_, loc);
    if (s.starts_with('#')) {
      const auto frag = s.substr(1);
      if (const auto colon = frag.find(':'); colon != std::string_view::npos) {
        if (doc_.prefixes.count(std::string(frag.substr(0, colon)))) {
          return expand_iri(frag, doc_.prefixes, diags_, loc);
        }
      }
      return Iri(base_ns_ + std::string(frag));
    }
    if (has_iri_scheme(s)) return expand_iri(s, doc_.prefixes, diags_, loc);
    if (const auto hash = s.find('#'); hash != std::string_view::npos && hash > 0 &&
                                       is_prefix_name(s.substr(0, hash))) {
      return expand_iri(s, doc_.prefixes, diags_, loc);
    }
    return Iri(base_ns_ + std::string(s));
  }

  std::optional<Iri> subject_of(const xml::Element& el) {
    if (const auto* a = el.attribute(kRdfNs, "ID")) return Iri(base_ns_ + std::string(trim(a->value)));
    if (const auto* a = el.attribute(kRdfNs, "about")) return resolve(a->value, el.location);
    if (const auto* a = el.attribute(kRdfNs, "nodeID")) return Iri("_:" + std::string(trim(a->value)));
    return std::nullopt;
  }

  Iri element_iri(const xml::Element& el) const {
    if (el.ns.empty()) return Iri(base_ns_ + el.local);
    return Iri(el.ns + el.local);
  }

  static bool is_annotation(const xml::Element& el) {
    return el.is(kRdfsNs, "label") || el.is(kRdfsNs, "comment") || el.is(kRdfsNs, "seeAlso") ||
           el.is(kRdfsNs, "isDefinedBy") || el.is(kOwlNs, "versionInfo");
  }

  static bool is_class_element(const xml::Element& el) {
    return el.is(kOwlNs, "Class") || el.is(kRdfsNs, "Class") || el.is(kOwlNs, "Restriction");
  }

  static std::optional<Characteristic> characteristic_named(std::string_view iri) {
    const std::string owl = kOwlNs;
    if (iri == owl + "FunctionalProperty") return Characteristic::Functional;
    if (iri == owl + "InverseFunctionalProperty") return Characteristic::InverseFunctional;
    if (iri == owl + "TransitiveProperty") return Characteristic::Transitive;
    if (iri == owl + "SymmetricProperty") return Characteristic::Symmetric;
    return std::nullopt;
  }

  static bool is_property_element(const xml::Element& el) {
    if (el.ns == kRdfNs && el.local == "Property") return true;
    if (el.ns != kOwlNs) return false;
    return el.local == "ObjectProperty" || el.local == "DatatypeProperty" ||
           el.local == "FunctionalProperty" || el.local == "InverseFunctionalProperty" ||
           el.local == "TransitiveProperty" || el.local == "SymmetricProperty";
  }

  void node_element(const xml::Element& el) {
    if (el.is(kOwlNs, "Ontology")) return;
    if (el.is(kOwlNs, "AnnotationProperty")) return;
    if (is_class_element(el)) {
      class_description(el);
    } else if (is_property_element(el)) {
      property_description(el);
    } else if ((el.ns == kOwlNs || el.ns == kRdfNs || el.ns == kRdfsNs) &&
               !el.is(kOwlNs, "Thing") && !el.is(kOwlNs, "NamedIndividual") &&
               !el.is(kRdfNs, "Description")) {
      warn(codes::kUnknownConstruct, "unsupported construct <" + el.qname + ">, skipped",
           el.location);
    } else {
      individual(el);
    }
  }

  // --- classes -------------------------------------------------------------

  static bool is_definitional(const xml::Element& el) {
    return el.is(kOwlNs, "unionOf") || el.is(kOwlNs, "intersectionOf") ||
           el.is(kOwlNs, "complementOf") || el.is(kOwlNs, "oneOf");
  }

  // Parses a class or restriction element, emitting the axioms it carries,
  // and returns the expression that denotes it.
  ClassExpressionPtr class_description(const xml::Element& el) {
    ClassExpressionPtr subject;
    const bool is_restriction = el.is(kOwlNs, "Restriction");
    if (is_restriction) {
      subject = restriction_expression(el);
      if (!subject) return nullptr;
    } else if (auto iri = subject_of(el)) {
      subject = named(*iri);
    }

    for (const auto& child : el.children) {
      if (is_restriction && is_restriction_part(child)) continue;
      if (is_definitional(child)) {
        auto expr = definitional_expression(child);
        if (!expr) continue;
        if (subject && subject->is_named()) {
          doc_.add(ClassAxiom{EquivalentClass{subject, expr}}, child.location);
        } else if (!subject) {
          subject = expr;
        } else {
          warn(codes::kUnknownConstruct,
               "second class constructor on an anonymous class is ignored", child.location);
        }
      } else if (child.is(kRdfsNs, "subClassOf")) {
        auto target = class_value(child);
        if (!target) continue;
        if (!subject) {
          error(codes::kMissingAttribute, "subClassOf on a class without identity", child.location);
          continue;
        }
        doc_.add(ClassAxiom{SubClassOf{subject, target}}, child.location);
      } else if (child.is(kOwlNs, "equivalentClass")) {
        auto target = class_value(child);
        if (!target) continue;
        if (!subject) {
          error(codes::kMissingAttribute, "equivalentClass on a class without identity",
                child.location);
          continue;
        }
        doc_.add(ClassAxiom{EquivalentClass{subject, target}}, child.location);
      } else if (child.is(kOwlNs, "disjointWith")) {
        auto target = class_value(child);
        if (!target) continue;
        if (!subject || !subject->is_named() || !target->is_named()) {
          error(codes::kUnsupportedExpression, "disjointWith is supported between named classes only",
                child.location);
          continue;
        }
        doc_.add(ClassAxiom{DisjointWith{*subject->named(), *target->named()}}, child.location);
      } else if (child.is(kRdfNs, "type") || is_annotation(child)) {
        continue;
      } else {
        warn(codes::kUnknownConstruct, "unsupported class element <" + child.qname + ">, skipped",
             child.location);
      }
    }
    if (!subject) {
      error(codes::kMissingAttribute, "class element without identity or constructor", el.location);
    }
    return subject;
  }

  ClassExpressionPtr class_value(const xml::Element& prop) {
    if (const auto* r = prop.attribute(kRdfNs, "resource")) {
      auto iri = resolve(r->value, prop.location);
      return iri ? named(*iri) : nullptr;
    }
    for (const auto& child : prop.children) {
      if (is_class_element(child)) return class_description(child);
      if (child.is(kRdfNs, "Description")) {
        if (auto iri = subject_of(child)) return named(*iri);
      }
      warn(codes::kUnknownConstruct, "unsupported class value <" + child.qname + ">", child.location);
      return nullptr;
    }
    error(codes::kMissingAttribute, "<" + prop.qname + "> has neither rdf:resource nor a class",
          prop.location);
    return nullptr;
  }

  std::vector<const xml::Element*> collection_items(const xml::Element& el) {
    std::vector<const xml::Element*> items;
    for (const auto& c : el.children) items.push_back(&c);
    return items;
  }

  ClassExpressionPtr definitional_expression(const xml::Element& el) {
    if (el.is(kOwlNs, "complementOf")) {
      auto op = class_value(el);
      return op ? complement_of(op) : nullptr;
    }
    if (el.is(kOwlNs, "oneOf")) {
      std::vector<Iri> individuals;
      for (const auto* item : collection_items(el)) {
        if (auto iri = subject_of(*item)) {
          individuals.push_back(*iri);
        } else {
          error(codes::kMissingAttribute, "oneOf member without rdf:about", item->location);
        }
      }
      if (individuals.empty()) {
        error(codes::kUnsupportedExpression, "empty oneOf", el.location);
        return nullptr;
      }
      return one_of(std::move(individuals));
    }
    std::vector<ClassExpressionPtr> ops;
    for (const auto* item : collection_items(el)) {
      ClassExpressionPtr op;
      if (is_class_element(*item)) {
        op = class_description(*item);
      } else if (auto iri = subject_of(*item)) {
        op = named(*iri);
      }
      if (!op) {
        error(codes::kUnsupportedExpression, "unsupported collection member <" + item->qname + ">",
              item->location);
        return nullptr;
      }
      ops.push_back(std::move(op));
    }
    if (ops.size() < 2) {
      error(codes::kUnsupportedExpression, "<" + el.qname + "> needs at least two operands",
            el.location);
      return nullptr;
    }
    return el.is(kOwlNs, "unionOf") ? union_of(std::move(ops)) : intersection_of(std::move(ops));
  }

  static bool is_restriction_part(const xml::Element& el) {
    if (el.ns != kOwlNs) return false;
    return el.local == "onProperty" || el.local == "allValuesFrom" ||
           el.local == "someValuesFrom" || el.local == "hasValue" ||
           el.local == "maxCardinality" || el.local == "minCardinality" ||
           el.local == "cardinality";
  }

  std::optional<std::uint32_t> cardinality_value(const xml::Element& el) {
    const auto text = trim(el.text);
    std::uint32_t n = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, n);
    if (text.empty() || ec != std::errc() || ptr != end) {
      error(codes::kInvalidCardinality,
            "cardinality must be a non-negative integer, got '" + std::string(text) + "'",
            el.location);
      return std::nullopt;
    }
    if (const auto* dt = el.attribute(kRdfNs, "datatype")) {
      if (auto iri = resolve(dt->value, el.location)) map_xml_type(*iri, diags_, el.location);
    }
    return n;
  }

  ClassExpressionPtr restriction_expression(const xml::Element& el) {
    std::optional<Iri> property;
    std::optional<RestrictionKind> kind;
    for (const auto& child : el.children) {
      if (!is_restriction_part(child)) continue;
      if (child.local == "onProperty") {
        if (const auto* r = child.attribute(kRdfNs, "resource")) {
          property = resolve(r->value, child.location);
        } else {
          error(codes::kMissingAttribute, "owl:onProperty without rdf:resource", child.location);
        }
        continue;
      }
      if (kind) {
        warn(codes::kUnknownConstruct, "extra restriction kind <" + child.qname + "> ignored",
             child.location);
        continue;
      }
      if (child.local == "allValuesFrom" || child.local == "someValuesFrom") {
        auto filler = class_value(child);
        if (!filler) return nullptr;
        if (child.local == "allValuesFrom") {
          kind = AllValuesFrom{filler};
        } else {
          kind = SomeValuesFrom{filler};
        }
      } else if (child.local == "hasValue") {
        auto v = property_value(child);
        if (!v) return nullptr;
        kind = HasValue{*v};
      } else {
        auto n = cardinality_value(child);
        if (!n) return nullptr;
        if (child.local == "maxCardinality") {
          kind = MaxCardinality{*n};
        } else if (child.local == "minCardinality") {
          kind = MinCardinality{*n};
        } else {
          kind = ExactCardinality{*n};
        }
      }
    }
    if (!property) {
      error(codes::kMissingAttribute, "owl:Restriction without owl:onProperty", el.location);
      return nullptr;
    }
    if (!kind) {
      error(codes::kMissingAttribute, "owl:Restriction without a restriction kind", el.location);
      return nullptr;
    }
    return restriction(*property, *kind);
  }

  // --- properties ----------------------------------------------------------

  void property_description(const xml::Element& el) {
    auto subject = subject_of(el);
    if (!subject) {
      error(codes::kMissingAttribute, "property element without rdf:ID or rdf:about", el.location);
      return;
    }
    if (auto c = characteristic_named(el.ns + el.local)) {
      doc_.add(PropertyAxiom{PropertyCharacteristic{*subject, *c}}, el.location);
    }
    for (const auto& child : el.children) {
      if (is_annotation(child)) continue;
      if (child.is(kRdfNs, "type")) {
        const auto* r = child.attribute(kRdfNs, "resource");
        if (!r) {
          error(codes::kMissingAttribute, "rdf:type without rdf:resource", child.location);
          continue;
        }
        auto type = resolve(r->value, child.location);
        if (!type) continue;
        if (auto c = characteristic_named(type->str())) {
          doc_.add(PropertyAxiom{PropertyCharacteristic{*subject, *c}}, child.location);
        }
        continue;
      }
      const bool known = child.is(kRdfsNs, "domain") || child.is(kRdfsNs, "range") ||
                         child.is(kRdfsNs, "subPropertyOf") ||
                         child.is(kOwlNs, "equivalentProperty") || child.is(kOwlNs, "inverseOf");
      if (!known) {
        warn(codes::kUnknownConstruct,
             "unsupported property element <" + child.qname + ">, skipped", child.location);
        continue;
      }
      const auto* r = child.attribute(kRdfNs, "resource");
      if (!r) {
        error(codes::kUnsupportedExpression,
              "<" + child.qname + "> must name its target with rdf:resource", child.location);
        continue;
      }
      auto target = resolve(r->value, child.location);
      if (!target) continue;
      if (child.local == "domain") {
        doc_.add(PropertyAxiom{Domain{*subject, *target}}, child.location);
      } else if (child.local == "range") {
        doc_.add(PropertyAxiom{Range{*subject, *target}}, child.location);
      } else if (child.local == "subPropertyOf") {
        doc_.add(PropertyAxiom{SubPropertyOf{*subject, *target}}, child.location);
      } else if (child.local == "equivalentProperty") {
        doc_.add(PropertyAxiom{EquivalentProperty{*subject, *target}}, child.location);
      } else {
        doc_.add(PropertyAxiom{InverseOf{*subject, *target}}, child.location);
      }
    }
  }

  // --- individuals ---------------------------------------------------------

  std::optional<Value> property_value(const xml::Element& prop) {
    if (const auto* r = prop.attribute(kRdfNs, "resource")) {
      auto iri = resolve(r->value, prop.location);
      if (!iri) return std::nullopt;
      return Value{*iri};
    }
    if (const auto* n = prop.attribute(kRdfNs, "nodeID")) {
      return Value{Iri("_:" + std::string(trim(n->value)))};
    }
    for (const auto& child : prop.children) {
      if (auto iri = individual(child)) return Value{*iri};
      return std::nullopt;
    }
    Literal lit{std::string(trim(prop.text)), "_string"};
    if (const auto* dt = prop.attribute(kRdfNs, "datatype")) {
      auto type = resolve(dt->value, prop.location);
      if (!type) return std::nullopt;
      lit.type_tag = map_xml_type(*type, diags_, prop.location);
    }
    return Value{std::move(lit)};
  }

  std::optional<Iri> individual(const xml::Element& el) {
    if (is_class_element(el) || is_property_element(el)) {
      warn(codes::kUnknownConstruct, "<" + el.qname + "> is not an individual", el.location);
      return std::nullopt;
    }
    Iri subject;
    if (auto s = subject_of(el)) {
      subject = *s;
    } else {
      subject = fresh_blank();
    }

    const bool untyped = el.is(kRdfNs, "Description") || el.is(kOwlNs, "Thing") ||
                         el.is(kOwlNs, "NamedIndividual");
    if (!untyped) doc_.add(Assertion{ClassAssertion{subject, element_iri(el)}}, el.location);
    for (const auto& child : el.children) {
      if (!child.is(kRdfNs, "type")) continue;
      const auto* r = child.attribute(kRdfNs, "resource");
      if (!r) {
        error(codes::kMissingAttribute, "rdf:type without rdf:resource", child.location);
        continue;
      }
      auto cls = resolve(r->value, child.location);
      if (!cls) continue;
      if (cls->str() == std::string(kOwlNs) + "Thing" ||
          cls->str() == std::string(kOwlNs) + "NamedIndividual") {
        continue;
      }
      doc_.add(Assertion{ClassAssertion{subject, *cls}}, child.location);
    }

    for (const auto& attr : el.attributes) {
      if (attr.ns == kRdfNs) {
        if (attr.local == "type") {
          if (auto cls = resolve(attr.value, el.location)) {
            doc_.add(Assertion{ClassAssertion{subject, *cls}}, el.location);
          }
        }
        continue;
      }
      if (attr.ns == kXmlNs) continue;
      Iri prop(attr.ns.empty() ? base_ns_ + attr.local : attr.ns + attr.local);
      doc_.add(Assertion{PropertyAssertion{subject, prop, Literal{attr.value, "_string"}}},
               el.location);
    }

    for (const auto& child : el.children) {
      if (child.is(kRdfNs, "type") || is_annotation(child)) continue;
      if (const auto* pt = child.attribute(kRdfNs, "parseType"); pt && pt->value != "Literal") {
        warn(codes::kUnknownConstruct, "rdf:parseType=\"" + pt->value + "\" is not supported",
             child.location);
        continue;
      }
      auto value = property_value(child);
      if (!value) continue;
      doc_.add(Assertion{PropertyAssertion{subject, element_iri(child), *value}}, child.location);
    }
    return subject;
  }
};

}  // namespace detail

/// Parses RDF/XML text. Malformed XML yields an Error and no document; any
/// other problem is a diagnostic and parsing continues.
inline ParseResult parse_document(std::string_view text) {
  return detail::DocumentParser{}.run(text);
}

}  // namespace owl2fl::owl
