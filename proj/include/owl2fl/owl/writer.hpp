#pragma once

// RDF/XML serializer for OntologyDocument. Every axiom becomes one top-level
// element so that re-parsing reproduces the axiom list in order.

#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>

#include "owl2fl/diagnostic.hpp"
#include "owl2fl/owl/model.hpp"
#include "owl2fl/owl/parser.hpp"

namespace owl2fl::owl {

namespace detail {

inline std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

inline bool is_xml_name(std::string_view s) {
  if (s.empty()) return false;
  const unsigned char first = static_cast<unsigned char>(s[0]);
  if (!(std::isalpha(first) || first == '_' || first >= 0x80)) return false;
  for (unsigned char c : s) {
    if (!(std::isalnum(c) || c == '_' || c == '-' || c == '.' || c >= 0x80)) return false;
  }
  return true;
}

class DocumentWriter {
 public:
  DocumentWriter(const OntologyDocument& doc, Diagnostics& diags) : doc_(doc), diags_(diags) {
    for (const auto& [p, ns] : builtin_prefixes()) {
      if (p != "xml") ns_prefix_[ns] = p;
    }
    for (const auto& [p, ns] : doc_.prefixes) {
      if (p == "xml" || !is_xml_name(p) || p.find('.') != std::string::npos) continue;
      if (!ns_prefix_.count(ns)) ns_prefix_[ns] = p;
    }
  }

  std::string run() {
    std::ostringstream body;
    for (const auto& ax : doc_.axioms) {
      std::visit([&](const auto& b) { write_axiom(body, b); }, ax.body);
    }
    std::ostringstream out;
    out << "<?xml version=\"1.0\"?>\n<rdf:RDF";
    for (const auto& [ns, p] : ns_prefix_) {
      out << "\n    xmlns:" << p << "=\"" << xml_escape(ns) << '"';
    }
    out << "\n    xml:base=\"" << xml_escape(doc_.base) << "\">\n" << body.str() << "</rdf:RDF>\n";
    return out.str();
  }

 private:
  const OntologyDocument& doc_;
  Diagnostics& diags_;
  std::map<std::string, std::string> ns_prefix_;
  int generated_ = 0;

  // Reference attribute naming an individual or class.
  static std::string ref(std::string_view attr, const Iri& iri) {
    if (iri.is_blank()) return " rdf:nodeID=\"" + xml_escape(iri.str().substr(2)) + '"';
    return " rdf:" + std::string(attr) + "=\"" + xml_escape(iri.str()) + '"';
  }

  std::string qname(const Iri& iri) {
    const auto& s = iri.str();
    const auto cut = s.find_last_of("#/");
    if (cut == std::string::npos || !is_xml_name(s.substr(cut + 1))) return {};
    const std::string ns = s.substr(0, cut + 1);
    auto it = ns_prefix_.find(ns);
    if (it == ns_prefix_.end()) {
      std::string p;
      do {
        p = "ns" + std::to_string(++generated_);
      } while (doc_.prefixes.count(p));
      it = ns_prefix_.emplace(ns, p).first;
    }
    return it->second + ":" + s.substr(cut + 1);
  }

  static void indent(std::ostream& os, int depth) {
    for (int i = 0; i < depth; ++i) os << "  ";
  }

  static bool is_definitional(const ClassExpression& e) {
    return std::holds_alternative<UnionOf>(e.node) ||
           std::holds_alternative<IntersectionOf>(e.node) ||
           std::holds_alternative<ComplementOf>(e.node) || std::holds_alternative<OneOf>(e.node);
  }

  void literal_content(std::ostream& os, std::string_view tag, const Literal& lit) {
    if (lit.type_tag != "_string") {
      os << " rdf:datatype=\"" << xml_escape(xml_type_for_tag(lit.type_tag)) << '"';
    }
    os << '>' << xml_escape(lit.lexical) << "</" << tag << ">\n";
  }

  // `<tag ...>` carrying a class expression as its value.
  void class_value(std::ostream& os, std::string_view tag, const ClassExpressionPtr& e, int depth) {
    indent(os, depth);
    if (const auto* iri = e->named()) {
      os << '<' << tag << ref("resource", *iri) << "/>\n";
      return;
    }
    os << '<' << tag << ">\n";
    class_element(os, e, depth + 1, nullptr);
    indent(os, depth);
    os << "</" << tag << ">\n";
  }

  void definitional_child(std::ostream& os, const ClassExpression& e, int depth) {
    if (const auto* c = std::get_if<ComplementOf>(&e.node)) {
      class_value(os, "owl:complementOf", c->operand, depth);
      return;
    }
    indent(os, depth);
    if (const auto* u = std::get_if<UnionOf>(&e.node)) {
      os << "<owl:unionOf rdf:parseType=\"Collection\">\n";
      for (const auto& op : u->operands) class_element(os, op, depth + 1, nullptr);
      indent(os, depth);
      os << "</owl:unionOf>\n";
    } else if (const auto* i = std::get_if<IntersectionOf>(&e.node)) {
      os << "<owl:intersectionOf rdf:parseType=\"Collection\">\n";
      for (const auto& op : i->operands) class_element(os, op, depth + 1, nullptr);
      indent(os, depth);
      os << "</owl:intersectionOf>\n";
    } else if (const auto* o = std::get_if<OneOf>(&e.node)) {
      os << "<owl:oneOf rdf:parseType=\"Collection\">\n";
      for (const auto& ind : o->individuals) {
        indent(os, depth + 1);
        os << "<owl:Thing" << ref("about", ind) << "/>\n";
      }
      indent(os, depth);
      os << "</owl:oneOf>\n";
    }
  }

  void restriction_children(std::ostream& os, const Restriction& r, int depth) {
    indent(os, depth);
    os << "<owl:onProperty" << ref("resource", r.property) << "/>\n";
    std::visit(
        [&](const auto& k) {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, AllValuesFrom>) {
            class_value(os, "owl:allValuesFrom", k.filler, depth);
          } else if constexpr (std::is_same_v<K, SomeValuesFrom>) {
            class_value(os, "owl:someValuesFrom", k.filler, depth);
          } else if constexpr (std::is_same_v<K, HasValue>) {
            indent(os, depth);
            if (const auto* iri = std::get_if<Iri>(&k.value)) {
              os << "<owl:hasValue" << ref("resource", *iri) << "/>\n";
            } else {
              os << "<owl:hasValue";
              literal_content(os, "owl:hasValue", std::get<Literal>(k.value));
            }
          } else {
            const char* tag = std::is_same_v<K, MaxCardinality>   ? "owl:maxCardinality"
                              : std::is_same_v<K, MinCardinality> ? "owl:minCardinality"
                                                                  : "owl:cardinality";
            indent(os, depth);
            os << '<' << tag << " rdf:datatype=\"" << kXsdNs << "nonNegativeInteger\">" << k.n
               << "</" << tag << ">\n";
          }
        },
        r.kind);
  }

  // Element denoting `e`, with an optional trailing axiom child.
  void class_element(std::ostream& os, const ClassExpressionPtr& e, int depth,
                     const std::function<void(std::ostream&, int)>* extra) {
    indent(os, depth);
    if (const auto* r = std::get_if<Restriction>(&e->node)) {
      os << "<owl:Restriction>\n";
      restriction_children(os, *r, depth + 1);
      if (extra) (*extra)(os, depth + 1);
      indent(os, depth);
      os << "</owl:Restriction>\n";
      return;
    }
    if (const auto* iri = e->named()) {
      os << "<owl:Class" << ref("about", *iri);
      if (!extra) {
        os << "/>\n";
        return;
      }
      os << ">\n";
    } else {
      os << "<owl:Class>\n";
      definitional_child(os, *e, depth + 1);
    }
    if (extra) (*extra)(os, depth + 1);
    indent(os, depth);
    os << "</owl:Class>\n";
  }

  void write_axiom(std::ostream& os, const ClassAxiom& ax) {
    if (const auto* s = std::get_if<SubClassOf>(&ax)) {
      std::function<void(std::ostream&, int)> child = [&](std::ostream& o, int d) {
        class_value(o, "rdfs:subClassOf", s->super, d);
      };
      class_element(os, s->sub, 1, &child);
    } else if (const auto* e = std::get_if<EquivalentClass>(&ax)) {
      if (e->a->is_named() && is_definitional(*e->b)) {
        std::function<void(std::ostream&, int)> child = [&](std::ostream& o, int d) {
          definitional_child(o, *e->b, d);
        };
        class_element(os, e->a, 1, &child);
      } else {
        std::function<void(std::ostream&, int)> child = [&](std::ostream& o, int d) {
          class_value(o, "owl:equivalentClass", e->b, d);
        };
        class_element(os, e->a, 1, &child);
      }
    } else {
      const auto& d = std::get<DisjointWith>(ax);
      os << "  <owl:Class" << ref("about", d.a) << ">\n    <owl:disjointWith"
         << ref("resource", d.b) << "/>\n  </owl:Class>\n";
    }
  }

  void write_axiom(std::ostream& os, const PropertyAxiom& ax) {
    std::visit(
        [&](const auto& a) {
          using T = std::decay_t<decltype(a)>;
          auto open = [&](const Iri& p) { os << "  <owl:ObjectProperty" << ref("about", p) << ">\n"; };
          auto child = [&](const char* tag, const Iri& target) {
            os << "    <" << tag << ref("resource", target) << "/>\n";
          };
          if constexpr (std::is_same_v<T, Domain>) {
            open(a.property);
            child("rdfs:domain", a.cls);
          } else if constexpr (std::is_same_v<T, Range>) {
            open(a.property);
            child("rdfs:range", a.cls);
          } else if constexpr (std::is_same_v<T, SubPropertyOf>) {
            open(a.sub);
            child("rdfs:subPropertyOf", a.super);
          } else if constexpr (std::is_same_v<T, EquivalentProperty>) {
            open(a.a);
            child("owl:equivalentProperty", a.b);
          } else if constexpr (std::is_same_v<T, InverseOf>) {
            open(a.a);
            child("owl:inverseOf", a.b);
          } else {
            open(a.property);
            child("rdf:type", Iri(std::string(kOwlNs) + to_string(a.kind)));
          }
          os << "  </owl:ObjectProperty>\n";
        },
        ax);
  }

  void write_axiom(std::ostream& os, const Assertion& ax) {
    if (const auto* c = std::get_if<ClassAssertion>(&ax)) {
      os << "  <rdf:Description" << ref("about", c->individual) << ">\n    <rdf:type"
         << ref("resource", c->cls) << "/>\n  </rdf:Description>\n";
      return;
    }
    const auto& p = std::get<PropertyAssertion>(ax);
    const std::string tag = qname(p.property);
    if (tag.empty()) {
      diags_.push_back(make_diagnostic(Severity::Error, codes::kUnsupportedExpression,
                                       "property IRI '" + p.property.str() +
                                           "' has no XML qualified-name form"));
      return;
    }
    os << "  <rdf:Description" << ref("about", p.subject) << ">\n    <" << tag;
    if (const auto* iri = std::get_if<Iri>(&p.object)) {
      os << ref("resource", *iri) << "/>\n";
    } else {
      literal_content(os, tag, std::get<Literal>(p.object));
    }
    os << "  </rdf:Description>\n";
  }
};

}  // namespace detail

/// Serializes a document to RDF/XML accepted by parse_document. Property IRIs
/// without a qualified-name form are reported and skipped.
inline std::string write_document(const OntologyDocument& doc, Diagnostics& diags) {
  return detail::DocumentWriter(doc, diags).run();
}

inline std::string write_document(const OntologyDocument& doc) {
  Diagnostics ignored;
  return write_document(doc, ignored);
}

}  // namespace owl2fl::owl
