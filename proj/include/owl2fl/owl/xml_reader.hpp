#pragma once

// Small non-validating XML reader for RDF/XML input: elements, attributes,
// character data, comments, CDATA, processing instructions and internal
// DOCTYPE entity declarations. Namespace prefixes are resolved against the
// in-scope xmlns declarations.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "owl2fl/diagnostic.hpp"
#include "owl2fl/owl/model.hpp"

namespace owl2fl::owl::xml {

struct Attribute {
  std::string ns;
  std::string local;
  std::string qname;
  std::string value;
};

struct Element {
  std::string ns;
  std::string local;
  std::string qname;
  std::vector<Attribute> attributes;
  std::vector<Element> children;
  std::string text;
  SourceLocation location;

  const Attribute* attribute(std::string_view ns_iri, std::string_view local_name) const {
    for (const auto& a : attributes) {
      if (a.ns == ns_iri && a.local == local_name) return &a;
    }
    return nullptr;
  }
  bool is(std::string_view ns_iri, std::string_view local_name) const {
    return ns == ns_iri && local == local_name;
  }
};

struct Document {
  Element root;
  /// Every xmlns:prefix declaration seen, first declaration wins.
  std::map<std::string, std::string> namespaces;
  /// Default namespace of the root element, if declared.
  std::optional<std::string> default_namespace;
  std::map<std::string, std::string> entities;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, SourceLocation loc)
      : std::runtime_error(what), location_(loc) {}
  SourceLocation location() const noexcept { return location_; }

 private:
  SourceLocation location_;
};

namespace detail {

inline const std::map<std::string, std::string>& well_known_namespaces() {
  static const std::map<std::string, std::string> m = {
      {"owl", kOwlNs}, {"rdf", kRdfNs}, {"rdfs", kRdfsNs}, {"xsd", kXsdNs}};
  return m;
}

inline void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

inline bool is_name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':' ||
         static_cast<unsigned char>(c) >= 0x80;
}
inline bool is_name_char(char c) {
  return is_name_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.';
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  Document read() {
    Document doc;
    skip_misc(doc);
    if (at_end() || peek() != '<') fail("expected root element");
    std::vector<std::map<std::string, std::string>> scopes;
    doc.root = read_element(doc, scopes);
    if (auto it = first_default_ns_; it) doc.default_namespace = *it;
    skip_misc(doc);
    if (!at_end()) fail("content after root element");
    return doc;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  std::optional<std::string> first_default_ns_;

  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t off = 0) const {
    return pos_ + off < text_.size() ? text_[pos_ + off] : '\0';
  }
  bool starts_with(std::string_view s) const { return text_.substr(pos_).starts_with(s); }
  SourceLocation here() const { return {line_, col_}; }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, here()); }

  void expect(std::string_view s) {
    if (!starts_with(s)) fail("expected '" + std::string(s) + "'");
    advance(s.size());
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  void skip_until(std::string_view terminator) {
    while (!at_end() && !starts_with(terminator)) advance();
    if (at_end()) fail("unterminated construct, expected '" + std::string(terminator) + "'");
    advance(terminator.size());
  }

  void skip_misc(Document& doc) {
    for (;;) {
      skip_ws();
      if (starts_with("<?")) {
        skip_until("?>");
      } else if (starts_with("<!--")) {
        skip_until("-->");
      } else if (starts_with("<!DOCTYPE")) {
        read_doctype(doc);
      } else {
        return;
      }
    }
  }

  std::string read_name() {
    if (at_end() || !is_name_start(peek())) fail("expected a name");
    const std::size_t start = pos_;
    while (!at_end() && is_name_char(peek())) advance();
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string read_quoted_raw() {
    const char q = peek();
    if (q != '"' && q != '\'') fail("expected quoted value");
    advance();
    const std::size_t start = pos_;
    while (!at_end() && peek() != q) advance();
    if (at_end()) fail("unterminated quoted value");
    std::string v(text_.substr(start, pos_ - start));
    advance();
    return v;
  }

  void read_doctype(Document& doc) {
    expect("<!DOCTYPE");
    skip_ws();
    read_name();
    for (;;) {
      skip_ws();
      if (at_end()) fail("unterminated DOCTYPE");
      if (peek() == '>') {
        advance();
        return;
      }
      if (peek() == '[') {
        advance();
        read_internal_subset(doc);
        continue;
      }
      if (peek() == '"' || peek() == '\'') {
        read_quoted_raw();
        continue;
      }
      read_name();
    }
  }

  void read_internal_subset(Document& doc) {
    for (;;) {
      skip_ws();
      if (at_end()) fail("unterminated DOCTYPE internal subset");
      if (peek() == ']') {
        advance();
        return;
      }
      if (starts_with("<!--")) {
        skip_until("-->");
      } else if (starts_with("<!ENTITY")) {
        advance(8);
        skip_ws();
        if (peek() == '%') fail("parameter entities are not supported");
        std::string name = read_name();
        skip_ws();
        std::string raw = read_quoted_raw();
        skip_ws();
        expect(">");
        doc.entities.emplace(std::move(name), expand_refs(raw, doc));
      } else if (starts_with("<!") || starts_with("<?")) {
        skip_until(">");
      } else {
        fail("unexpected content in DOCTYPE");
      }
    }
  }

  // Expands character and entity references. A '&' that does not start a
  // well-formed reference to a known entity is kept verbatim.
  std::string expand_refs(std::string_view raw, const Document& doc) const {
    std::string out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] != '&') {
        out += raw[i];
        continue;
      }
      const auto semi = raw.find(';', i + 1);
      const auto name = semi == std::string_view::npos ? std::string_view{}
                                                       : raw.substr(i + 1, semi - i - 1);
      bool plain = !name.empty();
      for (char c : name) {
        if (!is_name_char(c) && c != '#') plain = false;
      }
      if (!plain) {
        out += '&';
        continue;
      }
      if (name[0] == '#') {
        std::uint32_t cp = 0;
        try {
          cp = name.size() > 1 && (name[1] == 'x' || name[1] == 'X')
                   ? static_cast<std::uint32_t>(std::stoul(std::string(name.substr(2)), nullptr, 16))
                   : static_cast<std::uint32_t>(std::stoul(std::string(name.substr(1))));
        } catch (const std::exception&) {
          out += '&';
          continue;
        }
        append_utf8(out, cp);
      } else if (name == "lt") {
        out += '<';
      } else if (name == "gt") {
        out += '>';
      } else if (name == "amp") {
        out += '&';
      } else if (name == "quot") {
        out += '"';
      } else if (name == "apos") {
        out += '\'';
      } else if (auto it = doc.entities.find(std::string(name)); it != doc.entities.end()) {
        out += it->second;
      } else {
        out += '&';
        continue;
      }
      i = semi;
    }
    return out;
  }

  static std::pair<std::string, std::string> split_qname(const std::string& q) {
    const auto c = q.find(':');
    if (c == std::string::npos) return {"", q};
    return {q.substr(0, c), q.substr(c + 1)};
  }

  std::string resolve_prefix(const std::string& prefix,
                             const std::vector<std::map<std::string, std::string>>& scopes,
                             SourceLocation loc) const {
    if (prefix == "xml") return kXmlNs;
    for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
      if (auto f = it->find(prefix); f != it->end()) return f->second;
    }
    if (prefix.empty()) return "";
    const auto& wk = well_known_namespaces();
    if (auto f = wk.find(prefix); f != wk.end()) return f->second;
    throw ParseError("undeclared namespace prefix '" + prefix + "'", loc);
  }

  Element read_element(Document& doc, std::vector<std::map<std::string, std::string>>& scopes) {
    Element el;
    el.location = here();
    expect("<");
    el.qname = read_name();

    struct RawAttr {
      std::string qname;
      std::string value;
    };
    std::vector<RawAttr> raw;
    std::map<std::string, std::string> scope;
    bool empty = false;
    for (;;) {
      skip_ws();
      if (starts_with("/>")) {
        advance(2);
        empty = true;
        break;
      }
      if (peek() == '>') {
        advance();
        break;
      }
      if (at_end()) fail("unterminated start tag");
      std::string name = read_name();
      skip_ws();
      expect("=");
      skip_ws();
      std::string value = expand_refs(read_quoted_raw(), doc);
      if (name == "xmlns") {
        scope[""] = value;
        if (!first_default_ns_) first_default_ns_ = value;
      } else if (name.starts_with("xmlns:")) {
        const std::string p = name.substr(6);
        scope[p] = value;
        doc.namespaces.emplace(p, value);
      } else {
        raw.push_back({std::move(name), std::move(value)});
      }
    }
    scopes.push_back(std::move(scope));

    auto [prefix, local] = split_qname(el.qname);
    el.ns = resolve_prefix(prefix, scopes, el.location);
    el.local = local;
    for (auto& a : raw) {
      auto [ap, al] = split_qname(a.qname);
      Attribute attr;
      attr.ns = ap.empty() ? std::string() : resolve_prefix(ap, scopes, el.location);
      attr.local = al;
      attr.qname = std::move(a.qname);
      attr.value = std::move(a.value);
      el.attributes.push_back(std::move(attr));
    }

    if (!empty) {
      for (;;) {
        if (at_end()) fail("unterminated element <" + el.qname + ">");
        if (starts_with("</")) {
          advance(2);
          const std::string close = read_name();
          if (close != el.qname) fail("mismatched end tag </" + close + ">, expected </" + el.qname + ">");
          skip_ws();
          expect(">");
          break;
        }
        if (starts_with("<!--")) {
          skip_until("-->");
        } else if (starts_with("<![CDATA[")) {
          advance(9);
          const std::size_t start = pos_;
          skip_until("]]>");
          el.text += std::string(text_.substr(start, pos_ - 3 - start));
        } else if (starts_with("<?")) {
          skip_until("?>");
        } else if (peek() == '<') {
          el.children.push_back(read_element(doc, scopes));
        } else {
          const std::size_t start = pos_;
          while (!at_end() && peek() != '<') advance();
          el.text += expand_refs(text_.substr(start, pos_ - start), doc);
        }
      }
    }
    scopes.pop_back();
    return el;
  }
};

}  // namespace detail

/// Throws ParseError on malformed input.
inline Document read(std::string_view text) { return detail::Reader(text).read(); }

}  // namespace owl2fl::owl::xml
