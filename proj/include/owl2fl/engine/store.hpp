#pragma once

// Ground fact storage for the engine: interned terms and append-only
// relations with per-column indexes. Rows are never removed, so a range of
// row numbers identifies the facts added during one evaluation round.

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "owl2fl/flogic/ast.hpp"

namespace owl2fl::engine {

using Id = std::uint32_t;
using Tuple = std::vector<Id>;

/// Absent optional column (the `via` class of an ordinary signature).
inline constexpr Id kNone = 0;
inline constexpr Id kUnbound = std::numeric_limits<Id>::max();

class TermTable {
 public:
  TermTable() { terms_.push_back(flogic::sym("")); }

  Id intern(const flogic::Term& t) {
    if (auto it = ids_.find(t); it != ids_.end()) return it->second;
    const auto id = static_cast<Id>(terms_.size());
    terms_.push_back(t);
    ids_.emplace(t, id);
    return id;
  }
  std::optional<Id> find(const flogic::Term& t) const {
    if (auto it = ids_.find(t); it != ids_.end()) return it->second;
    return std::nullopt;
  }
  const flogic::Term& term(Id id) const { return terms_.at(id); }
  std::size_t size() const { return terms_.size(); }

 private:
  std::vector<flogic::Term> terms_;
  std::map<flogic::Term, Id> ids_;
};

class Relation {
 public:
  explicit Relation(std::size_t arity = 0) : arity_(arity), index_(arity) {}

  bool insert(const Tuple& t) {
    if (!present_.insert(t).second) return false;
    const auto row = static_cast<std::uint32_t>(rows_.size());
    rows_.push_back(t);
    for (std::size_t c = 0; c < arity_; ++c) index_[c][t[c]].push_back(row);
    return true;
  }
  bool contains(const Tuple& t) const { return present_.count(t) > 0; }

  std::size_t arity() const { return arity_; }
  std::size_t size() const { return rows_.size(); }
  const Tuple& row(std::size_t i) const { return rows_[i]; }

  /// Row numbers whose column `c` holds `v`, ascending.
  const std::vector<std::uint32_t>* rows_with(std::size_t c, Id v) const {
    const auto it = index_[c].find(v);
    return it == index_[c].end() ? nullptr : &it->second;
  }

 private:
  std::size_t arity_;
  std::vector<Tuple> rows_;
  std::set<Tuple> present_;
  std::vector<std::unordered_map<Id, std::vector<std::uint32_t>>> index_;
};

/// Relation names. Predicates are keyed `p:name/arity`.
namespace rel {
inline const std::string kIsa = "isa";        // (obj, cls)
inline const std::string kSub = "sub";        // (sub, super)
inline const std::string kAttr = "attr";      // (obj, prop, value)
inline const std::string kSig = "sig";        // (cls, via, prop, low, high, range)
inline const std::string kEquiv = "equiv";    // (a, b)
inline std::string pred(const std::string& name, std::size_t arity) {
  return "p:" + name + "/" + std::to_string(arity);
}
inline std::size_t arity(const std::string& r) {
  if (r == kIsa || r == kSub || r == kEquiv) return 2;
  if (r == kAttr) return 3;
  if (r == kSig) return 6;
  return std::stoul(r.substr(r.rfind('/') + 1));
}
}  // namespace rel

class FactStore {
 public:
  Relation& relation(const std::string& name) {
    auto it = relations_.find(name);
    if (it == relations_.end()) it = relations_.emplace(name, Relation(rel::arity(name))).first;
    return it->second;
  }
  const Relation* find(const std::string& name) const {
    auto it = relations_.find(name);
    return it == relations_.end() ? nullptr : &it->second;
  }
  const std::map<std::string, Relation>& relations() const { return relations_; }

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& [name, r] : relations_) n += r.size();
    return n;
  }

  std::map<std::string, std::size_t> sizes() const {
    std::map<std::string, std::size_t> out;
    for (const auto& [name, r] : relations_) out[name] = r.size();
    return out;
  }

 private:
  std::map<std::string, Relation> relations_;
};

}  // namespace owl2fl::engine
