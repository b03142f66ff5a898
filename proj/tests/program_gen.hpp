#pragma once

// Random stratified programs over isa/sub/attr and a brute-force evaluator
// for them, shared by the engine tests and the acceptance run. Programs use
// at most 30 facts, 10 rules and 12 constants.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "owl2fl/flogic/parser.hpp"

namespace owl2fl::test {

// Naive reference evaluator for the generated programs: every rule is tried
// under every assignment of its variables to program constants, and the
// structural rules are applied inside each stratum, until nothing changes.
struct NaiveModel {
  std::set<std::pair<std::string, std::string>> isa, sub;
  std::set<std::tuple<std::string, std::string, std::string>> attr;
};

struct GenLit {
  enum Kind { Isa, Attr } kind;
  bool negated;
  std::string a, b, c;  // variables start with '?'
};
struct GenRule {
  GenLit head;
  std::vector<GenLit> body;
  int stratum;
};

struct GenProgram {
  std::vector<std::string> facts;
  std::vector<GenRule> rules;
  std::vector<std::string> constants;

  std::string text() const {
    std::string out;
    for (const auto& f : facts) out += f + ".\n";
    auto show = [](const GenLit& l) {
      std::string s = l.kind == GenLit::Isa ? l.a + ":" + l.b : l.a + "[" + l.b + " -> " + l.c + "]";
      return l.negated ? "\\naf " + s : s;
    };
    for (const auto& r : rules) {
      out += show(r.head) + " :- ";
      for (std::size_t i = 0; i < r.body.size(); ++i) out += (i ? ", " : "") + show(r.body[i]);
      out += ".\n";
    }
    return out;
  }
};

inline GenProgram generate(std::mt19937& rng) {
  auto pick = [&](const std::vector<std::string>& v) { return v[rng() % v.size()]; };
  const std::vector<std::string> low = {"l0", "l1", "l2"}, high = {"h0", "h1"}, inds = {"a", "b", "c", "d", "e"},
                                 props = {"p", "q"}, vars = {"?X", "?Y"};
  GenProgram g;
  const int nfacts = 1 + static_cast<int>(rng() % 30);
  for (int i = 0; i < nfacts; ++i) {
    switch (rng() % 4) {
      case 0:
      case 1: g.facts.push_back(pick(inds) + ":" + pick(low)); break;
      case 2: g.facts.push_back(pick(inds) + "[" + pick(props) + " -> " + pick(inds) + "]"); break;
      default: {
        // Subclass facts go upwards only, so negation never sees a cycle.
        const bool to_high = rng() % 2;
        auto a = pick(low);
        auto b = to_high ? pick(high) : pick(low);
        if (!to_high && a >= b) std::swap(a, b);
        if (a != b) g.facts.push_back(a + "::" + b);
      }
    }
  }
  const int nrules = static_cast<int>(rng() % 11);
  for (int i = 0; i < nrules; ++i) {
    GenRule r;
    r.stratum = static_cast<int>(rng() % 2);
    const auto x = std::string("?X");
    r.body.push_back({GenLit::Isa, false, x, pick(low), ""});
    if (rng() % 2) r.body.push_back({GenLit::Attr, false, x, pick(props), "?Y"});
    if (r.stratum == 1 && rng() % 3 != 0) r.body.push_back({GenLit::Isa, true, pick(vars), pick(low), ""});
    const bool has_y = r.body.size() > 1 && r.body[1].kind == GenLit::Attr;
    std::vector<std::string> hv = has_y ? vars : std::vector<std::string>{x};
    if (r.body.back().negated && !has_y) r.body.back().a = x;
    if (rng() % 3 == 0) {
      r.head = {GenLit::Attr, false, pick(hv), r.stratum ? "q" : "p", pick(hv)};
      // Attribute heads would feed the negated low classes through _object;
      // keep them in the lowest layer.
      r.stratum = 0;
      r.body.erase(std::remove_if(r.body.begin(), r.body.end(), [](const GenLit& l) { return l.negated; }),
                   r.body.end());
    } else {
      r.head = {GenLit::Isa, false, pick(hv), r.stratum ? pick(high) : pick(low), ""};
    }
    g.rules.push_back(r);
  }
  for (const auto& c : {low, high, inds, props}) g.constants.insert(g.constants.end(), c.begin(), c.end());
  return g;
}

inline std::set<std::string> naive(const GenProgram& g) {
  NaiveModel m;
  auto add_obj = [&](const std::string& x) { m.isa.emplace(x, "_object"); };
  for (const auto& f : g.facts) {
    auto lit = flogic::parse_program(f + ".").program.rules.at(0).head;
    if (const auto* i = lit.as<flogic::IsA>()) m.isa.emplace(i->obj.name, i->cls.atom.name);
    if (const auto* s = lit.as<flogic::SubClass>()) m.sub.emplace(s->sub.atom.name, s->super.atom.name);
    if (const auto* a = lit.as<flogic::AttrValue>()) m.attr.emplace(a->obj.name, a->prop.name, a->value.name);
  }
  auto truth = [&](const GenLit& l, const std::map<std::string, std::string>& env) {
    auto v = [&](const std::string& s) { return s[0] == '?' ? env.at(s) : s; };
    const bool in = l.kind == GenLit::Isa ? m.isa.count({v(l.a), v(l.b)}) > 0
                                          : m.attr.count({v(l.a), v(l.b), v(l.c)}) > 0;
    return l.negated ? !in : in;
  };
  for (int stratum = 0; stratum < 2; ++stratum) {
    for (bool changed = true; changed;) {
      const auto before = std::make_tuple(m.isa.size(), m.sub.size(), m.attr.size());
      for (const auto& [x, c] : std::set(m.isa)) add_obj(x);
      for (const auto& [x, p, y] : std::set(m.attr)) {
        add_obj(x);
        add_obj(y);
      }
      for (const auto& [a, b] : std::set(m.sub)) {
        for (const auto& [c, d] : std::set(m.sub)) {
          if (b == c) m.sub.emplace(a, d);
        }
        for (const auto& [x, c] : std::set(m.isa)) {
          if (c == a) m.isa.emplace(x, b);
        }
      }
      for (const auto& r : g.rules) {
        if (r.stratum != stratum) continue;
        for (const auto& cx : g.constants) {
          for (const auto& cy : g.constants) {
            const std::map<std::string, std::string> env = {{"?X", cx}, {"?Y", cy}};
            // ?X always occurs positively; ?Y only when an attr literal binds it.
            const bool uses_y = std::any_of(r.body.begin(), r.body.end(), [](const GenLit& l) {
              return !l.negated && l.kind == GenLit::Attr;
            });
            if (!uses_y && cy != g.constants[0]) continue;
            if (!std::all_of(r.body.begin(), r.body.end(), [&](const GenLit& l) { return truth(l, env); })) continue;
            auto v = [&](const std::string& s) { return s[0] == '?' ? env.at(s) : s; };
            if (r.head.kind == GenLit::Isa) m.isa.emplace(v(r.head.a), r.head.b);
            else m.attr.emplace(v(r.head.a), r.head.b, v(r.head.c));
          }
        }
      }
      changed = before != std::make_tuple(m.isa.size(), m.sub.size(), m.attr.size());
    }
  }
  std::set<std::string> out;
  for (const auto& [x, c] : m.isa) out.insert(x + ":" + c);
  for (const auto& [a, b] : m.sub) out.insert(a + "::" + b);
  for (const auto& [x, p, y] : m.attr) out.insert(x + "[" + p + " -> " + y + "]");
  return out;
}

}  // namespace owl2fl::test
