#pragma once

// Short constructors for hand-written test inputs.

#include <string>

#include "kbx/canonical.h"
#include "kbx/core.h"
#include "kbx/syntax.h"
#include "oracle.h"

namespace t {

inline kbx::Role R(const std::string& s) {
  if (!s.empty() && s.back() == '-') return kbx::Role{s.substr(0, s.size() - 1), true};
  return kbx::Role{s, false};
}
inline kbx::Concept A(const std::string& s) { return kbx::Concept::atomic(s); }
inline kbx::Concept E(const std::string& s) { return kbx::Concept::some(R(s)); }

inline kbx::Term c(const std::string& s) { return kbx::Term::constant(s); }
inline kbx::Term n(const std::string& s) { return kbx::Term::labeled_null(s); }

inline kbx::Assertion fact(const std::string& a, const kbx::Term& x) {
  return kbx::Assertion::concept_fact(A(a), x);
}
inline kbx::Assertion fact(const std::string& r, const kbx::Term& x, const kbx::Term& y) {
  return kbx::Assertion::role_fact(R(r), x, y);
}

inline kbx::TBox tbox(const std::string& body) { return kbx::parse_tbox("tbox { " + body + " }"); }
inline kbx::KnowledgeBase kb(const std::string& tb, const std::string& ab) {
  return kbx::parse_kb("kb { tbox { " + tb + " } abox { " + ab + " } }");
}
inline kbx::Mapping mapping(const std::string& src, const std::string& tgt, const std::string& tb) {
  return kbx::parse_mapping("mapping { source { " + src + " } target { " + tgt + " } tbox { " + tb +
                            " } }");
}

// Parses a problem from its text pieces with role names resolved across them.
struct Problem {
  kbx::KnowledgeBase k;
  kbx::Mapping m;
};
inline Problem problem(const std::string& tb, const std::string& ab, const std::string& src,
                       const std::string& tgt, const std::string& t12) {
  Problem p{kb(tb, ab), mapping(src, tgt, t12)};
  kbx::resolve_together({&p.k.tbox}, {&p.k.abox}, &p.m);
  return p;
}

inline oracle::Structure to_oracle(const kbx::FiniteInterpretation& f) {
  oracle::Structure o;
  for (int x = 0; x < f.size(); ++x) {
    int e = o.add(f.names[x], f.fixed[x], 0);
    for (const auto& l : f.labels(x)) o.labels[e].insert(l);
  }
  for (const auto& [r, es] : f.roles)
    for (auto [x, y] : es) o.edges[r].insert({x, y});
  return o;
}

}  // namespace t
