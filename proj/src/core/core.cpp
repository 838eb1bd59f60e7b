#include "kbx/core.h"

namespace kbx {

std::string Axiom::str() const {
  if (is_role && !lr.inv && !rr.inv)
    return "role " + lr.str() + " [= " + (negated ? "not " : "") + rr.str();
  std::string lhs = is_role ? lr.str() : lc.str();
  std::string rhs = is_role ? rr.str() : rc.str();
  return lhs + " [= " + (negated ? "not " : "") + rhs;
}

Assertion Assertion::normalized() const {
  if (!is_role || !r.inv) return *this;
  return role_fact(r.inverse(), t2, t1);
}

std::string Assertion::str() const {
  if (is_role) return r.str() + "(" + t1.str() + "," + t2.str() + ")";
  return c.str() + "(" + t1.str() + ")";
}

bool ABox::extended() const {
  for (const auto& a : assertions) {
    if (a.t1.null || (a.is_role && a.t2.null)) return true;
  }
  return false;
}

std::set<Term> ABox::terms() const {
  std::set<Term> out;
  for (const auto& a : assertions) {
    out.insert(a.t1);
    if (a.is_role) out.insert(a.t2);
  }
  return out;
}

bool Signature::covers(const Axiom& a) const {
  if (a.is_role) return covers(a.lr) && covers(a.rr);
  return covers(a.lc) && covers(a.rc);
}

bool Signature::covers(const Assertion& a) const {
  return a.is_role ? covers(a.r) : covers(a.c);
}

Signature Signature::unite(const Signature& o) const {
  Signature s = *this;
  s.concepts.insert(o.concepts.begin(), o.concepts.end());
  s.roles.insert(o.roles.begin(), o.roles.end());
  return s;
}

namespace {

void note(Signature& s, const Concept& c) {
  if (c.exists)
    s.roles.insert(c.name);
  else
    s.concepts.insert(c.name);
}

bool lhs_over(const Signature& s, const Axiom& a) {
  return a.is_role ? s.covers(a.lr) : s.covers(a.lc);
}
bool rhs_over(const Signature& s, const Axiom& a) {
  return a.is_role ? s.covers(a.rr) : s.covers(a.rc);
}

}  // namespace

Signature signature_of(const TBox& t) {
  Signature s;
  for (const auto& a : t) {
    if (a.is_role) {
      s.roles.insert(a.lr.name);
      s.roles.insert(a.rr.name);
    } else {
      note(s, a.lc);
      note(s, a.rc);
    }
  }
  return s;
}

Signature signature_of(const ABox& a) {
  Signature s;
  for (const auto& x : a.assertions) {
    if (x.is_role)
      s.roles.insert(x.r.name);
    else
      note(s, x.c);
  }
  return s;
}

Signature signature_of(const Mapping& m) {
  return m.sigma1.unite(m.sigma2).unite(signature_of(m.t12));
}

Signature signature_of(const KnowledgeBase& k) {
  return signature_of(k.tbox).unite(signature_of(k.abox));
}

std::vector<std::string> validate_mapping(const Mapping& m) {
  std::vector<std::string> out;
  for (const auto& n : m.sigma1.concepts)
    if (m.sigma2.has_name(n)) out.push_back("signature overlap: " + n);
  for (const auto& n : m.sigma1.roles)
    if (m.sigma2.has_name(n) && !m.sigma1.has_concept(n)) out.push_back("signature overlap: " + n);
  for (const auto& n : m.sigma1.concepts)
    if (m.sigma1.has_role(n)) out.push_back("name used as concept and role: " + n);
  for (const auto& n : m.sigma2.concepts)
    if (m.sigma2.has_role(n)) out.push_back("name used as concept and role: " + n);
  for (const auto& a : m.t12) {
    if (lhs_over(m.sigma2, a) && !lhs_over(m.sigma1, a))
      out.push_back("direction violation: " + a.str());
    else if (!lhs_over(m.sigma1, a))
      out.push_back("lhs not over source signature: " + a.str());
    if (!rhs_over(m.sigma2, a)) out.push_back("rhs not over target signature: " + a.str());
  }
  return out;
}

TBox positive_part(const TBox& t) {
  TBox out;
  for (const auto& a : t)
    if (!a.negated) out.insert(a);
  return out;
}

TBox negative_part(const TBox& t) {
  TBox out;
  for (const auto& a : t)
    if (a.negated) out.insert(a);
  return out;
}

TBox unite(const TBox& a, const TBox& b) {
  TBox out = a;
  out.insert(b.begin(), b.end());
  return out;
}

ABox restrict_abox(const ABox& a, const Signature& sig) {
  ABox out;
  for (const auto& x : a.assertions)
    if (sig.covers(x)) out.assertions.insert(x);
  return out;
}

}  // namespace kbx
