#pragma once

#include <compare>
#include <set>
#include <string>
#include <vector>

namespace kbx {

struct Role {
  std::string name;
  bool inv = false;

  Role inverse() const { return Role{name, !inv}; }
  std::string str() const { return inv ? name + "-" : name; }

  auto operator<=>(const Role&) const = default;
  bool operator==(const Role&) const = default;
};

inline Role inverse(const Role& r) { return r.inverse(); }

// Atomic concept A, or the unqualified existential exists R.
struct Concept {
  bool exists = false;
  std::string name;  // concept name, or role name when exists
  bool inv = false;  // only meaningful when exists

  static Concept atomic(std::string n) { return Concept{false, std::move(n), false}; }
  static Concept some(const Role& r) { return Concept{true, r.name, r.inv}; }

  Role role() const { return Role{name, inv}; }
  std::string str() const { return exists ? "exists " + role().str() : name; }

  auto operator<=>(const Concept&) const = default;
  bool operator==(const Concept&) const = default;
};

struct Axiom {
  bool is_role = false;
  Concept lc, rc;
  Role lr, rr;
  bool negated = false;

  static Axiom concept_incl(Concept l, Concept r, bool neg = false) {
    Axiom a;
    a.lc = std::move(l);
    a.rc = std::move(r);
    a.negated = neg;
    return a;
  }
  static Axiom role_incl(Role l, Role r, bool neg = false) {
    Axiom a;
    a.is_role = true;
    a.lr = std::move(l);
    a.rr = std::move(r);
    a.negated = neg;
    return a;
  }

  std::string str() const;

  auto operator<=>(const Axiom&) const = default;
  bool operator==(const Axiom&) const = default;
};

using TBox = std::set<Axiom>;

struct Term {
  std::string name;
  bool null = false;

  static Term constant(std::string n) { return Term{std::move(n), false}; }
  static Term labeled_null(std::string n) { return Term{std::move(n), true}; }
  std::string str() const { return null ? "_" + name : name; }

  auto operator<=>(const Term&) const = default;
  bool operator==(const Term&) const = default;
};

struct Assertion {
  bool is_role = false;
  Concept c;
  Role r;
  Term t1, t2;

  static Assertion concept_fact(Concept c, Term t) {
    Assertion a;
    a.c = std::move(c);
    a.t1 = std::move(t);
    return a;
  }
  static Assertion role_fact(Role r, Term t1, Term t2) {
    Assertion a;
    a.is_role = true;
    a.r = std::move(r);
    a.t1 = std::move(t1);
    a.t2 = std::move(t2);
    return a;
  }

  // R-(u,v) is stored as R(v,u); concept facts are left alone.
  Assertion normalized() const;
  std::string str() const;

  auto operator<=>(const Assertion&) const = default;
  bool operator==(const Assertion&) const = default;
};

struct ABox {
  std::set<Assertion> assertions;

  bool extended() const;
  std::set<Term> terms() const;
  void add(const Assertion& a) { assertions.insert(a.normalized()); }

  bool operator==(const ABox&) const = default;
};

struct KnowledgeBase {
  TBox tbox;
  ABox abox;

  bool operator==(const KnowledgeBase&) const = default;
};

struct Signature {
  std::set<std::string> concepts;
  std::set<std::string> roles;

  bool has_concept(const std::string& n) const { return concepts.count(n) > 0; }
  bool has_role(const std::string& n) const { return roles.count(n) > 0; }
  bool has_name(const std::string& n) const { return has_concept(n) || has_role(n); }
  // Basic concept / role over this signature. Name kinds are not checked here:
  // the text format lists signature names without saying which are roles.
  bool covers(const Concept& c) const { return has_name(c.name); }
  bool covers(const Role& r) const { return has_name(r.name); }
  bool covers(const Axiom& a) const;
  bool covers(const Assertion& a) const;

  Signature unite(const Signature& o) const;
  bool empty() const { return concepts.empty() && roles.empty(); }

  bool operator==(const Signature&) const = default;
};

struct Mapping {
  Signature sigma1;
  Signature sigma2;
  TBox t12;

  bool operator==(const Mapping&) const = default;
};

std::vector<std::string> validate_mapping(const Mapping& m);

Signature signature_of(const TBox& t);
Signature signature_of(const ABox& a);
Signature signature_of(const Mapping& m);
Signature signature_of(const KnowledgeBase& k);

TBox positive_part(const TBox& t);
TBox negative_part(const TBox& t);
TBox unite(const TBox& a, const TBox& b);

// Assertions over sig only.
ABox restrict_abox(const ABox& a, const Signature& sig);

}  // namespace kbx
