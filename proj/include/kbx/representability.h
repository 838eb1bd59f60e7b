#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kbx/canonical.h"
#include "kbx/homomorphism.h"

namespace kbx {

// Boolean conjunctive query; terms starting with '?' are variables, the rest
// are constants.
struct QueryAtom {
  bool role = false;
  std::string name;
  std::string t1, t2;
};

struct BooleanCQ {
  std::vector<QueryAtom> atoms;
  std::string str() const;
};

struct Counterexample {
  ABox abox;
  BooleanCQ query;
  // True when the source side <T1 u T12, A1> entails the query and the target
  // side does not; false for the converse.
  bool source_entails = true;
  std::string condition;  // which condition failed
  std::string piece;      // the ABox with constants read as nulls
};

struct GeneratingPass {
  std::vector<Concept> chain;                // C0 = B, Ci = exists Qi- for i >= 1
  std::vector<std::set<Concept>> labels;     // L(Ci)
  std::vector<std::set<Role>> edge_labels;   // L(Ci, Ci+1)
  // The Xi concept / role that supports each label (same shape as above).
  std::vector<std::map<Concept, Concept>> support;
  std::vector<std::map<Role, Role>> edge_support;
  std::string str() const;
};

struct RepresentationVerdict {
  Tri answer = Tri::Unknown;
  std::optional<Counterexample> counterexample;
  std::optional<TBox> synthesized;
  std::string reason;
};

// Shared closures and one-assertion canonical models for (M, T1).
class RepresentationContext {
 public:
  RepresentationContext(const Mapping& m, const TBox& t1);

  const Mapping& mapping() const { return m_; }
  const TBox& t1() const { return t1_; }

  // Basic concepts / roles over Sigma (source) and Xi (target).
  const std::vector<Concept>& source_concepts() const { return sc_; }
  const std::vector<Role>& source_roles() const { return sr_; }
  const std::vector<Concept>& target_concepts() const { return tc_; }
  const std::vector<Role>& target_roles() const { return tr_; }

  const Reasoner& r1() const { return r1_; }
  const Reasoner& r112() const { return r112_; }
  const Reasoner& r12() const { return r12_; }

  bool t1_consistent(const Concept& b) const { return r1_.pair_consistent(b, b); }
  bool t1_consistent(const Role& r) const { return r1_.pair_consistent(r, r); }
  bool joint_consistent(const Concept& b) const { return r112_.pair_consistent(b, b); }
  bool joint_consistent(const Role& r) const { return r112_.pair_consistent(r, r); }

  // U of <T1+ u T12+, {B(o)}>; o is term 0.
  const CanonicalStructure& source_model(const Concept& b) const;

  bool closed_under_inclusion(const Concept& x, const Concept& y) const;
  bool closed_under_inclusion(const Role& x, const Role& y) const;
  bool closed_under_disjointness(const Concept& x, const Concept& y) const;
  bool closed_under_disjointness(const Role& x, const Role& y) const;

  // Xi concept C' with T12 |- c <= C' and closure between C' and b, if any.
  std::optional<Concept> inclusion_support(const Concept& c, const Concept& b) const;
  std::optional<Role> inclusion_support(const Role& q, const Role& r) const;

  // Generating pass for B matching the witness class `cls` of source_model(B).
  std::optional<GeneratingPass> find_generating_pass(const Concept& b, int cls) const;

 private:
  Mapping m_;
  TBox t1_;
  Signature all_;
  Reasoner r1_, r112_, r12_;
  std::vector<Concept> sc_, tc_;
  std::vector<Role> sr_, tr_;
  mutable std::map<Concept, std::unique_ptr<CanonicalStructure>> models_;
  mutable std::map<std::pair<Concept, Concept>, bool> incl_c_, disj_c_;
  mutable std::map<std::pair<Role, Role>, bool> incl_r_, disj_r_;
};

bool closed_under_inclusion(const Mapping& m, const TBox& t1, const Concept& x, const Concept& y);
bool closed_under_inclusion(const Mapping& m, const TBox& t1, const Role& x, const Role& y);
bool closed_under_disjointness(const Mapping& m, const TBox& t1, const Concept& x, const Concept& y);
bool closed_under_disjointness(const Mapping& m, const TBox& t1, const Role& x, const Role& y);

// Throws std::invalid_argument when o does not generate a witness for r.
std::optional<GeneratingPass> find_generating_pass(const Mapping& m, const TBox& t1,
                                                   const Concept& b, const Role& r);

RepresentationVerdict is_ucq_representation(const Mapping& m, const TBox& t1, const TBox& t2);
RepresentationVerdict representation_exists(const Mapping& m, const TBox& t1);
std::optional<TBox> synthesize_representation(const Mapping& m, const TBox& t1);

}  // namespace kbx
