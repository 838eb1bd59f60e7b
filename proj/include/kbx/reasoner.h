#pragma once

#include <map>
#include <set>
#include <vector>

#include "kbx/core.h"

namespace kbx {

struct WitnessClass {
  Role representative;
  std::vector<Role> members;  // sorted by textual form
};

// Closures of one TBox over a finite universe: the names of the TBox plus an
// optional extra signature (ABox names, mapping names). Symbols outside the
// universe are related by reflexivity only.
class Reasoner {
 public:
  explicit Reasoner(const TBox& t, const Signature& extra = {});

  const TBox& tbox() const { return tbox_; }
  const Signature& universe() const { return universe_; }

  bool role_sub(const Role& r, const Role& s) const;
  bool concept_sub(const Concept& b, const Concept& c) const;

  // All basic roles / concepts of the universe, in a fixed order.
  const std::vector<Role>& roles() const { return roles_; }
  const std::vector<Concept>& concepts() const { return concepts_; }

  std::set<Concept> close(const std::set<Concept>& seed) const;
  std::set<Role> close(const std::set<Role>& seed) const;
  std::set<Concept> supers(const Concept& b) const { return close(std::set<Concept>{b}); }
  std::set<Role> supers(const Role& r) const { return close(std::set<Role>{r}); }

  // Clash inside a closed concept type / a closed edge type (x,y).
  bool type_clash(const std::set<Concept>& closed) const;
  bool edge_clash(const std::set<Role>& closed) const;

  // True iff the anonymous part hanging below a witness for exists R (type
  // cl{exists R-}, edge cl{R}) contains no clash.
  bool witness_clean(const Role& r) const;

  // Consistency of a KB whose ABox has the given closed types at its terms and
  // closed edge types at its term pairs, evaluated on the regular chase.
  bool clean(const std::vector<std::set<Concept>>& types,
             const std::vector<std::set<Role>>& edges) const;

  bool pair_consistent(const Concept& b, const Concept& c) const;
  bool pair_consistent(const Role& r, const Role& q) const;

  const std::vector<std::pair<Concept, Concept>>& concept_disjoint() const { return cdis_; }
  const std::vector<std::pair<Role, Role>>& role_disjoint() const { return rdis_; }

  // Witness classes [R] = mutual role_sub; classes_[i].members sorted.
  const std::vector<WitnessClass>& classes() const { return classes_; }
  int class_of(const Role& r) const;
  // [R] <= [S] iff R role_sub S.
  bool class_leq(int a, int b) const;

 private:
  int rix(const Role& r) const;
  int cix(const Concept& c) const;

  TBox tbox_;
  Signature universe_;
  std::vector<Role> roles_;
  std::vector<Concept> concepts_;
  std::map<Role, int> rmap_;
  std::map<Concept, int> cmap_;
  std::vector<std::vector<char>> rsub_, csub_;
  std::vector<std::pair<Concept, Concept>> cdis_;
  std::vector<std::pair<Role, Role>> rdis_;
  std::vector<char> wclean_;
  std::vector<WitnessClass> classes_;
  std::vector<int> class_of_;
};

bool derives_concept(const TBox& t, const Concept& b, const Concept& c);
bool derives_role(const TBox& t, const Role& r, const Role& q);
bool pair_consistent_concepts(const TBox& t, const Concept& b, const Concept& c);
bool pair_consistent_roles(const TBox& t, const Role& r, const Role& q);
bool kb_consistent(const KnowledgeBase& k);
bool kb_consistent(const Reasoner& rs, const ABox& a);
bool tbox_trivial(const TBox& t);

// Basic concepts B with A |= B(t) for each term (asserted, or exists R from a
// role assertion), and role sets per ordered term pair (u,v) with R(u,v).
std::map<Term, std::set<Concept>> asserted_types(const ABox& a);
std::map<std::pair<Term, Term>, std::set<Role>> asserted_edges(const ABox& a);

}  // namespace kbx
