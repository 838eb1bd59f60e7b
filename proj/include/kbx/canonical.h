#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "kbx/core.h"
#include "kbx/reasoner.h"

namespace kbx {

class InconsistentKB : public std::runtime_error {
 public:
  InconsistentKB() : std::runtime_error("knowledge base is inconsistent") {}
};

class InvalidPath : public std::runtime_error {
 public:
  explicit InvalidPath(const std::string& m) : std::runtime_error(m) {}
};

struct FiniteInterpretation {
  std::vector<std::string> names;
  std::vector<char> fixed;  // 1 for constants (mapped to themselves)
  std::map<std::string, int> constants;
  std::map<std::string, std::set<int>> concepts;
  std::map<std::string, std::set<std::pair<int, int>>> roles;

  int size() const { return static_cast<int>(names.size()); }
  int add_element(const std::string& name, bool constant);
  // Returns the element of constant c, creating an isolated one if needed.
  int ensure_constant(const std::string& c);
  void add_concept(const std::string& a, int e) { concepts[a].insert(e); }
  void add_role(const Role& r, int x, int y);
  bool has_concept(const std::string& a, int e) const;
  bool has_role(const Role& r, int x, int y) const;
  // Atomic concept names holding at e.
  std::set<std::string> labels(int e) const;
  FiniteInterpretation reduct(const Signature& sig) const;
  // Assertions over constants and element names (non-constants as nulls).
  ABox to_abox() const;
};

// An element of the canonical model: a constant followed by witness classes.
struct Path {
  int root = 0;
  std::vector<int> tail;  // class ids of the reasoner

  auto operator<=>(const Path&) const = default;
  bool operator==(const Path&) const = default;
};

class CanonicalStructure {
 public:
  // Throws InconsistentKB. `extra` widens the reasoner universe.
  explicit CanonicalStructure(const KnowledgeBase& k, const Signature& extra = {});

  const KnowledgeBase& kb() const { return kb_; }
  const Reasoner& reasoner() const { return rs_; }

  // States: 0..nc-1 are the ABox terms, nc+i the witness class i.
  int num_constants() const { return static_cast<int>(terms_.size()); }
  int num_states() const { return num_constants() + static_cast<int>(rs_.classes().size()); }
  bool is_constant_state(int s) const { return s < num_constants(); }
  int class_state(int cls) const { return num_constants() + cls; }
  int state_class(int s) const { return s - num_constants(); }
  const Term& term(int i) const { return terms_[i]; }
  int term_index(const Term& t) const;
  int term_index(const std::string& constant) const;

  // Child classes of a state under the generating relation.
  const std::vector<int>& gen(int state) const { return gen_[state]; }
  // Witness states reachable from some constant, in BFS order.
  const std::vector<int>& reachable_states() const { return reachable_; }
  // Shortest path ending in the given witness state.
  Path shortest_path_to(int state) const;

  const std::set<Concept>& state_type(int s) const { return types_[s]; }
  // rtype(sigma, sigma.w[R]) for the child class.
  const std::set<Role>& class_rtype(int cls) const { return crtype_[cls]; }
  // Roles R with K |- R(a,b) for terms a,b (indices); empty when none.
  const std::set<Role>& const_rtype(int a, int b) const;
  // Ordered pairs of terms with a nonempty edge type.
  const std::map<std::pair<int, int>, std::set<Role>>& const_edges() const { return cedge_; }

  std::set<Concept> ttype(const Path& p) const;
  std::set<Role> rtype(const Path& p, const Path& q) const;
  int state_of(const Path& p) const;
  std::string path_name(const Path& p) const;
  bool valid(const Path& p) const;

 private:
  KnowledgeBase kb_;
  Reasoner rs_;
  std::vector<Term> terms_;
  std::vector<std::vector<int>> gen_;
  std::vector<std::set<Concept>> types_;
  std::vector<std::set<Role>> crtype_;
  std::map<std::pair<int, int>, std::set<Role>> cedge_;
  std::vector<int> reachable_;
  std::vector<Path> shortest_;
};

bool derives_assertion(const KnowledgeBase& k, const Assertion& a);

CanonicalStructure build_canonical(const KnowledgeBase& k);

std::set<Concept> ttype_at(const CanonicalStructure& c, const Path& p, const Signature* sig = nullptr);
std::set<Role> rtype_edge(const CanonicalStructure& c, const Path& p, const Path& q);

FiniteInterpretation materialize(const CanonicalStructure& c, int depth);
// Same element order as materialize.
std::vector<Path> materialize_paths(const CanonicalStructure& c, int depth);

FiniteInterpretation build_vabox(const ABox& a);
// exists R(u) replaced by R(u, fresh null).
ABox normalize_exists(const ABox& a);

// Sigma2 assertions A(a), P(a,b) entailed by <T1+ u T12+, A1>.
ABox closure_abox(const KnowledgeBase& k1, const Mapping& m);

std::set<Concept> restrict(const std::set<Concept>& s, const Signature& sig);
std::set<Role> restrict(const std::set<Role>& s, const Signature& sig);

}  // namespace kbx
