#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kbx/canonical.h"

namespace kbx {

// Positive boolean formula over [k] x Q. Direction -1 is the parent, 0 the
// node itself, i >= 1 the i-th child.
struct PositiveBooleanFormula {
  enum class Kind { True, False, Atom, And, Or };
  Kind kind = Kind::True;
  int dir = 0;
  int state = -1;
  std::vector<PositiveBooleanFormula> kids;

  static PositiveBooleanFormula truth() { return {Kind::True, 0, -1, {}}; }
  static PositiveBooleanFormula falsity() { return {Kind::False, 0, -1, {}}; }
  static PositiveBooleanFormula atom(int dir, int state) { return {Kind::Atom, dir, state, {}}; }
  // Empty conjunction is true, empty disjunction false; constants fold away.
  static PositiveBooleanFormula all(std::vector<PositiveBooleanFormula> fs);
  static PositiveBooleanFormula any(std::vector<PositiveBooleanFormula> fs);

  std::string str(const std::vector<std::string>& state_names) const;
};

using Letter = std::set<std::string>;

// Symbols of the label alphabet.
namespace sym {
inline const std::string root = "#r";
inline const std::string good = "#G";
std::string basic(const Concept& b);             // "A" or "exists R"
std::string role(const Role& r);                 // "R" or "R-"
std::string individual(const std::string& a);    // "=a"
std::string pair(const std::string& p, int i, int j);  // "P@i,j"
}  // namespace sym

// When a transition entry applies to a letter.
struct Guard {
  std::vector<std::string> all;       // every symbol present
  std::vector<std::string> none;      // no symbol present
  std::vector<std::string> not_all;   // at least one symbol absent
  enum class Individuals { Any, None, Exactly } individuals = Individuals::Any;
  int individual = 0;  // 1-based, for Exactly

  bool holds(const Letter& s, const std::vector<std::string>& individual_symbols) const;
  std::string str(const std::vector<std::string>& individual_names) const;
};

struct TransitionEntry {
  Guard guard;
  PositiveBooleanFormula formula;
};

// Numbering shared by the automata and the tree encodings of one KB.
struct AutomatonLayout {
  int n = 0;                             // branching degree
  std::vector<std::string> individuals;  // a_1..a_n
  std::vector<Role> roles;               // f(R) = index + 1
  std::vector<Concept> concepts;         // basic concepts B
  std::vector<std::string> role_names;   // atomic roles, for P_ij
  std::vector<std::string> pad_constants, pad_roles;

  int f(const Role& r) const;           // 1-based
  int individual_index(const std::string& a) const;  // 1-based, 0 if absent
  std::vector<std::string> individual_symbols() const;
};

struct TreeAutomaton {
  enum class Kind { TwoWayAlternating, OneWayNondeterministic };
  std::string name;
  Kind kind = Kind::TwoWayAlternating;
  AutomatonLayout layout;
  std::vector<std::string> alphabet;  // symbols; letters are subsets
  std::vector<std::string> states;
  int initial = 0;
  std::vector<char> accepting;  // Buchi set
  std::vector<std::vector<TransitionEntry>> transitions;  // per state

  int state(const std::string& name) const;  // -1 if absent
  // Conjunction of every applicable entry; false when none applies.
  PositiveBooleanFormula delta(int q, const Letter& s) const;
  std::string dump() const;
};

// Every node of depth <= depth is present; unlisted nodes carry the empty
// letter. Nodes are child-index sequences, the root is {}.
struct LabeledTreePrefix {
  int k = 0;
  int depth = 0;
  std::map<std::vector<int>, Letter> labels;

  bool contains(const std::vector<int>& x) const;
  const Letter& label(const std::vector<int>& x) const;
};

// The KB the automata are built for; the canonical structure supplies all
// entailments and the layout is padded so that #individuals = #basic roles.
class AutomataContext {
 public:
  explicit AutomataContext(const KnowledgeBase& k, const Signature& extra = {});

  const KnowledgeBase& kb() const { return kb_; }
  const CanonicalStructure& canonical() const { return *canon_; }
  const AutomatonLayout& layout() const { return layout_; }

 private:
  KnowledgeBase kb_;
  std::unique_ptr<CanonicalStructure> canon_;
  AutomatonLayout layout_;
};

TreeAutomaton build_acan(const AutomataContext& ctx);
TreeAutomaton build_amod(const AutomataContext& ctx);
TreeAutomaton build_afin(const AutomataContext& ctx);
TreeAutomaton build_acan(const KnowledgeBase& k);
TreeAutomaton build_amod(const KnowledgeBase& k);
TreeAutomaton build_afin(const KnowledgeBase& k);

// Canonical tree T_U cut at witness depth `depth` (tree depth depth + 1).
// Nodes listed in `marked` (tree positions) additionally carry G.
LabeledTreePrefix encode_canonical(const AutomataContext& ctx, int depth,
                                   const std::set<std::vector<int>>& marked = {});
// Tree position of a canonical path.
std::vector<int> tree_position(const AutomataContext& ctx, const Path& p);

// G-tree encoding of a tree model of K: the canonical elements up to witness
// depth d, with existentials left open at the frontier satisfied by the
// parent (or by a fresh child of an individual), saturated to a model of the
// positive part. One blank level is kept below the G nodes.
LabeledTreePrefix g_witness_tree(const AutomataContext& ctx, int d);

enum class RunResult { Accepts, Rejects, Inconclusive };
std::string to_string(RunResult r);

// Bounded AND/OR search for a run on `t`. Nodes deeper than stepBound or outside
// the prefix are not inspected: an obligation sent there counts as met in an
// accepting state and as open otherwise. A copy that revisits (node, state) on
// its own branch is accepted iff that loop passes an accepting state.
RunResult check_runs(const TreeAutomaton& a, const LabeledTreePrefix& t, int step_bound,
                     long budget = 4'000'000);

}  // namespace kbx
