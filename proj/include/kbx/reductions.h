#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kbx/core.h"

namespace kbx {

// Prenex QBF in CNF. Variables are 1..n; literals are +i / -i.
struct QBF {
  std::vector<bool> universal;  // quantifier of X_i is universal
  std::vector<std::vector<int>> clauses;

  int vars() const { return static_cast<int>(universal.size()); }
  std::string str() const;
};

// Exists X1 forall X2 exists X3 (X1 and (X2 or not X3)).
QBF example_qbf();
// Every quantifier prefix over 3 variables combined with a fixed list of
// one- and two-clause matrices.
std::vector<QBF> qbf_family();

struct ExchangeInstance {
  KnowledgeBase k1;
  Mapping m;
};

// phi is valid iff K1 has a universal solution with extended ABoxes under M.
ExchangeInstance qbf_reduction(const QBF& phi);

struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // directed, or unordered for 3-colouring
};

struct SolutionCheckInstance {
  KnowledgeBase k1;
  Mapping m;
  KnowledgeBase k2;
};

// G is 3-colourable iff <{}, A2> is a universal solution for K1 under M.
SolutionCheckInstance three_colouring_reduction(const Graph& g);

struct RepresentationInstance {
  Mapping m;
  TBox t1;
  TBox t2;  // empty for the non-emptiness encoding
};

// There is a path from `from` to `to` iff T2 is a representation of T1.
RepresentationInstance reachability_membership(const Graph& g, int from, int to);
// There is a path from `from` to `to` iff T1 has a representation.
RepresentationInstance reachability_nonemptiness(const Graph& g, int from, int to);

}  // namespace kbx
