#pragma once

#include <optional>
#include <string>

#include "kbx/homomorphism.h"

namespace kbx {

struct Positivity {
  bool positive = true;
  char clause = 0;  // 'a'..'d' when violated
  std::string detail;
};

// Requires K1 consistent; throws InconsistentKB otherwise.
Positivity is_sigma2_positive(const KnowledgeBase& k1, const Mapping& m);

struct SolutionVerdict {
  Tri answer = Tri::Unknown;
  std::optional<ABox> witness;
  // U -> V(witness), the direction every solution needs.
  std::optional<SimulationTable> forward;
  // V(witness) -> U, checked for membership and extended solutions.
  std::optional<PathHomomorphism> backward;
  // Plain search: the Sigma1 model I over dom(A2) + {d} read off `forward`.
  std::optional<FiniteInterpretation> model;
  char violated = 0;     // positivity clause, if that was the reason
  int depth = -1;        // materialization depth of an extended witness
  std::string reason;    // human readable, always set
};

SolutionVerdict universal_solution_plain(const KnowledgeBase& k1, const Mapping& m);
SolutionVerdict universal_solution_extended(const KnowledgeBase& k1, const Mapping& m,
                                            int depth_cap);
SolutionVerdict is_universal_solution(const KnowledgeBase& k1, const Mapping& m,
                                      const KnowledgeBase& k2);

// Re-checks every certificate carried by a yes verdict.
bool certify(const KnowledgeBase& k1, const Mapping& m, const SolutionVerdict& v);

// I |= T (concept/role inclusions and disjointness) and I |= A (constants).
bool satisfies(const FiniteInterpretation& i, const TBox& t, std::string* why = nullptr);
bool satisfies(const FiniteInterpretation& i, const ABox& a, std::string* why = nullptr);

// U of <T1+ u T12+, A1> over the names of both signatures.
CanonicalStructure source_canonical(const KnowledgeBase& k1, const Mapping& m);

}  // namespace kbx
