#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kbx/canonical.h"

namespace kbx {

struct Homomorphism {
  std::vector<int> map;  // source element -> target element
};

std::optional<Homomorphism> find_homomorphism(const FiniteInterpretation& src,
                                              const FiniteInterpretation& tgt,
                                              const Signature& sig);
bool verify_homomorphism(const FiniteInterpretation& src, const FiniteInterpretation& tgt,
                         const Signature& sig, const Homomorphism& h);

// Greatest fixpoint of the simulation of the canonical model's regular
// presentation by a finite interpretation.
struct SimulationTable {
  int states = 0;
  int elements = 0;
  std::vector<std::vector<char>> alive;  // [state][element]
  // For every alive (state, element): chosen target of each generating child,
  // in gen(state) order.
  std::map<std::pair<int, int>, std::vector<int>> choice;
  // ABox term index of the canonical structure -> element of the target.
  std::vector<int> roots;
  // The target with constants of the source added as isolated elements.
  FiniteInterpretation target;
};

std::optional<SimulationTable> embeds_regular_into_finite(const CanonicalStructure& c,
                                                          const FiniteInterpretation& f,
                                                          const Signature& sig);
bool verify_table(const CanonicalStructure& c, const Signature& sig, const SimulationTable& t);

// Unfolds a table into an explicit map from materialize_paths(c, depth).
std::vector<int> unfold_table(const CanonicalStructure& c, const SimulationTable& t, int depth);

struct PathHomomorphism {
  std::vector<Path> map;  // source element -> canonical path
  std::vector<char> foreign;  // constant absent from the canonical ABox (isolated)
};

std::optional<PathHomomorphism> embeds_finite_into_regular(const FiniteInterpretation& f,
                                                           const CanonicalStructure& c,
                                                           const Signature& sig);
bool verify_path_homomorphism(const FiniteInterpretation& f, const CanonicalStructure& c,
                              const Signature& sig, const PathHomomorphism& h);

enum class Tri { Yes, No, Unknown };
std::string to_string(Tri t);

struct RegularVerdict {
  Tri answer = Tri::Unknown;
  int counterexample_depth = -1;  // for No
  std::string method;             // how Yes was established
};

RegularVerdict embeds_regular_into_regular_bounded(const CanonicalStructure& c1,
                                                   const CanonicalStructure& c2,
                                                   const Signature& sig, int depth_cap);

// Downward simulation between the two regular presentations (sound for Yes).
bool regular_downward_simulation(const CanonicalStructure& c1, const CanonicalStructure& c2,
                                 const Signature& sig);

}  // namespace kbx
