#include <doctest.h>

#include "oracle.h"

using namespace oracle;

TEST_CASE("naive_saturate") {
  Closure empty = naive_saturate({});
  CHECK(empty.concept_sub("F", "F"));
  CHECK_FALSE(empty.concept_sub("F", "G"));

  Closure chain = naive_saturate({{false, "F", "G", false}, {false, "G", "H", false}});
  CHECK(chain.concept_sub("F", "H"));
  CHECK_FALSE(chain.concept_sub("H", "F"));

  Closure roles = naive_saturate({{true, "P", "Q", false}});
  CHECK(roles.role_sub("P-", "Q-"));
  CHECK(roles.concept_sub(some("P"), some("Q")));
  CHECK(roles.concept_sub(some("P-"), some("Q-")));
  // Disjointness adds nothing positive.
  CHECK_FALSE(naive_saturate({{false, "F", "G", true}}).concept_sub("F", "G"));
}

TEST_CASE("chase and consistency") {
  TBox t{{false, "F", some("S"), false}, {false, some("S-"), some("S"), false}};
  ABox a{{{false, "F", "a", ""}}, {}};
  Structure s = chase(t, a, 3);
  CHECK(s.names.size() == 4);
  CHECK(consistent(t, a));
  TBox clash = t;
  clash.push_back({false, some("S-"), some("S"), true});
  CHECK_FALSE(consistent(clash, a));
  CHECK(inv("S") == "S-");
  CHECK(inv("S-") == "S");
}

TEST_CASE("brute_homomorphism") {
  Structure k3, k4;
  for (int i = 0; i < 3; ++i) k3.add("c" + std::to_string(i), false, 0);
  for (int i = 0; i < 4; ++i) k4.add("v" + std::to_string(i), false, 0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) k3.edges["E"].insert({i, j});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) k4.edges["E"].insert({i, j});
  CHECK(brute_homomorphism(k3, k3, {}, {"E"}).has_value());
  CHECK_FALSE(brute_homomorphism(k4, k3, {}, {"E"}).has_value());
  CHECK(brute_homomorphism(k3, k4, {}, {"E"}).has_value());
}

TEST_CASE("ground truth solvers") {
  CHECK(qbf_valid({false}, {{1}}));
  CHECK_FALSE(qbf_valid({true}, {{1}}));
  CHECK(graph_reachable(3, {{0, 1}, {1, 2}}, 0, 2));
  CHECK_FALSE(graph_reachable(3, {{0, 1}, {1, 2}}, 2, 0));
  CHECK(graph_reachable(1, {}, 0, 0));
  CHECK_FALSE(three_colorable(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
  CHECK(three_colorable(3, {{0, 1}, {1, 2}, {0, 2}}));
}

TEST_CASE("query entailment") {
  Structure s;
  int a = s.add("a", true, 0), n = s.add("n", false, 1);
  s.edges["S"].insert({a, n});
  s.labels[n].insert("G");
  CHECK(entails(s, {{true, "S", "a", "?x"}, {false, "G", "?x", ""}}));
  CHECK_FALSE(entails(s, {{false, "G", "a", ""}}));
  CHECK(entails(s, {}));
}
