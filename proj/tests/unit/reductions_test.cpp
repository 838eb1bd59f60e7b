#include <doctest.h>

#include "kbx/exchange.h"
#include "kbx/reductions.h"
#include "kbx/representability.h"
#include "oracle.h"
#include "util.h"

using namespace kbx;

TEST_CASE("the example formula") {
  QBF q = example_qbf();
  CHECK(q.vars() == 3);
  CHECK(q.universal == std::vector<bool>{false, true, false});
  CHECK(oracle::qbf_valid(q.universal, q.clauses));
  CHECK(qbf_family().size() >= 21);
}

TEST_CASE("QBF reduction") {
  QBF q = example_qbf();
  ExchangeInstance x = qbf_reduction(q);
  CHECK(validate_mapping(x.m).empty());
  CHECK(kb_consistent(x.k1));
  SolutionVerdict v = universal_solution_extended(x.k1, x.m, 2 * q.vars() + 4);
  CHECK(v.answer == Tri::Yes);
  CHECK(certify(x.k1, x.m, v));

  // An invalid formula never gets a yes.
  QBF bad{{true}, {{1}}};
  REQUIRE_FALSE(oracle::qbf_valid(bad.universal, bad.clauses));
  ExchangeInstance y = qbf_reduction(bad);
  CHECK(universal_solution_extended(y.k1, y.m, 2 * bad.vars() + 4).answer != Tri::Yes);
}

TEST_CASE("3-colouring reduction") {
  Graph tri{3, {{0, 1}, {1, 2}, {0, 2}}};
  Graph k4{4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  for (const Graph& g : {tri, k4}) {
    SolutionCheckInstance x = three_colouring_reduction(g);
    CHECK(validate_mapping(x.m).empty());
    CHECK((is_universal_solution(x.k1, x.m, x.k2).answer == Tri::Yes) == oracle::three_colorable(g.n, g.edges));
  }
}

TEST_CASE("reachability reductions") {
  Graph path{4, {{0, 1}, {1, 2}}};
  for (int to : {2, 3}) {
    bool reach = oracle::graph_reachable(path.n, path.edges, 0, to);
    RepresentationInstance mem = reachability_membership(path, 0, to);
    CHECK(validate_mapping(mem.m).empty());
    CHECK((is_ucq_representation(mem.m, mem.t1, mem.t2).answer == Tri::Yes) == reach);
    RepresentationInstance ne = reachability_nonemptiness(path, 0, to);
    CHECK(validate_mapping(ne.m).empty());
    CHECK((representation_exists(ne.m, ne.t1).answer == Tri::Yes) == reach);
  }
}
