#include <doctest.h>

#include "bridge.h"
#include "gen.h"
#include "kbx/canonical.h"
#include "kbx/exchange.h"
#include "util.h"

using namespace kbx;
using t::A;
using t::E;
using t::R;

namespace {

std::vector<std::pair<int, int>> gen_edges(const CanonicalStructure& c) {
  std::vector<std::pair<int, int>> out;
  for (int s = 0; s < c.num_states(); ++s)
    for (int cls : c.gen(s)) out.push_back({s, c.class_state(cls)});
  return out;
}

Path child(const CanonicalStructure& c, int root, const Role& r) {
  return Path{root, {c.reasoner().class_of(r)}};
}

}  // namespace

TEST_CASE("derives_assertion") {
  CHECK(derives_assertion(t::kb("F [= G;", "F(a);"), t::fact("G", t::c("a"))));
  CHECK(derives_assertion(t::kb("", "F(a);"), t::fact("F", t::c("a"))));
  CHECK(derives_assertion(t::kb("role S [= S';", "S(a,b);"), t::fact("S'", t::c("a"), t::c("b"))));
  CHECK_FALSE(derives_assertion(t::kb("role S [= S';", "S(a,b);"), t::fact("S'", t::c("b"), t::c("a"))));
}

TEST_CASE("generating relation") {
  SUBCASE("one witness") {
    CanonicalStructure c = build_canonical(t::kb("F [= exists S;", "F(a);"));
    auto e = gen_edges(c);
    REQUIRE(e.size() == 1);
    CHECK(e[0].first == c.term_index("a"));
    CHECK(c.reasoner().classes()[c.state_class(e[0].second)].representative == R("S"));
  }
  SUBCASE("satisfied among constants") {
    CanonicalStructure c = build_canonical(t::kb("F [= exists S;", "F(a); S(a,b);"));
    CHECK(gen_edges(c).empty());
  }
  SUBCASE("self loop") {
    CanonicalStructure c = build_canonical(t::kb("F [= exists S; exists S- [= exists S;", "F(a);"));
    int w = c.class_state(c.reasoner().class_of(R("S")));
    auto e = gen_edges(c);
    CHECK(std::find(e.begin(), e.end(), std::pair{w, w}) != e.end());
  }
  SUBCASE("minimal class only") {
    CanonicalStructure c = build_canonical(t::kb("F [= exists S; role S [= T; F [= exists T;", "F(a);"));
    auto e = gen_edges(c);
    REQUIRE(e.size() == 1);
    CHECK(c.reasoner().classes()[c.state_class(e[0].second)].representative == R("S"));
  }
  CHECK_THROWS_AS(build_canonical(t::kb("F [= not G;", "F(a); G(a);")), InconsistentKB);
}

TEST_CASE("types along paths") {
  auto p = t::problem("F [= exists S;", "F(a);", "F, S", "G'", "exists S- [= G';");
  CanonicalStructure c = source_canonical(p.k, p.m);
  Path w = child(c, c.term_index("a"), R("S"));
  CHECK(ttype_at(c, w, &p.m.sigma2) == std::set<Concept>{A("G'")});
  CHECK(ttype_at(c, w).count(E("S-")) == 1);
  CHECK_THROWS_AS(ttype_at(c, Path{0, {c.reasoner().class_of(R("S")), 0}}), InvalidPath);

  CanonicalStructure c2 = build_canonical(t::kb("F [= exists S; role S [= S';", "F(a); T(a,a);"));
  Path root{c2.term_index("a"), {}};
  std::set<Role> rt = rtype_edge(c2, root, child(c2, root.root, R("S")));
  CHECK(rt.count(R("S")) == 1);
  CHECK(rt.count(R("S'")) == 1);
  CHECK(rtype_edge(c2, root, root).count(R("T")) == 1);
}

TEST_CASE("materialize") {
  auto p = t::problem("F [= exists S;", "F(a);", "F, S", "G'", "exists S- [= G';");
  CanonicalStructure c = source_canonical(p.k, p.m);
  FiniteInterpretation m0 = materialize(c, 0);
  CHECK(m0.size() == 1);
  FiniteInterpretation m1 = materialize(c, 1);
  REQUIRE(m1.size() == 2);
  CHECK(m1.reduct(p.m.sigma2).labels(1) == std::set<std::string>{"G'"});

  CanonicalStructure loop = build_canonical(t::kb("F [= exists S; exists S- [= exists S;", "F(a);"));
  for (int d = 0; d < 4; ++d) {
    FiniteInterpretation small = materialize(loop, d), big = materialize(loop, d + 1);
    REQUIRE(small.size() == d + 1);
    for (int x = 0; x < small.size(); ++x) {
      CHECK(small.names[x] == big.names[x]);
      CHECK(small.labels(x) == big.labels(x));
    }
    for (const auto& [r, es] : small.roles)
      for (auto [x, y] : es) CHECK(big.has_role(Role{r, false}, x, y));
  }
}

TEST_CASE("build_vabox") {
  FiniteInterpretation v = build_vabox(parse_abox("abox { G'(_n); }"));
  REQUIRE(v.size() == 1);
  CHECK(v.has_concept("G'", 0));
  CHECK_FALSE(v.fixed[0]);
  CHECK(build_vabox(ABox{}).size() == 0);
  FiniteInterpretation loop = build_vabox(parse_abox("abox { S'(a,a); }"));
  CHECK(loop.has_role(R("S'"), 0, 0));

  ABox ex = parse_abox("abox { exists S(a); }");
  ABox norm = normalize_exists(ex);
  REQUIRE(norm.assertions.size() == 1);
  CHECK(norm.assertions.begin()->is_role);
  CHECK(norm.extended());
}

TEST_CASE("closure_abox") {
  auto direct = t::problem("", "F(a); G(b);", "F, G", "F', G'", "F [= F'; G [= G';");
  CHECK(closure_abox(direct.k, direct.m) == parse_abox("abox { F'(a); G'(b); }"));
  auto nulls = t::problem("F [= exists S; exists S- [= exists S;", "F(a); T(a,a);", "F, S, T", "S'",
                        "role S [= S'; role T [= S';");
  CHECK(closure_abox(nulls.k, nulls.m) == parse_abox("abox { S'(a,a); }"));
  auto none = t::problem("F [= G;", "F(a);", "F, G", "F'", "");
  CHECK(closure_abox(none.k, none.m).assertions.empty());
  // Disjointness is ignored.
  auto neg = t::problem("F [= not G;", "F(a); G(a);", "F, G", "F'", "F [= F';");
  CHECK(closure_abox(neg.k, neg.m) == parse_abox("abox { F'(a); }"));
}

TEST_CASE("materialized models satisfy the KB and agree with the oracle chase") {
  gen::Rng g(21);
  int checked = 0;
  for (int i = 0; i < 200 && checked < 80; ++i) {
    gen::Names nm = gen::names(g, 5);
    KnowledgeBase k{gen::tbox(g, nm, 6, 15), gen::abox(g, nm, 3, 2)};
    if (!kb_consistent(k)) continue;
    ++checked;
    CAPTURE(i);
    CanonicalStructure c(k, gen::signature(nm));
    const int d = 3;
    FiniteInterpretation f = materialize(c, d);
    std::vector<Path> paths = materialize_paths(c, d);
    // Disjointness holds everywhere; inclusions hold at every node with
    // materialized successors.
    TBox neg = negative_part(k.tbox);
    CHECK(satisfies(f, neg));
    for (size_t x = 0; x < paths.size(); ++x) {
      if (static_cast<int>(paths[x].tail.size()) >= d) continue;
      std::set<Concept> ty = ttype_at(c, paths[x]);
      for (const auto& a : positive_part(k.tbox)) {
        if (a.is_role || !ty.count(a.lc)) continue;
        CHECK(ty.count(a.rc) == 1);
        if (a.rc.exists) {
          bool found = false;
          Role r = a.rc.role();
          for (int y = 0; y < f.size() && !found; ++y) found = f.has_role(r, static_cast<int>(x), y);
          CHECK(found);
        }
      }
    }
    // The concept names at each oracle chase element match a path type.
    oracle::Structure s = oracle::chase(bridge::tbox(k.tbox), bridge::abox(k.abox), d);
    CHECK(oracle::brute_homomorphism(s, t::to_oracle(f),
                                     std::set<std::string>(nm.concepts.begin(), nm.concepts.end()),
                                     std::set<std::string>(nm.roles.begin(), nm.roles.end()))
              .has_value());
  }
  CHECK(checked >= 40);
}
