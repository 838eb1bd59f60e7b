#include <doctest.h>

#include "bridge.h"
#include "gen.h"
#include "kbx/exchange.h"
#include "kbx/homomorphism.h"
#include "util.h"

using namespace kbx;
using t::R;

namespace {

FiniteInterpretation gadget() {
  return build_vabox(parse_abox(
      "abox { Edge'(r,g); Edge'(g,r); Edge'(g,b); Edge'(b,g); Edge'(r,b); Edge'(b,r); }"));
}

FiniteInterpretation clique(int n) {
  FiniteInterpretation f;
  for (int i = 0; i < n; ++i) f.add_element("v" + std::to_string(i), false);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) f.add_role(R("Edge'"), i, j);
  return f;
}

Signature sig(std::set<std::string> concepts, std::set<std::string> roles) {
  Signature s;
  s.concepts = std::move(concepts);
  s.roles = std::move(roles);
  return s;
}

}  // namespace

TEST_CASE("find_homomorphism") {
  FiniteInterpretation g = gadget();
  Signature s = sig({}, {"Edge'"});
  auto id = find_homomorphism(g, g, s);
  REQUIRE(id);
  CHECK(verify_homomorphism(g, g, s, *id));
  for (int x = 0; x < g.size(); ++x) CHECK(id->map[x] == x);

  auto tri = find_homomorphism(clique(3), g, s);
  REQUIRE(tri);
  CHECK(verify_homomorphism(clique(3), g, s, *tri));
  CHECK_FALSE(find_homomorphism(clique(4), g, s));
}

TEST_CASE("find_homomorphism agrees with brute force") {
  gen::Rng g(31);
  int found = 0;
  for (int i = 0; i < 300; ++i) {
    gen::Names nm = gen::names(g, 3);
    if (nm.roles.empty()) nm.roles.push_back("P0");
    auto random = [&](int n, bool constants) {
      FiniteInterpretation f;
      for (int x = 0; x < n; ++x) {
        bool c = constants && gen::coin(g, 30);
        f.add_element(c ? "c" + std::to_string(x) : "u" + std::to_string(x), c);
      }
      int facts = gen::pick(g, 2 * n + 1);
      for (int k = 0; k < facts; ++k) {
        if (!nm.concepts.empty() && gen::coin(g, 40))
          f.add_concept(nm.concepts[gen::pick(g, nm.concepts.size())], gen::pick(g, n));
        else
          f.add_role(Role{nm.roles[gen::pick(g, nm.roles.size())], false}, gen::pick(g, n), gen::pick(g, n));
      }
      return f;
    };
    FiniteInterpretation src = random(1 + gen::pick(g, 4), true), tgt = random(1 + gen::pick(g, 5), true);
    for (int x = 0; x < src.size(); ++x)
      if (src.fixed[x]) tgt.ensure_constant(src.names[x]);
    Signature s = gen::signature(nm);
    auto h = find_homomorphism(src, tgt, s);
    auto b = oracle::brute_homomorphism(t::to_oracle(src), t::to_oracle(tgt), s.concepts, s.roles);
    CAPTURE(i);
    CAPTURE(serialize(src.to_abox()));
    CAPTURE(serialize(tgt.to_abox()));
    CHECK(h.has_value() == b.has_value());
    if (h) {
      ++found;
      CHECK(verify_homomorphism(src, tgt, s, *h));
    }
  }
  CHECK(found > 30);
}

TEST_CASE("embeds_regular_into_finite") {
  auto p = t::problem("F [= exists S;", "F(a);", "F, S", "G'", "exists S- [= G';");
  CanonicalStructure c = source_canonical(p.k, p.m);
  auto tab = embeds_regular_into_finite(c, build_vabox(parse_abox("abox { G'(_n); }")), p.m.sigma2);
  REQUIRE(tab);
  CHECK(verify_table(c, p.m.sigma2, *tab));
  CHECK_FALSE(embeds_regular_into_finite(c, build_vabox(ABox{}), p.m.sigma2));

  auto q = t::problem("F [= exists S; exists S- [= exists S;", "F(a); T(a,a);", "F, S, T", "S'",
                      "role S [= S'; role T [= S';");
  CanonicalStructure c2 = source_canonical(q.k, q.m);
  FiniteInterpretation loop = build_vabox(parse_abox("abox { S'(a,a); }"));
  auto tab2 = embeds_regular_into_finite(c2, loop, q.m.sigma2);
  REQUIRE(tab2);
  CHECK(verify_table(c2, q.m.sigma2, *tab2));
  // The unfolded map is a homomorphism of every truncation.
  for (int d = 0; d <= 4; ++d) {
    Homomorphism h{unfold_table(c2, *tab2, d)};
    CHECK(verify_homomorphism(materialize(c2, d).reduct(q.m.sigma2), tab2->target, q.m.sigma2, h));
  }
  FiniteInterpretation no_edge = build_vabox(parse_abox("abox { F'(a); }"));
  CHECK_FALSE(embeds_regular_into_finite(c2, no_edge, q.m.sigma2));
  // Monotone in the target.
  FiniteInterpretation bigger = build_vabox(parse_abox("abox { S'(a,a); S'(a,b); G'(b); }"));
  CHECK(embeds_regular_into_finite(c2, bigger, q.m.sigma2));
}

TEST_CASE("embeds_finite_into_regular") {
  auto direct = t::problem("", "F(a); G(b);", "F, G", "F', G'", "F [= F'; G [= G';");
  CanonicalStructure c3 = source_canonical(direct.k, direct.m);
  FiniteInterpretation v = build_vabox(parse_abox("abox { F'(a); G'(b); }"));
  auto h = embeds_finite_into_regular(v, c3, direct.m.sigma2);
  REQUIRE(h);
  CHECK(verify_path_homomorphism(v, c3, direct.m.sigma2, *h));
  CHECK(embeds_finite_into_regular(FiniteInterpretation{}, c3, direct.m.sigma2));

  auto nulls = t::problem("F [= exists S;", "F(a);", "F, S", "G', H'", "exists S- [= G';");
  CanonicalStructure c5 = source_canonical(nulls.k, nulls.m);
  CHECK(embeds_finite_into_regular(build_vabox(parse_abox("abox { G'(_n); }")), c5, nulls.m.sigma2));
  CHECK_FALSE(embeds_finite_into_regular(build_vabox(parse_abox("abox { G'(_n); H'(_n); }")), c5,
                                         nulls.m.sigma2));
}

TEST_CASE("embeds_regular_into_regular_bounded") {
  auto p = t::problem("F [= exists S; exists S- [= exists S;", "F(a);", "F, S", "S'", "role S [= S';");
  CanonicalStructure c = source_canonical(p.k, p.m);
  CHECK(embeds_regular_into_regular_bounded(c, c, p.m.sigma2, 3).answer == Tri::Yes);

  // A chain of length two does not embed into a chain of length one.
  auto two = t::problem("F [= exists S; exists S- [= exists T;", "F(a);", "F, S, T", "S', T'",
                        "role S [= S'; role T [= T';");
  auto one = t::problem("F [= exists S;", "F(a);", "F, S, T", "S', T'", "role S [= S'; role T [= T';");
  CanonicalStructure c2 = source_canonical(two.k, two.m), c1 = source_canonical(one.k, one.m);
  RegularVerdict v = embeds_regular_into_regular_bounded(c2, c1, two.m.sigma2, 4);
  CHECK(v.answer == Tri::No);
  CHECK(v.counterexample_depth == 2);
  CHECK(embeds_regular_into_regular_bounded(c1, c2, two.m.sigma2, 4).answer == Tri::Yes);
}
