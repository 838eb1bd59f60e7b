#include <doctest.h>

#include "kbx/core.h"
#include "util.h"

using namespace kbx;
using t::A;
using t::E;
using t::R;

TEST_CASE("inverse flips direction and is an involution") {
  CHECK(inverse(R("P")) == R("P-"));
  CHECK(inverse(R("P-")) == R("P"));
  CHECK(inverse(inverse(R("S"))) == R("S"));
  CHECK(Concept::some(R("S-")).role() == R("S-"));
}

TEST_CASE("validate_mapping") {
  Mapping m;
  m.sigma1.concepts = {"F"};
  m.sigma2.concepts = {"F'"};
  m.t12 = {Axiom::concept_incl(A("F"), A("F'"))};
  CHECK(validate_mapping(m).empty());

  SUBCASE("direction") {
    m.t12 = {Axiom::concept_incl(A("F'"), A("F"))};
    auto v = validate_mapping(m);
    REQUIRE_FALSE(v.empty());
    CHECK(v[0].find("direction") != std::string::npos);
  }
  SUBCASE("overlap") {
    m.sigma2.concepts.insert("F");
    auto v = validate_mapping(m);
    REQUIRE_FALSE(v.empty());
    CHECK(v[0].find("overlap") != std::string::npos);
  }
}

TEST_CASE("signature_of") {
  Signature s = signature_of(TBox{Axiom::concept_incl(A("F"), E("S"))});
  CHECK(s.concepts == std::set<std::string>{"F"});
  CHECK(s.roles == std::set<std::string>{"S"});
  CHECK(signature_of(TBox{}).empty());

  ABox a;
  a.add(t::fact("F", t::c("a")));
  a.add(t::fact("S", t::c("a"), t::n("n")));
  Signature sa = signature_of(a);
  CHECK(sa.concepts == std::set<std::string>{"F"});
  CHECK(sa.roles == std::set<std::string>{"S"});
  CHECK(a.extended());
}

TEST_CASE("inverse role assertions are stored forwards") {
  ABox a;
  a.add(t::fact("S-", t::c("a"), t::c("b")));
  ABox b;
  b.add(t::fact("S", t::c("b"), t::c("a")));
  CHECK(a == b);
}

TEST_CASE("positive and negative parts partition a TBox") {
  TBox tb = t::tbox("F [= G; F [= not H; role P [= not Q;");
  CHECK(positive_part(tb).size() == 1);
  CHECK(negative_part(tb).size() == 2);
  CHECK(unite(positive_part(tb), negative_part(tb)) == tb);
}

TEST_CASE("restrict_abox keeps assertions over the signature") {
  ABox a;
  a.add(t::fact("F", t::c("a")));
  a.add(t::fact("G'", t::c("a")));
  Signature s;
  s.concepts = {"G'"};
  ABox r = restrict_abox(a, s);
  REQUIRE(r.assertions.size() == 1);
  CHECK(r.assertions.begin()->c.name == "G'");
}
