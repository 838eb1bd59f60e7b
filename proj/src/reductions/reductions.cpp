#include "kbx/reductions.h"

namespace kbx {

std::string QBF::str() const {
  std::string out;
  for (int i = 0; i < vars(); ++i)
    out += std::string(universal[i] ? "forall" : "exists") + " X" + std::to_string(i + 1) + " ";
  for (size_t j = 0; j < clauses.size(); ++j) {
    if (j) out += " and ";
    out += "(";
    for (size_t l = 0; l < clauses[j].size(); ++l) {
      int lit = clauses[j][l];
      if (l) out += " or ";
      out += (lit < 0 ? "not X" : "X") + std::to_string(lit < 0 ? -lit : lit);
    }
    out += ")";
  }
  return out;
}

QBF example_qbf() { return QBF{{false, true, false}, {{1}, {2, -3}}}; }

std::vector<QBF> qbf_family() {
  const std::vector<std::vector<std::vector<int>>> matrices = {
      {{1}},
      {{-2}},
      {{1, 2}},
      {{2, -3}},
      {{1}, {2, -3}},
      {{1, 3}, {-1, -3}},
      {{-1, 2}, {1, -2}},
      {{2}, {-2, 3}},
  };
  std::vector<QBF> out;
  for (int mask = 0; mask < 8; ++mask)
    for (const auto& cl : matrices) {
      QBF q;
      for (int i = 0; i < 3; ++i) q.universal.push_back((mask >> (2 - i)) & 1);
      q.clauses = cl;
      out.push_back(q);
    }
  return out;
}

namespace {

Concept atom(const std::string& n) { return Concept::atomic(n); }
Concept some(const std::string& r, bool inv = false) { return Concept::some(Role{r, inv}); }
Role role(const std::string& r, bool inv = false) { return Role{r, inv}; }
std::string num(int i) { return std::to_string(i); }

void cincl(TBox& t, Concept l, Concept r) { t.insert(Axiom::concept_incl(std::move(l), std::move(r))); }
void rincl(TBox& t, Role l, Role r) { t.insert(Axiom::role_incl(std::move(l), std::move(r))); }

}  // namespace

ExchangeInstance qbf_reduction(const QBF& phi) {
  int n = phi.vars();
  int m = static_cast<int>(phi.clauses.size());
  auto Y = [](int i, int k) { return "Y" + num(i) + "v" + num(k); };
  auto X = [](int i, int k) { return "X" + num(i) + "v" + num(k); };
  auto Z = [](int i, int k) { return "Z" + num(i) + "v" + num(k) + "'"; };
  auto S = [](int l) { return "S" + num(l); };
  auto T = [](int l) { return "T" + num(l); };
  auto Q = [](int i, int k) { return "Q" + num(i) + "v" + num(k); };
  auto P = [](int i, int k) { return "P" + num(i) + "v" + num(k); };
  auto R = [](int j) { return "R" + num(j); };
  auto Rl = [](int j, int l) { return "R" + num(j) + "l" + num(l); };
  auto Rp = [](int j) { return "R" + num(j) + "'"; };

  ExchangeInstance inst;
  Signature& s1 = inst.m.sigma1;
  Signature& s2 = inst.m.sigma2;
  s1.concepts.insert("A");
  for (int i = 1; i <= n; ++i)
    for (int k = 0; k < 2; ++k) {
      s1.concepts.insert(Y(i, k));
      s1.concepts.insert(X(i, k));
      s1.roles.insert(Q(i, k));
      s1.roles.insert(P(i, k));
      s2.concepts.insert(Z(i, k));
    }
  for (int l = 0; l <= n; ++l) {
    s1.roles.insert(S(l));
    s1.roles.insert(T(l));
  }
  for (int j = 1; j <= m; ++j) {
    s1.roles.insert(R(j));
    for (int l = 0; l <= n; ++l) s1.roles.insert(Rl(j, l));
    s2.roles.insert(Rp(j));
  }
  s2.concepts.insert("A'");
  s2.roles.insert("S'");

  TBox& t1 = inst.k1.tbox;
  cincl(t1, atom("A"), some(S(0), true));
  cincl(t1, atom("A"), some(T(0), true));
  for (int i = 1; i <= n; ++i) {
    if (phi.universal[i - 1])
      for (int k = 0; k < 2; ++k) cincl(t1, some(S(i - 1), true), some(Q(i, k)));
    else
      cincl(t1, some(S(i - 1), true), some(S(i)));
    for (int k = 0; k < 2; ++k) {
      cincl(t1, some(Q(i, k), true), atom(Y(i, k)));
      rincl(t1, role(Q(i, k)), role(S(i)));
      cincl(t1, some(T(i - 1), true), some(P(i, k)));
      rincl(t1, role(P(i, k)), role(T(i)));
      cincl(t1, some(P(i, k), true), atom(X(i, k)));
    }
  }
  for (int j = 1; j <= m; ++j) {
    cincl(t1, some(S(n), true), some(R(j)));
    cincl(t1, some(R(j), true), some(R(j)));
    for (int lit : phi.clauses[j - 1]) {
      int i = lit < 0 ? -lit : lit;
      cincl(t1, atom(X(i, lit < 0 ? 0 : 1)), some(Rl(j, i)));
    }
    for (int i = 1; i <= n; ++i) cincl(t1, some(Rl(j, i), true), some(Rl(j, i - 1)));
  }
  inst.k1.abox.add(Assertion::concept_fact(atom("A"), Term::constant("a")));

  TBox& t12 = inst.m.t12;
  cincl(t12, atom("A"), atom("A'"));
  for (int l = 0; l <= n; ++l) {
    rincl(t12, role(S(l)), role("S'"));
    rincl(t12, role(T(l)), role("S'"));
  }
  for (int i = 1; i <= n; ++i)
    for (int k = 0; k < 2; ++k) {
      cincl(t12, atom(Y(i, k)), atom(Z(i, k)));
      cincl(t12, atom(X(i, k)), atom(Z(i, k)));
    }
  for (int j = 1; j <= m; ++j) {
    rincl(t12, role(R(j)), role(Rp(j)));
    for (int l = 0; l <= n; ++l) rincl(t12, role(T(l)), role(Rp(j), true));
    // R_j^0 gets both directions, so the R_j' chains can loop at the end.
    for (int l = 0; l <= n; ++l) rincl(t12, role(Rl(j, l)), role(Rp(j)));
    rincl(t12, role(Rl(j, 0)), role(Rp(j), true));
  }
  return inst;
}

SolutionCheckInstance three_colouring_reduction(const Graph& g) {
  SolutionCheckInstance inst;
  inst.m.sigma1.roles.insert("Edge");
  inst.m.sigma2.roles.insert("Edge'");
  rincl(inst.m.t12, role("Edge"), role("Edge'"));
  const char* colours[] = {"r", "g", "b"};
  for (const char* x : colours)
    for (const char* y : colours) {
      if (x == y) continue;
      inst.k1.abox.add(Assertion::role_fact(role("Edge"), Term::constant(x), Term::constant(y)));
      inst.k2.abox.add(Assertion::role_fact(role("Edge'"), Term::constant(x), Term::constant(y)));
    }
  for (const auto& [u, v] : g.edges) {
    Term a = Term::labeled_null("v" + num(u)), b = Term::labeled_null("v" + num(v));
    inst.k2.abox.add(Assertion::role_fact(role("Edge'"), a, b));
    inst.k2.abox.add(Assertion::role_fact(role("Edge'"), b, a));
  }
  return inst;
}

namespace {

std::string V(int i) { return "V" + num(i); }
std::string Vp(int i) { return "V" + num(i) + "'"; }

}  // namespace

RepresentationInstance reachability_membership(const Graph& g, int from, int to) {
  RepresentationInstance inst;
  for (int i = 0; i < g.n; ++i) {
    inst.m.sigma1.concepts.insert(V(i));
    inst.m.sigma2.concepts.insert(Vp(i));
    cincl(inst.m.t12, atom(V(i)), atom(Vp(i)));
  }
  cincl(inst.t1, atom(V(from)), atom(V(to)));
  for (const auto& [u, v] : g.edges) {
    cincl(inst.t1, atom(V(u)), atom(V(v)));
    cincl(inst.t2, atom(Vp(u)), atom(Vp(v)));
  }
  // V_k [= V_k from a self-loop query is a tautology.
  inst.t1.erase(Axiom::concept_incl(atom(V(from)), atom(V(from))));
  inst.t2.erase(Axiom::concept_incl(atom(Vp(from)), atom(Vp(from))));
  return inst;
}

RepresentationInstance reachability_nonemptiness(const Graph& g, int from, int to) {
  RepresentationInstance inst;
  Signature& s1 = inst.m.sigma1;
  Signature& s2 = inst.m.sigma2;
  for (int i = 0; i < g.n; ++i) {
    s1.concepts.insert(V(i));
    s2.concepts.insert(Vp(i));
    cincl(inst.m.t12, atom(V(i)), atom(Vp(i)));
  }
  for (const char* c : {"S", "F", "X", "Y"}) s1.concepts.insert(c);
  for (const char* c : {"S'", "X'", "Y'"}) s2.concepts.insert(c);
  for (const auto& [u, v] : g.edges) cincl(inst.t1, atom(V(u)), atom(V(v)));
  cincl(inst.t1, atom("S"), atom(V(from)));
  cincl(inst.t1, atom(V(to)), atom("F"));
  cincl(inst.t1, atom("X"), atom("Y"));
  cincl(inst.m.t12, atom("S"), atom("S'"));
  cincl(inst.m.t12, atom("S"), atom("X'"));
  cincl(inst.m.t12, atom("F"), atom("Y'"));
  cincl(inst.m.t12, atom("X"), atom("X'"));
  cincl(inst.m.t12, atom("Y"), atom("Y'"));
  return inst;
}

}  // namespace kbx
