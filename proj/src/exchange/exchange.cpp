#include "kbx/exchange.h"

#include <algorithm>
#include <deque>

namespace kbx {

namespace {

std::set<int> extension(const FiniteInterpretation& i, const Concept& b) {
  std::set<int> out;
  if (!b.exists) {
    auto it = i.concepts.find(b.name);
    if (it != i.concepts.end()) out = it->second;
    return out;
  }
  auto it = i.roles.find(b.name);
  if (it == i.roles.end()) return out;
  for (const auto& [x, y] : it->second) out.insert(b.inv ? y : x);
  return out;
}

std::set<std::pair<int, int>> extension(const FiniteInterpretation& i, const Role& r) {
  std::set<std::pair<int, int>> out;
  auto it = i.roles.find(r.name);
  if (it == i.roles.end()) return out;
  for (const auto& [x, y] : it->second) out.insert(r.inv ? std::pair{y, x} : std::pair{x, y});
  return out;
}

template <typename S>
bool disjoint(const S& a, const S& b) {
  for (const auto& x : a)
    if (b.count(x)) return false;
  return true;
}

template <typename S>
bool contained(const S& a, const S& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::set<std::string> fact_strings(const FiniteInterpretation& f, const Signature& sig) {
  std::set<std::string> out;
  for (const auto& [a, ext] : f.concepts)
    if (sig.has_name(a))
      for (int e : ext) out.insert(a + "(" + f.names[e] + ")");
  for (const auto& [p, ext] : f.roles)
    if (sig.has_name(p))
      for (const auto& [x, y] : ext) out.insert(p + "(" + f.names[x] + "," + f.names[y] + ")");
  return out;
}

// Elements of U: the constants and, for a witness, its parent state.
struct Occurrence {
  int parent;  // -1 for constants
  int state;
};

std::vector<Occurrence> occurrences(const CanonicalStructure& c) {
  std::vector<Occurrence> out;
  std::vector<char> live(c.num_states(), 0);
  for (int a = 0; a < c.num_constants(); ++a) {
    live[a] = 1;
    out.push_back({-1, a});
  }
  for (int s : c.reachable_states()) live[s] = 1;
  for (int p = 0; p < c.num_states(); ++p) {
    if (!live[p]) continue;
    for (int cls : c.gen(p)) out.push_back({p, c.class_state(cls)});
  }
  return out;
}

std::set<Role> inverted(const std::set<Role>& s) {
  std::set<Role> out;
  for (const auto& r : s) out.insert(r.inverse());
  return out;
}

}  // namespace

bool satisfies(const FiniteInterpretation& i, const TBox& t, std::string* why) {
  for (const auto& ax : t) {
    bool ok;
    if (ax.is_role) {
      auto l = extension(i, ax.lr), r = extension(i, ax.rr);
      ok = ax.negated ? disjoint(l, r) : contained(l, r);
    } else {
      auto l = extension(i, ax.lc), r = extension(i, ax.rc);
      ok = ax.negated ? disjoint(l, r) : contained(l, r);
    }
    if (!ok) {
      if (why) *why = "violates " + ax.str();
      return false;
    }
  }
  return true;
}

bool satisfies(const FiniteInterpretation& i, const ABox& a, std::string* why) {
  auto el = [&](const Term& t) {
    auto it = i.constants.find(t.name);
    return it == i.constants.end() ? -1 : it->second;
  };
  for (const auto& x : a.assertions) {
    if (x.t1.null || (x.is_role && x.t2.null)) continue;
    bool ok;
    if (x.is_role) {
      int u = el(x.t1), v = el(x.t2);
      ok = u >= 0 && v >= 0 && extension(i, x.r).count({u, v});
    } else {
      int u = el(x.t1);
      ok = u >= 0 && extension(i, x.c).count(u);
    }
    if (!ok) {
      if (why) *why = "misses " + x.str();
      return false;
    }
  }
  return true;
}

CanonicalStructure source_canonical(const KnowledgeBase& k1, const Mapping& m) {
  KnowledgeBase k{unite(positive_part(k1.tbox), positive_part(m.t12)), k1.abox};
  return CanonicalStructure(k, m.sigma1.unite(m.sigma2));
}

Positivity is_sigma2_positive(const KnowledgeBase& k1, const Mapping& m) {
  if (!kb_consistent(k1)) throw InconsistentKB();
  auto c = source_canonical(k1, m);
  Reasoner r1(k1.tbox, m.sigma1.unite(m.sigma2).unite(signature_of(k1.abox)));
  const Signature& s2 = m.sigma2;
  int nc = c.num_constants();

  auto in_target = [&](int s) {
    return c.is_constant_state(s) || !restrict(c.state_type(s), s2).empty();
  };
  auto elem = [&](int s) {
    return c.is_constant_state(s) ? c.term(s).str() : c.path_name(c.shortest_path_to(s));
  };
  auto occ = occurrences(c);
  Positivity out;

  // (a)
  std::map<Concept, int> seen;  // concept -> a state carrying it
  for (int a = 0; a < nc; ++a)
    for (const auto& b : c.state_type(a)) seen.emplace(b, a);
  for (int s : c.reachable_states())
    if (in_target(s))
      for (const auto& b : c.state_type(s)) seen.emplace(b, s);
  for (auto i = seen.begin(); i != seen.end(); ++i)
    for (auto j = i; j != seen.end(); ++j)
      if (!r1.pair_consistent(i->first, j->first)) {
        out.positive = false;
        out.clause = 'a';
        out.detail = i->first.str() + " at " + elem(i->second) + " and " + j->first.str() +
                     " at " + elem(j->second) + " are disjoint under T1";
        return out;
      }

  // (b): edges with both endpoints in the target
  std::map<Role, std::string> edges;
  for (const auto& [pr, roles] : c.const_edges())
    for (const auto& r : roles) edges.emplace(r, elem(pr.first) + "," + elem(pr.second));
  for (const auto& o : occ) {
    if (o.parent < 0 || !in_target(o.parent) || !in_target(o.state)) continue;
    std::string where = elem(o.parent) + " and its child";
    for (const auto& r : c.class_rtype(c.state_class(o.state))) {
      edges.emplace(r, where);
      edges.emplace(r.inverse(), where);
    }
  }
  for (auto i = edges.begin(); i != edges.end(); ++i)
    for (auto j = i; j != edges.end(); ++j)
      if (!r1.pair_consistent(i->first, j->first)) {
        out.positive = false;
        out.clause = 'b';
        out.detail = i->first.str() + " (" + i->second + ") and " + j->first.str() + " (" +
                     j->second + ") are disjoint under T1";
        return out;
      }

  // (c): roles from one element to target neighbours
  auto check_c = [&](const std::set<Role>& rs, const std::string& where) {
    for (auto i = rs.begin(); i != rs.end(); ++i)
      for (auto j = i; j != rs.end(); ++j)
        if (!r1.pair_consistent(*i, *j)) {
          out.positive = false;
          out.clause = 'c';
          out.detail = "from " + where + ": " + i->str() + " and " + j->str() +
                       " lead into the target but are disjoint under T1";
          return false;
        }
    return true;
  };
  auto child_roles = [&](int s, std::set<Role>& rs) {
    for (int cls : c.gen(s))
      if (in_target(c.class_state(cls)))
        for (const auto& r : c.class_rtype(cls)) rs.insert(r);
  };
  for (int a = 0; a < nc; ++a) {
    std::set<Role> rs;
    for (const auto& [pr, roles] : c.const_edges())
      if (pr.first == a) rs.insert(roles.begin(), roles.end());
    child_roles(a, rs);
    if (!check_c(rs, elem(a))) return out;
  }
  for (const auto& o : occ) {
    if (o.parent < 0) continue;
    std::set<Role> rs;
    if (in_target(o.parent)) {
      auto up = inverted(c.class_rtype(c.state_class(o.state)));
      rs.insert(up.begin(), up.end());
    }
    child_roles(o.state, rs);
    if (!check_c(rs, "a child of " + elem(o.parent))) return out;
  }

  // (d): mapping disjointness on nonempty source symbols
  std::set<Concept> nonempty;
  for (int a = 0; a < nc; ++a) nonempty.insert(c.state_type(a).begin(), c.state_type(a).end());
  for (int s : c.reachable_states()) nonempty.insert(c.state_type(s).begin(), c.state_type(s).end());
  for (const auto& ax : m.t12) {
    if (!ax.negated) continue;
    Concept b = ax.is_role ? Concept::some(ax.lr) : ax.lc;
    if (nonempty.count(b)) {
      out.positive = false;
      out.clause = 'd';
      out.detail = (ax.is_role ? ax.lr.str() : ax.lc.str()) + " is nonempty but " + ax.str() +
                   " is in T12";
      return out;
    }
  }
  return out;
}

namespace {

// Sigma1 facts of the image of U under a simulation table, added to a copy of
// the table target (which carries the Sigma2 facts).
FiniteInterpretation image_model(const CanonicalStructure& c, const SimulationTable& t,
                                 const Signature& s2) {
  FiniteInterpretation out = t.target;
  std::set<std::pair<int, int>> seen;
  std::deque<std::pair<int, int>> q;
  for (int a = 0; a < c.num_constants(); ++a)
    if (seen.insert({a, t.roots[a]}).second) q.push_back({a, t.roots[a]});
  while (!q.empty()) {
    auto [s, e] = q.front();
    q.pop_front();
    for (const auto& b : c.state_type(s))
      if (!b.exists && !s2.has_name(b.name)) out.add_concept(b.name, e);
    const auto& g = c.gen(s);
    const auto& ch = t.choice.at({s, e});
    for (size_t i = 0; i < g.size(); ++i) {
      int cs = c.class_state(g[i]);
      for (const auto& r : c.class_rtype(g[i]))
        if (!s2.has_name(r.name)) out.add_role(r, e, ch[i]);
      if (seen.insert({cs, ch[i]}).second) q.push_back({cs, ch[i]});
    }
  }
  for (const auto& [pr, roles] : c.const_edges())
    for (const auto& r : roles)
      if (!s2.has_name(r.name)) out.add_role(r, t.roots[pr.first], t.roots[pr.second]);
  return out;
}

SolutionVerdict not_positive(const Positivity& p) {
  SolutionVerdict v;
  v.answer = Tri::No;
  v.violated = p.clause;
  v.reason = std::string("not Sigma2-positive, clause (") + p.clause + "): " + p.detail;
  return v;
}

struct Fact {
  bool role;
  std::string name;
  int x, y;
  auto operator<=>(const Fact&) const = default;
};

ABox facts_to_abox(const FiniteInterpretation& f, const std::vector<Fact>& facts) {
  std::set<int> used;
  for (const auto& x : facts) {
    used.insert(x.x);
    if (x.role) used.insert(x.y);
  }
  std::map<int, Term> term;
  int k = 0;
  for (int e : used)
    term[e] = f.fixed[e] ? Term::constant(f.names[e]) : Term::labeled_null("n" + std::to_string(++k));
  ABox a;
  for (const auto& x : facts) {
    if (x.role)
      a.add(Assertion::role_fact(Role{x.name, false}, term[x.x], term[x.y]));
    else
      a.add(Assertion::concept_fact(Concept::atomic(x.name), term[x.x]));
  }
  return a;
}

}  // namespace

SolutionVerdict universal_solution_plain(const KnowledgeBase& k1, const Mapping& m) {
  auto pos = is_sigma2_positive(k1, m);
  if (!pos.positive) return not_positive(pos);
  auto c = source_canonical(k1, m);
  ABox a2 = closure_abox(k1, m);
  FiniteInterpretation target = build_vabox(a2);
  for (const auto& t : k1.abox.terms())
    if (!t.null) target.ensure_constant(t.name);
  target.add_element("d", false);

  SolutionVerdict v;
  auto table = embeds_regular_into_finite(c, target, m.sigma2);
  if (!table) {
    v.answer = Tri::No;
    v.reason = "no model of K1 over dom(A2) and one fresh element agrees with the Sigma2 closure";
    return v;
  }
  v.model = image_model(c, *table, m.sigma2);
  v.forward = std::move(table);
  v.backward = embeds_finite_into_regular(build_vabox(a2), c, m.sigma2);
  v.answer = Tri::Yes;
  v.witness = a2;
  v.reason = "the Sigma2 closure of A1 is a universal solution";
  return v;
}

SolutionVerdict universal_solution_extended(const KnowledgeBase& k1, const Mapping& m,
                                            int depth_cap) {
  auto pos = is_sigma2_positive(k1, m);
  if (!pos.positive) return not_positive(pos);
  auto c = source_canonical(k1, m);
  const Signature& s2 = m.sigma2;
  SolutionVerdict v;
  for (int d = 0; d <= depth_cap; ++d) {
    auto f = materialize(c, d).reduct(s2);
    if (!embeds_regular_into_finite(c, f, s2)) continue;

    std::vector<Fact> facts;
    for (const auto& [a, ext] : f.concepts)
      for (int e : ext) facts.push_back({false, a, e, -1});
    for (const auto& [p, ext] : f.roles)
      for (const auto& [x, y] : ext) facts.push_back({true, p, x, y});
    std::sort(facts.begin(), facts.end(), [](const Fact& a, const Fact& b) {
      // prune deep facts first
      int da = std::max(a.x, a.y), db = std::max(b.x, b.y);
      return da != db ? da > db : a < b;
    });
    for (size_t i = 0; i < facts.size();) {
      auto trial = facts;
      trial.erase(trial.begin() + i);
      if (embeds_regular_into_finite(c, build_vabox(facts_to_abox(f, trial)), s2))
        facts = std::move(trial);
      else
        ++i;
    }
    ABox w = facts_to_abox(f, facts);
    auto vw = build_vabox(w);
    v.forward = embeds_regular_into_finite(c, vw, s2);
    v.backward = embeds_finite_into_regular(vw, c, s2);
    if (!v.forward || !v.backward) {
      v.answer = Tri::Unknown;
      v.reason = "internal: minimized witness lost a certificate";
      return v;
    }
    v.answer = Tri::Yes;
    v.witness = w;
    v.depth = d;
    v.reason = "a finite part of depth " + std::to_string(d) + " of the canonical model is a universal solution";
    return v;
  }
  v.answer = Tri::Unknown;
  v.reason = "no finite part of depth <= " + std::to_string(depth_cap) + " absorbs the canonical model";
  return v;
}

SolutionVerdict is_universal_solution(const KnowledgeBase& k1, const Mapping& m,
                                      const KnowledgeBase& k2) {
  auto pos = is_sigma2_positive(k1, m);
  if (!pos.positive) return not_positive(pos);
  SolutionVerdict v;
  v.answer = Tri::No;
  if (!tbox_trivial(k2.tbox)) {
    v.reason = "the candidate TBox is not equivalent to the empty TBox";
    return v;
  }
  for (const auto& x : k2.abox.assertions)
    if (!m.sigma2.covers(x)) {
      v.reason = "assertion " + x.str() + " is not over Sigma2";
      return v;
    }
  auto c = source_canonical(k1, m);
  auto vw = build_vabox(k2.abox);
  v.forward = embeds_regular_into_finite(c, vw, m.sigma2);
  if (!v.forward) {
    v.reason = "the canonical model of the source does not map into the candidate (not a solution)";
    return v;
  }
  v.backward = embeds_finite_into_regular(vw, c, m.sigma2);
  if (!v.backward) {
    v.reason = "the candidate does not map back into the canonical model of the source";
    return v;
  }
  v.answer = Tri::Yes;
  v.witness = k2.abox;
  v.reason = "homomorphically equivalent to the canonical model over Sigma2";
  return v;
}

bool certify(const KnowledgeBase& k1, const Mapping& m, const SolutionVerdict& v) {
  if (v.answer != Tri::Yes) return true;
  if (!v.witness || !v.forward) return false;
  auto c = source_canonical(k1, m);
  const Signature& s2 = m.sigma2;
  if (!verify_table(c, s2, *v.forward)) return false;
  auto vw = build_vabox(*v.witness);
  // The table target must carry exactly the witness facts.
  if (fact_strings(v.forward->target, s2) != fact_strings(vw, s2)) return false;
  if (v.backward && !verify_path_homomorphism(vw, c, s2, *v.backward)) return false;
  if (v.model) {
    TBox pos = unite(positive_part(k1.tbox), positive_part(m.t12));
    if (!satisfies(*v.model, pos) || !satisfies(*v.model, k1.abox)) return false;
    if (fact_strings(v.model->reduct(s2), s2) != fact_strings(vw, s2)) return false;
  }
  return true;
}

}  // namespace kbx
