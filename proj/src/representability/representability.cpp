#include "kbx/representability.h"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace kbx {

std::string BooleanCQ::str() const {
  std::string out;
  for (const auto& a : atoms) {
    if (!out.empty()) out += " and ";
    out += a.name + "(" + a.t1 + (a.role ? "," + a.t2 : "") + ")";
  }
  return out.empty() ? "true" : out;
}

std::string GeneratingPass::str() const {
  std::string out = "<";
  for (size_t i = 0; i < chain.size(); ++i) {
    if (i) out += ", ";
    out += chain[i].str();
    if (!labels[i].empty()) {
      out += " {";
      bool first = true;
      for (const auto& c : labels[i]) {
        out += (first ? "" : ", ") + c.str();
        first = false;
      }
      out += "}";
    }
    if (i + 1 < chain.size() && !edge_labels[i].empty()) {
      out += " -[";
      bool first = true;
      for (const auto& r : edge_labels[i]) {
        out += (first ? "" : ", ") + r.str();
        first = false;
      }
      out += "]->";
    }
  }
  return out + ">";
}

namespace {

Signature everything(const Mapping& m, const TBox& t1, const TBox& t2 = {}) {
  return m.sigma1.unite(m.sigma2)
      .unite(signature_of(t1))
      .unite(signature_of(m.t12))
      .unite(signature_of(t2));
}

void basic_terms(const Reasoner& rs, const Signature& sig, std::vector<Concept>& cs,
                 std::vector<Role>& rs_out) {
  for (const auto& c : rs.concepts())
    if (sig.covers(c)) cs.push_back(c);
  for (const auto& r : rs.roles())
    if (sig.covers(r)) rs_out.push_back(r);
}

KnowledgeBase single(const TBox& t, const Concept& b) {
  KnowledgeBase k{t, {}};
  k.abox.add(Assertion::concept_fact(b, Term::constant("o")));
  return k;
}

}  // namespace

RepresentationContext::RepresentationContext(const Mapping& m, const TBox& t1)
    : m_(m),
      t1_(t1),
      all_(everything(m, t1)),
      r1_(t1, all_),
      r112_(unite(t1, m.t12), all_),
      r12_(m.t12, all_) {
  basic_terms(r112_, m.sigma1, sc_, sr_);
  basic_terms(r112_, m.sigma2, tc_, tr_);
}

const CanonicalStructure& RepresentationContext::source_model(const Concept& b) const {
  auto it = models_.find(b);
  if (it != models_.end()) return *it->second;
  auto k = single(unite(positive_part(t1_), positive_part(m_.t12)), b);
  auto p = std::make_unique<CanonicalStructure>(k, all_);
  return *models_.emplace(b, std::move(p)).first->second;
}

bool RepresentationContext::closed_under_inclusion(const Concept& x, const Concept& y) const {
  if (x == y) return true;
  auto key = std::pair{x, y};
  if (auto it = incl_c_.find(key); it != incl_c_.end()) return it->second;
  bool ok = true;
  for (const auto& b : sc_) {
    if (!t1_consistent(b)) continue;
    if (r112_.concept_sub(b, x) && !r112_.concept_sub(b, y)) {
      ok = false;
      break;
    }
    if (!x.exists) continue;
    Role back = x.role().inverse();
    const auto& c = source_model(b);
    if (!c.state_type(0).count(Concept::some(back))) continue;
    bool found = false;
    for (int cls : c.gen(0))
      if (c.class_rtype(cls).count(back) && c.state_type(c.class_state(cls)).count(y)) found = true;
    if (!found) {
      ok = false;
      break;
    }
  }
  incl_c_[key] = ok;
  return ok;
}

bool RepresentationContext::closed_under_inclusion(const Role& x, const Role& y) const {
  if (x == y) return true;
  auto key = std::pair{x, y};
  if (auto it = incl_r_.find(key); it != incl_r_.end()) return it->second;
  bool ok = true;
  for (const auto& r : sr_) {
    if (t1_consistent(r) && r112_.role_sub(r, x) && !r112_.role_sub(r, y)) {
      ok = false;
      break;
    }
  }
  ok = ok && closed_under_inclusion(Concept::some(x), Concept::some(y)) &&
       closed_under_inclusion(Concept::some(x.inverse()), Concept::some(y.inverse()));
  incl_r_[key] = ok;
  return ok;
}

bool RepresentationContext::closed_under_disjointness(const Concept& x, const Concept& y) const {
  auto key = std::pair{x, y};
  if (auto it = disj_c_.find(key); it != disj_c_.end()) return it->second;
  bool ok = true;
  for (const auto& b : sc_) {
    for (const auto& c : sc_)
      if (r112_.concept_sub(b, x) && r112_.concept_sub(c, y) && r112_.pair_consistent(b, c)) {
        ok = false;
        break;
      }
    if (!ok) break;
  }
  for (size_t i = 0; ok && i < sc_.size(); ++i) {
    const auto& b = sc_[i];
    if (!t1_consistent(b) || !joint_consistent(b)) continue;
    const auto& c = source_model(b);
    for (int cls : c.gen(0)) {
      const auto& ty = c.state_type(c.class_state(cls));
      if (ty.count(x) && ty.count(y)) ok = false;
    }
  }
  disj_c_[key] = ok;
  return ok;
}

bool RepresentationContext::closed_under_disjointness(const Role& x, const Role& y) const {
  auto key = std::pair{x, y};
  if (auto it = disj_r_.find(key); it != disj_r_.end()) return it->second;
  bool ok = true;
  for (const auto& r : sr_) {
    for (const auto& q : sr_)
      if (r112_.role_sub(r, x) && r112_.role_sub(q, y) && r112_.pair_consistent(r, q)) {
        ok = false;
        break;
      }
    if (!ok) break;
  }
  for (size_t i = 0; ok && i < sc_.size(); ++i) {
    const auto& b = sc_[i];
    if (!t1_consistent(b) || !joint_consistent(b)) continue;
    const auto& c = source_model(b);
    for (int cls : c.gen(0)) {
      const auto& rt = c.class_rtype(cls);
      if ((rt.count(x) && rt.count(y)) || (rt.count(x.inverse()) && rt.count(y.inverse())))
        ok = false;
    }
  }
  disj_r_[key] = ok;
  return ok;
}

std::optional<Concept> RepresentationContext::inclusion_support(const Concept& c,
                                                                const Concept& b) const {
  for (const auto& cp : tc_)
    if (r12_.concept_sub(c, cp) && closed_under_inclusion(cp, b)) return cp;
  return std::nullopt;
}

std::optional<Role> RepresentationContext::inclusion_support(const Role& q, const Role& r) const {
  for (const auto& qp : tr_)
    if (r12_.role_sub(q, qp) && closed_under_inclusion(qp, r)) return qp;
  return std::nullopt;
}

std::optional<GeneratingPass> RepresentationContext::find_generating_pass(const Concept& b,
                                                                           int cls) const {
  const auto& c = source_model(b);
  const auto& g = c.gen(0);
  if (std::find(g.begin(), g.end(), cls) == g.end())
    throw std::invalid_argument("o does not generate the given witness");
  const Signature& xi = m_.sigma2;
  auto want_c = restrict(c.state_type(c.class_state(cls)), xi);
  auto want_r = restrict(c.class_rtype(cls), xi);

  // Supports for the final label at node `node`, if all exist.
  auto cover_node = [&](const Concept& node, std::map<Concept, Concept>& sup) {
    for (const auto& x : want_c) {
      auto s = inclusion_support(node, x);
      if (!s) return false;
      sup[x] = *s;
    }
    return true;
  };
  // Can the chain step from `node` to exists q-? Returns the label needed.
  auto step = [&](const Concept& node, const Role& q, std::optional<Concept>& sup) {
    Concept eq = Concept::some(q);
    sup.reset();
    if (eq == node) return true;
    if (!xi.covers(q)) return false;
    sup = inclusion_support(node, eq);
    return sup.has_value();
  };
  const auto& roles = r112_.roles();

  auto build = [&](const std::vector<Concept>& chain, const std::vector<std::optional<Concept>>& steps,
                   const std::map<Concept, Concept>& last, const std::map<Role, Role>& first_edge) {
    GeneratingPass p;
    p.chain = chain;
    size_t n = chain.size();
    p.labels.resize(n);
    p.support.resize(n);
    p.edge_labels.resize(n > 0 ? n - 1 : 0);
    p.edge_support.resize(p.edge_labels.size());
    for (size_t i = 0; i + 1 < n; ++i) {
      if (steps[i]) {
        Concept eq = Concept::some(chain[i + 1].role().inverse());
        p.labels[i].insert(eq);
        p.support[i][eq] = *steps[i];
      }
    }
    for (const auto& [x, s] : last) {
      p.labels[n - 1].insert(x);
      p.support[n - 1][x] = s;
    }
    if (!first_edge.empty()) {
      for (const auto& [r, s] : first_edge) {
        p.edge_labels[0].insert(r);
        p.edge_support[0][r] = s;
      }
    }
    return p;
  };

  if (!want_r.empty()) {
    // L(C0, Cn) is only nonempty for n = 1.
    for (const auto& q : roles) {
      std::optional<Concept> s;
      if (!step(b, q, s)) continue;
      Concept next = Concept::some(q.inverse());
      std::map<Concept, Concept> last;
      if (!cover_node(next, last)) continue;
      std::map<Role, Role> edge;
      bool ok = true;
      for (const auto& r : want_r) {
        auto es = inclusion_support(q, r);
        if (!es) {
          ok = false;
          break;
        }
        edge[r] = *es;
      }
      if (ok) return build({b, next}, {s}, last, edge);
    }
    return std::nullopt;
  }

  // Breadth-first over chain heads; the goal only depends on the head.
  struct Entry {
    Concept node;
    int parent;
    std::optional<Concept> step;  // label used to reach this node
  };
  std::vector<Entry> nodes{{b, -1, std::nullopt}};
  std::set<Concept> seen{b};
  for (size_t i = 0; i < nodes.size(); ++i) {
    std::map<Concept, Concept> last;
    if (cover_node(nodes[i].node, last)) {
      std::vector<Concept> chain;
      std::vector<std::optional<Concept>> steps;
      for (int j = static_cast<int>(i); j >= 0; j = nodes[j].parent) {
        chain.insert(chain.begin(), nodes[j].node);
        if (nodes[j].parent >= 0) steps.insert(steps.begin(), nodes[j].step);
      }
      return build(chain, steps, last, {});
    }
    for (const auto& q : roles) {
      std::optional<Concept> s;
      Concept cur = nodes[i].node;
      if (!step(cur, q, s)) continue;
      Concept next = Concept::some(q.inverse());
      if (!seen.insert(next).second) continue;
      nodes.push_back({next, static_cast<int>(i), s});
    }
  }
  return std::nullopt;
}

bool closed_under_inclusion(const Mapping& m, const TBox& t1, const Concept& x, const Concept& y) {
  return RepresentationContext(m, t1).closed_under_inclusion(x, y);
}
bool closed_under_inclusion(const Mapping& m, const TBox& t1, const Role& x, const Role& y) {
  return RepresentationContext(m, t1).closed_under_inclusion(x, y);
}
bool closed_under_disjointness(const Mapping& m, const TBox& t1, const Concept& x, const Concept& y) {
  return RepresentationContext(m, t1).closed_under_disjointness(x, y);
}
bool closed_under_disjointness(const Mapping& m, const TBox& t1, const Role& x, const Role& y) {
  return RepresentationContext(m, t1).closed_under_disjointness(x, y);
}

std::optional<GeneratingPass> find_generating_pass(const Mapping& m, const TBox& t1,
                                                   const Concept& b, const Role& r) {
  RepresentationContext ctx(m, t1);
  const auto& c = ctx.source_model(b);
  int cls = c.reasoner().class_of(r);
  return ctx.find_generating_pass(b, cls);
}

// ---------------------------------------------------------------------------
// counterexamples

namespace {

// B(e) as ABox facts; an existential uses `other` as the filler.
void realize(const Concept& b, const std::string& e, const std::string& other, ABox& a) {
  if (!b.exists) {
    a.add(Assertion::concept_fact(b, Term::constant(e)));
  } else {
    a.add(Assertion::role_fact(b.role(), Term::constant(e), Term::constant(other)));
  }
}

void role_atom(const Role& r, const std::string& x, const std::string& y, BooleanCQ& q) {
  q.atoms.push_back(r.inv ? QueryAtom{true, r.name, y, x} : QueryAtom{true, r.name, x, y});
}

void concept_atom(const Concept& c, const std::string& x, BooleanCQ& q, int& fresh) {
  if (!c.exists)
    q.atoms.push_back({false, c.name, x, ""});
  else
    role_atom(c.role(), x, "?z" + std::to_string(++fresh), q);
}

std::string piece_of(const ABox& a) {
  static const char* names[] = {"n", "m", "k", "l", "p", "q"};
  std::map<std::string, std::string> ren;
  auto nm = [&](const Term& t) {
    auto it = ren.find(t.name);
    if (it != ren.end()) return it->second;
    std::string n = ren.size() < 6 ? names[ren.size()] : "x" + std::to_string(ren.size());
    ren[t.name] = n;
    return n;
  };
  std::string out;
  for (const auto& x : a.assertions) {
    if (!out.empty()) out += ", ";
    if (x.is_role) {
      std::string u = nm(x.t1);
      out += x.r.name + "(" + u + "," + nm(x.t2) + ")";
    }
    else
      out += x.c.str() + "(" + nm(x.t1) + ")";
  }
  return "<" + out + ">";
}

// Atom over a constant that does not occur in `a`.
BooleanCQ fresh_atom(const RepresentationContext& ctx, const ABox& a) {
  std::set<std::string> used;
  for (const auto& t : a.terms()) used.insert(t.name);
  std::string z;
  for (const char* cand : {"b", "c", "d", "e", "f"})
    if (!used.count(cand)) {
      z = cand;
      break;
    }
  BooleanCQ q;
  for (const auto& c : ctx.target_concepts())
    if (!c.exists) {
      q.atoms.push_back({false, c.name, z, ""});
      return q;
    }
  if (!ctx.target_roles().empty()) q.atoms.push_back({true, ctx.target_roles().front().name, z, z});
  return q;
}

Counterexample make(ABox a, BooleanCQ q, bool source, std::string cond) {
  Counterexample ce;
  ce.piece = piece_of(a);
  ce.abox = std::move(a);
  ce.query = std::move(q);
  ce.source_entails = source;
  ce.condition = std::move(cond);
  return ce;
}

RepresentationVerdict no(Counterexample ce, std::string reason) {
  RepresentationVerdict v;
  v.answer = Tri::No;
  v.reason = std::move(reason);
  v.counterexample = std::move(ce);
  return v;
}

// Element and filler names for a single source concept, in the style
// A1 = {B(a)} or A1 = {P(b,c)}.
std::pair<std::string, std::string> single_names(const Concept& b) {
  if (!b.exists) return {"a", "b"};
  return b.inv ? std::pair<std::string, std::string>{"c", "b"}
               : std::pair<std::string, std::string>{"b", "c"};
}

// Xi roles holding on the realizing edge of an existential on both sides.
void shared_edge(const RepresentationContext& ctx, const Concept& b, const std::string& e,
                 const std::string& other, BooleanCQ& q) {
  if (!b.exists) return;
  for (const auto& r : ctx.target_roles())
    if (!r.inv && ctx.r12().role_sub(Role{b.name, false}, r)) role_atom(r, e, other, q);
}

struct TargetSide {
  Reasoner r2;
  TBox pos;
  Signature all;
};

}  // namespace

RepresentationVerdict is_ucq_representation(const Mapping& m, const TBox& t1, const TBox& t2) {
  RepresentationVerdict v;
  for (const auto& ax : t2)
    if (!m.sigma2.covers(ax)) {
      v.answer = Tri::No;
      v.reason = "axiom " + ax.str() + " of the candidate is not over the target signature";
      return v;
    }
  RepresentationContext ctx(m, t1);
  Signature all = everything(m, t1, t2);
  Reasoner r2(unite(t2, positive_part(m.t12)), all);
  TBox tpos = unite(positive_part(t2), positive_part(m.t12));
  const auto& sc = ctx.source_concepts();
  const auto& sr = ctx.source_roles();
  const auto& r112 = ctx.r112();
  const auto& r12 = ctx.r12();

  // Consistency agreement. The target side is consistent when a solution
  // exists (T12 with its disjointness) and T2 with the solution is consistent.
  for (size_t i = 0; i < sc.size(); ++i)
    for (size_t j = i; j < sc.size(); ++j) {
      const auto &b = sc[i], &c = sc[j];
      if (!ctx.r1().pair_consistent(b, c)) continue;
      bool lhs = r112.pair_consistent(b, c);
      bool rhs = r12.pair_consistent(b, c) && r2.pair_consistent(b, c);
      if (lhs == rhs) continue;
      ABox a;
      realize(b, "a", "b", a);
      realize(c, "a", "c", a);
      return no(make(a, fresh_atom(ctx, a), !lhs, "concept consistency"),
                b.str() + " and " + c.str() + " are " + (lhs ? "" : "in") +
                    "consistent with T1 u T12 but " + (rhs ? "" : "in") +
                    "consistent on the target side");
    }
  for (size_t i = 0; i < sr.size(); ++i)
    for (size_t j = i; j < sr.size(); ++j) {
      const auto &r = sr[i], &q = sr[j];
      if (!ctx.r1().pair_consistent(r, q)) continue;
      bool lhs = r112.pair_consistent(r, q);
      bool rhs = r12.pair_consistent(r, q) && r2.pair_consistent(r, q);
      if (lhs == rhs) continue;
      ABox a;
      a.add(Assertion::role_fact(r, Term::constant("a"), Term::constant("b")));
      a.add(Assertion::role_fact(q, Term::constant("a"), Term::constant("b")));
      return no(make(a, fresh_atom(ctx, a), !lhs, "role consistency"),
                r.str() + " and " + q.str() + " disagree on consistency");
    }

  // Inclusion agreement.
  for (const auto& b : sc) {
    if (!ctx.t1_consistent(b) || !ctx.joint_consistent(b)) continue;
    for (const auto& bp : ctx.target_concepts()) {
      bool lhs = r112.concept_sub(b, bp);
      bool rhs = r2.concept_sub(b, bp);
      if (lhs == rhs) continue;
      auto [e, other] = single_names(b);
      ABox a;
      realize(b, e, other, a);
      BooleanCQ q;
      int fresh = 0;
      shared_edge(ctx, b, b.inv ? other : e, b.inv ? e : other, q);
      concept_atom(bp, e, q, fresh);
      return no(make(a, q, lhs, "concept inclusion"),
                std::string(lhs ? "T1 u T12" : "T2 u T12") + " derives " + b.str() + " [= " +
                    bp.str() + " but the other side does not");
    }
  }
  for (const auto& r : sr) {
    if (!ctx.t1_consistent(r) || !ctx.joint_consistent(r)) continue;
    for (const auto& rp : ctx.target_roles()) {
      bool lhs = r112.role_sub(r, rp);
      bool rhs = r2.role_sub(r, rp);
      if (lhs == rhs) continue;
      ABox a;
      a.add(Assertion::role_fact(r, Term::constant("b"), Term::constant("c")));
      BooleanCQ q;
      role_atom(rp, "b", "c", q);
      return no(make(a, q, lhs, "role inclusion"),
                std::string(lhs ? "T1 u T12" : "T2 u T12") + " derives " + r.str() + " [= " +
                    rp.str() + " but the other side does not");
    }
  }

  // Witness containment, both directions.
  const Signature& xi = m.sigma2;
  auto matched = [&](const CanonicalStructure& from, int cls, const CanonicalStructure& to) {
    auto want_c = restrict(from.state_type(from.class_state(cls)), xi);
    auto want_r = restrict(from.class_rtype(cls), xi);
    auto has = [&](int s) {
      const auto& ty = to.state_type(s);
      return std::includes(ty.begin(), ty.end(), want_c.begin(), want_c.end());
    };
    if (want_r.empty()) {
      if (has(0)) return true;
      for (int s : to.reachable_states())
        if (has(s)) return true;
      return false;
    }
    for (int c2 : to.gen(0)) {
      const auto& rt = to.class_rtype(c2);
      if (std::includes(rt.begin(), rt.end(), want_r.begin(), want_r.end()) &&
          has(to.class_state(c2)))
        return true;
    }
    return false;
  };
  auto witness_query = [&](const CanonicalStructure& from, int cls) {
    BooleanCQ q;
    int fresh = 0;
    for (const auto& r : restrict(from.class_rtype(cls), xi)) role_atom(r, "a", "?y", q);
    for (const auto& c : restrict(from.state_type(from.class_state(cls)), xi))
      concept_atom(c, "?y", q, fresh);
    return q;
  };
  for (int dir = 0; dir < 2; ++dir) {
    for (const auto& b : sc) {
      if (!ctx.t1_consistent(b) || !ctx.joint_consistent(b)) continue;
      const auto& src = ctx.source_model(b);
      std::optional<CanonicalStructure> tgt;
      try {
        tgt.emplace(single(tpos, b), all);
      } catch (const InconsistentKB&) {
        continue;  // ruled out by the consistency agreement above
      }
      const auto& from = dir == 0 ? src : *tgt;
      const auto& to = dir == 0 ? *tgt : src;
      for (int cls : from.gen(0)) {
        if (matched(from, cls, to)) continue;
        ABox a;
        a.add(Assertion::concept_fact(b, Term::constant("a")));
        const Role& rep = from.reasoner().classes()[cls].representative;
        return no(make(a, witness_query(from, cls), dir == 0,
                       dir == 0 ? "source witness" : "target witness"),
                  "the witness for " + rep.str() + " below " + b.str() + " on the " +
                      (dir == 0 ? "source" : "target") + " side has no counterpart");
      }
    }
  }
  v.answer = Tri::Yes;
  v.reason = "all conditions hold";
  return v;
}

RepresentationVerdict representation_exists(const Mapping& m, const TBox& t1) {
  RepresentationContext ctx(m, t1);
  const auto& sc = ctx.source_concepts();
  const auto& sr = ctx.source_roles();
  const auto& r112 = ctx.r112();
  const auto& r12 = ctx.r12();
  TBox t2;
  RepresentationVerdict v;
  v.answer = Tri::No;
  auto add = [&](Axiom ax) {
    bool taut = !ax.negated && (ax.is_role ? ax.lr == ax.rr : ax.lc == ax.rc);
    if (!taut) t2.insert(std::move(ax));
  };

  // (i) concept inclusions
  for (const auto& b : sc) {
    if (!ctx.t1_consistent(b) || !ctx.joint_consistent(b)) continue;
    for (const auto& bp : ctx.target_concepts()) {
      if (!r112.concept_sub(b, bp)) continue;
      auto cp = ctx.inclusion_support(b, bp);
      if (!cp) {
        v.reason = "no target concept carries " + b.str() + " [= " + bp.str();
        return v;
      }
      add(Axiom::concept_incl(*cp, bp));
    }
  }
  // (ii) role inclusions
  for (const auto& r : sr) {
    if (!ctx.t1_consistent(r) || !ctx.joint_consistent(r)) continue;
    for (const auto& rp : ctx.target_roles()) {
      if (!r112.role_sub(r, rp)) continue;
      auto qp = ctx.inclusion_support(r, rp);
      if (!qp) {
        v.reason = "no target role carries " + r.str() + " [= " + rp.str();
        return v;
      }
      add(Axiom::role_incl(*qp, rp));
    }
  }
  // (iii) generating passes
  for (const auto& b : sc) {
    if (!ctx.t1_consistent(b) || !ctx.joint_consistent(b)) continue;
    const auto& c = ctx.source_model(b);
    for (int cls : c.gen(0)) {
      auto pass = ctx.find_generating_pass(b, cls);
      if (!pass) {
        v.reason = "no generating pass for the witness of " +
                   c.reasoner().classes()[cls].representative.str() + " below " + b.str();
        return v;
      }
      for (const auto& sup : pass->support)
        for (const auto& [label, from] : sup) add(Axiom::concept_incl(from, label));
      for (const auto& sup : pass->edge_support)
        for (const auto& [label, from] : sup) add(Axiom::role_incl(from, label));
    }
  }
  // (iv) concept pairs made inconsistent by the mapping
  for (size_t i = 0; i < sc.size(); ++i)
    for (size_t j = i; j < sc.size(); ++j) {
      const auto &b1 = sc[i], &b2 = sc[j];
      if (!ctx.r1().pair_consistent(b1, b2) || r112.pair_consistent(b1, b2)) continue;
      if (!r12.pair_consistent(b1, b2)) continue;  // no solution exists anyway
      std::optional<Axiom> found;
      std::vector<Concept> pair{b1, b2};
      for (const auto& b : pair)
        for (const auto& c : pair)
          for (const auto& bp : ctx.target_concepts())
            for (const auto& cp : ctx.target_concepts())
              if (!found && r12.concept_sub(b, bp) && r12.concept_sub(c, cp) &&
                  ctx.closed_under_disjointness(bp, cp))
                found = Axiom::concept_incl(bp, cp, true);
      for (const auto& e : pair) {
        if (found || !e.exists) continue;
        Concept back = Concept::some(e.role().inverse());
        for (const auto& bp : ctx.target_concepts())
          for (const auto& cp : ctx.target_concepts())
            if (!found && r12.concept_sub(back, bp) && r12.concept_sub(back, cp) &&
                ctx.closed_under_disjointness(bp, cp))
              found = Axiom::concept_incl(bp, cp, true);
        for (const auto& rp : ctx.target_roles())
          for (const auto& qp : ctx.target_roles())
            if (!found && r12.role_sub(e.role(), rp) && r12.role_sub(e.role(), qp) &&
                ctx.closed_under_disjointness(rp, qp))
              found = Axiom::role_incl(rp, qp, true);
      }
      if (!found) {
        v.reason = "the inconsistency of " + b1.str() + " and " + b2.str() +
                   " cannot be reflected in the target";
        return v;
      }
      add(*found);
    }
  // (v) role pairs made inconsistent by the mapping
  for (size_t i = 0; i < sr.size(); ++i)
    for (size_t j = i; j < sr.size(); ++j) {
      const auto &r1 = sr[i], &r2 = sr[j];
      if (!ctx.r1().pair_consistent(r1, r2) || r112.pair_consistent(r1, r2)) continue;
      if (!r12.pair_consistent(r1, r2)) continue;
      std::optional<Axiom> found;
      std::vector<Role> pair{r1, r2};
      for (const auto& r : pair)
        for (const auto& q : pair)
          for (const auto& rp : ctx.target_roles())
            for (const auto& qp : ctx.target_roles())
              if (!found && r12.role_sub(r, rp) && r12.role_sub(q, qp) &&
                  ctx.closed_under_disjointness(rp, qp))
                found = Axiom::role_incl(rp, qp, true);
      for (int inv = 0; inv < 2 && !found; ++inv) {
        std::vector<Concept> ends{Concept::some(inv ? r1.inverse() : r1),
                                  Concept::some(inv ? r2.inverse() : r2)};
        for (const auto& b : ends)
          for (const auto& c : ends)
            for (const auto& bp : ctx.target_concepts())
              for (const auto& cp : ctx.target_concepts())
                if (!found && r12.concept_sub(b, bp) && r12.concept_sub(c, cp) &&
                    ctx.closed_under_disjointness(bp, cp))
                  found = Axiom::concept_incl(bp, cp, true);
      }
      if (!found) {
        v.reason = "the inconsistency of " + r1.str() + " and " + r2.str() +
                   " cannot be reflected in the target";
        return v;
      }
      add(*found);
    }
  v.answer = Tri::Yes;
  v.synthesized = t2;
  v.reason = "all conditions hold";
  return v;
}

std::optional<TBox> synthesize_representation(const Mapping& m, const TBox& t1) {
  return representation_exists(m, t1).synthesized;
}

}  // namespace kbx
