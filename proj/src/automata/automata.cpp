#include "kbx/automata.h"

#include <algorithm>
#include <sstream>

namespace kbx {

using PBF = PositiveBooleanFormula;

PBF PBF::all(std::vector<PBF> fs) {
  std::vector<PBF> keep;
  for (auto& f : fs) {
    if (f.kind == Kind::False) return falsity();
    if (f.kind == Kind::True) continue;
    if (f.kind == Kind::And)
      for (auto& g : f.kids) keep.push_back(std::move(g));
    else
      keep.push_back(std::move(f));
  }
  if (keep.empty()) return truth();
  if (keep.size() == 1) return keep.front();
  return {Kind::And, 0, -1, std::move(keep)};
}

PBF PBF::any(std::vector<PBF> fs) {
  std::vector<PBF> keep;
  for (auto& f : fs) {
    if (f.kind == Kind::True) return truth();
    if (f.kind == Kind::False) continue;
    if (f.kind == Kind::Or)
      for (auto& g : f.kids) keep.push_back(std::move(g));
    else
      keep.push_back(std::move(f));
  }
  if (keep.empty()) return falsity();
  if (keep.size() == 1) return keep.front();
  return {Kind::Or, 0, -1, std::move(keep)};
}

std::string PBF::str(const std::vector<std::string>& names) const {
  switch (kind) {
    case Kind::True: return "true";
    case Kind::False: return "false";
    case Kind::Atom: return "(" + std::to_string(dir) + "," + names[state] + ")";
    case Kind::And:
    case Kind::Or: {
      std::string out;
      for (const auto& k : kids) {
        if (!out.empty()) out += kind == Kind::And ? " & " : " | ";
        bool wrap = k.kind == Kind::Or || k.kind == Kind::And;
        out += wrap ? "[" + k.str(names) + "]" : k.str(names);
      }
      return out;
    }
  }
  return "";
}

namespace sym {
std::string basic(const Concept& b) { return b.str(); }
std::string role(const Role& r) { return r.str(); }
std::string individual(const std::string& a) { return "=" + a; }
std::string pair(const std::string& p, int i, int j) {
  return p + "@" + std::to_string(i) + "," + std::to_string(j);
}
}  // namespace sym

bool Guard::holds(const Letter& s, const std::vector<std::string>& inds) const {
  for (const auto& x : all)
    if (!s.count(x)) return false;
  for (const auto& x : none)
    if (s.count(x)) return false;
  if (!not_all.empty()) {
    bool missing = false;
    for (const auto& x : not_all)
      if (!s.count(x)) missing = true;
    if (!missing) return false;
  }
  if (individuals == Individuals::Any) return true;
  int count = 0;
  bool mine = false;
  for (size_t i = 0; i < inds.size(); ++i)
    if (s.count(inds[i])) {
      ++count;
      if (static_cast<int>(i) + 1 == individual) mine = true;
    }
  if (individuals == Individuals::None) return count == 0;
  return count == 1 && mine;
}

std::string Guard::str(const std::vector<std::string>& names) const {
  std::vector<std::string> parts;
  auto join = [](const std::vector<std::string>& v) {
    std::string o;
    for (const auto& x : v) o += (o.empty() ? "" : ",") + x;
    return o;
  };
  if (!all.empty()) parts.push_back("has " + join(all));
  if (!none.empty()) parts.push_back("lacks " + join(none));
  if (!not_all.empty()) parts.push_back("lacks one of " + join(not_all));
  if (individuals == Individuals::None) parts.push_back("no individual");
  if (individuals == Individuals::Exactly) parts.push_back("individual " + names[individual - 1]);
  if (parts.empty()) return "any";
  std::string o;
  for (const auto& p : parts) o += (o.empty() ? "" : "; ") + p;
  return o;
}

int AutomatonLayout::f(const Role& r) const {
  for (size_t i = 0; i < roles.size(); ++i)
    if (roles[i] == r) return static_cast<int>(i) + 1;
  return 0;
}

int AutomatonLayout::individual_index(const std::string& a) const {
  for (size_t i = 0; i < individuals.size(); ++i)
    if (individuals[i] == a) return static_cast<int>(i) + 1;
  return 0;
}

std::vector<std::string> AutomatonLayout::individual_symbols() const {
  std::vector<std::string> out;
  for (const auto& a : individuals) out.push_back(sym::individual(a));
  return out;
}

int TreeAutomaton::state(const std::string& n) const {
  for (size_t i = 0; i < states.size(); ++i)
    if (states[i] == n) return static_cast<int>(i);
  return -1;
}

PBF TreeAutomaton::delta(int q, const Letter& s) const {
  auto inds = layout.individual_symbols();
  std::vector<PBF> parts;
  for (const auto& e : transitions[q])
    if (e.guard.holds(s, inds)) parts.push_back(e.formula);
  if (parts.empty()) return PBF::falsity();
  return PBF::all(std::move(parts));
}

std::string TreeAutomaton::dump() const {
  std::ostringstream o;
  o << "automaton " << name << "\n";
  o << "kind "
    << (kind == Kind::TwoWayAlternating ? "two-way alternating" : "one-way nondeterministic")
    << "\n";
  o << "branching " << layout.n << "\n";
  for (size_t i = 0; i < layout.individuals.size(); ++i) {
    const auto& a = layout.individuals[i];
    bool pad = std::count(layout.pad_constants.begin(), layout.pad_constants.end(), a) > 0;
    o << "individual " << i + 1 << " " << a << (pad ? " padding" : "") << "\n";
  }
  for (size_t i = 0; i < layout.roles.size(); ++i) {
    const auto& r = layout.roles[i];
    bool pad = std::count(layout.pad_roles.begin(), layout.pad_roles.end(), r.name) > 0;
    o << "role " << i + 1 << " " << r.str() << (pad ? " padding" : "") << "\n";
  }
  o << "alphabet " << alphabet.size() << "\n";
  for (const auto& s : alphabet) o << "  " << s << "\n";
  o << "states " << states.size() << "\n";
  for (const auto& s : states) o << "  " << s << "\n";
  o << "initial " << states[initial] << "\n";
  o << "accepting";
  if (std::all_of(accepting.begin(), accepting.end(), [](char c) { return c; })) {
    o << " all\n";
  } else {
    for (size_t i = 0; i < states.size(); ++i)
      if (accepting[i]) o << " " << states[i];
    o << "\n";
  }
  for (size_t q = 0; q < states.size(); ++q)
    for (const auto& e : transitions[q])
      o << "delta " << states[q] << " [" << e.guard.str(layout.individuals)
        << "] = " << e.formula.str(states) << "\n";
  return o.str();
}

bool LabeledTreePrefix::contains(const std::vector<int>& x) const {
  if (static_cast<int>(x.size()) > depth) return false;
  for (int c : x)
    if (c < 1 || c > k) return false;
  return true;
}

const Letter& LabeledTreePrefix::label(const std::vector<int>& x) const {
  static const Letter empty;
  auto it = labels.find(x);
  return it == labels.end() ? empty : it->second;
}

std::string to_string(RunResult r) {
  switch (r) {
    case RunResult::Accepts: return "accepts";
    case RunResult::Rejects: return "rejects";
    case RunResult::Inconclusive: return "inconclusive";
  }
  return "";
}

// ---------------------------------------------------------------------------
// layout

AutomataContext::AutomataContext(const KnowledgeBase& k, const Signature& extra) : kb_(k) {
  canon_ = std::make_unique<CanonicalStructure>(k, extra);
  int nc = canon_->num_constants();
  int nr = static_cast<int>(canon_->reasoner().roles().size());
  Signature sig = extra;
  while (nc != nr) {
    if (nc < nr) {
      layout_.pad_constants.push_back("$c" + std::to_string(layout_.pad_constants.size() + 1));
      ++nc;
    } else {
      std::string p = "$p" + std::to_string(layout_.pad_roles.size() + 1);
      layout_.pad_roles.push_back(p);
      sig.roles.insert(p);
      nr += 2;
    }
  }
  if (!layout_.pad_roles.empty()) canon_ = std::make_unique<CanonicalStructure>(k, sig);
  const auto& rs = canon_->reasoner();
  layout_.n = nc;
  for (int i = 0; i < canon_->num_constants(); ++i)
    layout_.individuals.push_back(canon_->term(i).str());
  for (const auto& p : layout_.pad_constants) layout_.individuals.push_back(p);
  layout_.roles = rs.roles();
  layout_.concepts = rs.concepts();
  for (const auto& r : rs.roles())
    if (!r.inv) layout_.role_names.push_back(r.name);
}

namespace {

struct Builder {
  TreeAutomaton a;
  std::map<std::string, int> ids;

  int add(const std::string& n) {
    auto it = ids.find(n);
    if (it != ids.end()) return it->second;
    int id = static_cast<int>(a.states.size());
    a.states.push_back(n);
    a.transitions.emplace_back();
    ids[n] = id;
    return id;
  }
  int operator[](const std::string& n) const { return ids.at(n); }
  void on(int q, Guard g, PBF f) { a.transitions[q].push_back({std::move(g), std::move(f)}); }
};

Guard any_letter() { return Guard{}; }
Guard with(std::vector<std::string> s) {
  Guard g;
  g.all = std::move(s);
  return g;
}
Guard without(std::vector<std::string> s) {
  Guard g;
  g.none = std::move(s);
  return g;
}
Guard lacking_one(std::vector<std::string> s) {
  Guard g;
  g.not_all = std::move(s);
  return g;
}
Guard no_individual() {
  Guard g;
  g.individuals = Guard::Individuals::None;
  return g;
}
Guard exactly(int i) {
  Guard g;
  g.individuals = Guard::Individuals::Exactly;
  g.individual = i;
  return g;
}

PBF at(int dir, int q) { return PBF::atom(dir, q); }

// N u B u R u P, in a fixed order.
std::vector<std::string> symbols(const AutomatonLayout& l) {
  std::vector<std::string> out;
  for (const auto& a : l.individuals) out.push_back(sym::individual(a));
  for (const auto& b : l.concepts) out.push_back(sym::basic(b));
  for (const auto& r : l.roles) out.push_back(sym::role(r));
  for (const auto& p : l.role_names)
    for (int i = 1; i <= l.n; ++i)
      for (int j = 1; j <= l.n; ++j) out.push_back(sym::pair(p, i, j));
  return out;
}

std::vector<std::string> alphabet(const AutomatonLayout& l) {
  auto s = symbols(l);
  s.push_back(sym::root);
  s.push_back(sym::good);
  return s;
}

bool entails_pair(const CanonicalStructure& c, const std::string& p, int i, int j) {
  // i, j are 1-based layout indices; padding constants entail nothing.
  if (i > c.num_constants() || j > c.num_constants()) return false;
  return c.const_rtype(i - 1, j - 1).count(Role{p, false}) > 0;
}

bool entails_concept(const CanonicalStructure& c, const Concept& b, int i) {
  if (i > c.num_constants()) return false;
  return c.state_type(i - 1).count(b) > 0;
}

}  // namespace

TreeAutomaton build_acan(const AutomataContext& ctx) {
  const auto& l = ctx.layout();
  const auto& c = ctx.canonical();
  const auto& rs = c.reasoner();
  Builder b;
  b.a.name = "A_can";
  b.a.layout = l;
  b.a.alphabet = alphabet(l);
  auto syms = symbols(l);
  int q0 = b.add("q0"), qs = b.add("qs"), qnr = b.add("q*~r"), qd = b.add("qd");
  for (const auto& x : syms) {
    b.add("q*[" + x + "]");
    b.add("q*~[" + x + "]");
  }
  for (const auto& r : l.roles) {
    b.add("q[exists " + r.str() + "]");
    b.add("q[" + r.str() + "]");
  }
  for (const auto& r : l.roles) b.add("qng[exists " + r.str() + "]");
  auto pos = [&](const std::string& x) { return b["q*[" + x + "]"]; };
  auto neg = [&](const std::string& x) { return b["q*~[" + x + "]"]; };
  auto qex = [&](const Role& r) { return b["q[exists " + r.str() + "]"]; };
  auto qr = [&](const Role& r) { return b["q[" + r.str() + "]"]; };
  auto qng = [&](const Role& r) { return b["qng[exists " + r.str() + "]"]; };
  int n = l.n;

  // Witness classes generated below a state, as representatives.
  auto generated = [&](int state) {
    std::set<Role> out;
    for (int cls : c.gen(state)) out.insert(rs.classes()[cls].representative);
    return out;
  };

  // 1
  {
    std::vector<PBF> conj;
    for (int i = 1; i <= n; ++i) {
      conj.push_back(at(i, qs));
      conj.push_back(at(i, qnr));
      conj.push_back(at(i, pos(sym::individual(l.individuals[i - 1]))));
      for (int j = 1; j <= n; ++j)
        if (j != i) conj.push_back(at(i, neg(sym::individual(l.individuals[j - 1]))));
      for (int j = 1; j <= n; ++j)
        for (const auto& p : l.role_names) {
          auto s = sym::pair(p, i, j);
          conj.push_back(at(0, entails_pair(c, p, i, j) ? pos(s) : neg(s)));
        }
      for (const auto& bc : l.concepts) {
        auto s = sym::basic(bc);
        conj.push_back(at(i, entails_concept(c, bc, i) ? pos(s) : neg(s)));
      }
      std::set<Role> gen;
      if (i <= c.num_constants()) gen = generated(i - 1);
      for (const auto& r : l.roles) conj.push_back(at(i, gen.count(r) ? qex(r) : qng(r)));
    }
    b.on(q0, with({sym::root}), PBF::all(std::move(conj)));
  }
  // 2
  {
    std::vector<PBF> conj;
    for (int i = 1; i <= n; ++i) {
      conj.push_back(at(i, qs));
      conj.push_back(at(i, qnr));
      for (int j = 1; j <= n; ++j) conj.push_back(at(i, neg(sym::individual(l.individuals[j - 1]))));
      std::vector<PBF> disj{at(i, qd)};
      for (const auto& r : l.roles) disj.push_back(at(i, pos(sym::role(r))));
      conj.push_back(PBF::any(std::move(disj)));
    }
    b.on(qs, any_letter(), PBF::all(std::move(conj)));
  }
  // 3
  {
    std::vector<PBF> conj;
    for (const auto& r : l.roles) conj.push_back(at(0, neg(sym::role(r))));
    for (int i = 1; i <= n; ++i) conj.push_back(at(i, qd));
    b.on(qd, any_letter(), PBF::all(std::move(conj)));
  }
  for (const auto& r : l.roles) {
    // 4
    std::vector<PBF> conj;
    for (const auto& r2 : l.roles) conj.push_back(at(l.f(r), neg(sym::role(r2))));
    b.on(qng(r), any_letter(), PBF::all(std::move(conj)));
    // 5
    b.on(qex(r), any_letter(), at(l.f(r), qr(r)));
    // 6
    std::vector<PBF> c6;
    auto sup = rs.supers(r);
    for (const auto& r2 : l.roles)
      c6.push_back(at(0, sup.count(r2) ? pos(sym::role(r2)) : neg(sym::role(r2))));
    auto ty = rs.supers(Concept::some(r.inverse()));
    for (const auto& bc : l.concepts)
      c6.push_back(at(0, ty.count(bc) ? pos(sym::basic(bc)) : neg(sym::basic(bc))));
    auto gen = generated(c.class_state(rs.class_of(r)));
    for (const auto& s : l.roles) c6.push_back(at(0, gen.count(s) ? qex(s) : qng(s)));
    b.on(qr(r), no_individual(), PBF::all(std::move(c6)));
  }
  // 7
  b.on(qnr, without({sym::root}), PBF::truth());
  b.on(qnr, with({sym::root}), PBF::falsity());
  // 8
  for (const auto& x : syms) {
    b.on(pos(x), with({x}), PBF::truth());
    b.on(pos(x), without({x}), PBF::falsity());
    b.on(neg(x), without({x}), PBF::truth());
    b.on(neg(x), with({x}), PBF::falsity());
  }
  b.a.initial = q0;
  b.a.accepting.assign(b.a.states.size(), 1);
  return b.a;
}

TreeAutomaton build_amod(const AutomataContext& ctx) {
  const auto& l = ctx.layout();
  const auto& c = ctx.canonical();
  const auto& rs = c.reasoner();
  Builder b;
  b.a.name = "A_mod";
  b.a.layout = l;
  b.a.alphabet = alphabet(l);
  auto syms = symbols(l);
  int q0 = b.add("q0");
  for (const auto& x : syms) b.add("q[" + x + "]");
  auto q = [&](const std::string& x) { return b["q[" + x + "]"]; };
  int n = l.n;
  const std::vector<std::string> rg{sym::root, sym::good};

  // 1
  {
    std::vector<PBF> conj;
    for (int i = 1; i <= n; ++i) {
      conj.push_back(at(i, q(sym::individual(l.individuals[i - 1]))));
      for (const auto& bc : l.concepts)
        if (!bc.exists && entails_concept(c, bc, i)) conj.push_back(at(i, q(sym::basic(bc))));
      for (int j = 1; j <= n; ++j)
        for (const auto& p : l.role_names)
          if (entails_pair(c, p, i, j)) conj.push_back(at(0, q(sym::pair(p, i, j))));
    }
    b.on(q0, with(rg), PBF::all(std::move(conj)));
  }
  // 2
  for (const auto& p : l.role_names)
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        b.on(q(sym::pair(p, i, j)), with(rg),
             PBF::all({at(i, q(sym::basic(Concept::some(Role{p, false})))),
                       at(j, q(sym::basic(Concept::some(Role{p, true}))))}));
  // 3
  for (const auto& p : l.role_names)
    for (int i = 1; i <= n; ++i) {
      std::vector<PBF> fwd, bwd;
      for (int j = 1; j <= n; ++j) {
        fwd.push_back(at(j, q(sym::role(Role{p, false}))));
        bwd.push_back(at(j, q(sym::role(Role{p, true}))));
      }
      for (int j = 1; j <= n; ++j) {
        fwd.push_back(at(-1, q(sym::pair(p, i, j))));
        bwd.push_back(at(-1, q(sym::pair(p, j, i))));
      }
      b.on(q(sym::basic(Concept::some(Role{p, false}))), exactly(i), PBF::any(std::move(fwd)));
      b.on(q(sym::basic(Concept::some(Role{p, true}))), exactly(i), PBF::any(std::move(bwd)));
    }
  for (const auto& r : l.roles) {
    // 4
    std::vector<PBF> disj{at(0, q(sym::role(r.inverse())))};
    for (int i = 1; i <= n; ++i) disj.push_back(at(i, q(sym::role(r))));
    b.on(q(sym::basic(Concept::some(r))), no_individual(), PBF::any(std::move(disj)));
    // 5
    std::vector<PBF> conj;
    for (const auto& r2 : rs.supers(r)) conj.push_back(at(0, q(sym::role(r2))));
    conj.push_back(at(0, q(sym::basic(Concept::some(r.inverse())))));
    conj.push_back(at(-1, q(sym::basic(Concept::some(r)))));
    b.on(q(sym::role(r)), no_individual(), PBF::all(std::move(conj)));
  }
  // 6
  for (const auto& bc : l.concepts) {
    std::vector<PBF> conj;
    for (const auto& b2 : rs.supers(bc)) conj.push_back(at(0, q(sym::basic(b2))));
    b.on(q(sym::basic(bc)), any_letter(), PBF::all(std::move(conj)));
  }
  // 7
  for (const auto& x : syms) {
    b.on(q(x), with({sym::good, x}), PBF::truth());
    b.on(q(x), lacking_one({sym::good, x}), PBF::falsity());
  }
  b.a.initial = q0;
  b.a.accepting.assign(b.a.states.size(), 1);
  return b.a;
}

TreeAutomaton build_afin(const AutomataContext& ctx) {
  const auto& l = ctx.layout();
  Builder b;
  b.a.name = "A_fin";
  b.a.kind = TreeAutomaton::Kind::OneWayNondeterministic;
  b.a.layout = l;
  b.a.alphabet = alphabet(l);
  int q0 = b.add("q0"), q1 = b.add("q1");
  std::vector<PBF> to0, to1;
  for (int i = 1; i <= l.n; ++i) {
    to0.push_back(at(i, q0));
    to1.push_back(at(i, q1));
  }
  b.on(q0, with({sym::good}), PBF::all(to0));
  b.on(q0, without({sym::good}), PBF::all(to1));
  b.on(q1, without({sym::good}), PBF::all(to1));
  b.on(q1, with({sym::good}), PBF::falsity());
  b.a.initial = q0;
  b.a.accepting = {0, 1};
  return b.a;
}

TreeAutomaton build_acan(const KnowledgeBase& k) { return build_acan(AutomataContext(k)); }
TreeAutomaton build_amod(const KnowledgeBase& k) { return build_amod(AutomataContext(k)); }
TreeAutomaton build_afin(const KnowledgeBase& k) { return build_afin(AutomataContext(k)); }

// ---------------------------------------------------------------------------
// encodings

std::vector<int> tree_position(const AutomataContext& ctx, const Path& p) {
  const auto& rs = ctx.canonical().reasoner();
  std::vector<int> x{p.root + 1};
  for (int cls : p.tail) x.push_back(ctx.layout().f(rs.classes()[cls].representative));
  return x;
}

namespace {

void root_label(const AutomataContext& ctx, Letter& s) {
  const auto& c = ctx.canonical();
  s.insert(sym::root);
  for (const auto& [pr, roles] : c.const_edges())
    for (const auto& r : roles)
      if (!r.inv) s.insert(sym::pair(r.name, pr.first + 1, pr.second + 1));
}

}  // namespace

LabeledTreePrefix encode_canonical(const AutomataContext& ctx, int depth,
                                   const std::set<std::vector<int>>& marked) {
  const auto& c = ctx.canonical();
  const auto& l = ctx.layout();
  LabeledTreePrefix t;
  t.k = l.n;
  t.depth = depth + 1;
  root_label(ctx, t.labels[{}]);
  for (int i = 0; i < l.n; ++i) {
    Letter& s = t.labels[{i + 1}];
    s.insert(sym::individual(l.individuals[i]));
    if (i < c.num_constants())
      for (const auto& b : c.state_type(i)) s.insert(sym::basic(b));
  }
  std::vector<Path> frontier;
  for (int i = 0; i < c.num_constants(); ++i) frontier.push_back(Path{i, {}});
  for (int d = 1; d <= depth; ++d) {
    std::vector<Path> next;
    for (const auto& p : frontier)
      for (int cls : c.gen(c.state_of(p))) {
        Path q = p;
        q.tail.push_back(cls);
        Letter& s = t.labels[tree_position(ctx, q)];
        for (const auto& b : c.state_type(c.class_state(cls))) s.insert(sym::basic(b));
        for (const auto& r : c.class_rtype(cls)) s.insert(sym::role(r));
        next.push_back(q);
      }
    frontier = std::move(next);
  }
  for (const auto& x : marked)
    if (t.contains(x)) t.labels[x].insert(sym::good);
  return t;
}

LabeledTreePrefix g_witness_tree(const AutomataContext& ctx, int d) {
  const auto& c = ctx.canonical();
  const auto& rs = c.reasoner();
  const auto& l = ctx.layout();
  struct Node {
    std::set<Concept> type;
    std::set<Role> in;  // roles R with (parent, node) in R
  };
  std::map<std::vector<int>, Node> nodes;
  for (int i = 0; i < l.n; ++i) {
    Node& nd = nodes[{i + 1}];
    if (i < c.num_constants()) nd.type = c.state_type(i);
  }
  std::vector<Path> frontier;
  for (int i = 0; i < c.num_constants(); ++i) frontier.push_back(Path{i, {}});
  for (int k = 1; k <= d; ++k) {
    std::vector<Path> next;
    for (const auto& p : frontier)
      for (int cls : c.gen(c.state_of(p))) {
        Path q = p;
        q.tail.push_back(cls);
        Node& nd = nodes[tree_position(ctx, q)];
        nd.type = c.state_type(c.class_state(cls));
        nd.in = c.class_rtype(cls);
        next.push_back(q);
      }
    frontier = std::move(next);
  }
  // Role edges between individuals, as (i, j) -> roles.
  std::map<std::pair<int, int>, std::set<Role>> iedge;
  for (const auto& [pr, roles] : c.const_edges()) iedge[{pr.first + 1, pr.second + 1}] = roles;

  for (bool changed = true; changed;) {
    changed = false;
    auto grow = [&](auto& set, const auto& more) {
      size_t before = set.size();
      set.insert(more.begin(), more.end());
      if (set.size() != before) changed = true;
    };
    for (auto& [x, nd] : nodes) {
      if (x.size() < 2) continue;
      grow(nd.in, rs.close(nd.in));
      std::set<Concept> mine = nd.type, up;
      for (const auto& r : nd.in) {
        mine.insert(Concept::some(r.inverse()));
        up.insert(Concept::some(r));
      }
      grow(nd.type, rs.close(mine));
      std::vector<int> px(x.begin(), x.end() - 1);
      Node& parent = nodes[px];
      up.insert(parent.type.begin(), parent.type.end());
      grow(parent.type, rs.close(up));
    }
    // Open existentials: fold onto the parent, or add a child below an
    // individual.
    std::vector<std::pair<std::vector<int>, Role>> todo;
    for (const auto& [x, nd] : nodes) {
      for (const auto& b : nd.type) {
        if (!b.exists) continue;
        Role s = b.role();
        bool ok = x.size() >= 2 && nd.in.count(s.inverse());
        for (int i = 1; i <= l.n && !ok; ++i) {
          std::vector<int> y = x;
          y.push_back(i);
          auto it = nodes.find(y);
          if (it != nodes.end() && it->second.in.count(s)) ok = true;
        }
        if (!ok && x.size() == 1)
          for (const auto& [pr, roles] : iedge)
            if ((pr.first == x[0] && roles.count(s)) || (pr.second == x[0] && roles.count(s.inverse())))
              ok = true;
        if (!ok) todo.push_back({x, s});
      }
    }
    for (const auto& [x, s] : todo) {
      changed = true;
      if (x.size() >= 2) {
        nodes[x].in.insert(s.inverse());
      } else {
        std::vector<int> y = x;
        y.push_back(l.f(s));
        nodes[y].in.insert(s);
      }
    }
  }

  LabeledTreePrefix t;
  t.k = l.n;
  root_label(ctx, t.labels[{}]);
  t.labels[{}].insert(sym::good);
  int deepest = 0;
  for (const auto& [x, nd] : nodes) {
    Letter& s = t.labels[x];
    s.insert(sym::good);
    if (x.size() == 1) s.insert(sym::individual(l.individuals[x[0] - 1]));
    for (const auto& b : nd.type) s.insert(sym::basic(b));
    if (x.size() >= 2)
      for (const auto& r : nd.in) s.insert(sym::role(r));
    deepest = std::max(deepest, static_cast<int>(x.size()));
  }
  t.depth = deepest + 1;
  return t;
}

// ---------------------------------------------------------------------------
// runs

namespace {

enum class V { Yes, No, Open };

V kleene_and(V a, V b) {
  if (a == V::No || b == V::No) return V::No;
  if (a == V::Open || b == V::Open) return V::Open;
  return V::Yes;
}
V kleene_or(V a, V b) {
  if (a == V::Yes || b == V::Yes) return V::Yes;
  if (a == V::Open || b == V::Open) return V::Open;
  return V::No;
}

constexpr int kNoLow = 1 << 30;

struct Runner {
  const TreeAutomaton& a;
  const LabeledTreePrefix& t;
  int bound;
  long budget;
  long steps = 0;
  bool exhausted = false;
  std::map<std::pair<std::vector<int>, int>, V> memo;
  std::map<std::pair<std::vector<int>, int>, int> on_stack;
  std::vector<int> stack_states;

  struct R {
    V v;
    int low;
  };

  R node(const std::vector<int>& x, int q) {
    auto key = std::pair{x, q};
    if (auto it = memo.find(key); it != memo.end()) return {it->second, kNoLow};
    if (auto it = on_stack.find(key); it != on_stack.end()) {
      bool acc = false;
      for (size_t i = it->second; i < stack_states.size(); ++i)
        if (a.accepting[stack_states[i]]) acc = true;
      return {acc ? V::Yes : V::No, it->second};
    }
    if (++steps > budget) {
      exhausted = true;
      return {V::Open, kNoLow};
    }
    int idx = static_cast<int>(stack_states.size());
    on_stack[key] = idx;
    stack_states.push_back(q);
    PBF f = a.delta(q, t.label(x));
    R r = formula(f, x);
    stack_states.pop_back();
    on_stack.erase(key);
    if (r.low >= idx) {
      if (!exhausted) memo[key] = r.v;
      r.low = kNoLow;
    }
    return r;
  }

  R formula(const PBF& f, const std::vector<int>& x) {
    switch (f.kind) {
      case PBF::Kind::True: return {V::Yes, kNoLow};
      case PBF::Kind::False: return {V::No, kNoLow};
      case PBF::Kind::Atom: return atom(f.dir, f.state, x);
      case PBF::Kind::And: {
        R acc{V::Yes, kNoLow};
        for (const auto& k : f.kids) {
          R r = formula(k, x);
          acc.v = kleene_and(acc.v, r.v);
          acc.low = std::min(acc.low, r.low);
          if (acc.v == V::No) break;
        }
        return acc;
      }
      case PBF::Kind::Or: {
        R acc{V::No, kNoLow};
        for (const auto& k : f.kids) {
          R r = formula(k, x);
          acc.v = kleene_or(acc.v, r.v);
          acc.low = std::min(acc.low, r.low);
          if (acc.v == V::Yes) break;
        }
        return acc;
      }
    }
    return {V::No, kNoLow};
  }

  R atom(int dir, int q, const std::vector<int>& x) {
    std::vector<int> y = x;
    if (dir == -1) {
      if (y.empty()) return {V::No, kNoLow};
      y.pop_back();
    } else if (dir >= 1) {
      if (dir > t.k) return {V::No, kNoLow};
      y.push_back(dir);
    }
    if (!t.contains(y) || static_cast<int>(y.size()) > bound)
      return {a.accepting[q] ? V::Yes : V::Open, kNoLow};
    return node(y, q);
  }
};

}  // namespace

RunResult check_runs(const TreeAutomaton& a, const LabeledTreePrefix& t, int step_bound,
                     long budget) {
  if (t.k != a.layout.n) return RunResult::Rejects;
  Runner run{a, t, step_bound, budget, 0, false, {}, {}, {}};
  V v = run.node({}, a.initial).v;
  if (v == V::Yes) return RunResult::Accepts;
  if (v == V::No && !run.exhausted) return RunResult::Rejects;
  return RunResult::Inconclusive;
}

}  // namespace kbx
