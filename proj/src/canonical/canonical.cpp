#include "kbx/canonical.h"

#include <deque>

namespace kbx {

int FiniteInterpretation::add_element(const std::string& name, bool constant) {
  names.push_back(name);
  fixed.push_back(constant ? 1 : 0);
  int e = size() - 1;
  if (constant) constants[name] = e;
  return e;
}

int FiniteInterpretation::ensure_constant(const std::string& c) {
  auto it = constants.find(c);
  if (it != constants.end()) return it->second;
  return add_element(c, true);
}

void FiniteInterpretation::add_role(const Role& r, int x, int y) {
  if (r.inv)
    roles[r.name].insert({y, x});
  else
    roles[r.name].insert({x, y});
}

bool FiniteInterpretation::has_concept(const std::string& a, int e) const {
  auto it = concepts.find(a);
  return it != concepts.end() && it->second.count(e);
}

bool FiniteInterpretation::has_role(const Role& r, int x, int y) const {
  auto it = roles.find(r.name);
  if (it == roles.end()) return false;
  return r.inv ? it->second.count({y, x}) > 0 : it->second.count({x, y}) > 0;
}

std::set<std::string> FiniteInterpretation::labels(int e) const {
  std::set<std::string> out;
  for (const auto& [a, ext] : concepts)
    if (ext.count(e)) out.insert(a);
  return out;
}

FiniteInterpretation FiniteInterpretation::reduct(const Signature& sig) const {
  FiniteInterpretation out = *this;
  out.concepts.clear();
  out.roles.clear();
  for (const auto& [a, ext] : concepts)
    if (sig.has_name(a) && !ext.empty()) out.concepts[a] = ext;
  for (const auto& [p, ext] : roles)
    if (sig.has_name(p) && !ext.empty()) out.roles[p] = ext;
  return out;
}

ABox FiniteInterpretation::to_abox() const {
  auto term = [&](int e) {
    return fixed[e] ? Term::constant(names[e]) : Term::labeled_null(names[e]);
  };
  ABox a;
  for (const auto& [c, ext] : concepts)
    for (int e : ext) a.add(Assertion::concept_fact(Concept::atomic(c), term(e)));
  for (const auto& [p, ext] : roles)
    for (const auto& [x, y] : ext) a.add(Assertion::role_fact(Role{p, false}, term(x), term(y)));
  return a;
}

std::set<Concept> restrict(const std::set<Concept>& s, const Signature& sig) {
  std::set<Concept> out;
  for (const auto& c : s)
    if (sig.covers(c)) out.insert(c);
  return out;
}

std::set<Role> restrict(const std::set<Role>& s, const Signature& sig) {
  std::set<Role> out;
  for (const auto& r : s)
    if (sig.covers(r)) out.insert(r);
  return out;
}

CanonicalStructure::CanonicalStructure(const KnowledgeBase& k, const Signature& extra)
    : kb_(k), rs_(k.tbox, signature_of(k.abox).unite(extra)) {
  if (!kb_consistent(rs_, k.abox)) throw InconsistentKB();
  auto terms = k.abox.terms();
  terms_.assign(terms.begin(), terms.end());
  int nc = num_constants();
  int ns = num_states();
  const auto& cls = rs_.classes();

  auto at = asserted_types(k.abox);
  types_.resize(ns);
  for (int i = 0; i < nc; ++i) types_[i] = rs_.close(at[terms_[i]]);
  crtype_.resize(cls.size());
  for (size_t c = 0; c < cls.size(); ++c) {
    const Role& r = cls[c].representative;
    types_[nc + c] = rs_.supers(Concept::some(r.inverse()));
    crtype_[c] = rs_.supers(r);
  }
  for (const auto& [pr, roles] : asserted_edges(k.abox)) {
    int a = term_index(pr.first), b = term_index(pr.second);
    cedge_[{a, b}] = rs_.close(roles);
  }

  // Minimal classes among those whose existential is in `ty`.
  auto minimal = [&](const std::set<Concept>& ty, auto&& admissible) {
    std::vector<int> cand;
    for (size_t c = 0; c < cls.size(); ++c)
      if (ty.count(Concept::some(cls[c].representative))) cand.push_back(static_cast<int>(c));
    std::vector<int> out;
    for (int c : cand) {
      if (!admissible(c)) continue;
      bool min = true;
      for (int d : cand)
        if (d != c && rs_.class_leq(d, c)) min = false;
      if (min) out.push_back(c);
    }
    return out;
  };

  gen_.resize(ns);
  for (int a = 0; a < nc; ++a) {
    gen_[a] = minimal(types_[a], [&](int c) {
      const Role& r = cls[c].representative;
      for (const auto& [pr, roles] : cedge_)
        if (pr.first == a && roles.count(r)) return false;
      return true;
    });
  }
  for (size_t s = 0; s < cls.size(); ++s) {
    int inv = rs_.class_of(cls[s].representative.inverse());
    gen_[nc + s] = minimal(types_[nc + s], [&](int c) { return c != inv; });
  }

  // BFS from the constants for reachability and shortest paths.
  shortest_.assign(ns, Path{});
  std::vector<char> seen(ns, 0);
  std::deque<Path> q;
  for (int a = 0; a < nc; ++a) q.push_back(Path{a, {}});
  while (!q.empty()) {
    Path p = q.front();
    q.pop_front();
    int st = state_of(p);
    for (int c : gen_[st]) {
      int cs = class_state(c);
      if (seen[cs]) continue;
      seen[cs] = 1;
      Path child = p;
      child.tail.push_back(c);
      shortest_[cs] = child;
      reachable_.push_back(cs);
      q.push_back(child);
    }
  }
}

int CanonicalStructure::term_index(const Term& t) const {
  for (int i = 0; i < num_constants(); ++i)
    if (terms_[i] == t) return i;
  return -1;
}

int CanonicalStructure::term_index(const std::string& constant) const {
  return term_index(Term::constant(constant));
}

Path CanonicalStructure::shortest_path_to(int state) const {
  if (is_constant_state(state)) return Path{state, {}};
  return shortest_[state];
}

const std::set<Role>& CanonicalStructure::const_rtype(int a, int b) const {
  static const std::set<Role> none;
  auto it = cedge_.find({a, b});
  return it == cedge_.end() ? none : it->second;
}

int CanonicalStructure::state_of(const Path& p) const {
  return p.tail.empty() ? p.root : class_state(p.tail.back());
}

bool CanonicalStructure::valid(const Path& p) const {
  if (p.root < 0 || p.root >= num_constants()) return false;
  int st = p.root;
  for (int c : p.tail) {
    bool ok = false;
    for (int d : gen_[st]) ok = ok || d == c;
    if (!ok) return false;
    st = class_state(c);
  }
  return true;
}

std::string CanonicalStructure::path_name(const Path& p) const {
  std::string s = terms_[p.root].str();
  for (int c : p.tail) s += ".w[" + rs_.classes()[c].representative.str() + "]";
  return s;
}

std::set<Concept> CanonicalStructure::ttype(const Path& p) const {
  if (!valid(p)) throw InvalidPath(path_name(p));
  return types_[state_of(p)];
}

std::set<Role> CanonicalStructure::rtype(const Path& p, const Path& q) const {
  if (!valid(p) || !valid(q)) throw InvalidPath("invalid path");
  if (p.tail.empty() && q.tail.empty()) return const_rtype(p.root, q.root);
  auto child_of = [](const Path& parent, const Path& child) {
    if (parent.root != child.root || child.tail.size() != parent.tail.size() + 1) return false;
    for (size_t i = 0; i < parent.tail.size(); ++i)
      if (parent.tail[i] != child.tail[i]) return false;
    return true;
  };
  if (child_of(p, q)) return crtype_[q.tail.back()];
  if (child_of(q, p)) {
    std::set<Role> out;
    for (const auto& r : crtype_[p.tail.back()]) out.insert(r.inverse());
    return out;
  }
  throw InvalidPath("paths are not adjacent: " + path_name(p) + ", " + path_name(q));
}

bool derives_assertion(const KnowledgeBase& k, const Assertion& a) {
  Reasoner rs(k.tbox, signature_of(k.abox).unite(signature_of(ABox{{a}})));
  if (a.is_role) {
    auto edges = asserted_edges(k.abox);
    auto it = edges.find({a.t1, a.t2});
    if (it == edges.end()) return false;
    return rs.close(it->second).count(a.r) > 0;
  }
  auto types = asserted_types(k.abox);
  auto it = types.find(a.t1);
  if (it == types.end()) return false;
  return rs.close(it->second).count(a.c) > 0;
}

CanonicalStructure build_canonical(const KnowledgeBase& k) { return CanonicalStructure(k); }

std::set<Concept> ttype_at(const CanonicalStructure& c, const Path& p, const Signature* sig) {
  auto t = c.ttype(p);
  return sig ? restrict(t, *sig) : t;
}

std::set<Role> rtype_edge(const CanonicalStructure& c, const Path& p, const Path& q) {
  return c.rtype(p, q);
}

std::vector<Path> materialize_paths(const CanonicalStructure& c, int depth) {
  std::vector<Path> out;
  for (int a = 0; a < c.num_constants(); ++a) out.push_back(Path{a, {}});
  size_t begin = 0;
  for (int d = 0; d < depth; ++d) {
    size_t end = out.size();
    for (size_t i = begin; i < end; ++i) {
      for (int cls : c.gen(c.state_of(out[i]))) {
        Path p = out[i];
        p.tail.push_back(cls);
        out.push_back(p);
      }
    }
    begin = end;
  }
  return out;
}

FiniteInterpretation materialize(const CanonicalStructure& c, int depth) {
  auto paths = materialize_paths(c, depth);
  FiniteInterpretation fi;
  std::map<Path, int> index;
  for (const auto& p : paths) {
    bool constant = p.tail.empty() && !c.term(p.root).null;
    std::string name = p.tail.empty() ? c.term(p.root).name : c.path_name(p);
    index[p] = fi.add_element(name, constant);
  }
  for (const auto& p : paths) {
    int e = index[p];
    for (const auto& b : c.state_type(c.state_of(p)))
      if (!b.exists) fi.add_concept(b.name, e);
    if (!p.tail.empty()) {
      Path parent = p;
      parent.tail.pop_back();
      for (const auto& r : c.class_rtype(p.tail.back())) fi.add_role(r, index[parent], e);
    }
  }
  for (const auto& [pr, roles] : c.const_edges())
    for (const auto& r : roles)
      if (!r.inv) fi.add_role(r, pr.first, pr.second);
  return fi;
}

ABox normalize_exists(const ABox& a) {
  ABox out;
  std::set<std::string> used;
  for (const auto& t : a.terms()) used.insert(t.name);
  int fresh = 0;
  auto next = [&] {
    std::string n;
    do {
      n = "e" + std::to_string(++fresh);
    } while (used.count(n));
    used.insert(n);
    return n;
  };
  for (const auto& x : a.assertions) {
    if (!x.is_role && x.c.exists)
      out.add(Assertion::role_fact(x.c.role(), x.t1, Term::labeled_null(next())));
    else
      out.add(x);
  }
  return out;
}

FiniteInterpretation build_vabox(const ABox& a0) {
  ABox a = normalize_exists(a0);
  FiniteInterpretation fi;
  std::map<Term, int> index;
  for (const auto& t : a.terms()) index[t] = fi.add_element(t.null ? t.str() : t.name, !t.null);
  for (const auto& x : a.assertions) {
    if (x.is_role)
      fi.add_role(x.r, index[x.t1], index[x.t2]);
    else
      fi.add_concept(x.c.name, index[x.t1]);
  }
  return fi;
}

ABox closure_abox(const KnowledgeBase& k1, const Mapping& m) {
  KnowledgeBase k{unite(positive_part(k1.tbox), positive_part(m.t12)), k1.abox};
  Reasoner rs(k.tbox, signature_of(k.abox).unite(m.sigma2));
  auto types = asserted_types(k.abox);
  auto edges = asserted_edges(k.abox);
  ABox out;
  for (const auto& [t, ty] : types)
    for (const auto& b : rs.close(ty))
      if (!b.exists && m.sigma2.covers(b)) out.add(Assertion::concept_fact(b, t));
  for (const auto& [pr, roles] : edges)
    for (const auto& r : rs.close(roles))
      if (!r.inv && m.sigma2.covers(r)) out.add(Assertion::role_fact(r, pr.first, pr.second));
  return out;
}

}  // namespace kbx
