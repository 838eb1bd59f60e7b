#include "kbx/reasoner.h"

#include <algorithm>
#include <deque>

namespace kbx {

namespace {

void reach(const std::vector<std::vector<int>>& adj, std::vector<std::vector<char>>& m) {
  size_t n = adj.size();
  m.assign(n, std::vector<char>(n, 0));
  for (size_t s = 0; s < n; ++s) {
    std::deque<int> q{static_cast<int>(s)};
    m[s][s] = 1;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (int y : adj[x]) {
        if (!m[s][y]) {
          m[s][y] = 1;
          q.push_back(y);
        }
      }
    }
  }
}

}  // namespace

Reasoner::Reasoner(const TBox& t, const Signature& extra) : tbox_(t) {
  universe_ = signature_of(t).unite(extra);
  // Names that are roles anywhere are roles; the rest are concepts.
  std::set<std::string> rnames = universe_.roles;
  std::set<std::string> cnames;
  for (const auto& n : universe_.concepts)
    if (!rnames.count(n)) cnames.insert(n);

  for (const auto& n : rnames) {
    roles_.push_back(Role{n, false});
    roles_.push_back(Role{n, true});
  }
  for (size_t i = 0; i < roles_.size(); ++i) rmap_[roles_[i]] = static_cast<int>(i);
  for (const auto& n : cnames) concepts_.push_back(Concept::atomic(n));
  for (const auto& r : roles_) concepts_.push_back(Concept::some(r));
  for (size_t i = 0; i < concepts_.size(); ++i) cmap_[concepts_[i]] = static_cast<int>(i);

  std::vector<std::vector<int>> radj(roles_.size());
  for (const auto& a : t) {
    if (!a.is_role) continue;
    if (a.negated) {
      rdis_.push_back({a.lr, a.rr});
      continue;
    }
    radj[rix(a.lr)].push_back(rix(a.rr));
    radj[rix(a.lr.inverse())].push_back(rix(a.rr.inverse()));
  }
  reach(radj, rsub_);

  std::vector<std::vector<int>> cadj(concepts_.size());
  for (const auto& a : t) {
    if (a.is_role) continue;
    if (a.negated) {
      cdis_.push_back({a.lc, a.rc});
      continue;
    }
    cadj[cix(a.lc)].push_back(cix(a.rc));
  }
  for (size_t i = 0; i < roles_.size(); ++i)
    for (size_t j = 0; j < roles_.size(); ++j)
      if (i != j && rsub_[i][j])
        cadj[cix(Concept::some(roles_[i]))].push_back(cix(Concept::some(roles_[j])));
  reach(cadj, csub_);

  class_of_.assign(roles_.size(), -1);
  std::vector<int> order(roles_.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return roles_[a].str() < roles_[b].str(); });
  for (int i : order) {
    if (class_of_[i] >= 0) continue;
    WitnessClass wc;
    for (int j : order) {
      if (rsub_[i][j] && rsub_[j][i]) {
        wc.members.push_back(roles_[j]);
        class_of_[j] = static_cast<int>(classes_.size());
      }
    }
    wc.representative = wc.members.front();
    classes_.push_back(wc);
  }

  // witness cleanliness: local clash, or a clash reachable through exists S in
  // the witness type.
  size_t n = roles_.size();
  std::vector<char> local(n, 0);
  std::vector<std::vector<int>> wadj(n);
  for (size_t i = 0; i < n; ++i) {
    auto ty = supers(Concept::some(roles_[i].inverse()));
    local[i] = type_clash(ty) || edge_clash(supers(roles_[i]));
    for (const auto& c : ty)
      if (c.exists) wadj[i].push_back(rix(c.role()));
  }
  std::vector<std::vector<char>> wr;
  reach(wadj, wr);
  wclean_.assign(n, 1);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (wr[i][j] && local[j]) wclean_[i] = 0;
}

int Reasoner::rix(const Role& r) const {
  auto it = rmap_.find(r);
  return it == rmap_.end() ? -1 : it->second;
}

int Reasoner::cix(const Concept& c) const {
  auto it = cmap_.find(c);
  return it == cmap_.end() ? -1 : it->second;
}

bool Reasoner::role_sub(const Role& r, const Role& s) const {
  if (r == s) return true;
  int a = rix(r), b = rix(s);
  if (a < 0 || b < 0) return false;
  return rsub_[a][b];
}

bool Reasoner::concept_sub(const Concept& b, const Concept& c) const {
  if (b == c) return true;
  int x = cix(b), y = cix(c);
  if (x < 0 || y < 0) return false;
  return csub_[x][y];
}

std::set<Concept> Reasoner::close(const std::set<Concept>& seed) const {
  std::set<Concept> out;
  for (const auto& b : seed) {
    out.insert(b);
    int x = cix(b);
    if (x < 0) continue;
    for (size_t j = 0; j < concepts_.size(); ++j)
      if (csub_[x][j]) out.insert(concepts_[j]);
  }
  return out;
}

std::set<Role> Reasoner::close(const std::set<Role>& seed) const {
  std::set<Role> out;
  for (const auto& r : seed) {
    out.insert(r);
    int x = rix(r);
    if (x < 0) continue;
    for (size_t j = 0; j < roles_.size(); ++j)
      if (rsub_[x][j]) out.insert(roles_[j]);
  }
  return out;
}

bool Reasoner::type_clash(const std::set<Concept>& closed) const {
  for (const auto& [b, c] : cdis_)
    if (closed.count(b) && closed.count(c)) return true;
  return false;
}

bool Reasoner::edge_clash(const std::set<Role>& closed) const {
  for (const auto& [r, q] : rdis_) {
    if (closed.count(r) && closed.count(q)) return true;
    if (closed.count(r.inverse()) && closed.count(q.inverse())) return true;
  }
  return false;
}

bool Reasoner::witness_clean(const Role& r) const {
  int x = rix(r);
  if (x < 0) return true;
  return wclean_[x];
}

bool Reasoner::clean(const std::vector<std::set<Concept>>& types,
                     const std::vector<std::set<Role>>& edges) const {
  for (const auto& ty : types) {
    if (type_clash(ty)) return false;
    for (const auto& c : ty)
      if (c.exists && !witness_clean(c.role())) return false;
  }
  for (const auto& e : edges)
    if (edge_clash(e)) return false;
  return true;
}

bool Reasoner::pair_consistent(const Concept& b, const Concept& c) const {
  return clean({close(std::set<Concept>{b, c})}, {});
}

bool Reasoner::pair_consistent(const Role& r, const Role& q) const {
  auto e = close(std::set<Role>{r, q});
  auto src = close(std::set<Concept>{Concept::some(r), Concept::some(q)});
  auto dst = close(std::set<Concept>{Concept::some(r.inverse()), Concept::some(q.inverse())});
  return clean({src, dst}, {e});
}

int Reasoner::class_of(const Role& r) const {
  int x = rix(r);
  return x < 0 ? -1 : class_of_[x];
}

bool Reasoner::class_leq(int a, int b) const {
  return role_sub(classes_[a].representative, classes_[b].representative);
}

std::map<Term, std::set<Concept>> asserted_types(const ABox& a) {
  std::map<Term, std::set<Concept>> out;
  for (const auto& x : a.assertions) {
    if (x.is_role) {
      out[x.t1].insert(Concept::some(x.r));
      out[x.t2].insert(Concept::some(x.r.inverse()));
    } else {
      out[x.t1].insert(x.c);
    }
  }
  return out;
}

std::map<std::pair<Term, Term>, std::set<Role>> asserted_edges(const ABox& a) {
  std::map<std::pair<Term, Term>, std::set<Role>> out;
  for (const auto& x : a.assertions) {
    if (!x.is_role) continue;
    out[{x.t1, x.t2}].insert(x.r);
    out[{x.t2, x.t1}].insert(x.r.inverse());
  }
  return out;
}

bool derives_concept(const TBox& t, const Concept& b, const Concept& c) {
  Reasoner rs(t);
  return rs.concept_sub(b, c);
}

bool derives_role(const TBox& t, const Role& r, const Role& q) {
  Reasoner rs(t);
  return rs.role_sub(r, q);
}

bool pair_consistent_concepts(const TBox& t, const Concept& b, const Concept& c) {
  Signature s;
  for (const auto& x : {b, c}) (x.exists ? s.roles : s.concepts).insert(x.name);
  return Reasoner(t, s).pair_consistent(b, c);
}

bool pair_consistent_roles(const TBox& t, const Role& r, const Role& q) {
  Signature s;
  s.roles = {r.name, q.name};
  return Reasoner(t, s).pair_consistent(r, q);
}

bool kb_consistent(const Reasoner& rs, const ABox& a) {
  for (const auto& [term, ty] : asserted_types(a)) {
    for (auto i = ty.begin(); i != ty.end(); ++i)
      for (auto j = i; j != ty.end(); ++j)
        if (!rs.pair_consistent(*i, *j)) return false;
  }
  for (const auto& [pr, rs_] : asserted_edges(a)) {
    for (auto i = rs_.begin(); i != rs_.end(); ++i)
      for (auto j = i; j != rs_.end(); ++j)
        if (!rs.pair_consistent(*i, *j)) return false;
  }
  return true;
}

bool kb_consistent(const KnowledgeBase& k) {
  Reasoner rs(k.tbox, signature_of(k.abox));
  return kb_consistent(rs, k.abox);
}

bool tbox_trivial(const TBox& t) {
  for (const auto& a : t) {
    if (a.negated) return false;
    if (a.is_role ? !(a.lr == a.rr) : !(a.lc == a.rc)) return false;
  }
  return true;
}

}  // namespace kbx
