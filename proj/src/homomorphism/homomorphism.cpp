#include "kbx/homomorphism.h"

#include <algorithm>
#include <deque>
#include <functional>

namespace kbx {

std::string to_string(Tri t) {
  switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    default: return "unknown";
  }
}

namespace {

// Sigma-facts of a finite interpretation in adjacency form.
struct Facts {
  std::vector<std::set<std::string>> labels;
  // (x -> y) with the role names (possibly inverted) holding from x to y.
  std::vector<std::map<int, std::set<Role>>> out;

  Facts(const FiniteInterpretation& f, const Signature& sig) {
    labels.resize(f.size());
    out.resize(f.size());
    for (const auto& [a, ext] : f.concepts)
      if (sig.has_name(a))
        for (int e : ext) labels[e].insert(a);
    for (const auto& [p, ext] : f.roles) {
      if (!sig.has_name(p)) continue;
      for (const auto& [x, y] : ext) {
        out[x][y].insert(Role{p, false});
        out[y][x].insert(Role{p, true});
      }
    }
  }
};

bool subset(const std::set<std::string>& a, const std::set<std::string>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::set<std::string> atomic_names(const std::set<Concept>& s, const Signature& sig) {
  std::set<std::string> out;
  for (const auto& c : s)
    if (!c.exists && sig.has_name(c.name)) out.insert(c.name);
  return out;
}

}  // namespace

std::optional<Homomorphism> find_homomorphism(const FiniteInterpretation& src,
                                              const FiniteInterpretation& tgt,
                                              const Signature& sig) {
  Facts fs(src, sig), ft(tgt, sig);
  int n = src.size();
  std::vector<std::vector<int>> dom(n);
  for (int x = 0; x < n; ++x) {
    if (src.fixed[x]) {
      auto it = tgt.constants.find(src.names[x]);
      if (it == tgt.constants.end()) {
        if (!fs.labels[x].empty() || !fs.out[x].empty()) return std::nullopt;
        continue;  // isolated foreign constant: unconstrained, left unmapped
      }
      if (subset(fs.labels[x], ft.labels[it->second])) dom[x].push_back(it->second);
    } else {
      for (int y = 0; y < tgt.size(); ++y)
        if (subset(fs.labels[x], ft.labels[y])) dom[x].push_back(y);
    }
    if (dom[x].empty() && !(src.fixed[x] && !tgt.constants.count(src.names[x])))
      return std::nullopt;
  }
  // Order: most constrained first, then neighbours of placed elements.
  std::vector<int> order;
  std::vector<char> placed(n, 0);
  while (static_cast<int>(order.size()) < n) {
    int best = -1;
    size_t best_key = SIZE_MAX;
    for (int x = 0; x < n; ++x) {
      if (placed[x]) continue;
      bool linked = false;
      for (const auto& [y, r] : fs.out[x]) linked = linked || placed[y];
      size_t key = dom[x].size() * 2 + (linked ? 0 : 1);
      if (key < best_key) {
        best_key = key;
        best = x;
      }
    }
    placed[best] = 1;
    order.push_back(best);
  }
  std::vector<int> h(n, -1);
  auto compatible = [&](int x, int y) {
    for (const auto& [z, rs] : fs.out[x]) {
      int hz = (z == x) ? y : h[z];
      if (hz < 0) continue;
      auto it = ft.out[y].find(hz);
      if (it == ft.out[y].end()) return false;
      if (!std::includes(it->second.begin(), it->second.end(), rs.begin(), rs.end())) return false;
    }
    return true;
  };
  std::function<bool(size_t)> go = [&](size_t i) {
    if (i == order.size()) return true;
    int x = order[i];
    if (dom[x].empty()) return go(i + 1);  // foreign isolated constant
    for (int y : dom[x]) {
      if (!compatible(x, y)) continue;
      h[x] = y;
      if (go(i + 1)) return true;
      h[x] = -1;
    }
    return false;
  };
  if (!go(0)) return std::nullopt;
  return Homomorphism{h};
}

bool verify_homomorphism(const FiniteInterpretation& src, const FiniteInterpretation& tgt,
                         const Signature& sig, const Homomorphism& h) {
  if (static_cast<int>(h.map.size()) != src.size()) return false;
  for (int x = 0; x < src.size(); ++x) {
    if (h.map[x] < 0) {
      if (!src.fixed[x] || tgt.constants.count(src.names[x])) return false;
      continue;
    }
    if (src.fixed[x] && (!tgt.fixed[h.map[x]] || tgt.names[h.map[x]] != src.names[x])) return false;
  }
  for (const auto& [a, ext] : src.concepts) {
    if (!sig.has_name(a)) continue;
    for (int e : ext)
      if (h.map[e] < 0 || !tgt.has_concept(a, h.map[e])) return false;
  }
  for (const auto& [p, ext] : src.roles) {
    if (!sig.has_name(p)) continue;
    for (const auto& [x, y] : ext)
      if (h.map[x] < 0 || h.map[y] < 0 || !tgt.has_role(Role{p, false}, h.map[x], h.map[y]))
        return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// regular -> finite

namespace {

struct Obligation {
  int child_state;
  std::set<Role> roles;  // Sigma part of the child rtype
};

std::vector<std::vector<Obligation>> obligations(const CanonicalStructure& c, const Signature& sig) {
  std::vector<std::vector<Obligation>> out(c.num_states());
  for (int s = 0; s < c.num_states(); ++s)
    for (int cls : c.gen(s))
      out[s].push_back({c.class_state(cls), restrict(c.class_rtype(cls), sig)});
  return out;
}

bool edge_ok(const Facts& f, int x, int y, const std::set<Role>& roles) {
  if (roles.empty()) return true;
  auto it = f.out[x].find(y);
  if (it == f.out[x].end()) return false;
  return std::includes(it->second.begin(), it->second.end(), roles.begin(), roles.end());
}

}  // namespace

std::optional<SimulationTable> embeds_regular_into_finite(const CanonicalStructure& c,
                                                          const FiniteInterpretation& f0,
                                                          const Signature& sig) {
  SimulationTable t;
  t.target = f0;
  for (int a = 0; a < c.num_constants(); ++a)
    if (!c.term(a).null) t.target.ensure_constant(c.term(a).name);
  const FiniteInterpretation& f = t.target;
  Facts ff(f, sig);
  int ns = c.num_states(), ne = f.size();
  t.states = ns;
  t.elements = ne;
  auto obl = obligations(c, sig);
  std::vector<std::set<std::string>> lab(ns);
  for (int s = 0; s < ns; ++s) lab[s] = atomic_names(c.state_type(s), sig);

  t.alive.assign(ns, std::vector<char>(ne, 0));
  std::vector<char> relevant(ns, 0);
  for (int a = 0; a < c.num_constants(); ++a) relevant[a] = 1;
  for (int s : c.reachable_states()) relevant[s] = 1;
  for (int s = 0; s < ns; ++s) {
    if (!relevant[s]) continue;
    for (int e = 0; e < ne; ++e) {
      if (c.is_constant_state(s) && !c.term(s).null) {
        if (e != f.constants.at(c.term(s).name)) continue;
      }
      t.alive[s][e] = subset(lab[s], ff.labels[e]);
    }
  }
  auto discharge = [&](int e, const Obligation& o) {
    for (int e2 = 0; e2 < ne; ++e2)
      if (t.alive[o.child_state][e2] && edge_ok(ff, e, e2, o.roles)) return e2;
    return -1;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (int s = 0; s < ns; ++s)
      for (int e = 0; e < ne; ++e) {
        if (!t.alive[s][e]) continue;
        for (const auto& o : obl[s]) {
          if (discharge(e, o) < 0) {
            t.alive[s][e] = 0;
            changed = true;
            break;
          }
        }
      }
  }

  // Roots: constants are fixed; nulls of the source ABox are searched.
  int nc = c.num_constants();
  t.roots.assign(nc, -1);
  std::function<bool(int)> place = [&](int a) {
    if (a == nc) return true;
    std::vector<int> cand;
    if (!c.term(a).null)
      cand.push_back(f.constants.at(c.term(a).name));
    else
      for (int e = 0; e < ne; ++e) cand.push_back(e);
    for (int e : cand) {
      if (!t.alive[a][e]) continue;
      bool ok = true;
      for (int b = 0; b <= a && ok; ++b) {
        int eb = (b == a) ? e : t.roots[b];
        ok = edge_ok(ff, e, eb, restrict(c.const_rtype(a, b), sig)) &&
             edge_ok(ff, eb, e, restrict(c.const_rtype(b, a), sig));
      }
      if (!ok) continue;
      t.roots[a] = e;
      if (place(a + 1)) return true;
      t.roots[a] = -1;
    }
    return false;
  };
  if (!place(0)) return std::nullopt;

  for (int s = 0; s < ns; ++s)
    for (int e = 0; e < ne; ++e) {
      if (!t.alive[s][e]) continue;
      std::vector<int> ch;
      for (const auto& o : obl[s]) ch.push_back(discharge(e, o));
      t.choice[{s, e}] = ch;
    }
  return t;
}

bool verify_table(const CanonicalStructure& c, const Signature& sig, const SimulationTable& t) {
  const FiniteInterpretation& f = t.target;
  Facts ff(f, sig);
  auto obl = obligations(c, sig);
  int nc = c.num_constants();
  if (static_cast<int>(t.roots.size()) != nc) return false;
  for (int a = 0; a < nc; ++a) {
    int e = t.roots[a];
    if (e < 0 || !t.alive[a][e]) return false;
    if (!c.term(a).null && (!f.fixed[e] || f.names[e] != c.term(a).name)) return false;
    for (int b = 0; b < nc; ++b)
      if (!edge_ok(ff, e, t.roots[b], restrict(c.const_rtype(a, b), sig))) return false;
  }
  for (const auto& [se, ch] : t.choice) {
    auto [s, e] = se;
    if (!t.alive[s][e]) return false;
    if (!subset(atomic_names(c.state_type(s), sig), ff.labels[e])) return false;
    if (ch.size() != obl[s].size()) return false;
    for (size_t i = 0; i < ch.size(); ++i) {
      int e2 = ch[i];
      if (e2 < 0 || !t.alive[obl[s][i].child_state][e2]) return false;
      if (!edge_ok(ff, e, e2, obl[s][i].roles)) return false;
    }
  }
  for (int s = 0; s < t.states; ++s)
    for (int e = 0; e < t.elements; ++e)
      if (t.alive[s][e] && !t.choice.count({s, e})) return false;
  return true;
}

std::vector<int> unfold_table(const CanonicalStructure& c, const SimulationTable& t, int depth) {
  auto paths = materialize_paths(c, depth);
  std::map<Path, int> img;
  std::vector<int> out;
  for (const auto& p : paths) {
    int e;
    if (p.tail.empty()) {
      e = t.roots[p.root];
    } else {
      Path parent = p;
      parent.tail.pop_back();
      int ps = c.state_of(parent);
      int pe = img.at(parent);
      const auto& g = c.gen(ps);
      size_t idx = std::find(g.begin(), g.end(), p.tail.back()) - g.begin();
      e = t.choice.at({ps, pe})[idx];
    }
    img[p] = e;
    out.push_back(e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// finite -> regular

namespace {

// Node of the canonical model. A virtual node stands below an unknown prefix
// ending in witness state `root`; it has no upward neighbours.
struct Node {
  bool virt = false;
  int root = -1;  // term index, or witness state when virt; -1 foreign constant
  std::vector<int> tail;
  bool operator==(const Node&) const = default;
};

class Nav {
 public:
  Nav(const CanonicalStructure& c, const Signature& sig) : c_(c), sig_(sig) {}

  int state(const Node& n) const {
    if (!n.tail.empty()) return c_.class_state(n.tail.back());
    return n.root;
  }

  std::set<std::string> labels(const Node& n) const {
    if (n.root < 0) return {};
    return atomic_names(c_.state_type(state(n)), sig_);
  }

  // Sigma roles from a to b.
  std::set<Role> edge(const Node& a, const Node& b) const {
    if (a.root < 0 || b.root < 0) return {};
    if (!a.virt && !b.virt && a.tail.empty() && b.tail.empty())
      return restrict(c_.const_rtype(a.root, b.root), sig_);
    if (a.virt == b.virt && a.root == b.root) {
      if (is_child(a, b)) return restrict(c_.class_rtype(b.tail.back()), sig_);
      if (is_child(b, a)) {
        std::set<Role> out;
        for (const auto& r : restrict(c_.class_rtype(a.tail.back()), sig_)) out.insert(r.inverse());
        return out;
      }
    }
    return {};
  }

  std::vector<Node> neighbours(const Node& n) const {
    std::vector<Node> out;
    if (n.root < 0) return out;
    out.push_back(n);
    for (int cls : c_.gen(state(n))) {
      Node ch = n;
      ch.tail.push_back(cls);
      out.push_back(ch);
    }
    if (!n.tail.empty()) {
      Node p = n;
      p.tail.pop_back();
      out.push_back(p);
    } else if (!n.virt) {
      for (int b = 0; b < c_.num_constants(); ++b)
        if (b != n.root && (!c_.const_rtype(n.root, b).empty() || !c_.const_rtype(b, n.root).empty()))
          out.push_back(Node{false, b, {}});
    }
    return out;
  }

  Path to_path(const Node& n) const {
    Path p = n.virt ? c_.shortest_path_to(n.root) : Path{n.root, {}};
    p.tail.insert(p.tail.end(), n.tail.begin(), n.tail.end());
    return p;
  }

 private:
  static bool is_child(const Node& p, const Node& q) {
    if (q.tail.size() != p.tail.size() + 1) return false;
    return std::equal(p.tail.begin(), p.tail.end(), q.tail.begin());
  }
  const CanonicalStructure& c_;
  const Signature& sig_;
};

bool covers_roles(const std::set<Role>& have, const std::set<Role>& need) {
  return std::includes(have.begin(), have.end(), need.begin(), need.end());
}

}  // namespace

std::optional<PathHomomorphism> embeds_finite_into_regular(const FiniteInterpretation& f,
                                                           const CanonicalStructure& c,
                                                           const Signature& sig) {
  Facts ff(f, sig);
  Nav nav(c, sig);
  int n = f.size();
  std::vector<Node> h(n);
  std::vector<char> done(n, 0);
  PathHomomorphism out;
  out.map.assign(n, Path{});
  out.foreign.assign(n, 0);

  auto fixed_node = [&](int x) -> std::optional<Node> {
    int idx = c.term_index(f.names[x]);
    if (idx < 0) return Node{false, -1, {}};
    return Node{false, idx, {}};
  };

  // components over Sigma edges
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::deque<int> q{s};
    comp[s] = ncomp;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (const auto& [y, r] : ff.out[x])
        if (comp[y] < 0) {
          comp[y] = ncomp;
          q.push_back(y);
        }
    }
    ++ncomp;
  }

  for (int k = 0; k < ncomp; ++k) {
    std::vector<int> members;
    for (int x = 0; x < n; ++x)
      if (comp[x] == k) members.push_back(x);
    int anchor = -1;
    for (int x : members)
      if (f.fixed[x]) anchor = x;
    std::vector<int> tops = anchor >= 0 ? std::vector<int>{anchor} : members;

    bool found = false;
    for (int top : tops) {
      // BFS order from top with a BFS parent for each element
      std::vector<int> order{top};
      std::map<int, int> par;
      std::vector<char> seen(n, 0);
      seen[top] = 1;
      for (size_t i = 0; i < order.size(); ++i)
        for (const auto& [y, r] : ff.out[order[i]])
          if (!seen[y]) {
            seen[y] = 1;
            par[y] = order[i];
            order.push_back(y);
          }

      auto consistent = [&](int x, const Node& v, size_t upto) {
        if (f.fixed[x]) {
          auto fx = fixed_node(x);
          if (!(v == *fx)) return false;
          if (v.root < 0) return ff.labels[x].empty() && ff.out[x].empty();
        }
        if (!subset(ff.labels[x], nav.labels(v))) return false;
        for (size_t j = 0; j < upto; ++j) {
          int z = order[j];
          auto it = ff.out[x].find(z);
          if (it != ff.out[x].end() && !covers_roles(nav.edge(v, h[z]), it->second)) return false;
        }
        auto self = ff.out[x].find(x);
        if (self != ff.out[x].end() && !covers_roles(nav.edge(v, v), self->second)) return false;
        return true;
      };

      std::function<bool(size_t)> go = [&](size_t i) {
        if (i == order.size()) return true;
        int x = order[i];
        std::vector<Node> cand;
        if (i == 0) {
          if (f.fixed[x]) {
            cand.push_back(*fixed_node(x));
          } else {
            for (int a = 0; a < c.num_constants(); ++a) cand.push_back(Node{false, a, {}});
            for (int s : c.reachable_states()) cand.push_back(Node{true, s, {}});
          }
        } else {
          cand = nav.neighbours(h[par[x]]);
        }
        for (const auto& v : cand) {
          if (!consistent(x, v, i)) continue;
          h[x] = v;
          if (go(i + 1)) return true;
        }
        return false;
      };
      if (go(0)) {
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
  }
  for (int x = 0; x < n; ++x) {
    if (h[x].root < 0) {
      out.foreign[x] = 1;
      continue;
    }
    out.map[x] = nav.to_path(h[x]);
  }
  return out;
}

bool verify_path_homomorphism(const FiniteInterpretation& f, const CanonicalStructure& c,
                              const Signature& sig, const PathHomomorphism& h) {
  int n = f.size();
  if (static_cast<int>(h.map.size()) != n) return false;
  for (int x = 0; x < n; ++x) {
    if (h.foreign[x]) {
      if (!f.fixed[x] || c.term_index(f.names[x]) >= 0) return false;
      continue;
    }
    if (!c.valid(h.map[x])) return false;
    if (f.fixed[x] && !(h.map[x].tail.empty() && c.term(h.map[x].root) == Term::constant(f.names[x])))
      return false;
  }
  for (const auto& [a, ext] : f.concepts) {
    if (!sig.has_name(a)) continue;
    for (int e : ext)
      if (h.foreign[e] || !c.ttype(h.map[e]).count(Concept::atomic(a))) return false;
  }
  for (const auto& [p, ext] : f.roles) {
    if (!sig.has_name(p)) continue;
    for (const auto& [x, y] : ext) {
      if (h.foreign[x] || h.foreign[y]) return false;
      std::set<Role> rt;
      try {
        rt = c.rtype(h.map[x], h.map[y]);
      } catch (const InvalidPath&) {
        return false;
      }
      if (!rt.count(Role{p, false})) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// regular -> regular

bool regular_downward_simulation(const CanonicalStructure& c1, const CanonicalStructure& c2,
                                 const Signature& sig) {
  int n1 = c1.num_states();
  // target states of c2, plus one isolated element at index n2
  int n2 = c2.num_states();
  int iso = n2;
  std::vector<char> rel2(n2 + 1, 0);
  for (int a = 0; a < c2.num_constants(); ++a) rel2[a] = 1;
  for (int s : c2.reachable_states()) rel2[s] = 1;
  rel2[iso] = 1;
  auto lab2 = [&](int s) {
    return s == iso ? std::set<std::string>{} : atomic_names(c2.state_type(s), sig);
  };
  std::vector<std::vector<char>> sim(n1, std::vector<char>(n2 + 1, 0));
  for (int s = 0; s < n1; ++s)
    for (int t = 0; t <= n2; ++t)
      sim[s][t] = rel2[t] && subset(atomic_names(c1.state_type(s), sig), lab2(t));
  auto ok_child = [&](int cls, int t) {
    int cs = c1.class_state(cls);
    auto need = restrict(c1.class_rtype(cls), sig);
    if (need.empty()) {
      // an edge invisible to the signature: any simulating element will do
      for (int u = 0; u <= n2; ++u)
        if (sim[cs][u]) return true;
      return false;
    }
    if (t == iso) return false;
    for (int c2cls : c2.gen(t)) {
      if (!sim[cs][c2.class_state(c2cls)]) continue;
      if (covers_roles(restrict(c2.class_rtype(c2cls), sig), need)) return true;
    }
    return false;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (int s = 0; s < n1; ++s)
      for (int t = 0; t <= n2; ++t) {
        if (!sim[s][t]) continue;
        for (int cls : c1.gen(s)) {
          if (!ok_child(cls, t)) {
            sim[s][t] = 0;
            changed = true;
            break;
          }
        }
      }
  }
  // roots
  std::vector<int> img(c1.num_constants());
  for (int a = 0; a < c1.num_constants(); ++a) {
    if (c1.term(a).null) return false;  // not handled by the downward check
    int b = c2.term_index(c1.term(a));
    img[a] = b < 0 ? iso : b;
    if (!sim[a][img[a]]) return false;
  }
  for (const auto& [pr, roles] : c1.const_edges()) {
    auto need = restrict(roles, sig);
    if (need.empty()) continue;
    int x = img[pr.first], y = img[pr.second];
    if (x == iso || y == iso) return false;
    if (!covers_roles(restrict(c2.const_rtype(x, y), sig), need)) return false;
  }
  return true;
}

RegularVerdict embeds_regular_into_regular_bounded(const CanonicalStructure& c1,
                                                   const CanonicalStructure& c2,
                                                   const Signature& sig, int depth_cap) {
  RegularVerdict v;
  if (regular_downward_simulation(c1, c2, sig)) {
    v.answer = Tri::Yes;
    v.method = "downward simulation";
    return v;
  }
  for (int d = 0; d <= depth_cap; ++d) {
    auto f1 = materialize(c1, d);
    if (!embeds_finite_into_regular(f1, c2, sig)) {
      v.answer = Tri::No;
      v.counterexample_depth = d;
      return v;
    }
    auto f2 = materialize(c2, d);
    if (embeds_regular_into_finite(c1, f2, sig)) {
      v.answer = Tri::Yes;
      v.method = "simulation into depth-" + std::to_string(d) + " materialization";
      return v;
    }
  }
  return v;
}

}  // namespace kbx
