#include "oracle.h"

#include <algorithm>
#include <deque>
#include <functional>

namespace oracle {

std::string inv(const std::string& role) {
  if (!role.empty() && role.back() == '-') return role.substr(0, role.size() - 1);
  return role + "-";
}

std::string some(const std::string& role) { return "some " + role; }

namespace {

bool is_some(const std::string& c) { return c.rfind("some ", 0) == 0; }
std::string some_role(const std::string& c) { return c.substr(5); }
bool inverted(const std::string& r) { return !r.empty() && r.back() == '-'; }
std::string base(const std::string& r) { return inverted(r) ? r.substr(0, r.size() - 1) : r; }

}  // namespace

bool Closure::concept_sub(const std::string& a, const std::string& b) const {
  return a == b || concepts.count({a, b}) > 0;
}

bool Closure::role_sub(const std::string& r, const std::string& q) const {
  return r == q || roles.count({r, q}) > 0;
}

Closure naive_saturate(const TBox& t) {
  Closure c;
  for (const auto& ax : t) {
    if (ax.neg) continue;
    (ax.role ? c.roles : c.concepts).insert({ax.lhs, ax.rhs});
  }
  bool changed = true;
  while (changed) {
    changed = false;
    auto add = [&](std::set<std::pair<std::string, std::string>>& s, std::string a, std::string b) {
      if (a != b && s.insert({std::move(a), std::move(b)}).second) changed = true;
    };
    for (auto [r, q] : std::vector<std::pair<std::string, std::string>>(c.roles.begin(), c.roles.end())) {
      add(c.roles, inv(r), inv(q));
      add(c.concepts, some(r), some(q));
      add(c.concepts, some(inv(r)), some(inv(q)));
    }
    for (auto* s : {&c.concepts, &c.roles}) {
      std::vector<std::pair<std::string, std::string>> v(s->begin(), s->end());
      for (const auto& [a, b] : v)
        for (const auto& [b2, d] : v)
          if (b == b2) add(*s, a, d);
    }
  }
  return c;
}

int Structure::find(const std::string& name) const {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  return -1;
}

int Structure::add(const std::string& name, bool constant, int d) {
  names.push_back(name);
  fixed.push_back(constant);
  depth.push_back(d);
  labels.emplace_back();
  return static_cast<int>(names.size()) - 1;
}

bool Structure::has_edge(const std::string& role, int x, int y) const {
  auto it = edges.find(base(role));
  if (it == edges.end()) return false;
  return inverted(role) ? it->second.count({y, x}) > 0 : it->second.count({x, y}) > 0;
}

Structure Structure::cut(int d) const {
  Structure out;
  std::vector<int> idx(names.size(), -1);
  for (size_t i = 0; i < names.size(); ++i)
    if (depth[i] <= d) {
      idx[i] = out.add(names[i], fixed[i], depth[i]);
      out.labels.back() = labels[i];
    }
  for (const auto& [r, es] : edges)
    for (auto [x, y] : es)
      if (idx[x] >= 0 && idx[y] >= 0) out.edges[r].insert({idx[x], idx[y]});
  out.clash = clash;
  out.clash_detail = clash_detail;
  return out;
}

namespace {

class Chaser {
 public:
  Chaser(const TBox& t, int depth, bool share) : t_(t), cap_(depth), share_(share) {}

  Structure run(const ABox& a) {
    for (const auto& f : a.facts) {
      int x = term(f.s, a);
      if (f.role) {
        add_edge(f.pred, x, term(f.t, a));
      } else {
        label(x, f.pred);
        if (is_some(f.pred)) demand(x, some_role(f.pred));
      }
    }
    while (changed_) {
      changed_ = false;
      for (const auto& ax : t_) {
        if (ax.neg) continue;
        if (ax.role) {
          auto it = s_.edges.find(base(ax.lhs));
          if (it == s_.edges.end()) continue;
          std::vector<std::pair<int, int>> es(it->second.begin(), it->second.end());
          for (auto [x, y] : es) {
            if (inverted(ax.lhs)) std::swap(x, y);
            add_edge(ax.rhs, x, y);
          }
          continue;
        }
        int n = static_cast<int>(s_.names.size());
        for (int x = 0; x < n; ++x) {
          if (!s_.labels[x].count(ax.lhs)) continue;
          label(x, ax.rhs);
          if (is_some(ax.rhs)) demand(x, some_role(ax.rhs));
        }
      }
    }
    find_clash();
    return std::move(s_);
  }

 private:
  int term(const std::string& n, const ABox& a) {
    int i = s_.find(n);
    return i >= 0 ? i : s_.add(n, a.nulls.count(n) == 0, 0);
  }

  void label(int x, const std::string& c) {
    if (s_.labels[x].insert(c).second) changed_ = true;
  }

  void add_edge(const std::string& r, int x, int y) {
    if (inverted(r)) std::swap(x, y);
    if (s_.edges[base(r)].insert({x, y}).second) changed_ = true;
    label(x, some(base(r)));
    label(y, some(inv(base(r))));
  }

  void demand(int x, const std::string& r) {
    if (s_.depth[x] >= cap_ || frozen_.count(x)) return;
    if (!done_.insert({x, r}).second) return;
    int y = s_.add("w" + std::to_string(s_.names.size()), false, s_.depth[x] + 1);
    if (share_ && !kinds_.insert(r).second) frozen_.insert(y);
    add_edge(r, x, y);
  }

  void find_clash() {
    for (const auto& ax : t_) {
      if (!ax.neg) continue;
      if (!ax.role) {
        for (size_t x = 0; x < s_.names.size(); ++x)
          if (s_.labels[x].count(ax.lhs) && s_.labels[x].count(ax.rhs)) {
            s_.clash = true;
            s_.clash_detail = s_.names[x] + " in " + ax.lhs + " and " + ax.rhs;
            return;
          }
        continue;
      }
      auto it = s_.edges.find(base(ax.lhs));
      if (it == s_.edges.end()) continue;
      for (auto [x, y] : it->second) {
        if (inverted(ax.lhs)) std::swap(x, y);
        if (s_.has_edge(ax.rhs, x, y)) {
          s_.clash = true;
          s_.clash_detail = "(" + s_.names[x] + "," + s_.names[y] + ") in " + ax.lhs + " and " + ax.rhs;
          return;
        }
      }
    }
  }

  const TBox& t_;
  int cap_;
  bool share_;
  Structure s_;
  bool changed_ = true;
  std::set<std::pair<int, std::string>> done_;
  std::set<std::string> kinds_;
  std::set<int> frozen_;
};

}  // namespace

Structure chase(const TBox& t, const ABox& a, int depth, bool share_kinds) {
  return Chaser(t, depth, share_kinds).run(a);
}

bool consistent(const TBox& t, const ABox& a) { return !chase(t, a, 1 << 20, true).clash; }

std::optional<std::vector<int>> brute_homomorphism(const Structure& src, const Structure& tgt0,
                                                   const std::set<std::string>& concepts,
                                                   const std::set<std::string>& roles) {
  Structure tgt = tgt0;
  int n = static_cast<int>(src.names.size());
  for (int x = 0; x < n; ++x)
    if (src.fixed[x] && tgt.find(src.names[x]) < 0) tgt.add(src.names[x], true, 0);
  int m = static_cast<int>(tgt.names.size());

  auto concepts_of = [&](const Structure& s, int x) {
    std::set<std::string> out;
    for (const auto& c : s.labels[x])
      if (concepts.count(c)) out.insert(c);
    return out;
  };
  // (neighbour, role, forward) per source element.
  std::vector<std::vector<std::tuple<int, std::string, bool>>> adj(n);
  for (const auto& [r, es] : src.edges) {
    if (!roles.count(r)) continue;
    for (auto [x, y] : es) {
      adj[x].emplace_back(y, r, true);
      adj[y].emplace_back(x, r, false);
    }
  }
  std::vector<std::vector<int>> dom(n);
  for (int x = 0; x < n; ++x) {
    auto need = concepts_of(src, x);
    for (int y = 0; y < m; ++y) {
      if (src.fixed[x] && !(tgt.fixed[y] && tgt.names[y] == src.names[x])) continue;
      bool ok = std::all_of(need.begin(), need.end(), [&](const std::string& c) { return tgt.labels[y].count(c) > 0; });
      if (ok) dom[x].push_back(y);
    }
  }
  auto edge_ok = [&](const std::string& r, bool fwd, int ty, int tz) {
    return fwd ? tgt.has_edge(r, ty, tz) : tgt.has_edge(r, tz, ty);
  };
  // Arc consistency.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 0; x < n; ++x) {
      std::vector<int> keep;
      for (int y : dom[x]) {
        bool ok = true;
        for (const auto& [z, r, fwd] : adj[x]) {
          bool found = false;
          if (z == x) {
            if (!edge_ok(r, fwd, y, y)) {
              ok = false;
              break;
            }
            continue;
          }
          for (int w : dom[z])
            if (edge_ok(r, fwd, y, w)) {
              found = true;
              break;
            }
          if (!found) {
            ok = false;
            break;
          }
        }
        if (ok) keep.push_back(y);
      }
      if (keep.size() != dom[x].size()) {
        dom[x] = std::move(keep);
        changed = true;
      }
      if (dom[x].empty()) return std::nullopt;
    }
  }
  // Search in BFS order so that each element has an assigned neighbour.
  std::vector<int> order, seen(n, 0);
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::deque<int> q{s};
    seen[s] = 1;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      order.push_back(x);
      for (const auto& [z, r, fwd] : adj[x])
        if (!seen[z]) {
          seen[z] = 1;
          q.push_back(z);
        }
    }
  }
  std::vector<int> h(n, -1);
  long steps = 0;
  std::function<bool(size_t)> go = [&](size_t i) {
    if (i == order.size()) return true;
    if (++steps > 50'000'000) return false;
    int x = order[i];
    for (int y : dom[x]) {
      bool ok = true;
      for (const auto& [z, r, fwd] : adj[x]) {
        int hz = z == x ? y : h[z];
        if (hz >= 0 && !edge_ok(r, fwd, y, hz)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      h[x] = y;
      if (go(i + 1)) return true;
    }
    h[x] = -1;
    return false;
  };
  if (!go(0)) return std::nullopt;
  return h;
}

bool entails(const Structure& s, const std::vector<QueryAtom>& q) {
  std::map<std::string, int> val;
  auto lookup = [&](const std::string& t) -> int {
    if (!t.empty() && t[0] == '?') {
      auto it = val.find(t);
      return it == val.end() ? -2 : it->second;
    }
    int i = s.find(t);
    return i >= 0 && s.fixed[i] ? i : -1;
  };
  std::vector<std::string> vars;
  for (const auto& a : q)
    for (const auto* t : {&a.s, &a.t})
      if (!t->empty() && (*t)[0] == '?' && std::find(vars.begin(), vars.end(), *t) == vars.end())
        vars.push_back(*t);
  int n = static_cast<int>(s.names.size());
  auto holds = [&]() {
    for (const auto& a : q) {
      int x = lookup(a.s);
      if (x < 0) return false;
      if (!a.role) {
        if (!s.labels[x].count(a.pred)) return false;
        continue;
      }
      int y = lookup(a.t);
      if (y < 0 || !s.has_edge(a.pred, x, y)) return false;
    }
    return true;
  };
  std::function<bool(size_t)> go = [&](size_t i) {
    if (i == vars.size()) return holds();
    for (int x = 0; x < n; ++x) {
      val[vars[i]] = x;
      if (go(i + 1)) return true;
    }
    val.erase(vars[i]);
    return false;
  };
  return go(0);
}

bool qbf_valid(const std::vector<bool>& universal, const std::vector<std::vector<int>>& clauses) {
  int n = static_cast<int>(universal.size());
  std::vector<int> val(n + 1, 0);
  std::function<bool(int)> go = [&](int i) {
    if (i == n) {
      for (const auto& c : clauses) {
        bool sat = false;
        for (int l : c) sat = sat || (l > 0 ? val[l] == 1 : val[-l] == 0);
        if (!sat) return false;
      }
      return true;
    }
    val[i + 1] = 0;
    bool f = go(i + 1);
    if (f != universal[i]) return f;  // exists and true, or forall and false
    val[i + 1] = 1;
    return go(i + 1);
  };
  return go(0);
}

bool graph_reachable(int n, const std::vector<std::pair<int, int>>& edges, int from, int to) {
  std::vector<char> seen(n, 0);
  std::deque<int> q{from};
  seen[from] = 1;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    if (x == to) return true;
    for (auto [u, v] : edges)
      if (u == x && !seen[v]) {
        seen[v] = 1;
        q.push_back(v);
      }
  }
  return false;
}

bool three_colorable(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> col(n, -1);
  std::function<bool(int)> go = [&](int i) {
    if (i == n) return true;
    for (int c = 0; c < 3; ++c) {
      bool ok = true;
      for (auto [u, v] : edges) {
        int o = u == i ? v : v == i ? u : -1;
        if (o == i || (o >= 0 && col[o] == c)) ok = false;
      }
      if (!ok) continue;
      col[i] = c;
      if (go(i + 1)) return true;
      col[i] = -1;
    }
    return false;
  };
  return go(0);
}

namespace {

TBox join(const TBox& a, const TBox& b) {
  TBox out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

TBox positive(const TBox& t) {
  TBox out;
  for (const auto& ax : t)
    if (!ax.neg) out.push_back(ax);
  return out;
}

bool equivalent_up_to(const Structure& a, const Structure& b, int depth, const Transfer& x) {
  return brute_homomorphism(a.cut(depth), b, x.target_concepts, x.target_roles) &&
         brute_homomorphism(b.cut(depth), a, x.target_concepts, x.target_roles);
}

}  // namespace

bool source_inconsistent(const Transfer& x, const ABox& a) { return !consistent(join(x.t1, x.t12), a); }

bool target_inconsistent(const Transfer& x, const ABox& a) {
  return !consistent(x.t12, a) || !consistent(join(x.t2, positive(x.t12)), a);
}

EquivalenceReport representation_equivalent(const Transfer& x, int depth) {
  std::vector<std::string> cs, rs;
  for (const auto& c : x.source_concepts) cs.push_back(c);
  for (const auto& r : x.source_roles) {
    rs.push_back(r);
    rs.push_back(inv(r));
    cs.push_back(some(r));
    cs.push_back(some(inv(r)));
  }
  std::vector<ABox> boxes;
  for (size_t i = 0; i < cs.size(); ++i)
    for (size_t j = i; j < cs.size(); ++j) {
      ABox a;
      a.facts.push_back({false, cs[i], "a", ""});
      if (j != i) a.facts.push_back({false, cs[j], "a", ""});
      boxes.push_back(a);
    }
  for (size_t i = 0; i < rs.size(); ++i)
    for (size_t j = i; j < rs.size(); ++j) {
      ABox a;
      a.facts.push_back({true, rs[i], "a", "b"});
      if (j != i) a.facts.push_back({true, rs[j], "a", "b"});
      boxes.push_back(a);
    }
  EquivalenceReport rep;
  auto show = [](const ABox& a) {
    std::string s;
    for (const auto& f : a.facts)
      s += (s.empty() ? "" : ", ") + f.pred + (f.role ? "(" + f.s + "," + f.t + ")" : "(" + f.s + ")");
    return "{" + s + "}";
  };
  TBox src = join(x.t1, x.t12), tgt = join(x.t2, x.t12);
  for (const auto& a : boxes) {
    if (!consistent(x.t1, a)) continue;
    ++rep.aboxes;
    bool si = source_inconsistent(x, a), ti = target_inconsistent(x, a);
    if (si != ti) {
      rep.equivalent = false;
      rep.detail = show(a) + ": " + (si ? "only the source side" : "only the target side") + " is inconsistent";
      return rep;
    }
    if (si) continue;
    Structure s = chase(src, a, 2 * depth), t = chase(tgt, a, 2 * depth);
    if (!equivalent_up_to(s, t, depth, x)) {
      rep.equivalent = false;
      rep.detail = show(a) + ": target reducts differ";
      return rep;
    }
  }
  return rep;
}

bool separates(const Transfer& x, const ABox& a, const std::vector<QueryAtom>& q, bool source_entails,
               int depth) {
  if (!consistent(x.t1, a)) return false;
  bool s = source_inconsistent(x, a) || entails(chase(join(x.t1, x.t12), a, depth), q);
  bool t = target_inconsistent(x, a) || entails(chase(join(x.t2, x.t12), a, depth), q);
  return source_entails ? (s && !t) : (t && !s);
}

bool universal_witness(const TBox& t1, const TBox& t12, const ABox& a1, const TBox& t2, const ABox& w,
                       const std::set<std::string>& target_concepts,
                       const std::set<std::string>& target_roles, int depth, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  Structure u = chase(join(t1, t12), a1, 2 * depth + static_cast<int>(w.nulls.size()));
  if (u.clash) return fail("source side is inconsistent");
  Structure v = chase(t2, w, 2 * depth);
  if (v.clash) return fail("witness is inconsistent");
  if (!brute_homomorphism(u.cut(depth), v, target_concepts, target_roles))
    return fail("source chase does not map into the witness");
  if (!brute_homomorphism(v.cut(depth), u, target_concepts, target_roles))
    return fail("witness does not map into the source chase");
  return true;
}

}  // namespace oracle
