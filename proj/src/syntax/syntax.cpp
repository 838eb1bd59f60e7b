#include "kbx/syntax.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

namespace kbx {

std::string ParseError::describe() const {
  return std::to_string(span_.line) + ":" + std::to_string(span_.column) + ": " + what();
}

namespace {

enum class Tok { Ident, Sym, End };

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  size_t i = 0;
  int line = 1, col = 1;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    SourceSpan sp{i, i, line, col};
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '\''))
        ++j;
      std::string word = s.substr(i, j - i);
      advance(j - i);
      sp.end = i;
      out.push_back({Tok::Ident, word, sp});
      continue;
    }
    if (c == '[' && i + 1 < s.size() && s[i + 1] == '=') {
      advance(2);
      sp.end = i;
      out.push_back({Tok::Sym, "[=", sp});
      continue;
    }
    if (std::string("{}(),;-_").find(c) != std::string::npos) {
      advance(1);
      sp.end = i;
      out.push_back({Tok::Sym, std::string(1, c), sp});
      continue;
    }
    sp.end = i + 1;
    throw ParseError(std::string("unexpected character '") + c + "'", sp);
  }
  SourceSpan sp{i, i, line, col};
  out.push_back({Tok::End, "", sp});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  const Token& peek(size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at_end() const { return peek().kind == Tok::End; }

  bool is_sym(const std::string& s, size_t k = 0) const {
    return peek(k).kind == Tok::Sym && peek(k).text == s;
  }
  bool is_word(const std::string& s, size_t k = 0) const {
    return peek(k).kind == Tok::Ident && peek(k).text == s;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + ", got " + got, t.span);
  }

  void expect_sym(const std::string& s) {
    if (!is_sym(s)) fail("expected '" + s + "'");
    ++pos_;
  }
  void expect_word(const std::string& s) {
    if (!is_word(s)) fail("expected '" + s + "'");
    ++pos_;
  }
  std::string ident() {
    if (peek().kind != Tok::Ident) fail("expected identifier");
    return toks_[pos_++].text;
  }

  Role role() {
    Role r{ident(), false};
    if (is_sym("-")) {
      ++pos_;
      r.inv = true;
    }
    return r;
  }

  // Concept-or-role operand of an axiom; which one is decided by the caller.
  struct Operand {
    bool exists = false;
    Role r;
    SourceSpan span;
  };

  Operand operand() {
    Operand o;
    o.span = peek().span;
    if (is_word("exists")) {
      ++pos_;
      o.exists = true;
      o.r = role();
    } else {
      o.r = role();
    }
    return o;
  }

  std::vector<Axiom> axiom() {
    if (is_word("role") && peek(1).kind == Tok::Ident) {
      // explicit role inclusion between role names: role P [= (not)? Q;
      ++pos_;
      Role l = role();
      expect_sym("[=");
      bool neg = false;
      if (is_word("not")) {
        ++pos_;
        neg = true;
      }
      Role r = role();
      expect_sym(";");
      return {Axiom::role_incl(l, r, neg)};
    }
    Operand lhs = operand();
    if (is_word("and")) {
      // B and C [= bottom  is read as  B [= not C
      ++pos_;
      Operand rhs = operand();
      expect_sym("[=");
      expect_word("bottom");
      expect_sym(";");
      return {make(lhs, rhs, true)};
    }
    expect_sym("[=");
    bool neg = false;
    if (is_word("not")) {
      ++pos_;
      neg = true;
    }
    Operand rhs = operand();
    expect_sym(";");
    return {make(lhs, rhs, neg)};
  }

  Axiom make(const Operand& l, const Operand& r, bool neg) {
    bool lrole = !l.exists && l.r.inv;
    bool rrole = !r.exists && r.r.inv;
    if (lrole || rrole) {
      if (l.exists || r.exists) throw ParseError("cannot mix a role and a concept in one axiom", l.span);
      return Axiom::role_incl(l.r, r.r, neg);
    }
    auto as_concept = [](const Operand& o) {
      return o.exists ? Concept::some(o.r) : Concept::atomic(o.r.name);
    };
    return Axiom::concept_incl(as_concept(l), as_concept(r), neg);
  }

  TBox tbox_block() {
    expect_word("tbox");
    expect_sym("{");
    std::vector<Axiom> raw;
    while (!is_sym("}")) {
      if (at_end()) fail("expected '}'");
      auto v = axiom();
      raw.insert(raw.end(), v.begin(), v.end());
    }
    expect_sym("}");
    return reclassify(raw);
  }

  // Atomic operands are ambiguous between concept names and role names
  // (P [= Q). A name is a role when it occurs as a role anywhere else.
  TBox reclassify(const std::vector<Axiom>& raw) {
    std::set<std::string> roles = known_roles_;
    for (const auto& a : raw) {
      if (a.is_role) {
        roles.insert(a.lr.name);
        roles.insert(a.rr.name);
      } else {
        if (a.lc.exists) roles.insert(a.lc.name);
        if (a.rc.exists) roles.insert(a.rc.name);
      }
    }
    TBox out;
    for (const auto& a : raw) {
      if (!a.is_role && !a.lc.exists && !a.rc.exists &&
          (roles.count(a.lc.name) || roles.count(a.rc.name))) {
        out.insert(Axiom::role_incl(Role{a.lc.name, false}, Role{a.rc.name, false}, a.negated));
      } else {
        out.insert(a);
      }
    }
    return out;
  }

  Term arg() {
    if (is_sym("_")) {
      ++pos_;
      return Term::labeled_null(ident());
    }
    return Term::constant(ident());
  }

  ABox abox_block() {
    expect_word("abox");
    expect_sym("{");
    ABox a;
    bool has_exists = false;
    SourceSpan exists_span;
    while (!is_sym("}")) {
      if (at_end()) fail("expected '}'");
      SourceSpan sp = peek().span;
      if (is_word("exists")) {
        ++pos_;
        Role r = role();
        expect_sym("(");
        Term t = arg();
        if (is_sym(",")) fail("'exists R' takes one argument");
        expect_sym(")");
        expect_sym(";");
        a.add(Assertion::concept_fact(Concept::some(r), t));
        has_exists = true;
        exists_span = sp;
        continue;
      }
      std::string head = ident();
      bool inv = false;
      if (is_sym("-")) {
        ++pos_;
        inv = true;
      }
      expect_sym("(");
      Term t1 = arg();
      if (is_sym(",")) {
        ++pos_;
        Term t2 = arg();
        expect_sym(")");
        expect_sym(";");
        a.add(Assertion::role_fact(Role{head, inv}, t1, t2));
        known_roles_.insert(head);
      } else {
        expect_sym(")");
        expect_sym(";");
        if (inv) throw ParseError("inverse marker on a concept assertion", sp);
        a.add(Assertion::concept_fact(Concept::atomic(head), t1));
      }
    }
    expect_sym("}");
    if (has_exists && a.extended())
      throw ParseError("'exists R (u)' is only allowed in ABoxes without nulls", exists_span);
    return a;
  }

  KnowledgeBase kb() {
    expect_word("kb");
    expect_sym("{");
    // The abox is parsed first only for role-name discovery; keep source order.
    size_t save = pos_;
    skip_block();
    ABox a = abox_block();
    size_t after = pos_;
    pos_ = save;
    TBox t = tbox_block();
    pos_ = after;
    expect_sym("}");
    finish();
    return KnowledgeBase{t, fix_abox(a, t)};
  }

  // Concept assertions whose name is a role elsewhere make no sense.
  ABox fix_abox(const ABox& a, const TBox& t) {
    Signature s = signature_of(t);
    for (const auto& x : a.assertions) {
      if (!x.is_role && !x.c.exists && s.has_role(x.c.name) && !s.has_concept(x.c.name))
        throw ParseError("role name used as a concept in the abox: " + x.c.name, SourceSpan{});
    }
    return a;
  }

  void skip_block() {
    if (!is_word("tbox")) fail("expected 'tbox'");
    ++pos_;
    expect_sym("{");
    int depth = 1;
    while (depth > 0) {
      if (at_end()) fail("expected '}'");
      if (is_sym("{")) ++depth;
      if (is_sym("}")) --depth;
      ++pos_;
    }
  }

  std::set<std::string> name_list() {
    expect_sym("{");
    std::set<std::string> out;
    while (!is_sym("}")) {
      out.insert(ident());
      if (is_sym(",")) ++pos_;
      else if (!is_sym("}")) fail("expected ',' or '}'");
    }
    expect_sym("}");
    return out;
  }

  Mapping mapping() {
    expect_word("mapping");
    expect_sym("{");
    expect_word("source");
    auto src = name_list();
    expect_word("target");
    auto tgt = name_list();
    SourceSpan tspan = peek().span;
    TBox t = tbox_block();
    expect_sym("}");
    finish();
    Mapping m;
    Signature used = signature_of(t);
    for (const auto& n : src) (used.has_role(n) ? m.sigma1.roles : m.sigma1.concepts).insert(n);
    for (const auto& n : tgt) (used.has_role(n) ? m.sigma2.roles : m.sigma2.concepts).insert(n);
    m.t12 = t;
    auto v = validate_mapping(m);
    if (!v.empty()) throw ParseError(v.front(), tspan);
    return m;
  }

  TBox standalone_tbox() {
    if (is_word("kb")) return kb().tbox;
    TBox t = tbox_block();
    finish();
    return t;
  }

  ABox standalone_abox() {
    if (is_word("kb")) return kb().abox;
    ABox a = abox_block();
    finish();
    return a;
  }

  void finish() {
    if (!at_end()) fail("expected end of input");
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
  std::set<std::string> known_roles_;
};

std::vector<std::string> sorted_lines(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::string tbox_body(const TBox& t, const std::string& indent) {
  std::vector<std::string> lines;
  for (const auto& a : t) lines.push_back(a.str() + ";");
  std::string out;
  for (const auto& l : sorted_lines(lines)) out += indent + l + "\n";
  return out;
}

std::string abox_body(const ABox& a, const std::string& indent) {
  std::vector<std::string> lines;
  for (const auto& x : a.assertions) lines.push_back(x.str() + ";");
  std::string out;
  for (const auto& l : sorted_lines(lines)) out += indent + l + "\n";
  return out;
}

std::string names(const Signature& s) {
  std::set<std::string> all = s.concepts;
  all.insert(s.roles.begin(), s.roles.end());
  std::string out;
  for (const auto& n : all) out += (out.empty() ? "" : ", ") + n;
  return out;
}

}  // namespace

KnowledgeBase parse_kb(const std::string& text) {
  Parser p(text);
  return p.kb();
}

Mapping parse_mapping(const std::string& text) {
  Parser p(text);
  return p.mapping();
}

TBox parse_tbox(const std::string& text) {
  Parser p(text);
  return p.standalone_tbox();
}

ABox parse_abox(const std::string& text) {
  Parser p(text);
  return p.standalone_abox();
}

std::string serialize(const TBox& t) { return "tbox {\n" + tbox_body(t, "  ") + "}\n"; }

std::string serialize(const ABox& a) { return "abox {\n" + abox_body(a, "  ") + "}\n"; }

std::string serialize(const KnowledgeBase& k) {
  return "kb {\n  tbox {\n" + tbox_body(k.tbox, "    ") + "  }\n  abox {\n" +
         abox_body(k.abox, "    ") + "  }\n}\n";
}

std::string serialize(const Mapping& m) {
  return "mapping {\n  source { " + names(m.sigma1) + " }\n  target { " + names(m.sigma2) +
         " }\n  tbox {\n" + tbox_body(m.t12, "    ") + "  }\n}\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace kbx

namespace kbx {

TBox resolve_roles(const TBox& t, const std::set<std::string>& roles) {
  TBox out;
  for (const auto& a : t) {
    if (!a.is_role && !a.lc.exists && !a.rc.exists &&
        (roles.count(a.lc.name) || roles.count(a.rc.name))) {
      out.insert(Axiom::role_incl(Role{a.lc.name, false}, Role{a.rc.name, false}, a.negated));
    } else {
      out.insert(a);
    }
  }
  return out;
}

std::set<std::string> role_names(const TBox& t) { return signature_of(t).roles; }
std::set<std::string> role_names(const ABox& a) { return signature_of(a).roles; }

}  // namespace kbx

namespace kbx {

void resolve_together(const std::vector<TBox*>& tboxes, const std::vector<const ABox*>& aboxes,
                      Mapping* m) {
  std::set<std::string> roles;
  for (const auto* a : aboxes) roles.merge(role_names(*a));
  if (m) {
    roles.insert(m->sigma1.roles.begin(), m->sigma1.roles.end());
    roles.insert(m->sigma2.roles.begin(), m->sigma2.roles.end());
  }
  std::vector<TBox*> all = tboxes;
  if (m) all.push_back(&m->t12);
  for (;;) {
    size_t before = roles.size();
    for (auto* t : all) {
      *t = resolve_roles(*t, roles);
      roles.merge(role_names(*t));
    }
    if (roles.size() == before) break;
  }
  if (!m) return;
  for (Signature* s : {&m->sigma1, &m->sigma2}) {
    Signature out;
    for (const auto& n : s->concepts) (roles.count(n) ? out.roles : out.concepts).insert(n);
    for (const auto& n : s->roles) out.roles.insert(n);
    *s = out;
  }
}

}  // namespace kbx
