#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "bridge.h"
#include "kbx/automata.h"
#include "kbx/canonical.h"
#include "kbx/exchange.h"
#include "kbx/reasoner.h"
#include "kbx/representability.h"
#include "kbx/syntax.h"
#include "oracle.h"

using namespace kbx;
using nlohmann::ordered_json;

namespace {

enum Exit { kYes = 0, kNo = 1, kUnknown = 2, kInputError = 3 };

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string sha256(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::string hex;
  char buf[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

struct Options {
  std::string kb, mapping, candidate, t2;
  int depth = 2;
  int depth_cap = 0;
  bool json = false;
  bool timing = false;
  bool oracle = false;
  unsigned long seed = 0;
};

struct Report {
  std::string command;
  ordered_json inputs = ordered_json::object();
  std::string answer = "unknown";
  std::optional<std::string> witness;
  ordered_json certificate = ordered_json::object();
  std::string reason;
  std::optional<ordered_json> oracle;
  std::string text;  // plain output besides the summary (canonical, dump)
};

class Inputs {
 public:
  Inputs(const Options& o, Report& r) : o_(o), r_(r) {}

  std::string read(const std::string& role, const std::string& path) {
    if (path.empty()) throw InputError("missing --" + role);
    std::string text;
    try {
      text = read_file(path);
    } catch (const std::exception& e) {
      throw InputError(e.what());
    }
    r_.inputs[role] = {{"path", path}, {"sha256", sha256(text)}};
    return text;
  }

  template <class T, class F>
  T parse(const std::string& role, const std::string& path, F f) {
    std::string text = read(role, path);
    try {
      return f(text);
    } catch (const ParseError& e) {
      throw InputError(path + ":" + e.describe());
    }
  }

  KnowledgeBase kb() { return parse<KnowledgeBase>("kb", o_.kb, parse_kb); }
  TBox t1() { return parse<TBox>("kb", o_.kb, parse_tbox); }
  TBox t2() { return parse<TBox>("t2", o_.t2, parse_tbox); }
  KnowledgeBase candidate() { return parse<KnowledgeBase>("candidate", o_.candidate, parse_kb); }
  Mapping mapping() {
    Mapping m = parse<Mapping>("mapping", o_.mapping, parse_mapping);
    auto errs = validate_mapping(m);
    if (!errs.empty()) throw InputError(o_.mapping + ": " + errs.front());
    return m;
  }

 private:
  const Options& o_;
  Report& r_;
};

Exit exit_of(const std::string& answer) {
  if (answer == "yes") return kYes;
  if (answer == "no") return kNo;
  if (answer == "unknown") return kUnknown;
  return kInputError;
}

std::string answer_of(Tri t) { return to_string(t); }

ordered_json solution_certificate(const SolutionVerdict& v) {
  ordered_json c = ordered_json::object();
  if (v.forward) c["forward_simulation"] = {{"states", v.forward->states}, {"elements", v.forward->elements}};
  if (v.backward) c["backward_homomorphism"] = {{"elements", v.backward->map.size()}};
  if (v.model) c["model_elements"] = v.model->size();
  if (v.depth >= 0) c["depth"] = v.depth;
  if (v.violated) c["positivity_clause"] = std::string(1, v.violated);
  return c;
}

void solution_report(Report& r, const SolutionVerdict& v) {
  r.answer = answer_of(v.answer);
  r.reason = v.reason;
  if (v.answer == Tri::Yes && v.witness) r.witness = serialize(KnowledgeBase{{}, *v.witness});
  r.certificate = solution_certificate(v);
}

void oracle_solution(Report& r, const KnowledgeBase& k1, const Mapping& m, const ABox& w, const TBox& t2) {
  std::set<std::string> cs, rs;
  bridge::split(m.sigma2, {&m.t12, &t2}, cs, rs);
  std::string why;
  bool ok = oracle::universal_witness(bridge::tbox(k1.tbox), bridge::tbox(m.t12), bridge::abox(k1.abox),
                                      bridge::tbox(t2), bridge::abox(w), cs, rs, 6, &why);
  r.oracle = ordered_json{{"universal_witness", ok}};
  if (!ok) (*r.oracle)["why"] = why;
}

void representation_report(Report& r, const RepresentationVerdict& v) {
  r.answer = answer_of(v.answer);
  r.reason = v.reason;
  if (v.counterexample) {
    const auto& c = *v.counterexample;
    r.certificate["counterexample"] = {{"abox", serialize(c.abox)},
                                       {"query", c.query.str()},
                                       {"source_entails", c.source_entails},
                                       {"condition", c.condition},
                                       {"piece", c.piece}};
  }
  if (v.synthesized) r.witness = serialize(*v.synthesized);
}

void oracle_representation(Report& r, const Mapping& m, const TBox& t1, const TBox& t2) {
  auto e = oracle::representation_equivalent(bridge::transfer(m, t1, t2), 3);
  r.oracle = ordered_json{{"equivalent", e.equivalent}, {"aboxes", e.aboxes}};
  if (!e.equivalent) (*r.oracle)["why"] = e.detail;
}

int default_cap() {
  if (const char* s = std::getenv("KBX_DEPTH_CAP")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end && *end == '\0' && v >= 0) return static_cast<int>(v);
    throw InputError("KBX_DEPTH_CAP must be a non-negative integer");
  }
  return 6;
}

void run(const std::string& cmd, const Options& o, Report& r) {
  Inputs in(o, r);
  if (cmd == "consistency") {
    auto k = in.kb();
    resolve_together({&k.tbox}, {&k.abox}, nullptr);
    bool ok = kb_consistent(k);
    r.answer = ok ? "yes" : "no";
    r.reason = ok ? "no clash in the canonical model" : "the knowledge base has a clash";
    if (o.oracle) r.oracle = ordered_json{{"consistent", oracle::consistent(bridge::tbox(k.tbox), bridge::abox(k.abox))}};
    return;
  }
  if (cmd == "canonical") {
    auto k = in.kb();
    resolve_together({&k.tbox}, {&k.abox}, nullptr);
    try {
      auto c = build_canonical(k);
      auto f = materialize(c, o.depth);
      r.answer = "yes";
      r.reason = "canonical model up to depth " + std::to_string(o.depth);
      r.witness = serialize(f.to_abox());
      r.certificate = {{"elements", f.size()}, {"states", c.num_states()}};
    } catch (const InconsistentKB&) {
      r.answer = "no";
      r.reason = "the knowledge base is inconsistent";
    }
    return;
  }
  if (cmd == "automata dump") {
    auto k = in.kb();
    Signature extra;
    if (!o.mapping.empty()) {
      auto m = in.mapping();
      resolve_together({&k.tbox}, {&k.abox}, &m);
      k.tbox = unite(positive_part(k.tbox), positive_part(m.t12));
      extra = m.sigma1.unite(m.sigma2);
    } else {
      resolve_together({&k.tbox}, {&k.abox}, nullptr);
    }
    try {
      AutomataContext ctx(k, extra);
      r.text = build_acan(ctx).dump() + build_amod(ctx).dump() + build_afin(ctx).dump();
      r.answer = "yes";
      r.reason = "automata built";
    } catch (const InconsistentKB&) {
      r.answer = "no";
      r.reason = "the knowledge base is inconsistent";
    }
    return;
  }

  if (cmd == "usol-exists" || cmd == "usol-exists-ext" || cmd == "usol-check") {
    auto k = in.kb();
    auto m = in.mapping();
    std::optional<KnowledgeBase> cand;
    if (cmd == "usol-check") cand = in.candidate();
    std::vector<TBox*> ts{&k.tbox};
    std::vector<const ABox*> as{&k.abox};
    if (cand) {
      ts.push_back(&cand->tbox);
      as.push_back(&cand->abox);
    }
    resolve_together(ts, as, &m);
    if (!kb_consistent(k)) throw InputError("the source knowledge base is inconsistent");
    SolutionVerdict v;
    if (cmd == "usol-exists") v = universal_solution_plain(k, m);
    else if (cmd == "usol-exists-ext") v = universal_solution_extended(k, m, o.depth_cap);
    else v = is_universal_solution(k, m, *cand);
    solution_report(r, v);
    if (cmd == "usol-exists-ext") r.certificate["depth_cap"] = o.depth_cap;
    if (o.oracle && v.answer == Tri::Yes)
      oracle_solution(r, k, m, cand ? cand->abox : *v.witness, cand ? cand->tbox : TBox{});
    return;
  }

  auto t1 = in.t1();
  auto m = in.mapping();
  std::optional<TBox> t2;
  if (cmd == "rep-check") t2 = in.t2();
  std::vector<TBox*> ts{&t1};
  if (t2) ts.push_back(&*t2);
  resolve_together(ts, {}, &m);
  if (cmd == "rep-check") {
    auto v = is_ucq_representation(m, t1, *t2);
    representation_report(r, v);
    if (o.oracle) oracle_representation(r, m, t1, *t2);
    if (o.oracle && v.counterexample)
      (*r.oracle)["separates"] =
          oracle::separates(bridge::transfer(m, t1, *t2), bridge::abox(v.counterexample->abox),
                            bridge::query(v.counterexample->query), v.counterexample->source_entails, 6);
    return;
  }
  if (cmd == "rep-exists" || cmd == "rep-synth") {
    auto v = representation_exists(m, t1);
    if (cmd == "rep-synth" && v.answer == Tri::Yes) {
      auto s = synthesize_representation(m, t1);
      if (s) v.synthesized = s;
    }
    representation_report(r, v);
    if (cmd == "rep-exists") r.witness.reset();
    if (o.oracle && v.synthesized) oracle_representation(r, m, t1, *v.synthesized);
    return;
  }
  throw InputError("unknown command " + cmd);
}

void emit(const Report& r, const Options& o, double ms) {
  if (o.json) {
    ordered_json j;
    j["command"] = r.command;
    j["inputs"] = r.inputs;
    j["seed"] = o.seed;
    j["answer"] = r.answer;
    j["witness"] = r.witness ? ordered_json(*r.witness) : ordered_json(nullptr);
    j["certificate"] = r.certificate;
    j["reason"] = r.reason;
    if (!r.text.empty()) j["output"] = r.text;
    if (r.oracle) j["oracle"] = *r.oracle;
    if (o.timing) j["timing_ms"] = ms;
    std::cout << j.dump(2) << "\n";
    return;
  }
  if (!r.text.empty()) {
    std::cout << r.text;
    return;
  }
  std::cout << "answer: " << r.answer << "\n";
  if (!r.reason.empty()) std::cout << "reason: " << r.reason << "\n";
  if (r.certificate.contains("counterexample")) {
    const auto& c = r.certificate["counterexample"];
    std::cout << "counterexample:\n" << c["abox"].get<std::string>() << "query: " << c["query"].get<std::string>()
              << "\npiece: " << c["piece"].get<std::string>() << "\n";
  }
  if (r.witness) std::cout << *r.witness;
  if (r.oracle) std::cout << "oracle: " << r.oracle->dump() << "\n";
  if (o.timing) std::cout << "time: " << ms << " ms\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DL-Lite_R knowledge exchange toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--kb", o.kb, "knowledge base (or TBox T1) file");
  app.add_option("--mapping", o.mapping, "mapping file");
  app.add_flag("--json", o.json, "print a JSON report");
  app.add_option("--seed", o.seed, "seed recorded in the report");
  app.add_flag("--timing", o.timing, "include wall-clock time");
  app.add_flag("--oracle", o.oracle)->group("");

  std::string cmd;
  auto sub = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->callback([&cmd, name] { cmd = name; });
    return s;
  };
  sub("consistency", "is the KB consistent");
  sub("canonical", "print the canonical model up to a depth")->add_option("--depth", o.depth, "depth")->required();
  sub("usol-exists", "universal solution with a plain ABox");
  std::optional<int> cap;
  sub("usol-exists-ext", "universal solution with an extended ABox")->add_option("--depth-cap", cap, "depth cap");
  sub("usol-check", "is the candidate a universal solution")->add_option("--candidate", o.candidate, "candidate KB")->required();
  sub("rep-check", "is T2 a UCQ-representation of T1")->add_option("--t2", o.t2, "target TBox")->required();
  sub("rep-exists", "does T1 have a UCQ-representation");
  sub("rep-synth", "synthesize a UCQ-representation");
  auto* automata = app.add_subcommand("automata", "tree automata");
  automata->require_subcommand(1);
  automata->add_subcommand("dump", "list states and transitions")->callback([&cmd] { cmd = "automata dump"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  Report r;
  r.command = cmd;
  auto t0 = std::chrono::steady_clock::now();
  try {
    o.depth_cap = cap ? *cap : default_cap();
    run(cmd, o, r);
  } catch (const InputError& e) {
    r.answer = "error";
    r.reason = e.what();
  } catch (const InconsistentKB& e) {
    r.answer = "error";
    r.reason = e.what();
  }
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (r.answer == "error" && !o.json) std::cerr << "error: " << r.reason << "\n";
  else emit(r, o, ms);
  return exit_of(r.answer);
}
