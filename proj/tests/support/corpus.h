#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "kbx/syntax.h"

#ifndef KBX_CORPUS_DIR
#define KBX_CORPUS_DIR "tests/corpus"
#endif

namespace corpus {

struct Case {
  std::string name;
  kbx::Mapping mapping;
  std::optional<kbx::KnowledgeBase> kb, candidate;
  std::optional<kbx::TBox> t1, t2;
};

inline std::string dir(const std::string& name) { return std::string(KBX_CORPUS_DIR) + "/" + name; }

inline Case load(const std::string& name) {
  namespace fs = std::filesystem;
  Case c;
  c.name = name;
  std::string d = dir(name);
  c.mapping = kbx::parse_mapping(kbx::read_file(d + "/mapping.txt"));
  if (fs::exists(d + "/kb.txt")) c.kb = kbx::parse_kb(kbx::read_file(d + "/kb.txt"));
  if (fs::exists(d + "/candidate.txt")) c.candidate = kbx::parse_kb(kbx::read_file(d + "/candidate.txt"));
  if (fs::exists(d + "/t1.txt")) c.t1 = kbx::parse_tbox(kbx::read_file(d + "/t1.txt"));
  if (fs::exists(d + "/t2.txt")) c.t2 = kbx::parse_tbox(kbx::read_file(d + "/t2.txt"));
  std::vector<kbx::TBox*> ts;
  std::vector<const kbx::ABox*> as;
  for (auto* k : {&c.kb, &c.candidate})
    if (*k) {
      ts.push_back(&(*k)->tbox);
      as.push_back(&(*k)->abox);
    }
  for (auto* t : {&c.t1, &c.t2})
    if (*t) ts.push_back(&**t);
  kbx::resolve_together(ts, as, &c.mapping);
  return c;
}

inline std::vector<std::string> names() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(KBX_CORPUS_DIR))
    if (e.is_directory()) out.push_back(e.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace corpus
