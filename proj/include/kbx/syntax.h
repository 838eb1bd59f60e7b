#pragma once

#include <stdexcept>
#include <set>
#include <string>
#include <vector>

#include "kbx/core.h"

namespace kbx {

struct SourceSpan {
  size_t start = 0, end = 0;
  int line = 1, column = 1;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, SourceSpan span)
      : std::runtime_error(msg), span_(span) {}
  const SourceSpan& span() const { return span_; }
  // "line:col: message"
  std::string describe() const;

 private:
  SourceSpan span_;
};

// All parsers throw ParseError on the first failure.
KnowledgeBase parse_kb(const std::string& text);
Mapping parse_mapping(const std::string& text);
// Accepts "tbox { ... }" or a whole kb (its tbox is taken).
TBox parse_tbox(const std::string& text);
// Accepts "abox { ... }" or a whole kb (its abox is taken).
ABox parse_abox(const std::string& text);

std::string serialize(const KnowledgeBase& k);
std::string serialize(const Mapping& m);
std::string serialize(const ABox& a);
std::string serialize(const TBox& t);

std::string read_file(const std::string& path);

}  // namespace kbx

namespace kbx {

// "P [= Q" between bare names parses as a concept inclusion unless P or Q is
// known to be a role. Files that only make sense together (kb, mapping, T2)
// are resolved against the union of their role names with this.
TBox resolve_roles(const TBox& t, const std::set<std::string>& roles);
std::set<std::string> role_names(const TBox& t);
std::set<std::string> role_names(const ABox& a);

}  // namespace kbx

namespace kbx {

// Cross-resolves the files of one problem: every "P [= Q" whose names are
// roles in any of the inputs becomes a role inclusion, and the mapping
// signatures are re-sorted into concept and role names.
void resolve_together(const std::vector<TBox*>& tboxes, const std::vector<const ABox*>& aboxes,
                      Mapping* m);

}  // namespace kbx
