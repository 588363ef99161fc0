#include "folbridge/syntax.hpp"

#include <array>
#include <cctype>
#include <set>

namespace folbridge {

namespace {

struct PrimEntry {
  PrimOp op;
  const char* name;
};

constexpr std::array<PrimEntry, 9> kPrims{{
    {PrimOp::Add, "int_add"},
    {PrimOp::Sub, "int_sub"},
    {PrimOp::Mul, "int_mul"},
    {PrimOp::Le, "int_le"},
    {PrimOp::Lt, "int_lt"},
    {PrimOp::Orb, "orb"},
    {PrimOp::Andb, "andb"},
    {PrimOp::Negb, "negb"},
    {PrimOp::Eqb, "eqb"},
}};

const std::set<std::string>& reserved() {
  static const std::set<std::string> words = [] {
    std::set<std::string> s{"forall", "exists", "fun",   "fix",  "match", "return",
                            "with",   "end",    "Type",  "Prop", "Int",   "true_p",
                            "false_p", "data",  "def",   "hyp",  "lemma", "goal",
                            "param",  "_"};
    for (const auto& p : kPrims) s.insert(p.name);
    return s;
  }();
  return words;
}

}  // namespace

bool is_reserved_word(const std::string& name) { return reserved().count(name) != 0; }

bool is_valid_identifier(const std::string& name) {
  if (name.empty()) return false;
  const auto first = static_cast<unsigned char>(name[0]);
  if (!std::isalpha(first) && first != '_') return false;
  for (char c : name) {
    const auto u = static_cast<unsigned char>(c);
    if (!std::isalnum(u) && c != '_' && c != '\'') return false;
  }
  return true;
}

const char* prim_identifier(PrimOp op) {
  for (const auto& p : kPrims) {
    if (p.op == op) return p.name;
  }
  return "?";
}

std::optional<PrimOp> prim_from_identifier(const std::string& name) {
  for (const auto& p : kPrims) {
    if (name == p.name) return p.op;
  }
  return std::nullopt;
}

}  // namespace folbridge
