#include "support/golden.hpp"

#include <cstdlib>
#include <fstream>

#include "folbridge/parser.hpp"
#include "folbridge/pipeline.hpp"
#include "folbridge/printer.hpp"
#include "support/oracles.hpp"

namespace folbridge::testing {

const char* const kAxiomPrelude = R"(
data nat = O | S (nat).
data list (A : Type) = nil | cons (A) (list A).
data option (A : Type) = none | some (A).
data pair (A : Type) (B : Type) = mkpair (A) (B).
data shape = circle (Int) | rect (Int) (Int) | dot.
)";

const std::vector<AxiomCase>& axiom_cases() {
  static const std::vector<AxiomCase> cases{
      {"adt_list", "list Int"}, {"adt_option", "option bool"}, {"adt_nat", "nat"},
      {"adt_pair", "pair Int bool"}, {"adt_shape", "shape"},
  };
  return cases;
}

std::string render_axioms(const std::string& type, bool exhaustiveness) {
  const std::string text = std::string(kAxiomPrelude) + "goal forall (v : " + type + "), v = v.\n";
  PipelineConfig c;
  c.only = parse_stage_list("adt");
  c.exhaustiveness = exhaustiveness;
  ProofState s = scope(initial_state(parse_problem(text)), c).state;
  std::string out;
  for (const auto& h : s.hypotheses) out += h.name + " : " + print_term(h.statement, s.env) + "\n";
  return out;
}

std::string scope_trace(const std::string& corpus_file) {
  return scope(initial_state(parse_problem(read_file(corpus_path(corpus_file))))).trace;
}

bool matches_golden(const std::string& name, const std::string& actual, bool regenerable) {
  const std::string path = golden_path(name);
  if (regenerable && std::getenv("FOLBRIDGE_UPDATE_GOLDEN")) {
    std::ofstream(path, std::ios::binary) << actual;
    return true;
  }
  try {
    return read_file(path) == actual;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace folbridge::testing
