#pragma once

#include <atomic>
#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "folbridge/transforms.hpp"

namespace folbridge {

// Extraction ------------------------------------------------------------------

struct FolSort {
  std::string name;  // SMT-LIB symbol; `Int` and `Bool` are builtin
  Term type;
  bool builtin = false;
};

struct FolFunction {
  std::string name;
  std::vector<std::string> arg_sorts;
  std::string result_sort;
  // Set for constructor symbols: inductive and constructor index.
  std::optional<std::pair<std::string, std::size_t>> constructor;
};

struct FolAxiom {
  std::string name;
  std::string formula;  // SMT-LIB term of sort Bool
  bool datatype_axiom = false;
};

struct SkippedHypothesis {
  std::string name;
  std::string reason;
};

struct FolProblem {
  std::vector<FolSort> sorts;  // declaration order
  std::vector<FolFunction> functions;
  std::vector<FolAxiom> axioms;
  std::string goal;          // the goal itself, not negated
  std::string negated_goal;  // (not goal)
  std::vector<SkippedHypothesis> skipped;
  bool nonlinear = false;  // some product of two non-literals
  bool quantified = false;
};

/// Translates the first-order part of the state. Hypotheses outside the
/// fragment are recorded in `skipped`; a goal outside it throws NotFirstOrder.
FolProblem extract_fol(const ProofState& state);

/// `base$T1$..$Tn` with each type mangled the same way in prefix order,
/// which is injective because every type former has a fixed arity.
std::string mangle(const GlobalEnv& env, const std::string& base, const std::vector<Term>& type_args);

/// SMT-LIB simple symbol for an identifier: characters outside
/// [A-Za-z0-9_] become `%HH` (so `$` stays free for mangling); reserved
/// words and a leading digit get a `%_` prefix.
std::string escape_symbol(const std::string& name);
std::string unescape_symbol(const std::string& symbol);

// Emission ----------------------------------------------------------------------

struct EmitOptions {
  /// declare-datatypes instead of uninterpreted sorts plus axioms.
  bool native_adt = false;
  /// Assert the goal instead of its negation (consistency smoke check).
  bool assert_goal = false;
};

std::string emit_smtlib(const FolProblem& p, const GlobalEnv& env, const EmitOptions& options = {});

// Solving -----------------------------------------------------------------------

struct SolverConfig {
  std::string name = "z3";
  std::string executable = "z3";
  /// `{file}` is replaced by a temporary script path; without it the script
  /// goes to standard input.
  std::vector<std::string> args{"-in", "-smt2"};
  double timeout_s = 30;
};

enum class SolverStatus { Sat, Unsat, Unknown, Timeout, Error };

const char* to_string(SolverStatus status);

struct SolverResult {
  SolverStatus status = SolverStatus::Error;
  std::string solver;
  std::string output;  // stdout, plus stderr on error
  std::string detail;
  std::chrono::milliseconds elapsed{0};
};

/// Runs one solver process. Spawn failures, any `(error ...)` response,
/// a nonzero exit without a status token and unparseable output are
/// reported as Error. `cancel` stops the
/// run early (reported as Unknown).
SolverResult run_solver(const std::string& script, const SolverConfig& config,
                        const std::atomic<bool>* cancel = nullptr);

/// Runs every solver concurrently and returns the first Sat or Unsat answer,
/// cancelling the others; otherwise the first result in configuration order.
SolverResult run_portfolio(const std::string& script, const std::vector<SolverConfig>& solvers);

// Configuration -----------------------------------------------------------------

struct BackendConfig {
  std::vector<SolverConfig> solvers;  // in file order
  std::string default_solver = "z3";
  std::vector<std::string> portfolio;  // solver names; empty means the default only
};

/// Built-in entries for z3 and for cvc5 through the bundled wrapper script.
BackendConfig default_backend_config();

/// Reads a TOML file:
///   default = "z3"
///   portfolio = ["z3", "cvc5"]
///   [solver.z3]
///   executable = "z3"
///   args = ["-in", "-smt2"]
///   timeout_s = 30
/// Entries are merged over the defaults. Throws Error on malformed input.
BackendConfig load_backend_config(const std::string& path);

/// Defaults, then the file named by FOLBRIDGE_CONFIG (or `path` if given),
/// then FOLBRIDGE_SOLVER selecting the default entry.
BackendConfig resolve_backend_config(const std::optional<std::string>& path);

const SolverConfig* find_solver(const BackendConfig& config, const std::string& name);

}  // namespace folbridge
