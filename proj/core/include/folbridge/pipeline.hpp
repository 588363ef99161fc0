#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "folbridge/certify.hpp"
#include "folbridge/smt.hpp"
#include "folbridge/transforms.hpp"

namespace folbridge {

enum class Stage { Adt, Def, Expand, Fix, Match, Mono };

const char* stage_name(Stage stage);
/// Comma-separated stage names, e.g. `def,expand,match`. Throws Error on an
/// unknown name.
std::vector<Stage> parse_stage_list(const std::string& text);

struct PipelineConfig {
  /// Restrict to these stages; they still run in the default order unless
  /// `ordered` is set.
  std::optional<std::vector<Stage>> only;
  bool ordered = false;
  bool exhaustiveness = false;
  bool mono_from_context = false;
  CertifyOptions certify;
  /// Check each new hypothesis and stop with CertificationFailed on an
  /// invalid one. `audit` turns this off to report every verdict instead.
  bool certify_each = true;
  std::size_t def_depth_limit = 16;
  std::size_t match_rounds = 8;
  /// Constants never unfolded by the def stage.
  std::set<std::string> interpreted;
};

/// The problem as a proof state, with the goal's leading type binders
/// introduced as opaque `Type` parameters.
ProofState initial_state(const Problem& problem);

struct ScopeResult {
  ProofState state;
  /// `== stage:<name> ==` blocks listing every hypothesis after each stage.
  std::string trace;
};

/// Runs adt, def, expand, fix, match, adt again and mono, certifying every
/// new hypothesis. The goal is left untouched.
ScopeResult scope(ProofState state, const PipelineConfig& config = {});

/// Trace block for one state.
std::string trace_block(const std::string& stage, const ProofState& state);

enum class Outcome { Proved, NotProved, Unknown };

const char* to_string(Outcome outcome);

struct ProveConfig {
  PipelineConfig pipeline;
  EmitOptions emit;
  std::vector<SolverConfig> solvers;  // run as a portfolio
};

struct ProveResult {
  Outcome outcome = Outcome::Unknown;
  std::string reason;
  ProofState state;
  std::string trace;
  FolProblem fol;
  std::string script;
  SolverResult solver;
};

/// scope, then extraction, emission and the solver. Throws NotFirstOrder,
/// PipelineError and SolverError.
ProveResult prove(const Problem& problem, const ProveConfig& config);

}  // namespace folbridge
