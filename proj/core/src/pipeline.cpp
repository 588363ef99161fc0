#include "folbridge/pipeline.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "folbridge/error.hpp"
#include "folbridge/printer.hpp"

namespace folbridge {

const char* stage_name(Stage stage) {
  switch (stage) {
    case Stage::Adt: return "adt";
    case Stage::Def: return "def";
    case Stage::Expand: return "expand";
    case Stage::Fix: return "fix";
    case Stage::Match: return "match";
    case Stage::Mono: return "mono";
  }
  return "?";
}

std::vector<Stage> parse_stage_list(const std::string& text) {
  std::vector<Stage> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    bool found = false;
    for (Stage s : {Stage::Adt, Stage::Def, Stage::Expand, Stage::Fix, Stage::Match, Stage::Mono}) {
      if (item == stage_name(s)) {
        out.push_back(s);
        found = true;
      }
    }
    if (!found) throw Error("unknown stage '" + item + "' (expected adt, def, expand, fix, match or mono)");
  }
  if (out.empty()) throw Error("empty stage list");
  return out;
}

const char* to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Proved: return "Proved";
    case Outcome::NotProved: return "NotProved";
    case Outcome::Unknown: return "Unknown";
  }
  return "?";
}

ProofState initial_state(const Problem& problem) {
  ProofState s = ProofState::from_problem(problem);
  while (s.goal.is(TermKind::Pi) && s.goal.domain() == Term::type()) {
    std::string name = s.goal.name() == "_" ? "T" : s.goal.name();
    for (std::size_t i = 0; s.env.name_taken(name) || s.find(name); ++i) {
      name = (s.goal.name() == "_" ? "T" : s.goal.name()) + std::to_string(i);
    }
    s.env.add_parameter(name, Term::type());
    s.goal = subst(s.goal.body(), 0, Term::constant(name));
  }
  return s;
}

std::string trace_block(const std::string& stage, const ProofState& state) {
  std::string out = "== stage:" + stage + " ==\n";
  for (const auto& h : state.hypotheses) out += h.name + " : " + print_term(h.statement, state.env) + "\n";
  out += "goal : " + print_term(state.goal, state.env) + "\n";
  return out;
}

namespace {

void collect_constants(const Term& t, std::vector<std::string>& out) {
  if (t.is(TermKind::Const)) {
    if (std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
    return;
  }
  for (const Term& c : t.children()) collect_constants(c, out);
  if (t.is(TermKind::Match)) {
    for (const auto& b : t.branches()) collect_constants(b.body, out);
  }
}

class Scope {
 public:
  Scope(ProofState state, const PipelineConfig& config) : state_(std::move(state)), config_(config) {}

  ScopeResult run() {
    trace_ += trace_block("input", state_);
    for (const auto& [stage, label] : plan()) {
      current_ = label;
      try {
        switch (stage) {
          case Stage::Adt: adt(); break;
          case Stage::Def: def(); break;
          case Stage::Expand: expand_stage(); break;
          case Stage::Fix: fix(); break;
          case Stage::Match: match(); break;
          case Stage::Mono: mono(); break;
        }
      } catch (const PipelineError&) {
        throw;
      } catch (const TransformError& e) {
        throw PipelineError(label, e.what());
      }
      trace_ += trace_block(label, state_);
    }
    return {std::move(state_), std::move(trace_)};
  }

 private:
  std::vector<std::pair<Stage, std::string>> plan() const {
    const std::vector<Stage> defaults{Stage::Adt, Stage::Def, Stage::Expand, Stage::Fix, Stage::Match, Stage::Mono};
    auto selected = [&](Stage s) {
      return !config_.only || std::find(config_.only->begin(), config_.only->end(), s) != config_.only->end();
    };
    std::vector<std::pair<Stage, std::string>> out;
    if (config_.only && config_.ordered) {
      for (Stage s : *config_.only) out.emplace_back(s, stage_name(s));
      return out;
    }
    for (Stage s : defaults) {
      if (!selected(s)) continue;
      // Datatypes that only appear in fetched definitions get their axioms
      // from a second adt pass before monomorphization.
      if (s == Stage::Mono && selected(Stage::Adt)) out.emplace_back(Stage::Adt, "adt-rerun");
      out.emplace_back(s, stage_name(s));
    }
    if (selected(Stage::Adt) && !selected(Stage::Mono)) out.emplace_back(Stage::Adt, "adt-rerun");
    return out;
  }

  // Certifies and appends; returns false for an alpha-duplicate.
  bool add(Hypothesis h) {
    if (state_.contains(h.statement)) return false;
    if (config_.certify_each) {
      Verdict v = check_hypothesis(state_, h, config_.certify);
      if (!v.valid) throw CertificationFailed(current_, h.name, v.reason);
    }
    state_.add(std::move(h));
    return true;
  }

  void adt() {
    for (auto& h : interp_alg_types(state_, config_.exhaustiveness)) add(std::move(h));
  }

  void def() {
    std::vector<std::string> roots;
    collect_constants(state_.goal, roots);
    for (const auto& h : state_.hypotheses) collect_constants(h.statement, roots);
    for (const auto& h : state_.lemmas) collect_constants(h.statement, roots);
    std::set<std::string> visited;
    std::function<void(const std::string&, std::size_t)> fetch = [&](const std::string& c, std::size_t depth) {
      if (!visited.insert(c).second) return;
      const Definition* d = state_.env.find_definition(c);
      if (!d || d->opaque() || config_.interpreted.count(c)) return;
      if (depth > config_.def_depth_limit) {
        throw PipelineError(current_, "definition depth limit exceeded at " + c);
      }
      try {
        Hypothesis h = get_def(state_, c);
        const std::string name = h.name;
        if (add(std::move(h))) defs_.push_back(name);
      } catch (const TransformError& e) {
        if (e.code() != TransformError::Code::AlreadyPresent) throw;
      }
      std::vector<std::string> inner;
      collect_constants(d->type, inner);
      collect_constants(*d->body, inner);
      for (const auto& n : inner) fetch(n, depth + 1);
    };
    for (const auto& c : roots) fetch(c, 0);
  }

  void expand_stage() {
    for (const auto& name : defs_) {
      Hypothesis h = expand(state_, name);
      if (h.statement == state_.find(name)->statement) continue;
      const std::string n = h.name;
      if (add(std::move(h))) expanded_.push_back(n);
    }
  }

  void fix() {
    for (const auto& name : expanded_) {
      try {
        Hypothesis h = eliminate_fix(state_, name);
        const std::string n = h.name;
        if (add(std::move(h))) fixed_.push_back(n);
      } catch (const TransformError& e) {
        if (e.code() != TransformError::Code::NoFixpointFound && e.code() != TransformError::Code::NotAnEquation) throw;
      }
    }
  }

  void match() {
    std::vector<std::string> frontier = expanded_;
    frontier.insert(frontier.end(), fixed_.begin(), fixed_.end());
    for (std::size_t round = 0; round < config_.match_rounds && !frontier.empty(); ++round) {
      std::vector<std::string> next;
      for (const auto& name : frontier) {
        std::vector<Hypothesis> cases;
        try {
          cases = eliminate_pattern_matching(state_, name);
        } catch (const TransformError& e) {
          if (e.code() != TransformError::Code::NoMatchOnBoundVar) throw;
          continue;
        }
        for (auto& h : cases) {
          const std::string n = h.name;
          if (add(std::move(h))) next.push_back(n);
        }
      }
      frontier = std::move(next);
    }
  }

  void mono() {
    for (auto& h : monomorphize(state_, {.from_context = config_.mono_from_context})) add(std::move(h));
  }

  ProofState state_;
  const PipelineConfig& config_;
  std::string trace_;
  std::string current_;
  std::vector<std::string> defs_, expanded_, fixed_;
};

}  // namespace

ScopeResult scope(ProofState state, const PipelineConfig& config) { return Scope(std::move(state), config).run(); }

ProveResult prove(const Problem& problem, const ProveConfig& config) {
  ProveResult r;
  ScopeResult s = scope(initial_state(problem), config.pipeline);
  r.state = std::move(s.state);
  r.trace = std::move(s.trace);
  r.fol = extract_fol(r.state);
  r.script = emit_smtlib(r.fol, r.state.env, config.emit);
  r.solver = run_portfolio(r.script, config.solvers);
  switch (r.solver.status) {
    case SolverStatus::Unsat:
      r.outcome = Outcome::Proved;
      r.reason = "unsat";
      break;
    case SolverStatus::Sat:
      r.outcome = Outcome::NotProved;
      r.reason = "sat: the negated goal is consistent with the hypotheses";
      break;
    case SolverStatus::Unknown:
      r.outcome = Outcome::Unknown;
      r.reason = "solver answered unknown";
      break;
    case SolverStatus::Timeout:
      r.outcome = Outcome::Unknown;
      r.reason = "timeout: " + r.solver.detail;
      break;
    case SolverStatus::Error:
      throw SolverError(r.solver.solver + ": " + r.solver.detail);
  }
  return r;
}

}  // namespace folbridge
