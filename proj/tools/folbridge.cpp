#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "folbridge/certify.hpp"
#include "folbridge/error.hpp"
#include "folbridge/parser.hpp"
#include "folbridge/pipeline.hpp"
#include "folbridge/smt.hpp"

using namespace folbridge;

namespace {

struct Options {
  std::string file;
  std::string output;
  std::string only;
  bool ordered = false;
  std::vector<std::string> solvers;
  std::optional<double> timeout;
  bool native_adt = false;
  bool exhaustiveness = false;
  bool mono_from_context = false;
  std::optional<std::size_t> fuel;
  std::optional<std::size_t> split_depth;
  bool trace = false;
  std::uint64_t seed = 0;
  std::optional<std::string> config;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

PipelineConfig pipeline_config(const Options& o) {
  PipelineConfig c;
  c.exhaustiveness = o.exhaustiveness;
  c.mono_from_context = o.mono_from_context;
  if (o.fuel) c.certify.fuel.max_reduction_steps = *o.fuel;
  if (o.split_depth) c.certify.split_depth = *o.split_depth;
  c.certify.seed = o.seed;
  if (!o.only.empty()) {
    c.only = parse_stage_list(o.only);
    c.ordered = o.ordered;
  }
  return c;
}

std::vector<SolverConfig> solver_configs(const Options& o) {
  BackendConfig backend = resolve_backend_config(o.config);
  std::vector<std::string> names = o.solvers;
  if (names.empty()) names = backend.portfolio.empty() ? std::vector<std::string>{backend.default_solver} : backend.portfolio;
  std::vector<SolverConfig> out;
  for (const auto& n : names) {
    const SolverConfig* s = find_solver(backend, n);
    if (!s) throw Error("unknown solver '" + n + "'");
    out.push_back(*s);
    if (o.timeout) out.back().timeout_s = *o.timeout;
  }
  return out;
}

void print_skips(const FolProblem& p) {
  for (const auto& s : p.skipped) std::cerr << "skipped " << s.name << ": " << s.reason << "\n";
}

int cmd_prove(const Options& o) {
  ProveConfig config{pipeline_config(o), {.native_adt = o.native_adt}, solver_configs(o)};
  ProveResult r = prove(parse_problem(read_file(o.file)), config);
  if (o.trace) std::cout << r.trace;
  print_skips(r.fol);
  std::cout << to_string(r.outcome) << " (" << r.reason << ")\n";
  return r.outcome == Outcome::Proved ? 0 : 1;
}

int cmd_scope(const Options& o) {
  ScopeResult r = scope(initial_state(parse_problem(read_file(o.file))), pipeline_config(o));
  std::cout << (o.trace ? r.trace : trace_block("final", r.state));
  return 0;
}

int cmd_emit(const Options& o) {
  ScopeResult r = scope(initial_state(parse_problem(read_file(o.file))), pipeline_config(o));
  FolProblem p = extract_fol(r.state);
  print_skips(p);
  const std::string script = emit_smtlib(p, r.state.env, {.native_adt = o.native_adt});
  if (o.output.empty() || o.output == "-") {
    std::cout << script;
  } else {
    std::ofstream out(o.output);
    if (!out) throw Error("cannot write " + o.output);
    out << script;
  }
  return 0;
}

int cmd_audit(const Options& o) {
  PipelineConfig c = pipeline_config(o);
  c.certify_each = false;
  ScopeResult r = scope(initial_state(parse_problem(read_file(o.file))), c);
  bool all_valid = true;
  for (const auto& e : audit(r.state, c.certify)) {
    std::cout << e.name << " : " << e.justification << " : " << (e.verdict.valid ? "Valid" : "Invalid") << " ("
              << e.verdict.reason << ")\n";
    all_valid = all_valid && e.verdict.valid;
  }
  return all_valid ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"First-order bridge: reduce dependently typed goals to SMT problems"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("file", o.file, "Problem file (.fol)")->required()->check(CLI::ExistingFile);
    sub->add_flag("--exhaustiveness", o.exhaustiveness, "Add exhaustiveness axioms for datatypes");
    sub->add_flag("--mono-from-context", o.mono_from_context, "Draw mono instances from hypotheses as well");
    sub->add_option("--fuel", o.fuel, "Reduction step budget for certification");
    sub->add_option("--split-depth", o.split_depth, "Case-split depth for certification");
    sub->add_flag("--trace", o.trace, "Print the stage-by-stage trace");
    sub->add_option("--seed", o.seed, "Seed for randomized checks");
  };
  auto add_solver = [&](CLI::App* sub) {
    sub->add_option("--solver", o.solvers, "Solver entry; repeat or comma-separate for a portfolio")->delimiter(',');
    sub->add_option("--timeout", o.timeout, "Solver timeout in seconds")->check(CLI::NonNegativeNumber);
    sub->add_option("--config", o.config, "Solver configuration file (TOML)");
  };

  CLI::App* prove_cmd = app.add_subcommand("prove", "Run the full pipeline and the solver");
  add_common(prove_cmd);
  add_solver(prove_cmd);
  prove_cmd->add_flag("--native-adt", o.native_adt, "Use declare-datatypes instead of datatype axioms");

  CLI::App* scope_cmd = app.add_subcommand("scope", "Print the transformed proof state");
  add_common(scope_cmd);

  CLI::App* emit_cmd = app.add_subcommand("emit", "Write the SMT-LIB script");
  add_common(emit_cmd);
  emit_cmd->add_option("-o,--output", o.output, "Output file (default: standard output)");
  emit_cmd->add_flag("--native-adt", o.native_adt, "Use declare-datatypes instead of datatype axioms");

  CLI::App* audit_cmd = app.add_subcommand("audit", "Check the justification of every hypothesis");
  add_common(audit_cmd);

  CLI::App* transform_cmd = app.add_subcommand("transform", "Run a subset of the transformations");
  add_common(transform_cmd);
  transform_cmd->add_option("--only", o.only, "Comma-separated stages: adt,def,expand,fix,match,mono")->required();
  transform_cmd->add_flag("--ordered", o.ordered, "Run the stages in the given order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*prove_cmd) return cmd_prove(o);
    if (*emit_cmd) return cmd_emit(o);
    if (*audit_cmd) return cmd_audit(o);
    if (*transform_cmd) o.trace = true;
    return cmd_scope(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
