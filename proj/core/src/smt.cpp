#include "folbridge/smt.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <condition_variable>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

#include "folbridge/conversion.hpp"
#include "folbridge/error.hpp"
#include "folbridge/eval.hpp"
#include "folbridge/printer.hpp"

namespace folbridge {

// Symbols -----------------------------------------------------------------------

namespace {

const std::set<std::string>& reserved_symbols() {
  static const std::set<std::string> words{
      "Int",    "Bool",   "Real",  "Array",  "String", "true",   "false",  "and",   "or",    "not",
      "xor",    "ite",    "distinct", "forall", "exists", "let",  "match",  "par",   "as",    "_",
      "abs",    "div",    "mod",   "to_real", "to_int", "is_int", "select", "store", "NUMERAL", "DECIMAL",
      "STRING", "BINARY", "HEXADECIMAL", "continued-execution", "error", "immediate-exit", "incomplete",
      "logic",  "memout", "sat",   "success", "theory", "unknown", "unsat", "unsupported"};
  return words;
}

bool plain_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::string escape_chars(const std::string& name) {
  static const char* digits = "0123456789ABCDEF";
  std::string out;
  for (char c : name) {
    if (plain_char(c)) {
      out += c;
    } else {
      const auto u = static_cast<unsigned char>(c);
      out += '%';
      out += digits[u >> 4];
      out += digits[u & 15];
    }
  }
  return out;
}

std::string guard_reserved(std::string out) {
  if (out.empty() || reserved_symbols().count(out) || std::isdigit(static_cast<unsigned char>(out[0]))) {
    out = "%_" + out;
  }
  return out;
}

}  // namespace

std::string escape_symbol(const std::string& name) { return guard_reserved(escape_chars(name)); }

std::string unescape_symbol(const std::string& symbol) {
  std::string s = symbol;
  if (s.rfind("%_", 0) == 0) s = s.substr(2);
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '%' && i + 2 < s.size() && hex_value(s[i + 1]) >= 0 && hex_value(s[i + 2]) >= 0) {
      out += static_cast<char>(hex_value(s[i + 1]) * 16 + hex_value(s[i + 2]));
      i += 2;
    } else {
      out += s[i];
    }
  }
  return out;
}

namespace {

struct NotFO {
  std::string reason;
};

std::string mangle_type(const GlobalEnv& env, const Term& type) {
  const Term t = whnf(env, type);
  if (t.is(TermKind::IntType)) return "Int";
  if (auto inst = as_inductive_instance(env, t)) {
    std::string out = escape_chars(inst->name);
    for (const Term& p : inst->params) out += "$" + mangle_type(env, p);
    return out;
  }
  if (t.is(TermKind::Const)) return escape_chars(t.name());
  throw NotFO{"type " + print_term(type, env) + " has no first-order name"};
}

}  // namespace

std::string mangle(const GlobalEnv& env, const std::string& base, const std::vector<Term>& type_args) {
  std::string out = escape_chars(base);
  try {
    for (const Term& t : type_args) out += "$" + mangle_type(env, t);
  } catch (const NotFO& e) {
    throw Error(e.reason);
  }
  return guard_reserved(std::move(out));
}

// Extraction --------------------------------------------------------------------

namespace {

struct Bound {
  std::string symbol;
  std::string sort;
};

class Extractor {
 public:
  explicit Extractor(const GlobalEnv& env) : env_(env) {}

  FolProblem& problem() { return problem_; }

  std::string closed_formula(const Term& t, bool allow_exists) {
    allow_exists_ = allow_exists;
    std::vector<Bound> vars;
    Context ctx;
    return formula(t, vars, ctx);
  }

  // Declares every constructor of every algebraic sort, adding sorts that
  // constructor arguments need.
  void complete_datatypes() {
    for (std::size_t i = 0; i < problem_.sorts.size(); ++i) {
      const Term type = problem_.sorts[i].type;
      if (problem_.sorts[i].builtin) continue;
      auto inst = as_inductive_instance(env_, type);
      if (!inst) continue;
      const auto& decl = env_.inductive(inst->name);
      for (std::size_t k = 0; k < decl.constructors.size(); ++k) constructor_symbol(*inst, k);
    }
  }

  struct Snapshot {
    std::size_t sorts, functions;
    bool nonlinear;
  };
  Snapshot snapshot() const { return {problem_.sorts.size(), problem_.functions.size(), problem_.nonlinear}; }
  void restore(const Snapshot& s) {
    for (std::size_t i = s.sorts; i < problem_.sorts.size(); ++i) sort_index_.erase(problem_.sorts[i].name);
    for (std::size_t i = s.functions; i < problem_.functions.size(); ++i) {
      function_index_.erase(problem_.functions[i].name);
    }
    problem_.sorts.erase(problem_.sorts.begin() + static_cast<std::ptrdiff_t>(s.sorts), problem_.sorts.end());
    problem_.functions.erase(problem_.functions.begin() + static_cast<std::ptrdiff_t>(s.functions),
                             problem_.functions.end());
    problem_.nonlinear = s.nonlinear;
  }

 private:
  std::string show(const Term& t, const Context& ctx) { return print_term(t, env_, ctx.names()); }

  bool is_prop(const Term& t, const Context& ctx) {
    try {
      return universe_of(env_, ctx, t) == Universe::Prop;
    } catch (const TypeError&) {
      return false;
    }
  }

  std::string sort_of(const Term& type) {
    if (!type.closed()) throw NotFO{"type depends on a bound variable"};
    const Term t = whnf(env_, type);
    if (t.is(TermKind::IntType)) return add_sort("Int", t, true);
    if (t.is(TermKind::Ind) && t.name() == kBoolName) return add_sort("Bool", t, true);
    if (t.is(TermKind::Pi)) throw NotFO{"function type " + print_term(type, env_)};
    if (t.is(TermKind::Sort)) throw NotFO{"quantification over " + print_term(type, env_)};
    if (auto inst = as_inductive_instance(env_, t)) {
      for (const Term& p : inst->params) sort_of(p);
      return add_sort(mangle(env_, inst->name, inst->params), t, false);
    }
    if (t.is(TermKind::Const)) {
      const Definition* d = env_.find_definition(t.name());
      if (d && d->opaque() && whnf(env_, d->type) == Term::type()) return add_sort(escape_symbol(t.name()), t, false);
    }
    throw NotFO{"type " + print_term(type, env_) + " is not a first-order sort"};
  }

  std::string add_sort(const std::string& name, const Term& type, bool builtin) {
    if (!sort_index_.count(name)) {
      sort_index_[name] = problem_.sorts.size();
      problem_.sorts.push_back({name, type, builtin});
    }
    return name;
  }

  void add_function(FolFunction f) {
    auto it = function_index_.find(f.name);
    if (it != function_index_.end()) return;
    function_index_[f.name] = problem_.functions.size();
    problem_.functions.push_back(std::move(f));
  }

  std::string constructor_symbol(const InductiveInstance& inst, std::size_t k) {
    const auto& decl = env_.inductive(inst.name);
    FolFunction f;
    f.name = mangle(env_, decl.constructors[k].name, inst.params);
    if (function_index_.count(f.name)) return f.name;
    for (const Term& a : env_.constructor_arg_types(inst.name, k, inst.params)) {
      f.arg_sorts.push_back(sort_of(a));
    }
    f.result_sort = sort_of(Term::app(Term::ind(inst.name), inst.params));
    f.constructor = std::make_pair(inst.name, k);
    add_function(f);
    return f.name;
  }

  std::string formula(const Term& t, std::vector<Bound>& vars, Context& ctx) {
    switch (t.kind()) {
      case TermKind::True:
        return "true";
      case TermKind::False:
        return "false";
      case TermKind::And:
        return "(and " + formula(t.lhs(), vars, ctx) + " " + formula(t.rhs(), vars, ctx) + ")";
      case TermKind::Or:
        return "(or " + formula(t.lhs(), vars, ctx) + " " + formula(t.rhs(), vars, ctx) + ")";
      case TermKind::Not:
        return "(not " + formula(t.operand(), vars, ctx) + ")";
      case TermKind::Pi:
        if (!occurs_free(t.body(), 0) && is_prop(t.domain(), ctx)) {
          const std::string a = formula(t.domain(), vars, ctx);
          const Term body = subst(t.body(), 0, Term::truth());
          return "(=> " + a + " " + formula(body, vars, ctx) + ")";
        }
        return quantifier("forall", t, vars, ctx);
      case TermKind::Exists:
        if (!allow_exists_) throw NotFO{"existential quantifier"};
        return quantifier("exists", t, vars, ctx);
      case TermKind::Eq: {
        const std::string s = sort_of(t.eq_type());
        (void)s;
        return "(= " + term(t.lhs(), vars, ctx) + " " + term(t.rhs(), vars, ctx) + ")";
      }
      default:
        break;
    }
    auto [head, args] = decompose_app(t);
    if (head.is(TermKind::Prim) && (head.prim_op() == PrimOp::Le || head.prim_op() == PrimOp::Lt) &&
        args.size() == 2) {
      const char* op = head.prim_op() == PrimOp::Le ? "<=" : "<";
      return std::string("(") + op + " " + term(args[0], vars, ctx) + " " + term(args[1], vars, ctx) + ")";
    }
    if (head.is(TermKind::Const)) return term(t, vars, ctx);
    throw NotFO{"proposition " + show(t, ctx)};
  }

  std::string quantifier(const char* q, const Term& t, std::vector<Bound>& vars, Context& ctx) {
    const std::string sort = sort_of(t.domain());
    problem_.quantified = true;
    const std::string symbol = "?" + escape_symbol(t.name()) + "_" + std::to_string(vars.size());
    vars.push_back({symbol, sort});
    ctx.push(t.name(), t.domain());
    const std::string body = formula(t.body(), vars, ctx);
    ctx.pop();
    vars.pop_back();
    return std::string("(") + q + " ((" + symbol + " " + sort + ")) " + body + ")";
  }

  std::string apply(const std::string& f, const std::vector<std::string>& args) {
    if (args.empty()) return f;
    std::string out = "(" + f;
    for (const auto& a : args) out += " " + a;
    return out + ")";
  }

  std::string term(const Term& t, std::vector<Bound>& vars, Context& ctx) {
    auto [head, args] = decompose_app(t);
    switch (head.kind()) {
      case TermKind::Var:
        if (!args.empty()) throw NotFO{"application of a bound variable"};
        return vars.at(vars.size() - 1 - head.index()).symbol;
      case TermKind::IntLit: {
        const std::int64_t v = head.int_value();
        if (v >= 0) return std::to_string(v);
        return "(- " + std::to_string(0 - static_cast<std::uint64_t>(v)) + ")";
      }
      case TermKind::Prim:
        return prim(head.prim_op(), args, vars, ctx, t);
      case TermKind::Ctor: {
        const auto& decl = env_.inductive(head.name());
        if (head.name() == kBoolName && args.empty()) return head.index() == 0 ? "true" : "false";
        const std::size_t p = decl.type_params.size();
        const std::size_t n = decl.constructors[head.index()].arg_types.size();
        if (args.size() != p + n) throw NotFO{"partially applied constructor in " + show(t, ctx)};
        InductiveInstance inst{head.name(), std::vector<Term>(args.begin(), args.begin() + p)};
        const std::string f = constructor_symbol(inst, head.index());
        std::vector<std::string> xs;
        for (std::size_t i = p; i < args.size(); ++i) xs.push_back(term(args[i], vars, ctx));
        return apply(f, xs);
      }
      case TermKind::Const:
        return constant(head.name(), args, vars, ctx, t);
      default:
        throw NotFO{"term " + show(t, ctx)};
    }
  }

  std::string constant(const std::string& name, const std::vector<Term>& args, std::vector<Bound>& vars,
                       Context& ctx, const Term& whole) {
    const Definition& d = env_.definition(name);
    Term ty = d.type;
    std::vector<Term> type_args;
    std::size_t i = 0;
    while (ty.is(TermKind::Pi) && ty.domain() == Term::type()) {
      if (i >= args.size()) throw NotFO{"partially applied " + name};
      if (!args[i].closed()) throw NotFO{"type argument depends on a bound variable"};
      type_args.push_back(args[i]);
      ty = subst(ty.body(), 0, args[i]);
      ++i;
    }
    FolFunction f;
    f.name = type_args.empty() ? escape_symbol(name) : mangle(env_, name, type_args);
    for (const Term& a : type_args) sort_of(a);
    std::vector<std::string> xs;
    for (; i < args.size(); ++i) {
      ty = whnf(env_, ty);
      if (!ty.is(TermKind::Pi)) throw NotFO{"over-applied " + name};
      if (occurs_free(ty.body(), 0)) throw NotFO{"dependent argument of " + name};
      f.arg_sorts.push_back(sort_of(ty.domain()));
      xs.push_back(term(args[i], vars, ctx));
      ty = subst(ty.body(), 0, Term::truth());
    }
    const Term cod = whnf(env_, ty);
    if (cod.is(TermKind::Pi)) throw NotFO{"partially applied " + name + " in " + show(whole, ctx)};
    f.result_sort = cod == Term::prop() ? "Bool" : sort_of(cod);
    add_function(f);
    return apply(f.name, xs);
  }

  std::string prim(PrimOp op, const std::vector<Term>& args, std::vector<Bound>& vars, Context& ctx, const Term& t) {
    auto need = [&](std::size_t n) {
      if (args.size() != n) throw NotFO{"partially applied builtin in " + show(t, ctx)};
    };
    switch (op) {
      case PrimOp::Add:
      case PrimOp::Sub:
      case PrimOp::Mul: {
        need(2);
        if (op == PrimOp::Mul && !args[0].is(TermKind::IntLit) && !args[1].is(TermKind::IntLit)) {
          problem_.nonlinear = true;
        }
        const char* sym = op == PrimOp::Add ? "+" : op == PrimOp::Sub ? "-" : "*";
        return std::string("(") + sym + " " + term(args[0], vars, ctx) + " " + term(args[1], vars, ctx) + ")";
      }
      case PrimOp::Orb:
      case PrimOp::Andb:
        need(2);
        return std::string(op == PrimOp::Orb ? "(or " : "(and ") + term(args[0], vars, ctx) + " " +
               term(args[1], vars, ctx) + ")";
      case PrimOp::Negb:
        need(1);
        return "(not " + term(args[0], vars, ctx) + ")";
      case PrimOp::Eqb:
        need(3);
        sort_of(args[0]);
        return "(= " + term(args[1], vars, ctx) + " " + term(args[2], vars, ctx) + ")";
      case PrimOp::Le:
      case PrimOp::Lt:
        break;
    }
    throw NotFO{"proposition used as a term in " + show(t, ctx)};
  }

  const GlobalEnv& env_;
  FolProblem problem_;
  std::map<std::string, std::size_t> sort_index_;
  std::map<std::string, std::size_t> function_index_;
  bool allow_exists_ = true;
};

}  // namespace

FolProblem extract_fol(const ProofState& state) {
  Extractor ex(state.env);
  for (const auto& h : state.hypotheses) {
    const auto snap = ex.snapshot();
    try {
      const std::string f = ex.closed_formula(h.statement, true);
      ex.problem().axioms.push_back(
          {h.name, f, h.justification.kind == Justification::Kind::DatatypeAxiom});
    } catch (const NotFO& e) {
      ex.restore(snap);
      ex.problem().skipped.push_back({h.name, e.reason});
    }
  }
  try {
    const std::string g = ex.closed_formula(state.goal, false);
    ex.problem().goal = g;
    ex.problem().negated_goal = "(not " + g + ")";
  } catch (const NotFO& e) {
    throw NotFirstOrder(print_term(state.goal, state.env), e.reason);
  }
  try {
    ex.complete_datatypes();
  } catch (const NotFO& e) {
    throw Error("cannot declare datatype constructors: " + e.reason);
  }
  return std::move(ex.problem());
}

// Emission --------------------------------------------------------------------

std::string emit_smtlib(const FolProblem& p, const GlobalEnv& env, const EmitOptions& options) {
  // Sorts declared natively: algebraic instances with a finite inhabitant.
  std::set<std::string> native;
  if (options.native_adt) {
    for (const auto& s : p.sorts) {
      if (s.builtin) continue;
      if (as_inductive_instance(env, s.type) && min_inhabitant_size(env, s.type)) native.insert(s.name);
    }
  }
  std::string logic = std::string(native.empty() ? "UF" : "UFDT") + (p.nonlinear ? "NIA" : "LIA");
  if (!p.quantified) logic = "QF_" + logic;

  std::ostringstream out;
  out << "(set-logic " << logic << ")\n";
  for (const auto& s : p.sorts) {
    if (!s.builtin && !native.count(s.name)) out << "(declare-sort " << s.name << " 0)\n";
  }
  if (!native.empty()) {
    std::vector<std::string> heads, bodies;
    for (const auto& s : p.sorts) {
      if (!native.count(s.name)) continue;
      heads.push_back("(" + s.name + " 0)");
      std::string ctors;
      for (const auto& f : p.functions) {
        if (!f.constructor || f.result_sort != s.name) continue;
        std::string c = "(" + f.name;
        for (std::size_t i = 0; i < f.arg_sorts.size(); ++i) {
          c += " (%sel" + std::to_string(i) + "_" + f.name + " " + f.arg_sorts[i] + ")";
        }
        ctors += (ctors.empty() ? "" : " ") + c + ")";
      }
      bodies.push_back("(" + ctors + ")");
    }
    auto join = [](const std::vector<std::string>& xs) {
      std::string r;
      for (const auto& x : xs) r += (r.empty() ? "" : " ") + x;
      return r;
    };
    out << "(declare-datatypes (" << join(heads) << ") (" << join(bodies) << "))\n";
  }
  for (const auto& f : p.functions) {
    if (f.constructor && native.count(f.result_sort)) continue;
    out << "(declare-fun " << f.name << " (";
    for (std::size_t i = 0; i < f.arg_sorts.size(); ++i) out << (i ? " " : "") << f.arg_sorts[i];
    out << ") " << f.result_sort << ")\n";
  }
  for (const auto& a : p.axioms) {
    if (options.native_adt && a.datatype_axiom) continue;
    out << "; " << a.name << "\n(assert " << a.formula << ")\n";
  }
  if (options.assert_goal) {
    out << "; goal\n(assert " << p.goal << ")\n";
  } else {
    out << "; negated goal\n(assert " << p.negated_goal << ")\n";
  }
  out << "(check-sat)\n";
  return out.str();
}

// Solving ---------------------------------------------------------------------

const char* to_string(SolverStatus status) {
  switch (status) {
    case SolverStatus::Sat: return "sat";
    case SolverStatus::Unsat: return "unsat";
    case SolverStatus::Unknown: return "unknown";
    case SolverStatus::Timeout: return "timeout";
    case SolverStatus::Error: return "error";
  }
  return "?";
}

namespace {

std::optional<SolverStatus> status_token(const std::string& output) {
  std::istringstream in(output);
  std::string line;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    const std::string tok = line.substr(b, e - b + 1);
    if (tok == "sat") return SolverStatus::Sat;
    if (tok == "unsat") return SolverStatus::Unsat;
    if (tok == "unknown") return SolverStatus::Unknown;
  }
  return std::nullopt;
}

class TempFile {
 public:
  explicit TempFile(const std::string& contents) {
    char name[] = "/tmp/folbridge-XXXXXX.smt2";
    const int fd = mkstemps(name, 5);
    if (fd < 0) throw SolverError("cannot create a temporary script file");
    path_ = name;
    std::size_t off = 0;
    while (off < contents.size()) {
      const ssize_t n = ::write(fd, contents.data() + off, contents.size() - off);
      if (n <= 0) break;
      off += static_cast<std::size_t>(n);
    }
    ::close(fd);
  }
  ~TempFile() { std::remove(path_.c_str()); }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace

SolverResult run_solver(const std::string& script, const SolverConfig& config, const std::atomic<bool>* cancel) {
  SolverResult result;
  result.solver = config.name;
  const auto start = std::chrono::steady_clock::now();
  auto finish = [&](SolverStatus s, std::string detail) {
    result.status = s;
    result.detail = std::move(detail);
    result.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    return result;
  };

  std::optional<TempFile> file;
  std::vector<std::string> argv{config.executable};
  bool use_stdin = true;
  for (const auto& a : config.args) {
    if (a.find("{file}") != std::string::npos) {
      if (!file) file.emplace(script);
      std::string s = a;
      s.replace(s.find("{file}"), 6, file->path());
      argv.push_back(s);
      use_stdin = false;
    } else {
      argv.push_back(a);
    }
  }

  int in_pipe[2], out_pipe[2], err_pipe[2], exec_pipe[2];
  if (pipe(in_pipe) || pipe(out_pipe) || pipe(err_pipe) || pipe2(exec_pipe, O_CLOEXEC)) {
    return finish(SolverStatus::Error, "pipe: " + std::string(std::strerror(errno)));
  }
  const pid_t pid = fork();
  if (pid < 0) return finish(SolverStatus::Error, "fork: " + std::string(std::strerror(errno)));
  if (pid == 0) {
    setpgid(0, 0);
    dup2(in_pipe[0], 0);
    dup2(out_pipe[1], 1);
    dup2(err_pipe[1], 2);
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1], err_pipe[0], err_pipe[1], exec_pipe[0]}) {
      close(fd);
    }
    std::vector<char*> cargv;
    for (auto& a : argv) cargv.push_back(a.data());
    cargv.push_back(nullptr);
    execvp(cargv[0], cargv.data());
    const int err = errno;
    (void)!::write(exec_pipe[1], &err, sizeof err);
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  close(err_pipe[1]);
  close(exec_pipe[1]);
  int exec_errno = 0;
  if (::read(exec_pipe[0], &exec_errno, sizeof exec_errno) == sizeof exec_errno) {
    close(exec_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(err_pipe[0]);
    waitpid(pid, nullptr, 0);
    return finish(SolverStatus::Error, "cannot run " + config.executable + ": " + std::strerror(exec_errno));
  }
  close(exec_pipe[0]);

  signal(SIGPIPE, SIG_IGN);
  std::size_t written = 0;
  const std::string input = use_stdin ? script : std::string();
  if (input.empty()) {
    close(in_pipe[1]);
    in_pipe[1] = -1;
  } else {
    fcntl(in_pipe[1], F_SETFL, O_NONBLOCK);
  }

  const auto deadline = start + std::chrono::duration<double>(config.timeout_s);
  std::string out, err;
  bool out_open = true, err_open = true, timed_out = false, cancelled = false;
  char buf[4096];
  while (out_open || err_open) {
    if (std::chrono::steady_clock::now() >= deadline) {
      timed_out = true;
      break;
    }
    if (cancel && cancel->load()) {
      cancelled = true;
      break;
    }
    std::vector<pollfd> fds;
    if (out_open) fds.push_back({out_pipe[0], POLLIN, 0});
    if (err_open) fds.push_back({err_pipe[0], POLLIN, 0});
    if (in_pipe[1] >= 0) fds.push_back({in_pipe[1], POLLOUT, 0});
    const int ready = poll(fds.data(), fds.size(), 20);
    if (ready < 0 && errno != EINTR) break;
    for (const auto& p : fds) {
      if (!p.revents) continue;
      if (p.fd == in_pipe[1]) {
        const ssize_t n = ::write(in_pipe[1], input.data() + written, input.size() - written);
        if (n > 0) written += static_cast<std::size_t>(n);
        if (n < 0 && errno != EAGAIN) written = input.size();
        if (written >= input.size()) {
          close(in_pipe[1]);
          in_pipe[1] = -1;
        }
        continue;
      }
      const ssize_t n = ::read(p.fd, buf, sizeof buf);
      if (n <= 0) {
        (p.fd == out_pipe[0] ? out_open : err_open) = false;
      } else {
        (p.fd == out_pipe[0] ? out : err).append(buf, static_cast<std::size_t>(n));
      }
    }
  }
  if (in_pipe[1] >= 0) close(in_pipe[1]);
  close(out_pipe[0]);
  close(err_pipe[0]);
  int wstatus = 0;
  if (timed_out || cancelled) {
    kill(-pid, SIGKILL);
    kill(pid, SIGKILL);
  }
  waitpid(pid, &wstatus, 0);

  result.output = out;
  if (timed_out) return finish(SolverStatus::Timeout, "no answer within " + std::to_string(config.timeout_s) + " s");
  if (cancelled) return finish(SolverStatus::Unknown, "cancelled");
  // An error response means part of the script was dropped, so a status
  // token after it says nothing about the intended problem.
  if (out.find("(error") == std::string::npos) {
    if (auto s = status_token(out)) return finish(*s, "");
  }
  result.output += err;
  const bool failed = !WIFEXITED(wstatus) || WEXITSTATUS(wstatus) != 0;
  std::string detail = out.find("(error") != std::string::npos ? out : err;
  if (detail.empty()) detail = failed ? "solver exited abnormally" : "no status token in solver output";
  return finish(SolverStatus::Error, detail);
}

SolverResult run_portfolio(const std::string& script, const std::vector<SolverConfig>& solvers) {
  if (solvers.empty()) throw SolverError("no solver configured");
  if (solvers.size() == 1) return run_solver(script, solvers[0]);
  std::atomic<bool> cancel{false};
  std::mutex m;
  std::condition_variable cv;
  std::vector<std::optional<SolverResult>> results(solvers.size());
  std::optional<std::size_t> winner;
  std::size_t done = 0;
  std::vector<std::thread> threads;
  for (std::size_t i = 0; i < solvers.size(); ++i) {
    threads.emplace_back([&, i] {
      SolverResult r = run_solver(script, solvers[i], &cancel);
      std::lock_guard lock(m);
      const bool definitive = r.status == SolverStatus::Sat || r.status == SolverStatus::Unsat;
      results[i] = std::move(r);
      if (definitive && !winner) winner = i;
      ++done;
      cv.notify_all();
    });
  }
  {
    std::unique_lock lock(m);
    cv.wait(lock, [&] { return winner.has_value() || done == solvers.size(); });
    if (winner) cancel = true;
  }
  for (auto& t : threads) t.join();
  if (winner) return *results[*winner];
  return *results[0];
}

// Configuration -----------------------------------------------------------------

BackendConfig default_backend_config() {
  BackendConfig c;
  c.solvers.push_back({"z3", "z3", {"-in", "-smt2"}, 30});
  c.solvers.push_back({"cvc5", std::string(FOLBRIDGE_SOLVER_SCRIPTS_DIR) + "/cvc5_smtlib.py", {}, 30});
  c.default_solver = "z3";
  return c;
}

const SolverConfig* find_solver(const BackendConfig& config, const std::string& name) {
  for (const auto& s : config.solvers) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

namespace {

template <typename View>
std::vector<std::string> string_array(View node, const std::string& key) {
  std::vector<std::string> out;
  const toml::array* arr = node.as_array();
  if (!arr) throw Error("config: " + key + " must be an array of strings");
  for (const auto& v : *arr) {
    auto s = v.template value<std::string>();
    if (!s) throw Error("config: " + key + " must be an array of strings");
    out.push_back(*s);
  }
  return out;
}

}  // namespace

BackendConfig load_backend_config(const std::string& path) {
  BackendConfig c = default_backend_config();
  toml::table t;
  try {
    t = toml::parse_file(path);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "config " << path << ":" << e.source().begin.line << ":" << e.source().begin.column << ": "
        << e.description();
    throw Error(msg.str());
  }
  const toml::table& root = t;
  if (auto d = root["default"]) {
    auto s = d.value<std::string>();
    if (!s) throw Error("config: default must be a string");
    c.default_solver = *s;
  }
  if (auto p = root["portfolio"]) c.portfolio = string_array(p, "portfolio");
  if (const toml::table* solvers = root["solver"].as_table()) {
    for (const auto& [key, value] : *solvers) {
      const toml::table* entry = value.as_table();
      if (!entry) throw Error("config: solver." + std::string(key.str()) + " must be a table");
      SolverConfig s;
      s.name = std::string(key.str());
      if (const SolverConfig* existing = find_solver(c, s.name)) s = *existing;
      const toml::table& e = *entry;
      if (auto exe = e["executable"]) {
        auto v = exe.value<std::string>();
        if (!v) throw Error("config: solver." + s.name + ".executable must be a string");
        s.executable = *v;
      }
      if (auto args = e["args"]) s.args = string_array(args, "solver." + s.name + ".args");
      if (auto to = e["timeout_s"]) {
        auto v = to.value<double>();
        if (!v || *v <= 0) throw Error("config: solver." + s.name + ".timeout_s must be a positive number");
        s.timeout_s = *v;
      }
      auto it = std::find_if(c.solvers.begin(), c.solvers.end(), [&](const SolverConfig& x) { return x.name == s.name; });
      if (it != c.solvers.end()) {
        *it = s;
      } else {
        c.solvers.push_back(s);
      }
    }
  }
  if (!find_solver(c, c.default_solver)) throw Error("config: unknown default solver " + c.default_solver);
  for (const auto& name : c.portfolio) {
    if (!find_solver(c, name)) throw Error("config: unknown portfolio solver " + name);
  }
  return c;
}

BackendConfig resolve_backend_config(const std::optional<std::string>& path) {
  BackendConfig c = default_backend_config();
  if (path) {
    c = load_backend_config(*path);
  } else if (const char* env = std::getenv("FOLBRIDGE_CONFIG"); env && *env) {
    c = load_backend_config(env);
  }
  if (const char* solver = std::getenv("FOLBRIDGE_SOLVER"); solver && *solver) {
    if (find_solver(c, solver)) {
      c.default_solver = solver;
    } else {
      // A path or command: replaces the executable of the default entry.
      for (auto& s : c.solvers) {
        if (s.name == c.default_solver) s.executable = solver;
      }
    }
  }
  return c;
}

}  // namespace folbridge
