#include "folbridge/printer.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "folbridge/syntax.hpp"

namespace folbridge {

namespace {

// Binding strength, loosest first.
enum Level : int {
  kBinder = 0,
  kArrow = 1,
  kOr = 2,
  kAnd = 3,
  kNot = 4,
  kCompare = 5,
  kOrb = 6,
  kAndb = 7,
  kSum = 8,
  kProduct = 9,
  kApp = 10,
  kAtom = 11,
};

bool is_anonymous(const std::string& hint) { return hint.empty() || hint == "_"; }

class Printer {
 public:
  Printer(const GlobalEnv& env, const std::vector<std::string>& context) : env_(env), scope_(context) {}

  std::string run(const Term& t) {
    std::string out;
    print(t, kBinder, out);
    return out;
  }

 private:
  bool taken(const std::string& name) const {
    if (is_reserved_word(name) || env_.name_taken(name)) return true;
    if (std::find(avoid_.begin(), avoid_.end(), name) != avoid_.end()) return true;
    return std::find(scope_.begin(), scope_.end(), name) != scope_.end();
  }

  std::string fresh(const std::string& hint) const {
    std::string base = is_valid_identifier(hint) && hint != "_" ? hint : "x";
    if (!taken(base)) return base;
    // Strip a numeric suffix so x0 shadowed by x0 becomes x1, not x00.
    std::string stem = base;
    while (stem.size() > 1 && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
    for (std::size_t i = 0;; ++i) {
      std::string cand = stem + std::to_string(i);
      if (!taken(cand)) return cand;
    }
  }

  std::string name_for_var(std::size_t index) const {
    if (index < scope_.size()) return scope_[scope_.size() - 1 - index];
    return "#" + std::to_string(index);
  }

  static void open(int want, int have, std::string& out) {
    if (have < want) out += "(";
  }
  static void close(int want, int have, std::string& out) {
    if (have < want) out += ")";
  }

  void print_binder_group(const std::string& keyword, const Term& t, int level, std::string& out) {
    open(level, kBinder, out);
    out += keyword;
    std::size_t pushed = 0;
    Term cur = t;
    const TermKind kind = t.kind();
    for (;;) {
      const bool used = occurs_free(cur.body(), 0);
      std::string name = (!used && is_anonymous(cur.name())) ? "_" : fresh(cur.name());
      out += " (";
      out += name;
      out += " : ";
      print(cur.domain(), kBinder, out);
      out += ")";
      scope_.push_back(name);
      ++pushed;
      Term next = cur.body();
      if (!next.is(kind)) {
        cur = next;
        break;
      }
      if (kind == TermKind::Pi && !occurs_free(next.body(), 0) && is_anonymous(next.name())) {
        cur = next;
        break;
      }
      cur = next;
    }
    out += kind == TermKind::Lam ? " => " : ", ";
    print(cur, kBinder, out);
    scope_.resize(scope_.size() - pushed);
    close(level, kBinder, out);
  }

  void print_infix(const char* op, const Term& a, const Term& b, int self, int left, int right,
                   int level, std::string& out) {
    open(level, self, out);
    print(a, left, out);
    out += " ";
    out += op;
    out += " ";
    print(b, right, out);
    close(level, self, out);
  }

  void print(const Term& t, int level, std::string& out) {
    switch (t.kind()) {
      case TermKind::Var:
        out += name_for_var(t.index());
        return;
      case TermKind::Const:
      case TermKind::Ind:
        out += t.name();
        return;
      case TermKind::Ctor: {
        const auto* decl = env_.find_inductive(t.name());
        out += decl && t.index() < decl->constructors.size() ? decl->constructors[t.index()].name
                                                            : t.name() + "#" + std::to_string(t.index());
        return;
      }
      case TermKind::Sort:
        out += t.universe() == Universe::Type ? "Type" : "Prop";
        return;
      case TermKind::IntType:
        out += "Int";
        return;
      case TermKind::IntLit:
        if (t.int_value() < 0) {
          out += "(" + std::to_string(t.int_value()) + ")";
        } else {
          out += std::to_string(t.int_value());
        }
        return;
      case TermKind::Prim:
        out += prim_identifier(t.prim_op());
        return;
      case TermKind::True:
        out += "true_p";
        return;
      case TermKind::False:
        out += "false_p";
        return;
      case TermKind::Pi:
        if (!occurs_free(t.body(), 0) && is_anonymous(t.name())) {
          open(level, kArrow, out);
          print(t.domain(), kArrow + 1, out);
          out += " -> ";
          scope_.push_back("_");
          print(t.body(), kArrow, out);
          scope_.pop_back();
          close(level, kArrow, out);
          return;
        }
        print_binder_group("forall", t, level, out);
        return;
      case TermKind::Lam:
        print_binder_group("fun", t, level, out);
        return;
      case TermKind::Exists:
        print_binder_group("exists", t, level, out);
        return;
      case TermKind::App:
        print_app(t, level, out);
        return;
      case TermKind::Match:
        print_match(t, out);
        return;
      case TermKind::Fix:
        print_fix(t, level, out);
        return;
      case TermKind::Eq:
        print_infix("=", t.lhs(), t.rhs(), kCompare, kCompare + 1, kCompare + 1, level, out);
        return;
      case TermKind::And:
        print_infix("/\\", t.lhs(), t.rhs(), kAnd, kAnd + 1, kAnd, level, out);
        return;
      case TermKind::Or:
        print_infix("\\/", t.lhs(), t.rhs(), kOr, kOr + 1, kOr, level, out);
        return;
      case TermKind::Not:
        if (t.operand().is(TermKind::Eq)) {
          const Term& e = t.operand();
          print_infix("<>", e.lhs(), e.rhs(), kCompare, kCompare + 1, kCompare + 1, level, out);
          return;
        }
        open(level, kNot, out);
        out += "~ ";
        print(t.operand(), kNot, out);
        close(level, kNot, out);
        return;
    }
  }

  void print_app(const Term& t, int level, std::string& out) {
    auto [head, args] = decompose_app(t);
    if (head.is(TermKind::Prim) && args.size() == 2) {
      switch (head.prim_op()) {
        case PrimOp::Add:
          return print_infix("+", args[0], args[1], kSum, kSum, kSum + 1, level, out);
        case PrimOp::Sub:
          return print_infix("-", args[0], args[1], kSum, kSum, kSum + 1, level, out);
        case PrimOp::Mul:
          return print_infix("*", args[0], args[1], kProduct, kProduct, kProduct + 1, level, out);
        case PrimOp::Le:
          return print_infix("<=", args[0], args[1], kCompare, kCompare + 1, kCompare + 1, level, out);
        case PrimOp::Lt:
          return print_infix("<", args[0], args[1], kCompare, kCompare + 1, kCompare + 1, level, out);
        case PrimOp::Orb:
          return print_infix("||", args[0], args[1], kOrb, kOrb, kOrb + 1, level, out);
        case PrimOp::Andb:
          return print_infix("&&", args[0], args[1], kAndb, kAndb, kAndb + 1, level, out);
        default:
          break;
      }
    }
    open(level, kApp, out);
    print(head, kApp, out);
    for (const auto& a : args) {
      out += " ";
      print(a, kAtom, out);
    }
    close(level, kApp, out);
  }

  void print_match(const Term& t, std::string& out) {
    out += "match ";
    print(t.scrutinee(), kBinder, out);
    out += " with";
    const auto* decl = [&]() -> const InductiveDecl* {
      Term h = head_of(t.scrutinee_type());
      return h.is(TermKind::Ind) ? env_.find_inductive(h.name()) : nullptr;
    }();
    for (std::size_t k = 0; k < t.branches().size(); ++k) {
      const auto& b = t.branches()[k];
      out += " | ";
      out += decl && k < decl->constructors.size() ? decl->constructors[k].name : "?";
      std::size_t pushed = 0;
      for (std::size_t j = 0; j < b.arity(); ++j) {
        const bool used = occurs_free(b.body, b.arity() - 1 - j);
        std::string name = used ? fresh(b.binders[j]) : "_";
        out += " " + name;
        scope_.push_back(name);
        ++pushed;
      }
      out += " => ";
      print(b.body, kBinder, out);
      scope_.resize(scope_.size() - pushed);
    }
    out += " end";
  }

  void print_fix(const Term& t, int level, std::string& out) {
    open(level, kBinder, out);
    std::string self = fresh(t.name());
    out += "fix " + self + " / " + std::to_string(t.index());
    avoid_.push_back(self);
    // Binders come from the Pi telescope of the type; the body repeats them
    // as lambdas under the self binder.
    std::size_t lams = 0;
    for (Term b = t.body(); b.is(TermKind::Lam); b = b.body()) ++lams;
    Term ty = t.full_type();
    std::vector<std::string> names;
    std::size_t n = 0;
    for (Term b = t.body(); n < lams && ty.is(TermKind::Pi); ++n) {
      std::string name = fresh(b.name());
      out += " (" + name + " : ";
      print(ty.domain(), kBinder, out);
      out += ")";
      scope_.push_back(name);
      names.push_back(name);
      ty = ty.body();
      b = b.body();
    }
    out += " : ";
    print(ty, kBinder, out);
    out += " := ";
    avoid_.pop_back();
    scope_.resize(scope_.size() - n);
    scope_.push_back(self);
    Term body = t.body();
    for (std::size_t i = 0; i < n; ++i) {
      scope_.push_back(names[i]);
      body = body.body();
    }
    print(body, kBinder, out);
    scope_.resize(scope_.size() - n - 1);
    close(level, kBinder, out);
  }

  const GlobalEnv& env_;
  std::vector<std::string> scope_;
  std::vector<std::string> avoid_;  // names reserved for binders not yet in scope
};

}  // namespace

std::string print_term(const Term& t, const GlobalEnv& env, const std::vector<std::string>& context_names) {
  return Printer(env, context_names).run(t);
}

std::string print_inductive(const InductiveDecl& decl, const GlobalEnv& env) {
  std::string out = "data " + decl.name;
  for (const auto& p : decl.type_params) out += " (" + p + " : Type)";
  out += " =";
  for (std::size_t k = 0; k < decl.constructors.size(); ++k) {
    const auto& c = decl.constructors[k];
    out += k == 0 ? " " : " | ";
    out += c.name;
    for (const auto& a : c.arg_types) out += " (" + print_term(a, env, decl.type_params) + ")";
  }
  out += ".";
  return out;
}

std::string print_problem(const Problem& problem) {
  std::string out;
  // Declarations are re-emitted in order; inductives first is safe because
  // they never mention constants.
  const GlobalEnv& env = problem.env;
  for (const auto& d : env.inductives()) {
    if (d.name == kBoolName) continue;
    out += print_inductive(d, env) + "\n";
  }
  for (const auto& d : env.definitions()) {
    if (d.opaque()) {
      out += "param " + d.name + " : " + print_term(d.type, env) + ".\n";
    } else {
      out += "def " + d.name + " : " + print_term(d.type, env) + " = " + print_term(*d.body, env) + ".\n";
    }
  }
  for (const auto& h : problem.hypotheses) {
    out += (problem.is_lemma(h.name) ? "lemma " : "hyp ") + h.name + " : " +
           print_term(h.statement, env) + ".\n";
  }
  out += "goal " + print_term(problem.goal, env) + ".\n";
  return out;
}

}  // namespace folbridge
