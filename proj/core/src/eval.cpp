#include "folbridge/eval.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include "folbridge/error.hpp"
#include "folbridge/printer.hpp"

namespace folbridge {

namespace {

using Env = std::vector<ValuePtr>;  // outermost first; back() is Var 0

ValuePtr make_int(std::int64_t v) {
  auto out = std::make_shared<Value>();
  out->kind = Value::Kind::Int;
  out->integer = v;
  return out;
}

ValuePtr make_type(Term t) {
  auto out = std::make_shared<Value>();
  out->kind = Value::Kind::Type;
  out->term = std::move(t);
  return out;
}

ValuePtr make_bool(bool b) {
  auto out = std::make_shared<Value>();
  out->kind = Value::Kind::Ctor;
  out->inductive = kBoolName;
  out->ctor_index = b ? 0 : 1;
  out->saturated = true;
  return out;
}

std::size_t prim_arity(PrimOp op) {
  switch (op) {
    case PrimOp::Negb:
      return 1;
    case PrimOp::Eqb:
      return 3;
    default:
      return 2;
  }
}

std::vector<Term> reify_all(const Env& env) {
  std::vector<Term> out;
  out.reserve(env.size());
  for (const auto& v : env) out.push_back(reify(*v));
  return out;
}

class Evaluator {
 public:
  Evaluator(const GlobalEnv& env, Fuel fuel) : env_(env), budget_(fuel.max_reduction_steps) {}

  ValuePtr eval(const Term& t, Env& rho) {
    tick();
    switch (t.kind()) {
      case TermKind::Var:
        return rho.at(rho.size() - 1 - t.index());
      case TermKind::Const: {
        const Definition& d = env_.definition(t.name());
        if (d.opaque()) throw Error("cannot evaluate opaque constant " + t.name());
        auto it = const_cache_.find(t.name());
        if (it != const_cache_.end()) return it->second;
        Env empty;
        ValuePtr v = eval(*d.body, empty);
        const_cache_.emplace(t.name(), v);
        return v;
      }
      case TermKind::Ctor: {
        const InductiveDecl& decl = env_.inductive(t.name());
        auto out = std::make_shared<Value>();
        out->kind = Value::Kind::Ctor;
        out->inductive = t.name();
        out->ctor_index = t.index();
        out->param_count = decl.type_params.size();
        out->saturated = decl.type_params.empty() && decl.constructors[t.index()].arg_types.empty();
        return out;
      }
      case TermKind::IntLit:
        return make_int(t.int_value());
      case TermKind::Prim: {
        auto out = std::make_shared<Value>();
        out->kind = Value::Kind::Prim;
        out->op = t.prim_op();
        return out;
      }
      case TermKind::Lam:
      case TermKind::Fix: {
        auto out = std::make_shared<Value>();
        out->kind = t.is(TermKind::Lam) ? Value::Kind::Closure : Value::Kind::Fix;
        out->term = t;
        out->captured = rho;
        return out;
      }
      case TermKind::App: {
        ValuePtr f = eval(t.fn(), rho);
        ValuePtr a = eval(t.arg(), rho);
        return apply(f, a);
      }
      case TermKind::Match: {
        ValuePtr s = eval(t.scrutinee(), rho);
        if (s->kind != Value::Kind::Ctor || !s->saturated) throw Error("match on a non-constructor value");
        const MatchBranch& b = t.branches().at(s->ctor_index);
        for (std::size_t j = s->param_count; j < s->args.size(); ++j) rho.push_back(s->args[j]);
        ValuePtr r = eval(b.body, rho);
        rho.resize(rho.size() - b.arity());
        return r;
      }
      default: {
        // Types and propositions evaluate to themselves, closed over rho.
        return make_type(instantiate(t, reify_all(rho)));
      }
    }
  }

  ValuePtr apply(const ValuePtr& f, const ValuePtr& a) {
    tick();
    switch (f->kind) {
      case Value::Kind::Closure: {
        Env rho = f->captured;
        rho.push_back(a);
        return eval(f->term.body(), rho);
      }
      case Value::Kind::Fix: {
        auto out = std::make_shared<Value>(*f);
        out->args.push_back(a);
        if (out->args.size() <= f->term.index()) return out;
        // Decreasing argument present: unfold once and apply.
        auto self = std::make_shared<Value>(*f);
        self->args.clear();
        Env rho = f->captured;
        rho.push_back(self);
        ValuePtr body = eval(f->term.body(), rho);
        for (const auto& arg : out->args) body = apply(body, arg);
        return body;
      }
      case Value::Kind::Ctor: {
        if (f->saturated) throw Error("constructor applied to too many arguments");
        auto out = std::make_shared<Value>(*f);
        out->args.push_back(a);
        const auto& decl = env_.inductive(f->inductive);
        out->saturated = out->args.size() == decl.type_params.size() + decl.constructors[f->ctor_index].arg_types.size();
        return out;
      }
      case Value::Kind::Prim: {
        auto out = std::make_shared<Value>(*f);
        out->args.push_back(a);
        if (out->args.size() < prim_arity(f->op)) return out;
        return run_prim(out->op, out->args);
      }
      case Value::Kind::Type:
        return make_type(Term::app(f->term, reify(*a)));
      case Value::Kind::Int:
        break;
    }
    throw Error("application of a non-function value");
  }

 private:
  static std::int64_t as_int(const ValuePtr& v) {
    if (v->kind != Value::Kind::Int) throw Error("expected an integer value");
    return v->integer;
  }
  static bool as_bool_value(const ValuePtr& v) {
    if (v->kind != Value::Kind::Ctor || v->inductive != kBoolName) throw Error("expected a boolean value");
    return v->ctor_index == 0;
  }

  ValuePtr run_prim(PrimOp op, const std::vector<ValuePtr>& args) {
    switch (op) {
      case PrimOp::Add:
        return make_int(as_int(args[0]) + as_int(args[1]));
      case PrimOp::Sub:
        return make_int(as_int(args[0]) - as_int(args[1]));
      case PrimOp::Mul:
        return make_int(as_int(args[0]) * as_int(args[1]));
      case PrimOp::Orb:
        return make_bool(as_bool_value(args[0]) || as_bool_value(args[1]));
      case PrimOp::Andb:
        return make_bool(as_bool_value(args[0]) && as_bool_value(args[1]));
      case PrimOp::Negb:
        return make_bool(!as_bool_value(args[0]));
      case PrimOp::Eqb:
        return make_bool(values_equal(*args[1], *args[2]));
      case PrimOp::Le:
      case PrimOp::Lt:
        break;
    }
    throw Error("comparison is a proposition, not a value");
  }

  void tick() {
    if (budget_ == 0) throw FuelExhausted();
    --budget_;
  }

  const GlobalEnv& env_;
  std::size_t budget_;
  std::map<std::string, ValuePtr> const_cache_;
};

// ---------------------------------------------------------------------------
// Random inhabitants

constexpr std::size_t kInfinite = std::numeric_limits<std::size_t>::max() / 4;

class Generator {
 public:
  Generator(const GlobalEnv& env, std::mt19937_64* rng) : env_(env), rng_(rng) {}

  std::size_t min_size(const Term& type) {
    std::set<std::string> visiting;
    return min_size(whnf(env_, type), visiting);
  }

  Term generate(const Term& type, std::size_t size) {
    const Term ty = whnf(env_, type);
    if (ty.is(TermKind::IntType)) {
      return Term::int_lit(static_cast<std::int64_t>(pick(11)) - 5);
    }
    if (ty.is(TermKind::Sort)) {
      if (ty.universe() == Universe::Prop) return pick(2) ? Term::truth() : Term::falsity();
      return pick(2) ? Term::int_type() : Term::ind(kBoolName);
    }
    if (ty.is(TermKind::Pi)) {
      // Constant functions, or the identity when domain and codomain agree.
      if (!occurs_free(ty.body(), 0) && ty.body() == lift(ty.domain(), 1) && pick(2)) {
        return Term::lam("x", ty.domain(), Term::var(0));
      }
      if (occurs_free(ty.body(), 0)) throw Uninhabited("cannot sample a dependent function type");
      Term body = generate(subst(ty.body(), 0, Term::truth()), size);
      return Term::lam("x", ty.domain(), lift(body, 1));
    }
    auto inst = as_inductive_instance(env_, ty);
    if (!inst) throw Uninhabited("no generator for type " + print_term(ty, env_));
    const InductiveDecl& decl = env_.inductive(inst->name);
    std::vector<std::size_t> candidates;
    std::vector<std::vector<Term>> arg_types(decl.constructors.size());
    std::vector<std::vector<std::size_t>> arg_mins(decl.constructors.size());
    for (std::size_t k = 0; k < decl.constructors.size(); ++k) {
      arg_types[k] = closed_arg_types(decl.name, k, inst->params);
      std::size_t total = 1;
      for (const auto& a : arg_types[k]) {
        arg_mins[k].push_back(min_size(a));
        total = std::min(kInfinite, total + arg_mins[k].back());
      }
      if (total <= size) candidates.push_back(k);
    }
    if (candidates.empty()) {
      throw Uninhabited("no inhabitant of " + print_term(ty, env_) + " within size " + std::to_string(size));
    }
    const std::size_t k = candidates[pick(candidates.size())];
    std::vector<Term> args = inst->params;
    std::size_t budget = size - 1;
    std::size_t reserved = 0;
    for (const auto m : arg_mins[k]) reserved += m;
    for (std::size_t j = 0; j < arg_types[k].size(); ++j) {
      reserved -= arg_mins[k][j];
      // Leave enough room for the remaining arguments' minimal inhabitants.
      const std::size_t room = budget - reserved;
      const std::size_t span = room - arg_mins[k][j];
      const std::size_t share = arg_mins[k][j] + (span == 0 ? 0 : pick(span + 1));
      Term a = generate(arg_types[k][j], share);
      budget -= std::min(budget, constructor_nodes(a));
      args.push_back(a);
    }
    return Term::app(Term::ctor(decl.name, k), args);
  }

 private:
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>((*rng_)() % n); }

  std::vector<Term> closed_arg_types(const std::string& ind, std::size_t k, const std::vector<Term>& params) {
    // Arguments are non-dependent, so the j-th type is lowered back out
    // from under the j earlier binders.
    auto raw = env_.constructor_arg_types(ind, k, params);
    std::vector<Term> out;
    for (std::size_t j = 0; j < raw.size(); ++j) {
      std::vector<Term> dummy(j, Term::truth());
      out.push_back(instantiate(raw[j], dummy));
    }
    return out;
  }

  std::size_t constructor_nodes(const Term& t) {
    auto [head, args] = decompose_app(t);
    if (head.is(TermKind::IntLit) || head.is(TermKind::Lam)) return 1;
    if (!head.is(TermKind::Ctor)) return 1;
    std::size_t n = 1;
    const std::size_t params = env_.inductive(head.name()).type_params.size();
    for (std::size_t i = params; i < args.size(); ++i) n += constructor_nodes(args[i]);
    return n;
  }

  std::size_t min_size(const Term& ty, std::set<std::string>& visiting) {
    if (ty.is(TermKind::IntType) || ty.is(TermKind::Sort) || ty.is(TermKind::Pi)) return 1;
    auto inst = as_inductive_instance(env_, ty);
    if (!inst) return kInfinite;
    const std::string key = print_term(ty, env_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (visiting.count(key)) return kInfinite;
    visiting.insert(key);
    const InductiveDecl& decl = env_.inductive(inst->name);
    std::size_t best = kInfinite;
    for (std::size_t k = 0; k < decl.constructors.size(); ++k) {
      std::size_t total = 1;
      for (const auto& a : closed_arg_types(decl.name, k, inst->params)) {
        total = std::min(kInfinite, total + min_size(whnf(env_, a), visiting));
      }
      best = std::min(best, total);
    }
    visiting.erase(key);
    if (visiting.empty()) memo_[key] = best;
    return best;
  }

  const GlobalEnv& env_;
  std::mt19937_64* rng_;
  std::map<std::string, std::size_t> memo_;
};

}  // namespace

ValuePtr eval_ground(const GlobalEnv& env, const Term& t, Fuel fuel) {
  if (!t.closed()) throw Error("eval_ground needs a closed term");
  Env rho;
  return Evaluator(env, fuel).eval(t, rho);
}

Term reify(const Value& v) {
  switch (v.kind) {
    case Value::Kind::Int:
      return Term::int_lit(v.integer);
    case Value::Kind::Ctor: {
      std::vector<Term> args;
      for (const auto& a : v.args) args.push_back(reify(*a));
      return Term::app(Term::ctor(v.inductive, v.ctor_index), args);
    }
    case Value::Kind::Closure:
    case Value::Kind::Fix: {
      Term f = instantiate(v.term, reify_all(v.captured));
      std::vector<Term> args;
      for (const auto& a : v.args) args.push_back(reify(*a));
      return Term::app(f, args);
    }
    case Value::Kind::Prim: {
      std::vector<Term> args;
      for (const auto& a : v.args) args.push_back(reify(*a));
      return Term::app(Term::prim(v.op), args);
    }
    case Value::Kind::Type:
      return v.term;
  }
  return Term::truth();
}

bool values_equal(const Value& a, const Value& b) {
  if (!a.is_data() || !b.is_data()) throw Error("equality of non-data values is not decidable");
  if (a.kind != b.kind) return false;
  if (a.kind == Value::Kind::Int) return a.integer == b.integer;
  if (a.inductive != b.inductive || a.ctor_index != b.ctor_index) return false;
  for (std::size_t i = a.param_count; i < a.args.size(); ++i) {
    if (!values_equal(*a.args[i], *b.args[i])) return false;
  }
  return true;
}

Term random_ground_term(const GlobalEnv& env, const Term& type, std::size_t size, std::mt19937_64& rng) {
  if (!type.closed()) throw Error("random_ground_term needs a closed type");
  return Generator(env, &rng).generate(type, size);
}

Term random_ground_term(const GlobalEnv& env, const Term& type, std::size_t size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_ground_term(env, type, size, rng);
}

std::optional<std::size_t> min_inhabitant_size(const GlobalEnv& env, const Term& type) {
  std::mt19937_64 rng(0);
  const std::size_t n = Generator(env, &rng).min_size(type);
  if (n >= kInfinite) return std::nullopt;
  return n;
}

}  // namespace folbridge
