#include "folbridge/conversion.hpp"

#include "folbridge/error.hpp"
#include "folbridge/printer.hpp"

namespace folbridge {

Term bool_term(bool value) { return Term::ctor(kBoolName, value ? 0 : 1); }

std::optional<bool> as_bool(const Term& t) {
  if (t.is(TermKind::Ctor) && t.name() == kBoolName) return t.index() == 0;
  return std::nullopt;
}

bool is_constructor_app(const Term& t) { return head_of(t).is(TermKind::Ctor); }

namespace {

bool is_ground_value(const GlobalEnv& env, const Term& t) {
  if (!t.closed()) return false;
  if (t.is(TermKind::IntLit)) return true;
  auto [head, args] = decompose_app(t);
  if (!head.is(TermKind::Ctor)) return false;
  const auto& decl = env.inductive(head.name());
  const std::size_t p = decl.type_params.size();
  if (args.size() != p + decl.constructors[head.index()].arg_types.size()) return false;
  for (std::size_t i = p; i < args.size(); ++i) {
    if (!is_ground_value(env, args[i])) return false;
  }
  return true;
}

class Reducer {
 public:
  Reducer(const GlobalEnv& env, Fuel fuel) : env_(env), budget_(fuel.max_reduction_steps) {}

  Term whnf(Term t) {
    for (;;) {
      auto [head, args] = decompose_app(t);
      switch (head.kind()) {
        case TermKind::Lam:
          if (args.empty()) return t;
          tick();
          t = Term::app(subst(head.body(), 0, args[0]), std::span(args).subspan(1));
          continue;
        case TermKind::Const: {
          const auto* def = env_.find_definition(head.name());
          if (!def || def->opaque()) return t;
          tick();
          t = Term::app(*def->body, args);
          continue;
        }
        case TermKind::Fix: {
          const std::size_t k = head.index();
          if (args.size() <= k) return t;
          args[k] = whnf(args[k]);
          if (!is_constructor_app(args[k])) return Term::app(head, args);
          tick();
          t = Term::app(subst(head.body(), 0, head), args);
          continue;
        }
        case TermKind::Match: {
          Term scrut = whnf(head.scrutinee());
          auto [chead, cargs] = decompose_app(scrut);
          if (!chead.is(TermKind::Ctor)) {
            return Term::app(Term::match(scrut, head.scrutinee_type(), head.return_type(),
                                         head.branches()),
                             args);
          }
          const auto& branch = head.branches().at(chead.index());
          if (cargs.size() < branch.arity()) return t;
          tick();
          std::span<const Term> fields(cargs.data() + cargs.size() - branch.arity(), branch.arity());
          t = Term::app(instantiate(branch.body, fields), args);
          continue;
        }
        case TermKind::Prim: {
          auto reduced = reduce_prim(head.prim_op(), args);
          if (!reduced) return t;
          tick();
          t = *reduced;
          continue;
        }
        default:
          return t;
      }
    }
  }

  Term normalize(const Term& t0) {
    Term t = whnf(t0);
    switch (t.kind()) {
      case TermKind::App: {
        auto [head, args] = decompose_app(t);
        Term h = normalize_head(head);
        for (auto& a : args) a = normalize(a);
        return Term::app(h, args);
      }
      case TermKind::Match:
      case TermKind::Fix:
        return normalize_head(t);
      case TermKind::Pi:
        return Term::pi(t.name(), normalize(t.domain()), normalize(t.body()));
      case TermKind::Lam:
        return Term::lam(t.name(), normalize(t.domain()), normalize(t.body()));
      case TermKind::Exists:
        return Term::exists(t.name(), normalize(t.domain()), normalize(t.body()));
      case TermKind::Eq:
        return Term::eq(normalize(t.eq_type()), normalize(t.lhs()), normalize(t.rhs()));
      case TermKind::And:
        return Term::conj(normalize(t.lhs()), normalize(t.rhs()));
      case TermKind::Or:
        return Term::disj(normalize(t.lhs()), normalize(t.rhs()));
      case TermKind::Not:
        return Term::neg(normalize(t.operand()));
      default:
        return t;
    }
  }

 private:
  void tick() {
    if (budget_ == 0) throw FuelExhausted();
    --budget_;
  }

  // Normalizes the inside of a stuck head.
  Term normalize_head(const Term& h) {
    if (h.is(TermKind::Match)) {
      std::vector<MatchBranch> bs;
      for (const auto& b : h.branches()) bs.push_back({b.binders, normalize(b.body)});
      return Term::match(normalize(h.scrutinee()), normalize(h.scrutinee_type()),
                         normalize(h.return_type()), std::move(bs));
    }
    if (h.is(TermKind::Fix)) {
      return Term::fix(h.name(), h.index(), normalize(h.full_type()), normalize(h.body()));
    }
    return h;
  }

  std::optional<Term> reduce_prim(PrimOp op, std::vector<Term>& args) {
    switch (op) {
      case PrimOp::Add:
      case PrimOp::Sub:
      case PrimOp::Mul: {
        if (args.size() < 2) return std::nullopt;
        args[0] = whnf(args[0]);
        args[1] = whnf(args[1]);
        if (!args[0].is(TermKind::IntLit) || !args[1].is(TermKind::IntLit)) return std::nullopt;
        const std::int64_t a = args[0].int_value();
        const std::int64_t b = args[1].int_value();
        const std::int64_t r = op == PrimOp::Add ? a + b : op == PrimOp::Sub ? a - b : a * b;
        return Term::app(Term::int_lit(r), std::span(args).subspan(2));
      }
      case PrimOp::Orb:
      case PrimOp::Andb: {
        if (args.size() < 2) return std::nullopt;
        args[0] = whnf(args[0]);
        auto b = as_bool(args[0]);
        if (!b) return std::nullopt;
        const bool short_circuit = op == PrimOp::Orb ? *b : !*b;
        Term r = short_circuit ? args[0] : args[1];
        return Term::app(r, std::span(args).subspan(2));
      }
      case PrimOp::Negb: {
        if (args.empty()) return std::nullopt;
        args[0] = whnf(args[0]);
        auto b = as_bool(args[0]);
        if (!b) return std::nullopt;
        return Term::app(bool_term(!*b), std::span(args).subspan(1));
      }
      case PrimOp::Eqb: {
        if (args.size() < 3) return std::nullopt;
        Term x = normalize(args[1]);
        Term y = normalize(args[2]);
        args[1] = x;
        args[2] = y;
        if (!is_ground_value(env_, x) || !is_ground_value(env_, y)) return std::nullopt;
        return Term::app(bool_term(x == y), std::span(args).subspan(3));
      }
      case PrimOp::Le:
      case PrimOp::Lt:
        return std::nullopt;
    }
    return std::nullopt;
  }

  const GlobalEnv& env_;
  std::size_t budget_;
};

class Checker {
 public:
  Checker(const GlobalEnv& env, Fuel fuel) : env_(env), fuel_(fuel) {}

  Term infer(Context& ctx, const Term& t) {
    switch (t.kind()) {
      case TermKind::Var:
        if (t.index() >= ctx.size()) throw TypeError("unbound variable", "bound variable", "#" + std::to_string(t.index()));
        return ctx.type_of(t.index());
      case TermKind::Const:
        return env_.definition(t.name()).type;
      case TermKind::Ctor:
        return env_.constructor_type(t.name(), t.index());
      case TermKind::Ind:
        return env_.inductive_type(t.name());
      case TermKind::Sort:
      case TermKind::IntType:
        return Term::type();
      case TermKind::IntLit:
        return Term::int_type();
      case TermKind::Prim:
        return prim_type(t.prim_op());
      case TermKind::True:
      case TermKind::False:
        return Term::prop();
      case TermKind::Pi: {
        expect_sort(ctx, t.domain());
        ctx.push(t.name(), t.domain());
        Universe u = expect_sort(ctx, t.body());
        ctx.pop();
        return Term::sort(u);
      }
      case TermKind::Lam: {
        expect_sort(ctx, t.domain());
        ctx.push(t.name(), t.domain());
        Term bt = infer(ctx, t.body());
        ctx.pop();
        return Term::pi(t.name(), t.domain(), bt);
      }
      case TermKind::Exists: {
        if (expect_sort(ctx, t.domain()) != Universe::Type || is_sort(t.domain())) {
          throw TypeError("existential over a non-object type", "object type", show(ctx, t.domain()));
        }
        ctx.push(t.name(), t.domain());
        expect_prop(ctx, t.body());
        ctx.pop();
        return Term::prop();
      }
      case TermKind::App: {
        Term ft = whnf(env_, infer(ctx, t.fn()), fuel_);
        if (!ft.is(TermKind::Pi)) {
          throw TypeError("application of a non-function " + show(ctx, t.fn()), "function type", show(ctx, ft));
        }
        check(ctx, t.arg(), ft.domain());
        return subst(ft.body(), 0, t.arg());
      }
      case TermKind::Match:
        return infer_match(ctx, t);
      case TermKind::Fix:
        return infer_fix(ctx, t);
      case TermKind::Eq: {
        if (expect_sort(ctx, t.eq_type()) != Universe::Type) {
          throw TypeError("equality at a proposition", "object type", show(ctx, t.eq_type()));
        }
        check(ctx, t.lhs(), t.eq_type());
        check(ctx, t.rhs(), t.eq_type());
        return Term::prop();
      }
      case TermKind::And:
      case TermKind::Or:
        expect_prop(ctx, t.lhs());
        expect_prop(ctx, t.rhs());
        return Term::prop();
      case TermKind::Not:
        expect_prop(ctx, t.operand());
        return Term::prop();
    }
    throw TypeError("unknown term", "term", "?");
  }

  void check(Context& ctx, const Term& t, const Term& expected) {
    Term actual = infer(ctx, t);
    if (!convertible(env_, ctx, actual, expected, fuel_)) {
      throw TypeError("ill-typed term " + show(ctx, t), show(ctx, expected), show(ctx, actual));
    }
  }

  Universe expect_sort(Context& ctx, const Term& ty) {
    Term s = whnf(env_, infer(ctx, ty), fuel_);
    if (!s.is(TermKind::Sort)) throw TypeError("not a type: " + show(ctx, ty), "a sort", show(ctx, s));
    return s.universe();
  }

  void expect_prop(Context& ctx, const Term& p) {
    Term s = whnf(env_, infer(ctx, p), fuel_);
    if (!s.is(TermKind::Sort) || s.universe() != Universe::Prop) {
      throw TypeError("not a proposition: " + show(ctx, p), "Prop", show(ctx, s));
    }
  }

 private:
  static bool is_sort(const Term& t) { return t.is(TermKind::Sort); }

  std::string show(const Context& ctx, const Term& t) const {
    try {
      return print_term(t, env_, ctx.names());
    } catch (const std::exception&) {
      return "<term>";
    }
  }

  static Term prim_type(PrimOp op) {
    const Term i = Term::int_type();
    const Term b = Term::ind(kBoolName);
    switch (op) {
      case PrimOp::Add:
      case PrimOp::Sub:
      case PrimOp::Mul:
        return Term::arrow(i, Term::arrow(i, i));
      case PrimOp::Le:
      case PrimOp::Lt:
        return Term::arrow(i, Term::arrow(i, Term::prop()));
      case PrimOp::Orb:
      case PrimOp::Andb:
        return Term::arrow(b, Term::arrow(b, b));
      case PrimOp::Negb:
        return Term::arrow(b, b);
      case PrimOp::Eqb:
        return Term::pi("A", Term::type(),
                        Term::arrow(Term::var(0), Term::arrow(Term::var(0), b)));
    }
    return i;
  }

  Term infer_match(Context& ctx, const Term& t) {
    check(ctx, t.scrutinee(), t.scrutinee_type());
    auto inst = as_inductive_instance(env_, t.scrutinee_type(), fuel_);
    if (!inst) {
      throw TypeError("match on a non-inductive value", "inductive type", show(ctx, t.scrutinee_type()));
    }
    const auto& decl = env_.inductive(inst->name);
    if (t.branches().size() != decl.constructors.size()) {
      throw TypeError("match has wrong number of branches",
                      std::to_string(decl.constructors.size()),
                      std::to_string(t.branches().size()));
    }
    expect_sort(ctx, t.return_type());
    for (std::size_t k = 0; k < decl.constructors.size(); ++k) {
      const auto& b = t.branches()[k];
      auto arg_types = env_.constructor_arg_types(inst->name, k, inst->params);
      if (b.arity() != arg_types.size()) {
        throw TypeError("branch " + decl.constructors[k].name + " has wrong arity",
                        std::to_string(arg_types.size()), std::to_string(b.arity()));
      }
      for (std::size_t j = 0; j < arg_types.size(); ++j) ctx.push(b.binders[j], arg_types[j]);
      check(ctx, b.body, lift(t.return_type(), b.arity()));
      for (std::size_t j = 0; j < arg_types.size(); ++j) ctx.pop();
    }
    return t.return_type();
  }

  Term infer_fix(Context& ctx, const Term& t) {
    expect_sort(ctx, t.full_type());
    // Locate the decreasing binder and check it ranges over an inductive.
    Term ty = t.full_type();
    std::size_t pushed = 0;
    bool ok = false;
    for (std::size_t i = 0;; ++i) {
      Term w = whnf(env_, ty, fuel_);
      if (!w.is(TermKind::Pi)) break;
      if (i == t.index()) {
        ok = as_inductive_instance(env_, w.domain(), fuel_).has_value();
        break;
      }
      ctx.push(w.name(), w.domain());
      ++pushed;
      ty = w.body();
    }
    for (std::size_t i = 0; i < pushed; ++i) ctx.pop();
    if (!ok) {
      throw TypeError("fixpoint " + t.name() + " does not decrease on an inductive argument",
                      "inductive argument #" + std::to_string(t.index()), show(ctx, t.full_type()));
    }
    ctx.push(t.name(), t.full_type());
    check(ctx, t.body(), lift(t.full_type(), 1));
    ctx.pop();
    return t.full_type();
  }

  const GlobalEnv& env_;
  Fuel fuel_;
};

}  // namespace

Term whnf(const GlobalEnv& env, const Term& t, Fuel fuel) { return Reducer(env, fuel).whnf(t); }

Term normalize(const GlobalEnv& env, const Context&, const Term& t, Fuel fuel) {
  return Reducer(env, fuel).normalize(t);
}

Term normalize(const GlobalEnv& env, const Term& t, Fuel fuel) {
  return Reducer(env, fuel).normalize(t);
}

bool convertible(const GlobalEnv& env, const Context& ctx, const Term& a, const Term& b, Fuel fuel) {
  if (a == b) return true;
  return normalize(env, ctx, a, fuel) == normalize(env, ctx, b, fuel);
}

Term typecheck(const GlobalEnv& env, const Context& ctx, const Term& t, Fuel fuel) {
  if (!well_scoped(t, ctx.size())) throw TypeError("term is not well-scoped", "bound variables", "loose index");
  Context local = ctx;
  return Checker(env, fuel).infer(local, t);
}

Universe universe_of(const GlobalEnv& env, const Context& ctx, const Term& ty, Fuel fuel) {
  Context local = ctx;
  return Checker(env, fuel).expect_sort(local, ty);
}

std::optional<InductiveInstance> as_inductive_instance(const GlobalEnv& env, const Term& ty, Fuel fuel) {
  Term w = whnf(env, ty, fuel);
  auto [head, args] = decompose_app(w);
  if (!head.is(TermKind::Ind)) return std::nullopt;
  const auto* decl = env.find_inductive(head.name());
  if (!decl || decl->type_params.size() != args.size()) return std::nullopt;
  return InductiveInstance{head.name(), std::move(args)};
}

}  // namespace folbridge
