#include "folbridge/certify.hpp"

#include <optional>

#include "folbridge/error.hpp"
#include "folbridge/printer.hpp"
#include "folbridge/semantics.hpp"

namespace folbridge {

namespace {

struct Intro {
  Context ctx;
  Term body = Term::truth();
};

// Introduces every leading binder, propositional antecedents included.
Intro intro_all(const Term& statement) {
  Intro out;
  Term t = statement;
  while (t.is(TermKind::Pi)) {
    out.ctx.push(t.name(), t.domain());
    t = t.body();
  }
  out.body = t;
  return out;
}

const Hypothesis* find_hyp(const std::vector<Hypothesis>& context, const std::string& name) {
  for (const auto& h : context) {
    if (h.name == name) return &h;
  }
  return nullptr;
}

// Matches `pat`, whose variables below `k` are unknowns, against `t`.
bool match(const Term& pat, const Term& t, std::size_t k, std::vector<std::optional<Term>>& slots) {
  if (pat.is(TermKind::Var) && pat.index() < k) {
    auto& slot = slots[pat.index()];
    if (slot) return *slot == t;
    slot = t;
    return true;
  }
  if (pat.loose_bound() == 0) return pat == t;
  if (pat.is(TermKind::App) && t.is(TermKind::App)) {
    return match(pat.fn(), t.fn(), k, slots) && match(pat.arg(), t.arg(), k, slots);
  }
  return false;
}

// Oriented rewrite rule `forall xs, l = r` read off a hypothesis.
struct Rule {
  std::size_t arity = 0;
  Term lhs = Term::truth();
  Term rhs = Term::truth();
};

std::optional<Rule> rule_of(const Term& statement) {
  Rule r;
  Term t = statement;
  while (t.is(TermKind::Pi)) {
    // Conditional equations cannot be used as plain rewrite rules.
    if (!occurs_free(t.body(), 0)) return std::nullopt;
    ++r.arity;
    t = t.body();
  }
  if (!t.is(TermKind::Eq)) return std::nullopt;
  r.lhs = t.lhs();
  r.rhs = t.rhs();
  return r;
}

// Rewrites every outermost instance of the rule's left side, not looking
// under binders or into the replacement.
Term rewrite(const Term& t, const Rule& rule) {
  std::vector<std::optional<Term>> slots(rule.arity);
  if (match(rule.lhs, t, rule.arity, slots)) {
    std::vector<Term> args;
    bool complete = true;
    for (std::size_t j = 0; j < rule.arity; ++j) {
      const auto& s = slots[rule.arity - 1 - j];
      if (!s) {
        complete = false;
        break;
      }
      args.push_back(*s);
    }
    if (complete) return instantiate(rule.rhs, args);
  }
  switch (t.kind()) {
    case TermKind::App:
      return Term::app(rewrite(t.fn(), rule), rewrite(t.arg(), rule));
    case TermKind::Eq:
      return Term::eq(t.eq_type(), rewrite(t.lhs(), rule), rewrite(t.rhs(), rule));
    default:
      return t;
  }
}

class Checker {
 public:
  Checker(const GlobalEnv& env, const std::vector<Hypothesis>& context, const CertifyOptions& options)
      : env_(env), context_(context), options_(options) {}

  Verdict check(const Term& statement, const Justification& j) {
    switch (j.kind) {
      case Justification::Kind::Given:
        return Verdict::ok("given");
      case Justification::Kind::ByDefinition:
        return by_definition(statement, j.constant);
      case Justification::Kind::ByConversion:
        return by_conversion(statement, j.source);
      case Justification::Kind::ByCaseConversion:
        return by_cases(statement, j.source, j.split_vars, std::max(j.depth, options_.split_depth));
      case Justification::Kind::ByInstantiation:
        return by_instantiation(statement, j.source, j.type_args);
      case Justification::Kind::DatatypeAxiom:
        return datatype_axiom(statement, j);
    }
    return Verdict::fail("unknown justification");
  }

 private:
  Verdict by_definition(const Term& statement, const std::string& c) {
    const Definition* d = env_.find_definition(c);
    if (!d || d->opaque()) return Verdict::fail(c + " has no definition");
    if (statement != Term::eq(d->type, Term::constant(c), *d->body)) {
      return Verdict::fail("statement is not the definitional equation of " + c);
    }
    return Verdict::ok("delta");
  }

  Verdict by_conversion(const Term& statement, const std::string& source) {
    Intro in = intro_all(statement);
    if (!in.body.is(TermKind::Eq)) return Verdict::fail("not an equation: " + show(statement));
    const Term& lhs = in.body.lhs();
    const Term& rhs = in.body.rhs();
    if (convertible_within_fuel(in.ctx, lhs, rhs)) return Verdict::ok("conversion");
    const Hypothesis* src = source.empty() ? nullptr : find_hyp(context_, source);
    if (src) {
      if (auto rule = rule_of(src->statement)) {
        const Term l2 = rewrite(lhs, *rule);
        const Term r2 = rewrite(rhs, *rule);
        if (convertible_within_fuel(in.ctx, l2, r2)) return Verdict::ok("rewrite " + source + "; conversion");
      }
    } else if (!source.empty()) {
      return Verdict::fail("unknown source hypothesis " + source);
    }
    return Verdict::fail("sides not convertible in " + show(statement));
  }

  Verdict by_cases(const Term& statement, const std::string& source, std::vector<std::size_t> candidates,
                   std::size_t budget) {
    Verdict leaf = by_conversion(statement, source);
    if (leaf.valid || budget == 0 || leaf.reason.starts_with("unknown source")) return leaf;
    Verdict last = leaf;
    for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
      const std::size_t pos = candidates[ci];
      auto count = binder_constructor_count(env_, statement, pos);
      if (!count) continue;
      bool all = true;
      for (std::size_t k = 0; k < *count && all; ++k) {
        auto split = instantiate_binder_with_constructor(env_, statement, pos, k);
        if (!split) {
          all = false;
          break;
        }
        const std::size_t fields = field_count(statement, pos, k);
        std::vector<std::size_t> next;
        for (std::size_t f = 0; f < fields; ++f) {
          if (binder_constructor_count(env_, *split, pos + f)) next.push_back(pos + f);
        }
        for (std::size_t other = 0; other < candidates.size(); ++other) {
          if (other == ci) continue;
          const std::size_t p = candidates[other];
          next.push_back(p > pos ? p + fields - 1 : p);
        }
        Verdict v = by_cases(*split, source, next, budget - 1);
        if (!v.valid) {
          all = false;
          last = v;
        }
      }
      if (all) return Verdict::ok("case split on binder " + std::to_string(pos));
    }
    return last;
  }

  std::size_t field_count(const Term& statement, std::size_t pos, std::size_t ctor) {
    Term t = statement;
    for (std::size_t i = 0; i < pos; ++i) t = t.body();
    auto inst = as_inductive_instance(env_, t.domain());
    return env_.inductive(inst->name).constructors[ctor].arg_types.size();
  }

  Verdict by_instantiation(const Term& statement, const std::string& source, const std::vector<Term>& args) {
    const Hypothesis* src = find_hyp(context_, source);
    if (!src) return Verdict::fail("unknown source hypothesis " + source);
    Term body = src->statement;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (!body.is(TermKind::Pi) || body.domain() != Term::type()) {
        return Verdict::fail(source + " has fewer than " + std::to_string(args.size()) + " type binders");
      }
      body = body.body();
    }
    for (const Term& a : args) {
      if (!a.closed()) return Verdict::fail("type argument is not closed");
      const Term s = whnf(env_, typecheck(env_, {}, a, options_.fuel), options_.fuel);
      if (s != Term::type()) return Verdict::fail(show(a) + " is not a type");
    }
    if (statement != instantiate(body, args)) return Verdict::fail("statement is not the instance of " + source);
    return Verdict::ok("instantiation");
  }

  Verdict datatype_axiom(const Term& statement, const Justification& j) {
    const InductiveDecl* decl = env_.find_inductive(j.inductive);
    if (!decl) return Verdict::fail("unknown inductive " + j.inductive);
    if (j.params.size() != decl->type_params.size()) return Verdict::fail("wrong parameter count");
    for (const Term& p : j.params) {
      if (!p.closed()) return Verdict::fail("parameters must be closed");
    }
    std::optional<std::string> bad;
    switch (j.axiom) {
      case Justification::Axiom::Injectivity:
        bad = injectivity_shape(statement, *decl, j.params, j.ctor);
        break;
      case Justification::Axiom::Disjointness:
        bad = disjointness_shape(statement, *decl, j.params, j.ctor, j.other_ctor);
        break;
      case Justification::Axiom::Exhaustiveness:
        bad = exhaustiveness_shape(statement, *decl, j.params);
        break;
    }
    if (bad) return Verdict::fail("shape: " + *bad);
    TruthOptions o;
    o.samples = options_.axiom_samples;
    o.seed = options_.seed;
    TruthReport r = check_truth(env_, statement, o);
    if (!r.holds) return Verdict::fail("refuted: " + r.counterexample);
    return Verdict::ok("schema + " + std::to_string(r.samples) + " samples");
  }

  // Shape checks read the constructor declarations directly rather than
  // going through the generator.

  std::vector<Term> fields(const InductiveDecl& decl, const std::vector<Term>& params, std::size_t ctor) {
    std::vector<Term> out;
    for (const Term& a : decl.constructors.at(ctor).arg_types) out.push_back(instantiate(a, params));
    return out;
  }

  Term instance(const InductiveDecl& decl, const std::vector<Term>& params) {
    return Term::app(Term::ind(decl.name), params);
  }

  // `C params v(0) .. v(n-1)` with v giving the variable index of each field.
  template <typename F>
  bool is_ctor_app(const Term& t, const InductiveDecl& decl, const std::vector<Term>& params, std::size_t ctor,
                   std::size_t n, F v) {
    auto [head, args] = decompose_app(t);
    if (!head.is(TermKind::Ctor) || head.name() != decl.name || head.index() != ctor) return false;
    if (args.size() != params.size() + n) return false;
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (args[i] != params[i]) return false;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (args[params.size() + j] != Term::var(v(j))) return false;
    }
    return true;
  }

  std::optional<std::string> injectivity_shape(Term t, const InductiveDecl& decl, const std::vector<Term>& params,
                                               std::size_t ctor) {
    if (ctor >= decl.constructors.size()) return "constructor index out of range";
    const auto fs = fields(decl, params, ctor);
    const std::size_t n = fs.size();
    if (n == 0) return "nullary constructor has no injectivity axiom";
    for (std::size_t p = 0; p < 2 * n; ++p) {
      if (!t.is(TermKind::Pi) || t.domain() != fs[p / 2]) return "binder " + std::to_string(p);
      t = t.body();
    }
    if (!t.is(TermKind::Pi) || occurs_free(t.body(), 0)) return "missing implication";
    const Term& hyp = t.domain();
    if (!hyp.is(TermKind::Eq) || hyp.eq_type() != instance(decl, params)) return "antecedent";
    if (!is_ctor_app(hyp.lhs(), decl, params, ctor, n, [&](std::size_t j) { return 2 * n - 1 - 2 * j; }) ||
        !is_ctor_app(hyp.rhs(), decl, params, ctor, n, [&](std::size_t j) { return 2 * n - 2 - 2 * j; })) {
      return "antecedent sides";
    }
    Term c = t.body();
    for (std::size_t j = 0; j < n; ++j) {
      Term eq = c;
      if (j + 1 < n) {
        if (!c.is(TermKind::And)) return "conclusion conjunction";
        eq = c.lhs();
        c = c.rhs();
      }
      if (!eq.is(TermKind::Eq) || eq.eq_type() != fs[j] || eq.lhs() != Term::var(2 * n - 2 * j) ||
          eq.rhs() != Term::var(2 * n - 1 - 2 * j)) {
        return "conclusion " + std::to_string(j);
      }
    }
    return std::nullopt;
  }

  std::optional<std::string> disjointness_shape(Term t, const InductiveDecl& decl, const std::vector<Term>& params,
                                                std::size_t a, std::size_t b) {
    if (a >= b || b >= decl.constructors.size()) return "constructor pair";
    const auto fa = fields(decl, params, a);
    const auto fb = fields(decl, params, b);
    const std::size_t n = fa.size(), m = fb.size();
    for (std::size_t p = 0; p < n + m; ++p) {
      const Term& want = p < n ? fa[p] : fb[p - n];
      if (!t.is(TermKind::Pi) || t.domain() != want) return "binder " + std::to_string(p);
      t = t.body();
    }
    if (!t.is(TermKind::Not) || !t.operand().is(TermKind::Eq)) return "not a disequality";
    const Term& eq = t.operand();
    if (eq.eq_type() != instance(decl, params)) return "equality type";
    if (!is_ctor_app(eq.lhs(), decl, params, a, n, [&](std::size_t j) { return n + m - 1 - j; }) ||
        !is_ctor_app(eq.rhs(), decl, params, b, m, [&](std::size_t j) { return m - 1 - j; })) {
      return "disequality sides";
    }
    return std::nullopt;
  }

  std::optional<std::string> exhaustiveness_shape(const Term& t, const InductiveDecl& decl,
                                                  const std::vector<Term>& params) {
    if (!t.is(TermKind::Pi) || t.domain() != instance(decl, params)) return "binder";
    Term d = t.body();
    const std::size_t count = decl.constructors.size();
    for (std::size_t k = 0; k < count; ++k) {
      Term alt = d;
      if (k + 1 < count) {
        if (!d.is(TermKind::Or)) return "disjunction";
        alt = d.lhs();
        d = d.rhs();
      }
      const auto fs = fields(decl, params, k);
      const std::size_t n = fs.size();
      for (std::size_t j = 0; j < n; ++j) {
        if (!alt.is(TermKind::Exists) || alt.domain() != fs[j]) return "witness binder";
        alt = alt.body();
      }
      if (!alt.is(TermKind::Eq) || alt.eq_type() != instance(decl, params) || alt.lhs() != Term::var(n) ||
          !is_ctor_app(alt.rhs(), decl, params, k, n, [&](std::size_t j) { return n - 1 - j; })) {
        return "alternative " + std::to_string(k);
      }
    }
    return std::nullopt;
  }

  bool convertible_within_fuel(const Context& ctx, const Term& a, const Term& b) {
    try {
      return convertible(env_, ctx, a, b, options_.fuel);
    } catch (const FuelExhausted&) {
      return false;
    }
  }

  std::string show(const Term& t) { return print_term(t, env_); }

  const GlobalEnv& env_;
  const std::vector<Hypothesis>& context_;
  const CertifyOptions& options_;
};

}  // namespace

Verdict check_justification(const GlobalEnv& env, const Term& statement, const Justification& j,
                            const std::vector<Hypothesis>& context, const CertifyOptions& options) {
  try {
    return Checker(env, context, options).check(statement, j);
  } catch (const std::exception& e) {
    return Verdict::fail(e.what());
  }
}

Verdict check_hypothesis(const ProofState& state, const Hypothesis& h, const CertifyOptions& options) {
  std::vector<Hypothesis> context = state.hypotheses;
  context.insert(context.end(), state.lemmas.begin(), state.lemmas.end());
  return check_justification(state.env, h.statement, h.justification, context, options);
}

std::vector<AuditEntry> audit(const ProofState& state, const CertifyOptions& options) {
  std::vector<AuditEntry> out;
  for (const auto& h : state.hypotheses) {
    out.push_back({h.name, print_term(h.statement, state.env), describe(h.justification, state.env),
                   check_hypothesis(state, h, options)});
  }
  return out;
}

}  // namespace folbridge
