#include "folbridge/semantics.hpp"

#include <map>

#include "folbridge/conversion.hpp"
#include "folbridge/error.hpp"
#include "folbridge/eval.hpp"
#include "folbridge/printer.hpp"

namespace folbridge {

namespace {

bool is_proposition(const GlobalEnv& env, const Term& ty) {
  try {
    return universe_of(env, {}, ty) == Universe::Prop;
  } catch (const TypeError&) {
    return false;
  }
}

// First-order matching of a pattern whose loose variables below `k` are
// unknowns against a closed term. Closed parts compare up to conversion, so
// an interpreted parameter matches its value.
bool match_pattern(const GlobalEnv& env, const Term& pat, const Term& t, std::size_t k,
                   std::vector<std::optional<Term>>& out) {
  if (pat.is(TermKind::Var) && pat.index() < k) {
    auto& slot = out[pat.index()];
    if (slot) return *slot == t;
    slot = t;
    return true;
  }
  if (pat.loose_bound() == 0) {
    if (pat == t) return true;
    try {
      return convertible(env, {}, pat, t);
    } catch (const Error&) {
      return false;
    }
  }
  if (pat.is(TermKind::App) && t.is(TermKind::App)) {
    return match_pattern(env, pat.fn(), t.fn(), k, out) && match_pattern(env, pat.arg(), t.arg(), k, out);
  }
  return false;
}

// Types whose smallest value is larger than the requested bound still get
// their smallest values.
std::size_t sample_budget(const GlobalEnv& env, const Term& type, std::size_t max_size) {
  const auto least = min_inhabitant_size(env, type);
  return least ? std::max(max_size, *least) : max_size;
}

class Model {
 public:
  Model(const GlobalEnv& env, const TruthOptions& options, std::mt19937_64& rng)
      : env_(env), options_(options), rng_(rng) {}

  // `prefix` is true while walking the leading universal prefix, where each
  // round draws a single instantiation.
  bool holds(const Term& p, bool prefix) {
    switch (p.kind()) {
      case TermKind::True:
        return true;
      case TermKind::False:
        return false;
      case TermKind::And:
        return holds(p.lhs(), false) && holds(p.rhs(), false);
      case TermKind::Or:
        return holds(p.lhs(), false) || holds(p.rhs(), false);
      case TermKind::Not:
        return !holds(p.operand(), false);
      case TermKind::Pi:
        return holds_forall(p, prefix);
      case TermKind::Exists:
        return holds_exists(p);
      case TermKind::Eq:
        return holds_eq(p.eq_type(), p.lhs(), p.rhs());
      default:
        break;
    }
    auto [head, args] = decompose_app(p);
    if (head.is(TermKind::Prim) && args.size() == 2 &&
        (head.prim_op() == PrimOp::Le || head.prim_op() == PrimOp::Lt)) {
      const std::int64_t a = integer(args[0]);
      const std::int64_t b = integer(args[1]);
      return head.prim_op() == PrimOp::Le ? a <= b : a < b;
    }
    Term w = whnf(env_, p);
    if (w == p) throw Error("cannot evaluate proposition " + print_term(p, env_));
    return holds(w, prefix);
  }

  std::vector<std::string>& trail() { return trail_; }

  Term sample(const Term& type) {
    if (type.is(TermKind::Sort) && type.universe() == Universe::Type) {
      return rng_() % 2 ? Term::int_type() : Term::ind(kBoolName);
    }
    const std::string key = print_term(type, env_);
    auto it = budgets_.find(key);
    if (it == budgets_.end()) it = budgets_.emplace(key, sample_budget(env_, type, options_.max_size)).first;
    return random_ground_term(env_, type, it->second, rng_);
  }

 private:
  std::int64_t integer(const Term& t) {
    ValuePtr v = eval_ground(env_, t);
    if (v->kind != Value::Kind::Int) throw Error("expected an integer");
    return v->integer;
  }

  bool holds_forall(const Term& p, bool prefix) {
    const Term& dom = p.domain();
    if (!occurs_free(p.body(), 0) && is_proposition(env_, dom)) {
      const Term rest = subst(p.body(), 0, Term::truth());
      return !holds(dom, false) || holds(rest, prefix);
    }
    const std::size_t rounds = prefix ? 1 : options_.nested_samples;
    for (std::size_t i = 0; i < rounds; ++i) {
      const Term v = sample(dom);
      if (prefix) trail_.push_back(p.name() + " := " + print_term(v, env_));
      if (!holds(subst(p.body(), 0, v), prefix)) return false;
    }
    return true;
  }

  bool holds_exists(const Term& p) {
    std::vector<Term> domains;
    Term body = p;
    while (body.is(TermKind::Exists)) {
      domains.push_back(body.domain());
      body = body.body();
    }
    const std::size_t k = domains.size();
    std::vector<Term> eqs;
    collect_equations(body, eqs);
    for (const Term& e : eqs) {
      for (int side = 0; side < 2; ++side) {
        const Term& pat = side == 0 ? e.lhs() : e.rhs();
        const Term& other = side == 0 ? e.rhs() : e.lhs();
        if (!other.closed()) continue;
        std::optional<Term> value;
        try {
          value = reify(*eval_ground(env_, other));
        } catch (const Error&) {
          continue;
        }
        std::vector<std::optional<Term>> found(k);
        if (!match_pattern(env_, pat, *value, k, found)) continue;
        if (try_witness(body, domains, found)) return true;
      }
    }
    for (std::size_t i = 0; i < options_.nested_samples; ++i) {
      std::vector<std::optional<Term>> none(k);
      if (try_witness(body, domains, none)) return true;
    }
    return false;
  }

  // Unbound positions are sampled; `found[i]` is the unknown Var i.
  bool try_witness(const Term& body, const std::vector<Term>& domains, const std::vector<std::optional<Term>>& found) {
    const std::size_t k = domains.size();
    std::vector<Term> args;
    for (std::size_t j = 0; j < k; ++j) {
      const auto& f = found[k - 1 - j];
      const Term dom = instantiate(domains[j], args);
      args.push_back(f ? *f : sample(dom));
    }
    return holds(instantiate(body, args), false);
  }

  static void collect_equations(const Term& t, std::vector<Term>& out) {
    switch (t.kind()) {
      case TermKind::Eq:
        out.push_back(t);
        return;
      case TermKind::And:
      case TermKind::Or:
        collect_equations(t.lhs(), out);
        collect_equations(t.rhs(), out);
        return;
      case TermKind::Not:
        collect_equations(t.operand(), out);
        return;
      default:
        return;
    }
  }

  bool holds_eq(const Term& type, const Term& a, const Term& b) {
    const Term ty = whnf(env_, type);
    if (ty.is(TermKind::Pi)) {
      // Extensional: compare on sampled arguments.
      for (std::size_t i = 0; i < options_.nested_samples; ++i) {
        const Term x = sample(ty.domain());
        if (!holds_eq(subst(ty.body(), 0, x), Term::app(a, x), Term::app(b, x))) return false;
      }
      return true;
    }
    ValuePtr va = eval_ground(env_, a);
    ValuePtr vb = eval_ground(env_, b);
    if (va->kind == Value::Kind::Type && vb->kind == Value::Kind::Type) {
      return normalize(env_, va->term) == normalize(env_, vb->term);
    }
    return values_equal(*va, *vb);
  }

  const GlobalEnv& env_;
  const TruthOptions& options_;
  std::mt19937_64& rng_;
  std::vector<std::string> trail_;
  std::map<std::string, std::size_t> budgets_;
};

}  // namespace

GlobalEnv interpret_parameters(const GlobalEnv& env, std::size_t max_size, std::mt19937_64& rng) {
  GlobalEnv out;
  for (const auto& d : env.inductives()) out.add_inductive(d);
  for (const auto& d : env.definitions()) {
    if (!d.opaque()) {
      out.add_definition(d);
      continue;
    }
    const Term ty = whnf(out, d.type);
    Term body = ty.is(TermKind::Sort) && ty.universe() == Universe::Type
                    ? Term::int_type()
                    : random_ground_term(out, ty, sample_budget(out, ty, max_size), rng);
    out.add_definition(Definition{d.name, d.type, body});
  }
  return out;
}

TruthReport check_truth(const GlobalEnv& env, const Term& statement, const TruthOptions& options) {
  TruthReport report;
  std::mt19937_64 rng(options.seed);
  bool has_params = false;
  for (const auto& d : env.definitions()) has_params = has_params || d.opaque();
  for (std::size_t i = 0; i < options.samples; ++i) {
    const GlobalEnv model_env = has_params ? interpret_parameters(env, options.max_size, rng) : env;
    Model model(model_env, options, rng);
    ++report.samples;
    if (!model.holds(statement, true)) {
      report.holds = false;
      std::string trail;
      for (const auto& s : model.trail()) trail += (trail.empty() ? "" : ", ") + s;
      report.counterexample = print_term(statement, env) + (trail.empty() ? "" : " with " + trail);
      return report;
    }
  }
  return report;
}

}  // namespace folbridge
