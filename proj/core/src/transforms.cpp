#include "folbridge/transforms.hpp"

#include <algorithm>
#include <set>

#include "folbridge/conversion.hpp"
#include "folbridge/error.hpp"
#include "folbridge/printer.hpp"

namespace folbridge {

// Justification -------------------------------------------------------------

Justification Justification::given() { return {}; }

Justification Justification::by_definition(std::string constant) {
  Justification j;
  j.kind = Kind::ByDefinition;
  j.constant = std::move(constant);
  return j;
}

Justification Justification::by_conversion(std::string source) {
  Justification j;
  j.kind = Kind::ByConversion;
  j.source = std::move(source);
  return j;
}

Justification Justification::by_case_conversion(std::string source, std::vector<std::size_t> split_vars,
                                                std::size_t depth) {
  Justification j;
  j.kind = Kind::ByCaseConversion;
  j.source = std::move(source);
  j.split_vars = std::move(split_vars);
  j.depth = depth;
  return j;
}

Justification Justification::by_instantiation(std::string source, std::vector<Term> type_args) {
  Justification j;
  j.kind = Kind::ByInstantiation;
  j.source = std::move(source);
  j.type_args = std::move(type_args);
  return j;
}

namespace {

Justification make_axiom(Justification::Axiom kind, std::string inductive, std::vector<Term> params) {
  Justification j;
  j.kind = Justification::Kind::DatatypeAxiom;
  j.axiom = kind;
  j.inductive = std::move(inductive);
  j.params = std::move(params);
  return j;
}

}  // namespace

Justification Justification::injectivity(std::string inductive, std::vector<Term> params, std::size_t ctor) {
  Justification j = make_axiom(Axiom::Injectivity, std::move(inductive), std::move(params));
  j.ctor = ctor;
  return j;
}

Justification Justification::disjointness(std::string inductive, std::vector<Term> params, std::size_t a,
                                          std::size_t b) {
  Justification j = make_axiom(Axiom::Disjointness, std::move(inductive), std::move(params));
  j.ctor = a;
  j.other_ctor = b;
  return j;
}

Justification Justification::exhaustiveness(std::string inductive, std::vector<Term> params) {
  return make_axiom(Axiom::Exhaustiveness, std::move(inductive), std::move(params));
}

const char* to_string(Justification::Kind kind) {
  switch (kind) {
    case Justification::Kind::Given: return "Given";
    case Justification::Kind::ByDefinition: return "ByDefinition";
    case Justification::Kind::ByConversion: return "ByConversion";
    case Justification::Kind::ByCaseConversion: return "ByCaseConversion";
    case Justification::Kind::ByInstantiation: return "ByInstantiation";
    case Justification::Kind::DatatypeAxiom: return "DatatypeAxiom";
  }
  return "?";
}

std::string describe(const Justification& j, const GlobalEnv& env) {
  std::string out = to_string(j.kind);
  switch (j.kind) {
    case Justification::Kind::Given:
      return out;
    case Justification::Kind::ByDefinition:
      return out + "(" + j.constant + ")";
    case Justification::Kind::ByConversion:
      return out + "(" + j.source + ")";
    case Justification::Kind::ByCaseConversion: {
      out += "(" + j.source + "; split";
      for (std::size_t v : j.split_vars) out += " #" + std::to_string(v);
      return out + "; depth " + std::to_string(j.depth) + ")";
    }
    case Justification::Kind::ByInstantiation: {
      out += "(" + j.source;
      for (const Term& t : j.type_args) out += "; " + print_term(t, env);
      return out + ")";
    }
    case Justification::Kind::DatatypeAxiom: {
      const char* kind = j.axiom == Justification::Axiom::Injectivity     ? "injectivity"
                         : j.axiom == Justification::Axiom::Disjointness ? "disjointness"
                                                                         : "exhaustiveness";
      out += "(" + std::string(kind) + "; " + print_term(Term::app(Term::ind(j.inductive), j.params), env);
      const auto* decl = env.find_inductive(j.inductive);
      if (decl && j.axiom != Justification::Axiom::Exhaustiveness && j.ctor < decl->constructors.size()) {
        out += "; " + decl->constructors[j.ctor].name;
        if (j.axiom == Justification::Axiom::Disjointness && j.other_ctor < decl->constructors.size()) {
          out += ", " + decl->constructors[j.other_ctor].name;
        }
      }
      return out + ")";
    }
  }
  return out;
}

// ProofState ----------------------------------------------------------------

ProofState ProofState::from_problem(const Problem& problem) {
  ProofState s;
  s.env = problem.env;
  s.goal = problem.goal;
  for (const auto& h : problem.hypotheses) {
    Hypothesis hyp{h.name, h.statement, Justification::given()};
    if (problem.is_lemma(h.name)) {
      s.lemmas.push_back(std::move(hyp));
    } else {
      s.hypotheses.push_back(std::move(hyp));
    }
  }
  return s;
}

const Hypothesis* ProofState::find(const std::string& name) const {
  for (const auto& h : hypotheses) {
    if (h.name == name) return &h;
  }
  for (const auto& h : lemmas) {
    if (h.name == name) return &h;
  }
  return nullptr;
}

bool ProofState::contains(const Term& statement) const {
  return std::any_of(hypotheses.begin(), hypotheses.end(),
                     [&](const Hypothesis& h) { return h.statement == statement; });
}

std::string ProofState::fresh_name(const std::string& base) const {
  auto taken = [&](const std::string& n) { return find(n) != nullptr || env.name_taken(n); };
  if (!taken(base)) return base;
  for (std::size_t i = 0;; ++i) {
    std::string candidate = base + std::to_string(i);
    if (!taken(candidate)) return candidate;
  }
}

void ProofState::add(Hypothesis h) { hypotheses.push_back(std::move(h)); }

namespace {

// Local helpers ---------------------------------------------------------------

const Hypothesis& lookup(const ProofState& state, const std::string& name) {
  const Hypothesis* h = state.find(name);
  if (!h) throw TransformError(TransformError::Code::UnknownHypothesis, "unknown hypothesis " + name);
  return *h;
}

struct Prefix {
  std::vector<std::string> names;
  std::vector<Term> domains;  // each in the context of the preceding binders
  Term body = Term::truth();
};

Prefix strip_prefix(const Term& statement, std::size_t limit = SIZE_MAX) {
  Prefix p;
  Term t = statement;
  while (t.is(TermKind::Pi) && p.domains.size() < limit) {
    p.names.push_back(t.name());
    p.domains.push_back(t.domain());
    t = t.body();
  }
  p.body = t;
  return p;
}

Term close_prefix(const std::vector<std::string>& names, const std::vector<Term>& domains, Term body) {
  for (std::size_t i = domains.size(); i-- > 0;) body = Term::pi(names[i], domains[i], std::move(body));
  return body;
}

// Rebuilds t with f applied to every immediate subterm; f also receives the
// number of binders crossed to reach it.
template <typename F>
Term map_children(const Term& t, F&& f) {
  // Children are visited left to right, so each result is bound before the
  // next call.
  switch (t.kind()) {
    case TermKind::Pi:
    case TermKind::Lam:
    case TermKind::Exists: {
      Term dom = f(t.domain(), 0);
      Term body = f(t.body(), 1);
      if (t.is(TermKind::Pi)) return Term::pi(t.name(), dom, body);
      if (t.is(TermKind::Lam)) return Term::lam(t.name(), dom, body);
      return Term::exists(t.name(), dom, body);
    }
    case TermKind::App: {
      Term fn = f(t.fn(), 0);
      Term arg = f(t.arg(), 0);
      return Term::app(fn, arg);
    }
    case TermKind::Fix: {
      Term ty = f(t.full_type(), 0);
      Term body = f(t.body(), 1);
      return Term::fix(t.name(), t.index(), ty, body);
    }
    case TermKind::Match: {
      Term scrut = f(t.scrutinee(), 0);
      Term scrut_ty = f(t.scrutinee_type(), 0);
      Term ret = f(t.return_type(), 0);
      std::vector<MatchBranch> bs;
      for (const auto& b : t.branches()) bs.push_back({b.binders, f(b.body, b.arity())});
      return Term::match(scrut, scrut_ty, ret, std::move(bs));
    }
    case TermKind::Eq: {
      Term ty = f(t.eq_type(), 0);
      Term lhs = f(t.lhs(), 0);
      Term rhs = f(t.rhs(), 0);
      return Term::eq(ty, lhs, rhs);
    }
    case TermKind::And:
    case TermKind::Or: {
      Term lhs = f(t.lhs(), 0);
      Term rhs = f(t.rhs(), 0);
      return t.is(TermKind::And) ? Term::conj(lhs, rhs) : Term::disj(lhs, rhs);
    }
    case TermKind::Not:
      return Term::neg(f(t.operand(), 0));
    default:
      return t;
  }
}

// Calls f(subterm, depth) on t and every subterm, pre-order.
template <typename F>
void visit(const Term& t, std::size_t depth, F& f) {
  f(t, depth);
  map_children(t, [&](const Term& c, std::size_t binders) {
    visit(c, depth + binders, f);
    return c;
  });
}

Term beta_head(Term t) {
  for (;;) {
    auto [head, args] = decompose_app(t);
    if (!head.is(TermKind::Lam) || args.empty()) return t;
    t = Term::app(subst(head.body(), 0, args[0]), std::span(args).subspan(1));
  }
}

std::string strip_suffix(const std::string& name) {
  for (const char* suffix : {"_def", "_expanded", "_unfolded"}) {
    const std::string s(suffix);
    if (name.size() > s.size() && name.compare(name.size() - s.size(), s.size(), s) == 0) {
      return name.substr(0, name.size() - s.size());
    }
  }
  return name;
}

// Names of the leading binders of a definition body, looking through the
// lambdas of an anonymous fixpoint.
std::vector<std::string> lambda_names(Term t) {
  std::vector<std::string> out;
  for (;;) {
    if (t.is(TermKind::Lam)) {
      out.push_back(t.name());
      t = t.body();
    } else if (t.is(TermKind::Fix)) {
      t = t.body();
    } else {
      return out;
    }
  }
}

class NameSet {
 public:
  explicit NameSet(const ProofState& state) : state_(state) {}

  std::string fresh(const std::string& base) {
    std::string name = state_.fresh_name(base);
    for (std::size_t i = 0; used_.count(name); ++i) name = state_.fresh_name(base + std::to_string(i));
    used_.insert(name);
    return name;
  }

 private:
  const ProofState& state_;
  std::set<std::string> used_;
};

}  // namespace

// get_def -------------------------------------------------------------------

Hypothesis get_def(const ProofState& state, const std::string& constant) {
  const Definition* def = state.env.find_definition(constant);
  if (!def || def->opaque()) {
    throw TransformError(TransformError::Code::UnknownConstant, "no definition for " + constant);
  }
  Term statement = Term::eq(def->type, Term::constant(constant), *def->body);
  if (state.contains(statement)) {
    throw TransformError(TransformError::Code::AlreadyPresent, "definition of " + constant + " already present");
  }
  return {state.fresh_name(constant + "_def"), statement, Justification::by_definition(constant)};
}

// expand --------------------------------------------------------------------

std::pair<std::vector<Term>, Term> arrow_split(const Term& type) {
  std::vector<Term> domains;
  Term t = type;
  while (t.is(TermKind::Pi)) {
    domains.push_back(t.domain());
    t = t.body();
  }
  return {std::move(domains), t};
}

Term gen_eq(const std::vector<Term>& domains, const Term& codomain, const Term& t, const Term& u,
            const std::vector<std::string>& names) {
  const std::size_t n = domains.size();
  std::vector<Term> vars;
  for (std::size_t i = 0; i < n; ++i) vars.push_back(Term::var(n - 1 - i));
  Term body = Term::eq(codomain, Term::app(lift(t, n), vars), Term::app(lift(u, n), vars));
  std::vector<std::string> hints;
  for (std::size_t i = 0; i < n; ++i) {
    hints.push_back(i < names.size() && names[i] != "_" ? names[i] : "x" + std::to_string(i));
  }
  return close_prefix(hints, domains, std::move(body));
}

Hypothesis expand(const ProofState& state, const std::string& hyp) {
  const Hypothesis& h = lookup(state, hyp);
  if (!h.statement.is(TermKind::Eq)) {
    throw TransformError(TransformError::Code::NotAnEquation, hyp + " is not an equation");
  }
  const Term& eq = h.statement;
  auto [domains, codomain] = arrow_split(eq.eq_type());
  const std::string name = state.fresh_name(strip_suffix(hyp) + "_expanded");
  if (domains.empty()) return {name, h.statement, Justification::by_conversion(hyp)};

  std::vector<std::string> names;
  const auto from_rhs = lambda_names(eq.rhs());
  Term ty = eq.eq_type();
  for (std::size_t i = 0; i < domains.size(); ++i, ty = ty.body()) {
    std::string hint = ty.name();
    if (hint == "_" && i < from_rhs.size()) hint = from_rhs[i];
    names.push_back(hint);
  }
  Term statement = gen_eq(domains, codomain, eq.lhs(), eq.rhs(), names);
  Prefix p = strip_prefix(statement, domains.size());
  p.body = Term::eq(p.body.eq_type(), p.body.lhs(), beta_head(p.body.rhs()));
  return {name, close_prefix(p.names, p.domains, p.body), Justification::by_conversion(hyp)};
}

// eliminate_fix ---------------------------------------------------------------

Hypothesis eliminate_fix(const ProofState& state, const std::string& hyp) {
  const Hypothesis& h = lookup(state, hyp);
  Prefix p = strip_prefix(h.statement);
  if (!p.body.is(TermKind::Eq)) {
    throw TransformError(TransformError::Code::NotAnEquation, hyp + " is not an equation");
  }
  auto [fix, fix_args] = decompose_app(p.body.rhs());
  if (!fix.is(TermKind::Fix) || fix_args.empty()) {
    throw TransformError(TransformError::Code::NoFixpointFound, "right side of " + hyp + " is not an applied fixpoint");
  }
  auto [lhs_head, lhs_args] = decompose_app(p.body.lhs());
  const std::size_t k = fix_args.size();
  if (lhs_args.size() < k ||
      !std::equal(fix_args.begin(), fix_args.end(), lhs_args.end() - static_cast<std::ptrdiff_t>(k))) {
    throw TransformError(TransformError::Code::NoFixpointFound,
                         "arguments of the fixpoint in " + hyp + " do not match the left side");
  }
  const Term self = Term::app(lhs_head, std::span(lhs_args.data(), lhs_args.size() - k));
  const Term rhs = beta_head(Term::app(subst(fix.body(), 0, self), fix_args));
  const Term statement = close_prefix(p.names, p.domains, Term::eq(p.body.eq_type(), p.body.lhs(), rhs));

  const std::string name = state.fresh_name(strip_suffix(hyp) + "_unfolded");
  const std::size_t n = p.domains.size();
  if (fix.index() < k && fix_args[fix.index()].is(TermKind::Var) && fix_args[fix.index()].index() < n) {
    const std::size_t position = n - 1 - fix_args[fix.index()].index();
    return {name, statement, Justification::by_case_conversion(hyp, {position}, 1)};
  }
  return {name, statement, Justification::by_conversion(hyp)};
}

// Pattern matching ------------------------------------------------------------

Term reduce_constructor_matches(const GlobalEnv& env, const Term& t) {
  Term r = map_children(t, [&](const Term& c, std::size_t) { return reduce_constructor_matches(env, c); });
  if (!r.is(TermKind::Match)) return r;
  auto [head, args] = decompose_app(r.scrutinee());
  if (!head.is(TermKind::Ctor)) return r;
  const auto& decl = env.inductive(head.name());
  const auto& branch = r.branches().at(head.index());
  if (args.size() != decl.type_params.size() + branch.arity()) return r;
  std::span<const Term> fields(args.data() + decl.type_params.size(), branch.arity());
  return reduce_constructor_matches(env, instantiate(branch.body, fields));
}

std::optional<std::size_t> binder_constructor_count(const GlobalEnv& env, const Term& statement,
                                                    std::size_t position) {
  Prefix p = strip_prefix(statement, position + 1);
  if (p.domains.size() <= position) return std::nullopt;
  auto inst = as_inductive_instance(env, p.domains[position]);
  if (!inst) return std::nullopt;
  return env.inductive(inst->name).constructors.size();
}

std::optional<Term> instantiate_binder_with_constructor(const GlobalEnv& env, const Term& statement,
                                                        std::size_t position, std::size_t ctor,
                                                        const std::vector<std::string>& arg_names) {
  Prefix p = strip_prefix(statement, position);
  if (p.domains.size() != position || !p.body.is(TermKind::Pi)) return std::nullopt;
  const Term& binder = p.body;
  auto inst = as_inductive_instance(env, binder.domain());
  if (!inst) return std::nullopt;
  const auto arg_types = env.constructor_arg_types(inst->name, ctor, inst->params);
  const std::size_t n = arg_types.size();

  std::vector<Term> pattern_args;
  for (const Term& param : inst->params) pattern_args.push_back(lift(param, n));
  for (std::size_t j = 0; j < n; ++j) pattern_args.push_back(Term::var(n - 1 - j));
  const Term pattern = Term::app(Term::ctor(inst->name, ctor), pattern_args);

  Term body = subst(lift(binder.body(), n, 1), 0, pattern);
  body = reduce_constructor_matches(env, body);
  for (std::size_t j = n; j-- > 0;) {
    std::string hint = j < arg_names.size() && arg_names[j] != "_" ? arg_names[j] : "a" + std::to_string(j);
    body = Term::pi(hint, arg_types[j], std::move(body));
  }
  return close_prefix(p.names, p.domains, std::move(body));
}

std::vector<Hypothesis> eliminate_pattern_matching(const ProofState& state, const std::string& hyp) {
  const Hypothesis& h = lookup(state, hyp);
  Prefix p = strip_prefix(h.statement);
  const std::size_t n = p.domains.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t index = n - 1 - i;
    std::optional<Term> found;
    auto probe = [&](const Term& t, std::size_t depth) {
      if (!found && t.is(TermKind::Match) && t.scrutinee().is(TermKind::Var) &&
          t.scrutinee().index() == index + depth) {
        found = t;
      }
    };
    visit(p.body, 0, probe);
    if (!found) continue;

    auto inst = as_inductive_instance(state.env, p.domains[i]);
    if (!inst) {
      throw TransformError(TransformError::Code::NotAlgebraic,
                           "matched variable " + p.names[i] + " is not of an algebraic type");
    }
    const auto& decl = state.env.inductive(inst->name);
    NameSet names(state);
    std::vector<Hypothesis> out;
    const std::string base = strip_suffix(hyp);
    for (std::size_t k = 0; k < decl.constructors.size(); ++k) {
      std::vector<std::string> hints = found->branches()[k].binders;
      for (std::size_t j = 0; j < hints.size(); ++j) {
        if (hints[j] != "_") continue;
        auto arg = as_inductive_instance(state.env, decl.constructors[k].arg_types[j]);
        hints[j] = arg && arg->name == inst->name ? p.names[i] : "a" + std::to_string(j);
      }
      auto statement = instantiate_binder_with_constructor(state.env, h.statement, i, k, hints);
      out.push_back({names.fresh(base + "_" + decl.constructors[k].name), *statement,
                     Justification::by_conversion(hyp)});
    }
    return out;
  }
  throw TransformError(TransformError::Code::NoMatchOnBoundVar, "no match on a bound variable in " + hyp);
}

// Monomorphization ------------------------------------------------------------

std::vector<Term> collect_type_instances(const GlobalEnv& env, const Term& t) {
  std::vector<Term> out;
  auto consider = [&](const Term& s) {
    if (!s.closed()) return;
    const Term head = head_of(s);
    if (!(head.is(TermKind::Ind) || head.is(TermKind::IntType) || head.is(TermKind::Const))) return;
    if (std::find(out.begin(), out.end(), s) != out.end()) return;
    try {
      const Term ty = whnf(env, typecheck(env, {}, s));
      if (ty.is(TermKind::Sort) && ty.universe() == Universe::Type) out.push_back(s);
    } catch (const Error&) {
    }
  };
  struct Walker {
    decltype(consider)& f;
    void operator()(const Term& s) {
      map_children(s, [&](const Term& c, std::size_t) {
        (*this)(c);
        return c;
      });
      f(s);
    }
  } walk{consider};
  walk(t);
  return out;
}

std::string type_suffix(const GlobalEnv& env, const Term& type) {
  const std::string printed = print_term(type, env);
  std::string out;
  for (char c : printed) {
    const bool ident = std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    if (ident) {
      out += c;
    } else if (!out.empty() && out.back() != '_') {
      out += '_';
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

std::vector<Hypothesis> monomorphize(const ProofState& state, const MonomorphizeOptions& options) {
  std::vector<Term> instances = collect_type_instances(state.env, state.goal);
  if (options.from_context) {
    for (const auto& h : state.hypotheses) {
      for (Term& t : collect_type_instances(state.env, h.statement)) {
        if (std::find(instances.begin(), instances.end(), t) == instances.end()) instances.push_back(t);
      }
    }
  }

  std::vector<Hypothesis> out;
  NameSet names(state);
  auto seen = [&](const Term& s) {
    return state.contains(s) ||
           std::any_of(out.begin(), out.end(), [&](const Hypothesis& h) { return h.statement == s; });
  };
  auto process = [&](const Hypothesis& src, bool is_lemma) {
    std::size_t k = 0;
    Term body = src.statement;
    while (body.is(TermKind::Pi) && body.domain().is(TermKind::Sort) &&
           body.domain().universe() == Universe::Type) {
      ++k;
      body = body.body();
    }
    if (k == 0) {
      if (is_lemma && !seen(src.statement)) {
        out.push_back({names.fresh(src.name + "_inst"), src.statement, Justification::by_instantiation(src.name, {})});
      }
      return;
    }
    if (instances.empty()) return;
    std::vector<std::size_t> choice(k, 0);
    for (;;) {
      std::vector<Term> args;
      std::string suffix;
      for (std::size_t c : choice) {
        args.push_back(instances[c]);
        suffix += "_" + type_suffix(state.env, instances[c]);
      }
      Term statement = instantiate(body, args);
      if (!seen(statement)) {
        out.push_back({names.fresh(src.name + suffix), statement, Justification::by_instantiation(src.name, args)});
      }
      std::size_t pos = k;
      while (pos > 0 && ++choice[pos - 1] == instances.size()) choice[--pos] = 0;
      if (pos == 0) break;
    }
  };
  for (const auto& h : state.hypotheses) process(h, false);
  for (const auto& h : state.lemmas) process(h, true);
  return out;
}

// Algebraic datatypes ---------------------------------------------------------

std::vector<Hypothesis> datatype_axioms(const GlobalEnv& env, const std::string& inductive,
                                        const std::vector<Term>& params, bool include_exhaustiveness) {
  const auto& decl = env.inductive(inductive);
  std::string suffix;
  for (const Term& p : params) suffix += "_" + type_suffix(env, p);
  auto instance = [&](std::size_t shift) {
    std::vector<Term> ps;
    for (const Term& p : params) ps.push_back(lift(p, shift));
    return Term::app(Term::ind(inductive), ps);
  };
  auto ctor_app = [&](std::size_t k, std::size_t shift, const std::vector<Term>& fields) {
    std::vector<Term> args;
    for (const Term& p : params) args.push_back(lift(p, shift));
    args.insert(args.end(), fields.begin(), fields.end());
    return Term::app(Term::ctor(inductive, k), args);
  };

  std::vector<Hypothesis> out;
  const auto& ctors = decl.constructors;
  for (std::size_t k = 0; k < ctors.size(); ++k) {
    const auto types = env.constructor_arg_types(inductive, k, params);
    const std::size_t n = types.size();
    if (n == 0) continue;
    std::vector<Term> xs, ys;
    Term conclusion = Term::truth();
    for (std::size_t j = n; j-- > 0;) {
      xs.insert(xs.begin(), Term::var(2 * n - 1 - 2 * j));
      ys.insert(ys.begin(), Term::var(2 * n - 2 - 2 * j));
      Term eq = Term::eq(lift(types[j], 2 * n - j), Term::var(2 * n - 1 - 2 * j), Term::var(2 * n - 2 - 2 * j));
      conclusion = j == n - 1 ? eq : Term::conj(eq, conclusion);
    }
    Term body = Term::arrow(Term::eq(instance(2 * n), ctor_app(k, 2 * n, xs), ctor_app(k, 2 * n, ys)), conclusion);
    for (std::size_t j = n; j-- > 0;) {
      body = Term::pi("y" + std::to_string(j + 1), lift(types[j], j + 1), std::move(body));
      body = Term::pi("x" + std::to_string(j + 1), lift(types[j], j), std::move(body));
    }
    out.push_back({ctors[k].name + "_inj" + suffix, body, Justification::injectivity(inductive, params, k)});
  }
  for (std::size_t a = 0; a < ctors.size(); ++a) {
    for (std::size_t b = a + 1; b < ctors.size(); ++b) {
      const auto ta = env.constructor_arg_types(inductive, a, params);
      const auto tb = env.constructor_arg_types(inductive, b, params);
      const std::size_t n = ta.size(), m = tb.size();
      std::vector<Term> xs, ys;
      for (std::size_t j = 0; j < n; ++j) xs.push_back(Term::var(n + m - 1 - j));
      for (std::size_t j = 0; j < m; ++j) ys.push_back(Term::var(m - 1 - j));
      Term body = Term::neg(Term::eq(instance(n + m), ctor_app(a, n + m, xs), ctor_app(b, n + m, ys)));
      for (std::size_t j = m; j-- > 0;) body = Term::pi("y" + std::to_string(j + 1), lift(tb[j], n), std::move(body));
      for (std::size_t j = n; j-- > 0;) body = Term::pi("x" + std::to_string(j + 1), ta[j], std::move(body));
      out.push_back({ctors[a].name + "_" + ctors[b].name + "_disc" + suffix, body,
                     Justification::disjointness(inductive, params, a, b)});
    }
  }
  if (include_exhaustiveness && !ctors.empty()) {
    std::optional<Term> disjunction;
    for (std::size_t k = ctors.size(); k-- > 0;) {
      const auto types = env.constructor_arg_types(inductive, k, params);
      const std::size_t n = types.size();
      std::vector<Term> ys;
      for (std::size_t j = 0; j < n; ++j) ys.push_back(Term::var(n - 1 - j));
      Term alt = Term::eq(instance(1 + n), Term::var(n), ctor_app(k, 1 + n, ys));
      for (std::size_t j = n; j-- > 0;) alt = Term::exists("y" + std::to_string(j + 1), lift(types[j], 1), std::move(alt));
      disjunction = disjunction ? Term::disj(alt, *disjunction) : alt;
    }
    out.push_back({decl.name + "_exh" + suffix, Term::pi("x", instance(0), *disjunction),
                   Justification::exhaustiveness(inductive, params)});
  }
  return out;
}

std::vector<Hypothesis> interp_alg_types(const ProofState& state, bool include_exhaustiveness) {
  std::vector<Term> instances = collect_type_instances(state.env, state.goal);
  for (const auto& h : state.hypotheses) {
    for (Term& t : collect_type_instances(state.env, h.statement)) {
      if (std::find(instances.begin(), instances.end(), t) == instances.end()) instances.push_back(t);
    }
  }
  std::vector<Hypothesis> out;
  NameSet names(state);
  for (const Term& ty : instances) {
    auto inst = as_inductive_instance(state.env, ty);
    if (!inst || inst->name == kBoolName) continue;
    for (Hypothesis& h : datatype_axioms(state.env, inst->name, inst->params, include_exhaustiveness)) {
      if (state.contains(h.statement)) continue;
      if (std::any_of(out.begin(), out.end(), [&](const Hypothesis& o) { return o.statement == h.statement; })) {
        continue;
      }
      h.name = names.fresh(h.name);
      out.push_back(std::move(h));
    }
  }
  return out;
}

}  // namespace folbridge
