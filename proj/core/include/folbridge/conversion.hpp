#pragma once

#include <cstddef>

#include "folbridge/context.hpp"
#include "folbridge/env.hpp"
#include "folbridge/term.hpp"

namespace folbridge {

struct Fuel {
  std::size_t max_reduction_steps = 100000;
};

/// Type of t in the given context.
Term typecheck(const GlobalEnv& env, const Context& ctx, const Term& t, Fuel fuel = {});

/// Weak head normal form under beta, delta, iota and guarded fix unfolding.
Term whnf(const GlobalEnv& env, const Term& t, Fuel fuel = {});

/// Full normal form, leftmost-outermost. Fixpoints only unfold when their
/// decreasing argument reduces to a constructor application.
Term normalize(const GlobalEnv& env, const Context& ctx, const Term& t, Fuel fuel = {});
Term normalize(const GlobalEnv& env, const Term& t, Fuel fuel = {});

bool convertible(const GlobalEnv& env, const Context& ctx, const Term& a, const Term& b,
                 Fuel fuel = {});

/// Universe of a type, i.e. s such that `ty : s`.
Universe universe_of(const GlobalEnv& env, const Context& ctx, const Term& ty, Fuel fuel = {});

/// If t reduces to `C params args` for a constructor C, returns that form.
bool is_constructor_app(const Term& t);

/// Inductive instance `I p1 .. pn` split into name and parameters.
struct InductiveInstance {
  std::string name;
  std::vector<Term> params;
};
std::optional<InductiveInstance> as_inductive_instance(const GlobalEnv& env, const Term& ty,
                                                       Fuel fuel = {});

/// Builtin constructor terms for the bool inductive.
Term bool_term(bool value);
std::optional<bool> as_bool(const Term& t);

}  // namespace folbridge
