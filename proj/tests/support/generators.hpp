#pragma once

#include <string>

#include "folbridge/context.hpp"
#include "folbridge/env.hpp"
#include "support/oracles.hpp"

namespace folbridge::testing {

/// nat, list, option, pair and tree with a few recursive and non-recursive
/// functions over them.
extern const char* const kPrelude;

Problem prelude_problem();

/// Random well-typed term of `type` in `ctx`. Uses variables, constructors,
/// builtins, definitions (type parameters instantiated at Int), matches,
/// lambdas and beta redexes. `size` bounds the node budget loosely.
Term random_typed_term(const GlobalEnv& env, Context& ctx, const Term& type, std::size_t size, Rng& rng);

/// A random closed object type built from Int, bool and the env's inductives.
Term random_object_type(const GlobalEnv& env, Rng& rng, std::size_t depth = 2);

}  // namespace folbridge::testing
