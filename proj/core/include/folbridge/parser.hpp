#pragma once

#include <string_view>

#include "folbridge/context.hpp"
#include "folbridge/env.hpp"
#include "folbridge/term.hpp"

namespace folbridge {

/// Parses and typechecks a whole problem file. The builtin `bool` inductive
/// is always present.
Problem parse_problem(std::string_view text);

/// Parses a single expression against an existing environment. Loose names
/// resolve to `ctx` entries first.
Term parse_term(std::string_view text, const GlobalEnv& env, const Context& ctx = {});

}  // namespace folbridge
