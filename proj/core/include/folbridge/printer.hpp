#pragma once

#include <string>
#include <vector>

#include "folbridge/env.hpp"
#include "folbridge/term.hpp"

namespace folbridge {

/// Concrete syntax accepted back by the parser. `context_names` names the
/// loose variables (last entry is Var 0). Binder names are freshened when
/// they would shadow a referenced name or a global.
std::string print_term(const Term& t, const GlobalEnv& env,
                       const std::vector<std::string>& context_names = {});

/// Re-renders a whole problem as a problem file.
std::string print_problem(const Problem& problem);

/// Declaration line for an inductive, e.g. `data list (A : Type) = nil | cons (A) (list A).`
std::string print_inductive(const InductiveDecl& decl, const GlobalEnv& env);

}  // namespace folbridge
