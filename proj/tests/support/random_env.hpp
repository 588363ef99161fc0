#pragma once

#include <string>

#include "support/oracles.hpp"

namespace folbridge::testing {

/// Problem text: the prelude datatypes plus one to three random definitions
/// (structural recursion over nat, list and tree, polymorphic list and option
/// functions, nested matches) with random branch bodies, a reflexive lemma
/// over each polymorphic definition and a goal mentioning every new one.
std::string random_definitional_problem(Rng& rng);

}  // namespace folbridge::testing
