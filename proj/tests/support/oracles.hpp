#pragma once

#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "folbridge/env.hpp"
#include "folbridge/term.hpp"

namespace folbridge::testing {

using Rng = std::mt19937_64;

/// lift and subst recomputed through a named representation: every binder
/// gets a globally unique name, so substitution is plain replacement.
Term named_lift(const Term& t, std::size_t amount, std::size_t cutoff);
Term named_subst(const Term& t, std::size_t index, const Term& replacement);

/// Random untyped term whose loose variables are all below `scope`.
Term random_raw_term(Rng& rng, std::size_t scope, std::size_t size);

std::string read_file(const std::string& path);
std::string corpus_path(const std::string& name);
std::string golden_path(const std::string& name);
/// Every `.fol` file of the corpus, sorted by name.
std::vector<std::string> corpus_files();

}  // namespace folbridge::testing

namespace folbridge {

/// Readable gtest failure output; names resolve against an empty environment.
void PrintTo(const Term& t, std::ostream* os);

}  // namespace folbridge
