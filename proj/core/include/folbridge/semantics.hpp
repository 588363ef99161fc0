#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "folbridge/env.hpp"
#include "folbridge/term.hpp"

namespace folbridge {

struct TruthOptions {
  std::size_t samples = 50;
  std::size_t max_size = 6;
  /// Samples drawn for quantifiers below the top-level prefix.
  std::size_t nested_samples = 12;
  std::uint64_t seed = 0;
};

struct TruthReport {
  bool holds = true;
  std::size_t samples = 0;
  std::string counterexample;  // instantiated statement that evaluated to false
};

/// Randomized semantic check of a closed proposition in the evaluator model.
/// Type variables range over Int and bool; opaque `Type` parameters are read
/// as Int and opaque object parameters are resampled per round. Universal
/// quantifiers are sampled, existentials searched by matching plus sampling.
TruthReport check_truth(const GlobalEnv& env, const Term& statement, const TruthOptions& options = {});

/// Copy of the environment where every opaque parameter has a body: `Type`
/// parameters become Int, others a random inhabitant.
GlobalEnv interpret_parameters(const GlobalEnv& env, std::size_t max_size, std::mt19937_64& rng);

}  // namespace folbridge
