#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "folbridge/conversion.hpp"
#include "folbridge/transforms.hpp"

namespace folbridge {

struct Verdict {
  bool valid = false;
  std::string reason;  // failing case on Invalid, how it closed on Valid

  static Verdict ok(std::string how) { return {true, std::move(how)}; }
  static Verdict fail(std::string why) { return {false, std::move(why)}; }
};

struct CertifyOptions {
  /// Case-split budget for ByCaseConversion; the larger of this and the
  /// justification's own depth is used.
  std::size_t split_depth = 2;
  Fuel fuel;
  /// Random instantiations for the truth check of datatype axioms.
  std::size_t axiom_samples = 100;
  std::uint64_t seed = 0;
};

/// Checks that `statement` follows from `j`. `context` holds the hypotheses
/// and lemmas a justification may cite. Never throws.
Verdict check_justification(const GlobalEnv& env, const Term& statement, const Justification& j,
                            const std::vector<Hypothesis>& context, const CertifyOptions& options = {});

/// check_justification against the state's hypotheses and lemmas.
Verdict check_hypothesis(const ProofState& state, const Hypothesis& h, const CertifyOptions& options = {});

struct AuditEntry {
  std::string name;
  std::string statement;
  std::string justification;
  Verdict verdict;
};

std::vector<AuditEntry> audit(const ProofState& state, const CertifyOptions& options = {});

}  // namespace folbridge
