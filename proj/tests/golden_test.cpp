#include <gtest/gtest.h>

#include "support/golden.hpp"
#include "support/oracles.hpp"

namespace folbridge {
namespace {

TEST(Golden, DatatypeAxiomSets) {
  for (const auto& c : testing::axiom_cases()) {
    for (bool exh : {false, true}) {
      const std::string name = c.golden + (exh ? "_exh" : "") + ".txt";
      const std::string actual = testing::render_axioms(c.type, exh);
      EXPECT_TRUE(testing::matches_golden(name, actual)) << name << ":\n" << actual;
    }
  }
}

TEST(Golden, ScopeTraces) {
  for (const char* file : {"hd_error", "length", "search_lemma"}) {
    const std::string actual = testing::scope_trace(std::string(file) + ".fol");
    const std::string name = std::string("scope_") + file + ".trace";
    EXPECT_TRUE(testing::matches_golden(name, actual, true)) << name << ":\n" << actual;
  }
}

}  // namespace
}  // namespace folbridge
