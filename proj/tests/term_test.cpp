#include <gtest/gtest.h>

#include "folbridge/term.hpp"
#include "support/oracles.hpp"

namespace folbridge {
namespace {

using testing::Rng;

TEST(Lift, ShiftsLooseVariablesAtOrAboveCutoff) {
  EXPECT_EQ(lift(Term::var(0), 1, 0), Term::var(1));
  EXPECT_EQ(lift(Term::var(0), 1, 1), Term::var(0));
  EXPECT_EQ(lift(Term::lam("_", Term::int_type(), Term::var(1)), 2, 0),
            Term::lam("_", Term::int_type(), Term::var(3)));
}

TEST(Subst, ReplacesAndShifts) {
  const Term c = Term::constant("c");
  EXPECT_EQ(subst(Term::var(0), 0, c), c);
  EXPECT_EQ(subst(Term::var(1), 0, c), Term::var(0));
  const Term body = Term::lam("_", Term::int_type(), Term::app(Term::var(1), Term::var(0)));
  EXPECT_EQ(subst(body, 0, c), Term::lam("_", Term::int_type(), Term::app(c, Term::var(0))));
}

TEST(Subst, LiftsReplacementUnderBinders) {
  // (fun y => x) [x := z] where z is the next outer variable.
  const Term t = Term::lam("y", Term::int_type(), Term::var(1));
  EXPECT_EQ(subst(t, 0, Term::var(0)), Term::lam("y", Term::int_type(), Term::var(1)));
}

TEST(AlphaEquality, IgnoresBinderNames) {
  EXPECT_EQ(Term::lam("x", Term::int_type(), Term::var(0)), Term::lam("y", Term::int_type(), Term::var(0)));
  EXPECT_NE(Term::lam("x", Term::int_type(), Term::var(0)), Term::lam("x", Term::int_type(), Term::var(1)));
  EXPECT_EQ(term_hash(Term::lam("x", Term::int_type(), Term::var(0))),
            term_hash(Term::lam("y", Term::int_type(), Term::var(0))));
}

TEST(Instantiate, MatchesIteratedSubst) {
  Rng rng(7);
  for (int i = 0; i < 300; ++i) {
    const Term t = testing::random_raw_term(rng, 3, 12);
    const Term a = testing::random_raw_term(rng, 1, 4);
    const Term b = testing::random_raw_term(rng, 1, 4);
    const Term args[] = {a, b};
    // Var 1 := a, Var 0 := b, both in the outer context.
    const Term expected = subst(subst(t, 0, lift(b, 1)), 0, a);
    EXPECT_EQ(instantiate(t, args), expected);
  }
}

TEST(LiftProperty, AgreesWithNamedOracle) {
  Rng rng(1);
  for (int i = 0; i < 2000; ++i) {
    const std::size_t scope = rng() % 4;
    const Term t = testing::random_raw_term(rng, scope, 1 + rng() % 20);
    const std::size_t amount = rng() % 3;
    const std::size_t cutoff = rng() % 4;
    ASSERT_EQ(lift(t, amount, cutoff), testing::named_lift(t, amount, cutoff)) << "iteration " << i;
  }
}

TEST(SubstProperty, AgreesWithNamedOracle) {
  Rng rng(2);
  for (int i = 0; i < 2000; ++i) {
    const std::size_t scope = 1 + rng() % 4;
    const Term t = testing::random_raw_term(rng, scope, 1 + rng() % 20);
    const Term u = testing::random_raw_term(rng, rng() % 3, 1 + rng() % 6);
    const std::size_t index = rng() % scope;
    ASSERT_EQ(subst(t, index, u), testing::named_subst(t, index, u)) << "iteration " << i;
  }
}

TEST(LiftProperty, IdentityAndInverse) {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t scope = rng() % 4;
    const Term t = testing::random_raw_term(rng, scope, 1 + rng() % 20);
    const Term u = testing::random_raw_term(rng, 2, 5);
    const std::size_t c = rng() % 4;
    EXPECT_EQ(lift(t, 0, c), t);
    EXPECT_EQ(subst(lift(t, 1, c), c, u), t);
  }
}

TEST(WellScoped, PreservedByLiftAndSubst) {
  Rng rng(4);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t scope = 1 + rng() % 4;
    const Term t = testing::random_raw_term(rng, scope, 1 + rng() % 20);
    ASSERT_TRUE(well_scoped(t, scope));
    EXPECT_TRUE(well_scoped(lift(t, 2, rng() % 3), scope + 2));
    const Term u = testing::random_raw_term(rng, scope - 1, 4);
    EXPECT_TRUE(well_scoped(subst(t, 0, u), scope - 1));
  }
}

TEST(Decompose, SplitsApplicationSpine) {
  const Term f = Term::constant("f");
  const Term args[] = {Term::int_lit(1), Term::int_lit(2)};
  auto [head, got] = decompose_app(Term::app(f, args));
  EXPECT_EQ(head, f);
  ASSERT_EQ(got.size(), 2u);
  EXPECT_EQ(got[1], Term::int_lit(2));
}

}  // namespace
}  // namespace folbridge
