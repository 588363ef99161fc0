#include <gtest/gtest.h>

#include "folbridge/eval.hpp"
#include "folbridge/parser.hpp"
#include "folbridge/semantics.hpp"
#include "support/generators.hpp"

namespace folbridge {
namespace {

class SemanticsTest : public ::testing::Test {
 protected:
  Problem prelude = testing::prelude_problem();

  TruthReport check(const std::string& text, TruthOptions options = {}) {
    return check_truth(prelude.env, parse_term(text, prelude.env), options);
  }
};

TEST_F(SemanticsTest, TrueStatementsHold) {
  for (const char* text : {
           "forall (x : Int), x + 0 = x",
           "forall (A : Type) (l1 l2 : list A), length A (app A l1 l2) = plus (length A l1) (length A l2)",
           "forall (A : Type) (x : A) (l1 l2 : list A), search A x (app A l1 l2) = search A x l1 || search A x l2",
           "forall (t : tree), 0 < size t",
           "forall (A : Type) (l : list A) (a : A), hd_error A l = some A a -> l <> nil A",
           "forall (n : nat), n = O \\/ exists (m : nat), n = S m",
           "forall (b : bool), negb (negb b) = b",
       }) {
    SCOPED_TRACE(text);
    TruthReport r = check(text);
    EXPECT_TRUE(r.holds) << r.counterexample;
    EXPECT_EQ(r.samples, 50u);
  }
}

TEST_F(SemanticsTest, FalseStatementsAreRefuted) {
  for (const char* text : {
           "forall (x : Int), x + 1 = x",
           "forall (A : Type) (l : list A), app A l l = l",
           "forall (n : nat), exists (m : nat), n = S m",
           "forall (x y : Int), x <= y",
       }) {
    SCOPED_TRACE(text);
    TruthReport r = check(text);
    EXPECT_FALSE(r.holds);
    EXPECT_FALSE(r.counterexample.empty());
  }
}

TEST_F(SemanticsTest, ExistentialWitnessFoundByMatching) {
  // The witness is determined by the left side; sampling alone rarely hits it.
  TruthReport r = check("forall (l : list Int), exists (k : list Int), k = app Int l l");
  EXPECT_TRUE(r.holds) << r.counterexample;
}

TEST_F(SemanticsTest, FunctionEqualityIsExtensional) {
  EXPECT_TRUE(check("(fun (x : Int) => x + 0) = (fun (x : Int) => x)").holds);
  EXPECT_FALSE(check("(fun (x : Int) => x + 1) = (fun (x : Int) => x)").holds);
}

TEST_F(SemanticsTest, Deterministic) {
  TruthOptions o;
  o.seed = 42;
  TruthReport a = check("forall (x : Int) (l : list Int), search Int x l = true", o);
  TruthReport b = check("forall (x : Int) (l : list Int), search Int x l = true", o);
  EXPECT_FALSE(a.holds);
  EXPECT_EQ(a.counterexample, b.counterexample);
}

TEST_F(SemanticsTest, ParametersAreInterpreted) {
  Problem p = parse_problem(testing::read_file(testing::corpus_path("search_app_cons.fol")));
  std::mt19937_64 rng(3);
  GlobalEnv model = interpret_parameters(p.env, 6, rng);
  EXPECT_EQ(*model.definition("A").body, Term::int_type());
  for (const char* name : {"x", "x0", "l0", "l2"}) {
    ASSERT_TRUE(model.definition(name).body.has_value()) << name;
    EXPECT_TRUE(model.definition(name).body->closed());
  }
  // The goal is a consequence of the hypothesis in every model.
  Term stmt = Term::arrow(p.hypotheses[0].statement, p.goal);
  EXPECT_TRUE(check_truth(p.env, stmt).holds);
  // A parameter-dependent falsehood is caught.
  EXPECT_FALSE(check_truth(p.env, parse_term("l0 = cons A x l2", p.env)).holds);
}

}  // namespace
}  // namespace folbridge
