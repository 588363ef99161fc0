#include <gtest/gtest.h>

#include "folbridge/conversion.hpp"
#include "folbridge/error.hpp"
#include "folbridge/parser.hpp"
#include "folbridge/printer.hpp"
#include "support/oracles.hpp"

namespace folbridge {
namespace {

void expect_same_problem(const Problem& a, const Problem& b) {
  ASSERT_EQ(a.hypotheses.size(), b.hypotheses.size());
  for (std::size_t i = 0; i < a.hypotheses.size(); ++i) {
    EXPECT_EQ(a.hypotheses[i].name, b.hypotheses[i].name);
    EXPECT_EQ(a.hypotheses[i].statement, b.hypotheses[i].statement) << a.hypotheses[i].name;
  }
  EXPECT_EQ(a.goal, b.goal);
  EXPECT_EQ(a.lemma_params, b.lemma_params);
  ASSERT_EQ(a.env.definitions().size(), b.env.definitions().size());
  for (std::size_t i = 0; i < a.env.definitions().size(); ++i) {
    const auto& da = a.env.definitions()[i];
    const auto& db = b.env.definitions()[i];
    EXPECT_EQ(da.name, db.name);
    EXPECT_EQ(da.type, db.type);
    ASSERT_EQ(da.body.has_value(), db.body.has_value());
    if (da.body) EXPECT_EQ(*da.body, *db.body) << da.name;
  }
  ASSERT_EQ(a.env.inductives().size(), b.env.inductives().size());
  for (std::size_t i = 0; i < a.env.inductives().size(); ++i) {
    const auto& ia = a.env.inductives()[i];
    const auto& ib = b.env.inductives()[i];
    EXPECT_EQ(ia.name, ib.name);
    EXPECT_EQ(ia.type_params, ib.type_params);
    ASSERT_EQ(ia.constructors.size(), ib.constructors.size());
    for (std::size_t k = 0; k < ia.constructors.size(); ++k) {
      EXPECT_EQ(ia.constructors[k].name, ib.constructors[k].name);
      EXPECT_EQ(ia.constructors[k].arg_types, ib.constructors[k].arg_types);
    }
  }
}

TEST(Parser, HdErrorGoal) {
  Problem p = parse_problem(testing::read_file(testing::corpus_path("hd_error.fol")));
  ASSERT_NE(p.env.find_inductive("list"), nullptr);
  ASSERT_NE(p.env.find_inductive("option"), nullptr);
  ASSERT_NE(p.env.find_definition("hd_error"), nullptr);
  // forall A l a, hd_error A l = some A a -> ~ (l = nil A)
  const Term A = Term::var(2), l = Term::var(1), a = Term::var(0);
  const Term list_A = Term::app(Term::ind("list"), Term::var(0));
  const Term hd = Term::app(Term::app(Term::constant("hd_error"), A), l);
  const Term some_a = Term::app(Term::app(Term::ctor("option", 1), A), a);
  const Term option_A = Term::app(Term::ind("option"), A);
  const Term nil_A = Term::app(Term::ctor("list", 0), A);
  // Term::arrow lifts its codomain itself.
  const Term concl = Term::neg(Term::eq(Term::app(Term::ind("list"), A), l, nil_A));
  const Term body = Term::arrow(Term::eq(option_A, hd, some_a), concl);
  const Term expected =
      Term::pi("A", Term::type(),
               Term::pi("l", list_A, Term::pi("a", Term::var(1), body)));
  EXPECT_EQ(p.goal, expected) << print_term(p.goal, p.env);
}

TEST(Parser, HdErrorTypeMatchesCurriedSignature) {
  Problem p = parse_problem(testing::read_file(testing::corpus_path("hd_error.fol")));
  const Term ty = typecheck(p.env, {}, Term::constant("hd_error"));
  EXPECT_EQ(print_term(ty, p.env), "forall (A : Type), list A -> option A");
}

TEST(Parser, TrivialGoalOnEmptyEnvironment) {
  Problem p = parse_problem("goal true = true");
  EXPECT_EQ(p.goal, Term::eq(Term::ind("bool"), Term::ctor("bool", 0), Term::ctor("bool", 0)));
  EXPECT_EQ(print_term(p.goal, p.env), "true = true");
}

TEST(Parser, NatGoalRoundTrips) {
  Problem p = parse_problem("data nat = O | S (nat).\ngoal forall (n : nat), S n = S n.");
  EXPECT_NO_THROW(typecheck(p.env, {}, p.goal));
  Problem q = parse_problem(print_problem(p));
  expect_same_problem(p, q);
}

TEST(Parser, EveryCorpusFileRoundTrips) {
  for (const auto& path : testing::corpus_files()) {
    SCOPED_TRACE(path);
    Problem p = parse_problem(testing::read_file(path));
    const std::string text = print_problem(p);
    Problem q = parse_problem(text);
    expect_same_problem(p, q);
    EXPECT_EQ(print_problem(q), text);
  }
}

TEST(Parser, MatchBranchesInAnyOrder) {
  Problem a = parse_problem(
      "data list (A : Type) = nil | cons (A) (list A).\n"
      "def f (l : list Int) : Int = match l with | cons x _ => x | nil => 0 end.\ngoal true_p.");
  Problem b = parse_problem(
      "data list (A : Type) = nil | cons (A) (list A).\n"
      "def f (l : list Int) : Int = match l return Int with | nil => 0 | cons x _ => x end.\ngoal true_p.");
  EXPECT_EQ(*a.env.definition("f").body, *b.env.definition("f").body);
}

TEST(Parser, Precedence) {
  Problem p = parse_problem("goal forall (x y : Int), x + y * 2 <= x - y - 1 /\\ true_p \\/ ~ false_p -> true_p.");
  EXPECT_EQ(print_term(p.goal, p.env),
            "forall (x : Int) (y : Int), x + y * 2 <= x - y - 1 /\\ true_p \\/ ~ false_p -> true_p");
}

TEST(Parser, NegativeLiteralsAndComments) {
  Problem p = parse_problem("(* a (* nested *) comment *) goal (-3) + 3 = 0.");
  EXPECT_EQ(print_term(p.goal, p.env), "(-3) + 3 = 0");
}

TEST(ParserErrors, ReportLocation) {
  try {
    parse_problem("goal true =\n  = true");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.location().line, 2u);
    EXPECT_EQ(e.location().column, 3u);
  }
}

TEST(ParserErrors, UnknownIdentifier) { EXPECT_THROW(parse_problem("goal foo = foo"), ScopeError); }

TEST(ParserErrors, MissingBranch) {
  EXPECT_THROW(parse_problem("data t = a | b.\ndef f (x : t) : Int = match x with | a => 0 end.\ngoal true_p."),
               ArityError);
}

TEST(ParserErrors, DuplicateBranch) {
  EXPECT_THROW(parse_problem("data t = a | b.\ndef f (x : t) : Int = match x with | a => 0 | a => 1 | b => 2 end.\n"
                             "goal true_p."),
               ArityError);
}

TEST(ParserErrors, PatternArity) {
  EXPECT_THROW(parse_problem("data t = a (Int).\ndef f (x : t) : Int = match x with | a => 0 end.\ngoal true_p."),
               ArityError);
}

TEST(ParserErrors, IllTyped) {
  EXPECT_THROW(parse_problem("goal true = 1"), TypeError);
  EXPECT_THROW(parse_problem("def f : Int = true.\ngoal true_p."), TypeError);
  EXPECT_THROW(parse_problem("goal 1 + 2"), TypeError);
}

TEST(ParserErrors, HigherOrderConstructorArgument) {
  EXPECT_THROW(parse_problem("data bad = mk (Int -> Int).\ngoal true_p."), TypeError);
}

TEST(ParserErrors, DuplicateDeclaration) {
  EXPECT_THROW(parse_problem("data t = a.\ndata t = b.\ngoal true_p."), ScopeError);
  EXPECT_THROW(parse_problem("hyp h : true_p.\nhyp h : true_p.\ngoal true_p."), ScopeError);
}

TEST(ParserErrors, MissingGoal) { EXPECT_THROW(parse_problem("data t = a."), ParseError); }

TEST(Parser, LemmaParamsAreRecorded) {
  Problem p = parse_problem(testing::read_file(testing::corpus_path("search_lemma.fol")));
  ASSERT_EQ(p.lemma_params.size(), 1u);
  EXPECT_EQ(p.lemma_params[0], "search_app");
  EXPECT_TRUE(p.is_lemma("search_app"));
}

}  // namespace
}  // namespace folbridge
