#include <gtest/gtest.h>

#include "folbridge/certify.hpp"
#include "folbridge/error.hpp"
#include "folbridge/parser.hpp"
#include "folbridge/printer.hpp"
#include "folbridge/semantics.hpp"
#include "support/generators.hpp"

namespace folbridge {
namespace {

class CertifyTest : public ::testing::Test {
 protected:
  ProofState s = ProofState::from_problem(testing::prelude_problem());

  Term parse(const std::string& text) { return parse_term(text, s.env); }

  Hypothesis add(Hypothesis h) {
    s.add(h);
    return h;
  }

  Verdict check(const Term& statement, const Justification& j, CertifyOptions o = {}) {
    std::vector<Hypothesis> ctx = s.hypotheses;
    ctx.insert(ctx.end(), s.lemmas.begin(), s.lemmas.end());
    return check_justification(s.env, statement, j, ctx, o);
  }
};

TEST_F(CertifyTest, DefinitionalEquation) {
  Hypothesis d = add(get_def(s, "hd_error"));
  EXPECT_TRUE(check(d.statement, d.justification).valid);
  EXPECT_FALSE(check(d.statement, Justification::by_definition("length")).valid);
}

TEST_F(CertifyTest, ExpandedHdErrorByConversion) {
  add(get_def(s, "hd_error"));
  Hypothesis e = add(expand(s, "hd_error_def"));
  Verdict v = check(e.statement, e.justification);
  EXPECT_TRUE(v.valid) << v.reason;
}

TEST_F(CertifyTest, LengthNeedsCaseSplit) {
  add(get_def(s, "length"));
  add(expand(s, "length_def"));
  Hypothesis f = add(eliminate_fix(s, "length_expanded"));
  Verdict v = check(f.statement, f.justification);
  EXPECT_TRUE(v.valid) << v.reason;
  // Guarded unfolding blocks plain conversion.
  CertifyOptions no_split;
  no_split.split_depth = 0;
  EXPECT_FALSE(check(f.statement, Justification::by_case_conversion("", {1}, 0), no_split).valid);
}

TEST_F(CertifyTest, NonConvertibleEquationIsInvalid) {
  Verdict v = check(parse("0 = 1"), Justification::by_conversion(""));
  EXPECT_FALSE(v.valid);
  EXPECT_NE(v.reason.find("not convertible"), std::string::npos);
  EXPECT_FALSE(check(parse("forall (n : nat), n = O"), Justification::by_case_conversion("", {0}, 2)).valid);
  EXPECT_FALSE(check(parse("true_p"), Justification::by_conversion("")).valid);
}

TEST_F(CertifyTest, RewriteWithOpaqueSource) {
  s.env.add_parameter("f", parse("nat -> nat"));
  s.add({"hf", parse("forall (n : nat), f n = match n with | O => O | S m => m end"), Justification::given()});
  Verdict v = check(parse("forall (m : nat), f (S m) = m"), Justification::by_conversion("hf"));
  EXPECT_TRUE(v.valid) << v.reason;
  EXPECT_FALSE(check(parse("forall (m : nat), f (S m) = S m"), Justification::by_conversion("hf")).valid);
  EXPECT_FALSE(check(parse("forall (m : nat), f (S m) = m"), Justification::by_conversion("nope")).valid);
}

TEST_F(CertifyTest, Instantiation) {
  s.lemmas.push_back({"lem", parse("forall (A : Type) (l : list A), app A l (nil A) = l"), Justification::given()});
  const Term at_int = parse("forall (l : list Int), app Int l (nil Int) = l");
  EXPECT_TRUE(check(at_int, Justification::by_instantiation("lem", {Term::int_type()})).valid);
  EXPECT_FALSE(check(at_int, Justification::by_instantiation("lem", {Term::ind(kBoolName)})).valid);
  EXPECT_FALSE(check(at_int, Justification::by_instantiation("lem", {Term::int_type(), Term::int_type()})).valid);
  EXPECT_FALSE(check(at_int, Justification::by_instantiation("lem", {parse("O")})).valid);
}

TEST_F(CertifyTest, DatatypeAxiomsValidAndTamperedRejected) {
  const std::vector<Term> params{Term::int_type()};
  for (const auto& h : datatype_axioms(s.env, "list", params, true)) {
    Verdict v = check(h.statement, h.justification);
    EXPECT_TRUE(v.valid) << h.name << ": " << v.reason;
  }
  // Swapped conclusion variables: right shape family, wrong statement.
  const Term bad_inj = parse(
      "forall (x1 y1 : Int) (x2 y2 : list Int), cons Int x1 x2 = cons Int y1 y2 -> y1 = x1 /\\ x2 = y2");
  EXPECT_FALSE(check(bad_inj, Justification::injectivity("list", params, 1)).valid);
  // False statement with the disjointness label.
  const Term bad_disc = parse("forall (y1 : Int) (y2 : list Int), nil Int = nil Int");
  EXPECT_FALSE(check(bad_disc, Justification::disjointness("list", params, 0, 1)).valid);
  // Injectivity claimed for a nullary constructor.
  EXPECT_FALSE(check(parse("true_p"), Justification::injectivity("list", params, 0)).valid);
}

TEST_F(CertifyTest, TotalOnGarbage) {
  Justification j = Justification::by_case_conversion("", {7, 0, 3}, 5);
  Verdict v = check(parse("forall (x : Int), x = x + 1"), j);
  EXPECT_FALSE(v.valid);
  Justification bogus = Justification::injectivity("no_such", {}, 0);
  EXPECT_FALSE(check(parse("true_p"), bogus).valid);
}

// Statements obtained by perturbing valid ones: anything the checker still
// accepts must be true in the evaluator model.
TEST_F(CertifyTest, AcceptedStatementsAreTrue) {
  std::vector<Hypothesis> produced;
  for (const auto& d : s.env.definitions()) {
    Hypothesis h = add(get_def(s, d.name));
    Hypothesis e = expand(s, h.name);
    if (e.statement == h.statement) continue;
    produced.push_back(add(e));
    try {
      produced.push_back(add(eliminate_fix(s, e.name)));
    } catch (const TransformError&) {
    }
  }
  const std::size_t base = produced.size();
  for (std::size_t i = 0; i < base; ++i) {
    try {
      for (auto& h : eliminate_pattern_matching(s, produced[i].name)) produced.push_back(add(h));
    } catch (const TransformError&) {
    }
  }

  testing::Rng rng(11);
  std::size_t accepted_mutants = 0, rejected_mutants = 0;
  for (const auto& h : produced) {
    Verdict v = check(h.statement, h.justification);
    ASSERT_TRUE(v.valid) << h.name << ": " << v.reason;

    // Mutate the right side of the equation: replace it with a random term
    // of the same type in the same context.
    Term t = h.statement;
    Context ctx;
    std::vector<std::string> names;
    std::vector<Term> domains;
    while (t.is(TermKind::Pi)) {
      ctx.push(t.name(), t.domain());
      names.push_back(t.name());
      domains.push_back(t.domain());
      t = t.body();
    }
    if (!t.is(TermKind::Eq)) continue;
    for (int k = 0; k < 4; ++k) {
      Term rhs = testing::random_typed_term(s.env, ctx, t.eq_type(), 8, rng);
      Term body = Term::eq(t.eq_type(), t.lhs(), rhs);
      for (std::size_t i = domains.size(); i-- > 0;) body = Term::pi(names[i], domains[i], body);
      Verdict mv = check(body, h.justification);
      if (!mv.valid) {
        ++rejected_mutants;
        continue;
      }
      ++accepted_mutants;
      TruthReport r = check_truth(s.env, body, {.samples = 50});
      EXPECT_TRUE(r.holds) << "accepted but false: " << print_term(body, s.env) << "\n" << r.counterexample;
    }
  }
  EXPECT_GT(rejected_mutants, 0u);
  RecordProperty("accepted_mutants", static_cast<int>(accepted_mutants));
}

TEST_F(CertifyTest, AuditReportsEveryHypothesis) {
  add(get_def(s, "length"));
  add(expand(s, "length_def"));
  auto entries = audit(s);
  ASSERT_EQ(entries.size(), 2u);
  EXPECT_EQ(entries[0].justification, "ByDefinition(length)");
  EXPECT_TRUE(entries[1].verdict.valid);
}

}  // namespace
}  // namespace folbridge
