#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "folbridge/env.hpp"
#include "folbridge/term.hpp"

namespace folbridge {

/// Evidence that a generated hypothesis follows from the environment and
/// the hypotheses it cites.
struct Justification {
  enum class Kind { Given, ByDefinition, ByConversion, ByCaseConversion, ByInstantiation, DatatypeAxiom };
  enum class Axiom { Injectivity, Disjointness, Exhaustiveness };

  Kind kind = Kind::Given;
  std::string constant;  // ByDefinition
  std::string source;    // cited hypothesis (conversion, case split, instantiation)
  // ByCaseConversion: positions in the statement's universal prefix,
  // 0 being the outermost binder.
  std::vector<std::size_t> split_vars;
  std::size_t depth = 0;
  std::vector<Term> type_args;  // ByInstantiation
  // DatatypeAxiom
  std::string inductive;
  std::vector<Term> params;
  Axiom axiom = Axiom::Injectivity;
  std::size_t ctor = 0;
  std::size_t other_ctor = 0;

  static Justification given();
  static Justification by_definition(std::string constant);
  static Justification by_conversion(std::string source);
  static Justification by_case_conversion(std::string source, std::vector<std::size_t> split_vars, std::size_t depth);
  static Justification by_instantiation(std::string source, std::vector<Term> type_args);
  static Justification injectivity(std::string inductive, std::vector<Term> params, std::size_t ctor);
  static Justification disjointness(std::string inductive, std::vector<Term> params, std::size_t a, std::size_t b);
  static Justification exhaustiveness(std::string inductive, std::vector<Term> params);
};

const char* to_string(Justification::Kind kind);
/// One-line rendering, e.g. `ByCaseConversion(length_expanded; l; depth 1)`.
std::string describe(const Justification& j, const GlobalEnv& env);

struct Hypothesis {
  std::string name;
  Term statement;
  Justification justification;
};

/// Named hypotheses plus a goal. Transformations only ever append.
struct ProofState {
  GlobalEnv env;
  std::vector<Hypothesis> hypotheses;
  /// Statements passed to monomorphization without being part of the context.
  std::vector<Hypothesis> lemmas;
  Term goal = Term::truth();

  /// Splits `lemma` entries of the problem into `lemmas`.
  static ProofState from_problem(const Problem& problem);

  /// Hypothesis or lemma with that name.
  const Hypothesis* find(const std::string& name) const;
  /// Alpha-equal statement already among the hypotheses.
  bool contains(const Term& statement) const;
  /// `base` if unused, otherwise `base` with the first free numeric suffix.
  std::string fresh_name(const std::string& base) const;
  void add(Hypothesis h);
};

// Definitions ----------------------------------------------------------------

/// `c = body` at c's type, named `c_def`.
Hypothesis get_def(const ProofState& state, const std::string& constant);

// Expansion ------------------------------------------------------------------

/// Domains of a Pi chain, each in the context of the preceding binders, and
/// the codomain under all of them.
std::pair<std::vector<Term>, Term> arrow_split(const Term& type);

/// forall (x0 : A0) ... (xn : An), t x0 .. xn = u x0 .. xn at the codomain.
Term gen_eq(const std::vector<Term>& domains, const Term& codomain, const Term& t, const Term& u,
            const std::vector<std::string>& names = {});

/// Applies an equation between functions to fresh arguments and reduces
/// head beta redexes on the right. Zero arrows returns the statement as is.
Hypothesis expand(const ProofState& state, const std::string& hyp);

// Fixpoints ------------------------------------------------------------------

/// Replaces the anonymous fixpoint on the right of a definitional equation
/// by the constant it defines.
Hypothesis eliminate_fix(const ProofState& state, const std::string& hyp);

// Pattern matching -----------------------------------------------------------

/// One statement per constructor of the first universally bound variable
/// that is matched on.
std::vector<Hypothesis> eliminate_pattern_matching(const ProofState& state, const std::string& hyp);

/// Substitutes constructor `ctor` applied to fresh variables for the prefix
/// binder at `position`, then reduces the matches this makes reducible.
/// Returns nullopt if the binder is not of an algebraic type.
std::optional<Term> instantiate_binder_with_constructor(const GlobalEnv& env, const Term& statement,
                                                        std::size_t position, std::size_t ctor,
                                                        const std::vector<std::string>& arg_names = {});

/// Reduces every match whose scrutinee is a constructor application.
Term reduce_constructor_matches(const GlobalEnv& env, const Term& t);

/// Number of constructors of the inductive type of the prefix binder.
std::optional<std::size_t> binder_constructor_count(const GlobalEnv& env, const Term& statement, std::size_t position);

// Monomorphization -----------------------------------------------------------

/// Closed subterms of sort Type (excluding sorts and function types), in
/// post-order of first occurrence.
std::vector<Term> collect_type_instances(const GlobalEnv& env, const Term& t);

struct MonomorphizeOptions {
  bool from_context = false;  // also draw instances from the hypotheses
};

/// Instances of every prenex-polymorphic hypothesis and lemma at the ground
/// types of the goal. Alpha-duplicates of existing hypotheses are skipped.
std::vector<Hypothesis> monomorphize(const ProofState& state, const MonomorphizeOptions& options = {});

// Algebraic datatypes --------------------------------------------------------

/// Injectivity and disjointness (and optionally exhaustiveness) of every
/// algebraic instance in the goal and hypotheses other than bool.
std::vector<Hypothesis> interp_alg_types(const ProofState& state, bool include_exhaustiveness = false);

/// The axioms for one instance, in the order interp_alg_types emits them.
std::vector<Hypothesis> datatype_axioms(const GlobalEnv& env, const std::string& inductive,
                                        const std::vector<Term>& params, bool include_exhaustiveness);

/// Identifier-safe rendering of a type, e.g. `list_Int`.
std::string type_suffix(const GlobalEnv& env, const Term& type);

}  // namespace folbridge
