#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "folbridge/conversion.hpp"
#include "folbridge/env.hpp"
#include "folbridge/term.hpp"

namespace folbridge {

struct Value;
using ValuePtr = std::shared_ptr<const Value>;

/// Result of call-by-value evaluation of a closed term. Type arguments are
/// kept as closed type terms so values can be turned back into terms.
struct Value {
  enum class Kind { Int, Ctor, Closure, Fix, Prim, Type };

  Kind kind = Kind::Int;
  std::int64_t integer = 0;
  // Ctor: inductive name, constructor index, parameter count; args holds
  // the type parameters followed by the fields.
  std::string inductive;
  std::size_t ctor_index = 0;
  std::size_t param_count = 0;
  bool saturated = false;
  // Closure / Fix: the Lam or Fix term with its captured environment
  // (outermost first). Type: the closed type.
  Term term = Term::truth();
  std::vector<ValuePtr> captured;
  // Partial application of a constructor, fixpoint or builtin.
  std::vector<ValuePtr> args;
  PrimOp op = PrimOp::Add;

  /// Int or fully applied constructor.
  bool is_data() const { return kind == Kind::Int || (kind == Kind::Ctor && saturated); }
};

/// Evaluates a closed term. Opaque constants cannot be evaluated.
ValuePtr eval_ground(const GlobalEnv& env, const Term& t, Fuel fuel = {});

/// Closed term denoting the value.
Term reify(const Value& v);

/// Structural equality on data values. Throws for functions.
bool values_equal(const Value& a, const Value& b);

/// Closed term of the given closed type with at most `size` constructor
/// nodes (Int literals count as one). Opaque `Type` parameters must have been
/// given bodies beforehand. Throws Uninhabited if nothing fits.
Term random_ground_term(const GlobalEnv& env, const Term& type, std::size_t size, std::mt19937_64& rng);
Term random_ground_term(const GlobalEnv& env, const Term& type, std::size_t size, std::uint64_t seed);

/// Smallest constructor-node count of a closed type, or nullopt if the type
/// has no finite inhabitant.
std::optional<std::size_t> min_inhabitant_size(const GlobalEnv& env, const Term& type);

}  // namespace folbridge
