#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "folbridge/term.hpp"

namespace folbridge {

struct Constructor {
  std::string name;
  /// Argument types in the context of the inductive's type parameters
  /// (Var 0 is the last parameter). Arguments never depend on each other.
  std::vector<Term> arg_types;
};

/// Algebraic datatype with prenex type parameters.
struct InductiveDecl {
  std::string name;
  std::vector<std::string> type_params;
  std::vector<Constructor> constructors;
};

/// A named constant. Constants without a body are opaque parameters
/// (declared with `param`, or introduced type variables).
struct Definition {
  std::string name;
  Term type;
  std::optional<Term> body;

  bool opaque() const { return !body.has_value(); }
};

struct CtorRef {
  const InductiveDecl* inductive = nullptr;
  std::size_t index = 0;

  const Constructor& decl() const { return inductive->constructors[index]; }
};

inline constexpr const char* kBoolName = "bool";

/// Declarations in insertion order. Names share one namespace across
/// inductives, constructors and constants.
class GlobalEnv {
 public:
  /// Environment holding only the builtin `bool` inductive.
  static GlobalEnv with_builtins();

  void add_inductive(InductiveDecl decl);
  void add_definition(Definition def);
  void add_parameter(std::string name, Term type);

  const InductiveDecl* find_inductive(const std::string& name) const;
  const Definition* find_definition(const std::string& name) const;
  std::optional<CtorRef> find_constructor(const std::string& name) const;
  const InductiveDecl& inductive(const std::string& name) const;
  const Definition& definition(const std::string& name) const;

  bool name_taken(const std::string& name) const;

  const std::vector<InductiveDecl>& inductives() const { return inductives_; }
  const std::vector<Definition>& definitions() const { return definitions_; }

  /// Type of the inductive's type former: Type -> ... -> Type.
  Term inductive_type(const std::string& name) const;
  /// Full type of a constructor, quantifying over the type parameters.
  Term constructor_type(const std::string& inductive, std::size_t index) const;
  /// Constructor argument types instantiated at concrete parameters; the
  /// j-th result lives in the ambient context extended by j binders.
  std::vector<Term> constructor_arg_types(const std::string& inductive, std::size_t index,
                                          std::span<const Term> params) const;

 private:
  std::vector<InductiveDecl> inductives_;
  std::vector<Definition> definitions_;
  std::map<std::string, std::size_t> inductive_index_;
  std::map<std::string, std::size_t> definition_index_;
  std::map<std::string, std::pair<std::size_t, std::size_t>> ctor_index_;
};

struct NamedStatement {
  std::string name;
  Term statement;
};

/// A parsed problem file.
struct Problem {
  GlobalEnv env;
  std::vector<NamedStatement> hypotheses;  // `hyp` and `lemma` entries in file order
  Term goal = Term::truth();
  std::vector<std::string> lemma_params;

  bool is_lemma(const std::string& name) const;
};

}  // namespace folbridge
