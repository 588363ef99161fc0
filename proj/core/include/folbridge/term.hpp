#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace folbridge {

enum class TermKind {
  Var,
  Const,
  Ctor,
  Ind,
  Sort,
  IntType,
  IntLit,
  Prim,
  Pi,
  Lam,
  App,
  Match,
  Fix,
  Eq,
  True,
  False,
  And,
  Or,
  Not,
  Exists,
};

enum class Universe { Type, Prop };

/// Builtin operators. Arithmetic and comparisons are over Int, the boolean
/// connectives over the builtin `bool` inductive.
enum class PrimOp { Add, Sub, Mul, Le, Lt, Orb, Andb, Negb, Eqb };

const char* prim_name(PrimOp op);

class Term;

struct MatchBranch;

/// Immutable core-language term with de Bruijn indices. Copies share the
/// underlying node; equality (`==`) is alpha-equivalence since binder names
/// are only hints.
class Term {
 public:
  static Term var(std::size_t index);
  static Term constant(std::string name);
  static Term ctor(std::string inductive, std::size_t index);
  static Term ind(std::string inductive);
  static Term sort(Universe u);
  static Term type() { return sort(Universe::Type); }
  static Term prop() { return sort(Universe::Prop); }
  static Term int_type();
  static Term int_lit(std::int64_t value);
  static Term prim(PrimOp op);
  static Term pi(std::string binder, Term domain, Term codomain);
  static Term arrow(Term domain, Term codomain);
  static Term lam(std::string binder, Term domain, Term body);
  static Term app(Term head, Term arg);
  static Term app(Term head, std::span<const Term> args);
  static Term match(Term scrutinee, Term scrutinee_type, Term return_type,
                    std::vector<MatchBranch> branches);
  static Term fix(std::string self, std::size_t decreasing_arg, Term full_type, Term body);
  static Term eq(Term at_type, Term lhs, Term rhs);
  static Term truth();
  static Term falsity();
  static Term conj(Term a, Term b);
  static Term disj(Term a, Term b);
  static Term neg(Term a);
  static Term exists(std::string binder, Term domain, Term body);

  TermKind kind() const;
  bool is(TermKind k) const { return kind() == k; }

  std::size_t index() const;  // Var, Ctor index, Fix decreasing argument
  const std::string& name() const;  // Const, Ind/Ctor inductive, binder hint
  std::int64_t int_value() const;
  Universe universe() const;
  PrimOp prim_op() const;

  // Pi / Lam / Exists
  const Term& domain() const;
  const Term& body() const;
  // App
  const Term& fn() const;
  const Term& arg() const;
  // Match
  const Term& scrutinee() const;
  const Term& scrutinee_type() const;
  const Term& return_type() const;
  const std::vector<MatchBranch>& branches() const;
  // Fix: full_type() and body(); body binds the fixpoint itself as Var 0
  const Term& full_type() const;
  // Eq
  const Term& eq_type() const;
  const Term& lhs() const;
  const Term& rhs() const;
  // And / Or: lhs(), rhs(); Not: operand()
  const Term& operand() const;

  /// Direct subterms in storage order (match branch bodies excluded).
  std::span<const Term> children() const;

  /// One more than the largest loose de Bruijn index (0 for closed terms).
  std::size_t loose_bound() const;
  bool closed() const { return loose_bound() == 0; }

  bool same_node(const Term& other) const { return node_ == other.node_; }

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

  struct Node;

 private:
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Term make(Node node);

  std::shared_ptr<const Node> node_;
};

struct MatchBranch {
  std::vector<std::string> binders;  // pattern variable hints, outermost first
  Term body;

  std::size_t arity() const { return binders.size(); }
};

/// Raise every loose index >= cutoff by amount.
Term lift(const Term& t, std::size_t amount, std::size_t cutoff = 0);

/// Replace Var(index) with replacement. The replacement lives in the context
/// outside the binder that index refers to; loose indices above it shift
/// down by one.
Term subst(const Term& t, std::size_t index, const Term& replacement);

/// Simultaneous instantiation of the `args.size()` outermost loose variables:
/// Var(k) for k < n becomes args[n-1-k]; higher indices shift down by n.
/// All args live in the context outside those n binders.
Term instantiate(const Term& t, std::span<const Term> args);

bool occurs_free(const Term& t, std::size_t index);

/// True when every Var is bound within `depth` enclosing context entries.
bool well_scoped(const Term& t, std::size_t depth = 0);

/// Head and arguments of a (possibly nested) application.
std::pair<Term, std::vector<Term>> decompose_app(const Term& t);
Term head_of(const Term& t);

/// Number of nodes, used for test generators and sanity limits.
std::size_t term_size(const Term& t);

/// Structural hash compatible with alpha-equality.
std::size_t term_hash(const Term& t);

struct TermHash {
  std::size_t operator()(const Term& t) const { return term_hash(t); }
};

}  // namespace folbridge
