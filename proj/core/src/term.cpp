#include "folbridge/term.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

namespace folbridge {

struct Term::Node {
  TermKind kind = TermKind::True;
  std::size_t index = 0;
  std::int64_t value = 0;
  Universe universe = Universe::Type;
  PrimOp op = PrimOp::Add;
  std::string name;
  std::vector<Term> kids;
  std::vector<MatchBranch> branches;
  std::size_t loose = 0;
};

namespace {

std::size_t drop(std::size_t n, std::size_t k) { return n > k ? n - k : 0; }

std::size_t compute_loose(const Term::Node& n) {
  switch (n.kind) {
    case TermKind::Var:
      return n.index + 1;
    case TermKind::Pi:
    case TermKind::Lam:
    case TermKind::Exists:
    case TermKind::Fix:
      return std::max(n.kids[0].loose_bound(), drop(n.kids[1].loose_bound(), 1));
    case TermKind::Match: {
      std::size_t m = 0;
      for (const auto& k : n.kids) m = std::max(m, k.loose_bound());
      for (const auto& b : n.branches) m = std::max(m, drop(b.body.loose_bound(), b.arity()));
      return m;
    }
    default: {
      std::size_t m = 0;
      for (const auto& k : n.kids) m = std::max(m, k.loose_bound());
      return m;
    }
  }
}

}  // namespace

const char* prim_name(PrimOp op) {
  switch (op) {
    case PrimOp::Add: return "+";
    case PrimOp::Sub: return "-";
    case PrimOp::Mul: return "*";
    case PrimOp::Le: return "<=";
    case PrimOp::Lt: return "<";
    case PrimOp::Orb: return "orb";
    case PrimOp::Andb: return "andb";
    case PrimOp::Negb: return "negb";
    case PrimOp::Eqb: return "eqb";
  }
  return "?";
}

Term Term::make(Node node) {
  node.loose = compute_loose(node);
  return Term(std::make_shared<const Node>(std::move(node)));
}

Term Term::var(std::size_t index) {
  Node n;
  n.kind = TermKind::Var;
  n.index = index;
  return make(std::move(n));
}

Term Term::constant(std::string name) {
  Node n;
  n.kind = TermKind::Const;
  n.name = std::move(name);
  return make(std::move(n));
}

Term Term::ctor(std::string inductive, std::size_t index) {
  Node n;
  n.kind = TermKind::Ctor;
  n.name = std::move(inductive);
  n.index = index;
  return make(std::move(n));
}

Term Term::ind(std::string inductive) {
  Node n;
  n.kind = TermKind::Ind;
  n.name = std::move(inductive);
  return make(std::move(n));
}

Term Term::sort(Universe u) {
  static const Term type = [] {
    Node n;
    n.kind = TermKind::Sort;
    n.universe = Universe::Type;
    return make(std::move(n));
  }();
  static const Term prop = [] {
    Node n;
    n.kind = TermKind::Sort;
    n.universe = Universe::Prop;
    return make(std::move(n));
  }();
  return u == Universe::Type ? type : prop;
}

Term Term::int_type() {
  static const Term t = [] {
    Node n;
    n.kind = TermKind::IntType;
    return make(std::move(n));
  }();
  return t;
}

Term Term::int_lit(std::int64_t value) {
  Node n;
  n.kind = TermKind::IntLit;
  n.value = value;
  return make(std::move(n));
}

Term Term::prim(PrimOp op) {
  Node n;
  n.kind = TermKind::Prim;
  n.op = op;
  return make(std::move(n));
}

Term Term::pi(std::string binder, Term domain, Term codomain) {
  Node n;
  n.kind = TermKind::Pi;
  n.name = std::move(binder);
  n.kids = {std::move(domain), std::move(codomain)};
  return make(std::move(n));
}

Term Term::arrow(Term domain, Term codomain) {
  return pi("_", std::move(domain), lift(codomain, 1));
}

Term Term::lam(std::string binder, Term domain, Term body) {
  Node n;
  n.kind = TermKind::Lam;
  n.name = std::move(binder);
  n.kids = {std::move(domain), std::move(body)};
  return make(std::move(n));
}

Term Term::app(Term head, Term arg) {
  Node n;
  n.kind = TermKind::App;
  n.kids = {std::move(head), std::move(arg)};
  return make(std::move(n));
}

Term Term::app(Term head, std::span<const Term> args) {
  for (const auto& a : args) head = app(std::move(head), a);
  return head;
}

Term Term::match(Term scrutinee, Term scrutinee_type, Term return_type,
                 std::vector<MatchBranch> branches) {
  Node n;
  n.kind = TermKind::Match;
  n.kids = {std::move(scrutinee), std::move(scrutinee_type), std::move(return_type)};
  n.branches = std::move(branches);
  return make(std::move(n));
}

Term Term::fix(std::string self, std::size_t decreasing_arg, Term full_type, Term body) {
  Node n;
  n.kind = TermKind::Fix;
  n.name = std::move(self);
  n.index = decreasing_arg;
  n.kids = {std::move(full_type), std::move(body)};
  return make(std::move(n));
}

Term Term::eq(Term at_type, Term lhs, Term rhs) {
  Node n;
  n.kind = TermKind::Eq;
  n.kids = {std::move(at_type), std::move(lhs), std::move(rhs)};
  return make(std::move(n));
}

Term Term::truth() {
  static const Term t = [] {
    Node n;
    n.kind = TermKind::True;
    return make(std::move(n));
  }();
  return t;
}

Term Term::falsity() {
  static const Term t = [] {
    Node n;
    n.kind = TermKind::False;
    return make(std::move(n));
  }();
  return t;
}

Term Term::conj(Term a, Term b) {
  Node n;
  n.kind = TermKind::And;
  n.kids = {std::move(a), std::move(b)};
  return make(std::move(n));
}

Term Term::disj(Term a, Term b) {
  Node n;
  n.kind = TermKind::Or;
  n.kids = {std::move(a), std::move(b)};
  return make(std::move(n));
}

Term Term::neg(Term a) {
  Node n;
  n.kind = TermKind::Not;
  n.kids = {std::move(a)};
  return make(std::move(n));
}

Term Term::exists(std::string binder, Term domain, Term body) {
  Node n;
  n.kind = TermKind::Exists;
  n.name = std::move(binder);
  n.kids = {std::move(domain), std::move(body)};
  return make(std::move(n));
}

TermKind Term::kind() const { return node_->kind; }
std::size_t Term::index() const { return node_->index; }
const std::string& Term::name() const { return node_->name; }
std::int64_t Term::int_value() const { return node_->value; }
Universe Term::universe() const { return node_->universe; }
PrimOp Term::prim_op() const { return node_->op; }
const Term& Term::domain() const { return node_->kids.at(0); }
const Term& Term::body() const { return node_->kids.at(1); }
const Term& Term::fn() const { return node_->kids.at(0); }
const Term& Term::arg() const { return node_->kids.at(1); }
const Term& Term::scrutinee() const { return node_->kids.at(0); }
const Term& Term::scrutinee_type() const { return node_->kids.at(1); }
const Term& Term::return_type() const { return node_->kids.at(2); }
const std::vector<MatchBranch>& Term::branches() const { return node_->branches; }
const Term& Term::full_type() const { return node_->kids.at(0); }
const Term& Term::eq_type() const { return node_->kids.at(0); }
const Term& Term::lhs() const { return node_->kind == TermKind::Eq ? node_->kids.at(1) : node_->kids.at(0); }
const Term& Term::rhs() const { return node_->kind == TermKind::Eq ? node_->kids.at(2) : node_->kids.at(1); }
const Term& Term::operand() const { return node_->kids.at(0); }
std::size_t Term::loose_bound() const { return node_->loose; }
std::span<const Term> Term::children() const { return node_->kids; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind || x.loose != y.loose) return false;
  switch (x.kind) {
    case TermKind::Var:
      return x.index == y.index;
    case TermKind::Const:
    case TermKind::Ind:
      return x.name == y.name;
    case TermKind::Ctor:
      return x.name == y.name && x.index == y.index;
    case TermKind::Sort:
      return x.universe == y.universe;
    case TermKind::IntLit:
      return x.value == y.value;
    case TermKind::Prim:
      return x.op == y.op;
    case TermKind::Fix:
      if (x.index != y.index) return false;
      break;
    case TermKind::Match:
      if (x.branches.size() != y.branches.size()) return false;
      for (std::size_t i = 0; i < x.branches.size(); ++i) {
        if (x.branches[i].arity() != y.branches[i].arity()) return false;
        if (!(x.branches[i].body == y.branches[i].body)) return false;
      }
      break;
    default:
      break;
  }
  if (x.kids.size() != y.kids.size()) return false;
  for (std::size_t i = 0; i < x.kids.size(); ++i) {
    if (!(x.kids[i] == y.kids[i])) return false;
  }
  return true;
}

namespace {

// Rebuilds t, calling on_var(index, depth) for every loose Var whose index is
// at least base + depth. Subterms without such variables are shared.
template <class F>
Term map_loose(const Term& t, std::size_t depth, std::size_t base, const F& on_var) {
  if (t.loose_bound() <= base + depth) return t;
  auto rec = [&](const Term& s, std::size_t d) { return map_loose(s, d, base, on_var); };
  switch (t.kind()) {
    case TermKind::Var:
      return on_var(t.index(), depth);
    case TermKind::Pi:
      return Term::pi(t.name(), rec(t.domain(), depth), rec(t.body(), depth + 1));
    case TermKind::Lam:
      return Term::lam(t.name(), rec(t.domain(), depth), rec(t.body(), depth + 1));
    case TermKind::Exists:
      return Term::exists(t.name(), rec(t.domain(), depth), rec(t.body(), depth + 1));
    case TermKind::App:
      return Term::app(rec(t.fn(), depth), rec(t.arg(), depth));
    case TermKind::Match: {
      std::vector<MatchBranch> bs;
      bs.reserve(t.branches().size());
      for (const auto& b : t.branches()) {
        bs.push_back({b.binders, rec(b.body, depth + b.arity())});
      }
      return Term::match(rec(t.scrutinee(), depth), rec(t.scrutinee_type(), depth),
                         rec(t.return_type(), depth), std::move(bs));
    }
    case TermKind::Fix:
      return Term::fix(t.name(), t.index(), rec(t.full_type(), depth), rec(t.body(), depth + 1));
    case TermKind::Eq:
      return Term::eq(rec(t.eq_type(), depth), rec(t.lhs(), depth), rec(t.rhs(), depth));
    case TermKind::And:
      return Term::conj(rec(t.lhs(), depth), rec(t.rhs(), depth));
    case TermKind::Or:
      return Term::disj(rec(t.lhs(), depth), rec(t.rhs(), depth));
    case TermKind::Not:
      return Term::neg(rec(t.operand(), depth));
    default:
      return t;
  }
}

}  // namespace

Term lift(const Term& t, std::size_t amount, std::size_t cutoff) {
  if (amount == 0) return t;
  return map_loose(t, 0, cutoff, [amount](std::size_t i, std::size_t) {
    return Term::var(i + amount);
  });
}

Term subst(const Term& t, std::size_t index, const Term& replacement) {
  return map_loose(t, 0, index, [&](std::size_t i, std::size_t depth) {
    if (i == index + depth) return lift(replacement, index + depth);
    return Term::var(i - 1);
  });
}

Term instantiate(const Term& t, std::span<const Term> args) {
  const std::size_t n = args.size();
  if (n == 0) return t;
  return map_loose(t, 0, 0, [&](std::size_t i, std::size_t depth) {
    std::size_t k = i - depth;
    if (k < n) return lift(args[n - 1 - k], depth);
    return Term::var(i - n);
  });
}

bool occurs_free(const Term& t, std::size_t index) {
  if (t.loose_bound() <= index) return false;
  switch (t.kind()) {
    case TermKind::Var:
      return t.index() == index;
    case TermKind::Pi:
    case TermKind::Lam:
    case TermKind::Exists:
      return occurs_free(t.domain(), index) || occurs_free(t.body(), index + 1);
    case TermKind::Fix:
      return occurs_free(t.full_type(), index) || occurs_free(t.body(), index + 1);
    case TermKind::App:
      return occurs_free(t.fn(), index) || occurs_free(t.arg(), index);
    case TermKind::Match:
      if (occurs_free(t.scrutinee(), index) || occurs_free(t.scrutinee_type(), index) ||
          occurs_free(t.return_type(), index)) {
        return true;
      }
      for (const auto& b : t.branches()) {
        if (occurs_free(b.body, index + b.arity())) return true;
      }
      return false;
    case TermKind::Eq:
      return occurs_free(t.eq_type(), index) || occurs_free(t.lhs(), index) ||
             occurs_free(t.rhs(), index);
    case TermKind::And:
    case TermKind::Or:
      return occurs_free(t.lhs(), index) || occurs_free(t.rhs(), index);
    case TermKind::Not:
      return occurs_free(t.operand(), index);
    default:
      return false;
  }
}

bool well_scoped(const Term& t, std::size_t depth) { return t.loose_bound() <= depth; }

std::pair<Term, std::vector<Term>> decompose_app(const Term& t) {
  std::vector<Term> args;
  Term h = t;
  while (h.is(TermKind::App)) {
    args.push_back(h.arg());
    h = h.fn();
  }
  std::reverse(args.begin(), args.end());
  return {h, std::move(args)};
}

Term head_of(const Term& t) {
  Term h = t;
  while (h.is(TermKind::App)) h = h.fn();
  return h;
}

std::size_t term_size(const Term& t) {
  std::size_t n = 1;
  for (const auto& k : t.children()) n += term_size(k);
  if (t.is(TermKind::Match)) {
    for (const auto& b : t.branches()) n += term_size(b.body);
  }
  return n;
}

std::size_t term_hash(const Term& t) {
  std::size_t h = static_cast<std::size_t>(t.kind()) * 0x9e3779b97f4a7c15ULL;
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  switch (t.kind()) {
    case TermKind::Var:
    case TermKind::Fix:
      mix(t.index());
      break;
    case TermKind::Const:
    case TermKind::Ind:
      mix(std::hash<std::string>{}(t.name()));
      break;
    case TermKind::Ctor:
      mix(std::hash<std::string>{}(t.name()));
      mix(t.index());
      break;
    case TermKind::Sort:
      mix(static_cast<std::size_t>(t.universe()));
      break;
    case TermKind::IntLit:
      mix(static_cast<std::size_t>(t.int_value()));
      break;
    case TermKind::Prim:
      mix(static_cast<std::size_t>(t.prim_op()));
      break;
    default:
      break;
  }
  for (const auto& k : t.children()) mix(term_hash(k));
  if (t.is(TermKind::Match)) {
    for (const auto& b : t.branches()) {
      mix(b.arity());
      mix(term_hash(b.body));
    }
  }
  return h;
}

}  // namespace folbridge
