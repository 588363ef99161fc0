#include "folbridge/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "folbridge/conversion.hpp"
#include "folbridge/error.hpp"
#include "folbridge/printer.hpp"
#include "folbridge/syntax.hpp"

namespace folbridge {

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { Ident, Int, Symbol, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceLocation loc;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.loc = loc_;
      if (pos_ >= src_.size()) {
        t.kind = Tok::End;
        t.text = "end of input";
        out.push_back(t);
        return out;
      }
      const char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Tok::Ident;
        while (pos_ < src_.size() && is_ident_char(src_[pos_])) t.text += advance();
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        t.kind = Tok::Int;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) t.text += advance();
      } else {
        t.kind = Tok::Symbol;
        t.text = symbol();
      }
      out.push_back(std::move(t));
    }
  }

 private:
  static bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }

  char advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++loc_.line;
      loc_.column = 1;
    } else {
      ++loc_.column;
    }
    return c;
  }

  bool starts_with(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }

  void skip_space() {
    for (;;) {
      while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
      if (!starts_with("(*")) return;
      const SourceLocation start = loc_;
      std::size_t depth = 0;
      do {
        if (pos_ >= src_.size()) throw ParseError(start, "end of comment", "end of input");
        if (starts_with("(*")) {
          advance();
          advance();
          ++depth;
        } else if (starts_with("*)")) {
          advance();
          advance();
          --depth;
        } else {
          advance();
        }
      } while (depth > 0);
    }
  }

  std::string symbol() {
    static const char* const kLong[] = {":=", "<>", "<=", "->", "/\\", "\\/", "||", "&&", "=>"};
    for (const char* s : kLong) {
      if (starts_with(s)) {
        advance();
        advance();
        return s;
      }
    }
    const char c = src_[pos_];
    if (std::string_view("(),:=<~+-*|./").find(c) == std::string_view::npos) {
      throw ParseError(loc_, "a token", std::string("'") + c + "'");
    }
    advance();
    return std::string(1, c);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  SourceLocation loc_;
};

// ---------------------------------------------------------------------------
// Surface syntax (named variables)

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct BinderGroup {
  std::vector<std::string> names;
  ExprPtr type;
  SourceLocation loc;
};

struct Branch {
  std::string ctor;
  std::vector<std::string> vars;
  ExprPtr body;
  SourceLocation loc;
};

struct Expr {
  enum Kind {
    Ident,
    IntLit,
    TypeSort,
    PropSort,
    IntSort,
    TrueP,
    FalseP,
    App,
    Binder,  // forall / fun / exists
    Arrow,
    BinOp,
    Not,
    Match,
    Fix,
  };

  Expr(Kind k, SourceLocation l) : kind(k), loc(l) {}

  Kind kind;
  SourceLocation loc;
  std::string text;             // identifier, operator, binder keyword, fix name
  std::int64_t value = 0;       // IntLit, fix decreasing argument
  std::vector<ExprPtr> args;    // App: head then arguments; operands otherwise
  std::vector<BinderGroup> binders;
  std::vector<Branch> branches;
  ExprPtr annotation;           // match return type / fix result type
};

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at_end() const { return peek().kind == Tok::End; }
  bool is_sym(const char* s, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Symbol && peek(ahead).text == s;
  }
  bool is_kw(const char* s, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Ident && peek(ahead).text == s;
  }
  Token next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    throw ParseError(t.loc, expected, t.kind == Tok::End ? t.text : "'" + t.text + "'");
  }

  void expect_sym(const char* s) {
    if (!is_sym(s)) fail(std::string("'") + s + "'");
    next();
  }
  void expect_kw(const char* s) {
    if (!is_kw(s)) fail(std::string("'") + s + "'");
    next();
  }
  std::string expect_name() {
    if (peek().kind != Tok::Ident || is_reserved_word(peek().text)) fail("identifier");
    return next().text;
  }
  // Binder or pattern name; `_` allowed.
  std::string expect_binder_name() {
    if (is_kw("_")) return next().text;
    return expect_name();
  }
  std::int64_t expect_nat() {
    if (peek().kind != Tok::Int) fail("natural number");
    const Token t = next();
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || p != t.text.data() + t.text.size()) {
      throw ParseError(t.loc, "integer literal in range", t.text);
    }
    return v;
  }

  ExprPtr expr() {
    if (is_kw("forall") || is_kw("exists") || is_kw("fun")) return binder_expr();
    if (is_kw("fix")) return fix_expr();
    return arrow_expr();
  }

  ExprPtr binder_expr() {
    Expr e{Expr::Binder, peek().loc};
    e.text = next().text;
    e.binders = binder_groups(true);
    if (e.binders.empty()) fail("binder");
    expect_sym(e.text == "fun" ? "=>" : ",");
    e.args.push_back(expr());
    return make(std::move(e));
  }

  // `(x y : T) (z : U)` or a single unparenthesised group `x y : T`.
  std::vector<BinderGroup> binder_groups(bool allow_bare = false) {
    std::vector<BinderGroup> out;
    if (allow_bare && peek().kind == Tok::Ident) {
      BinderGroup g;
      g.loc = peek().loc;
      while (!is_sym(":")) g.names.push_back(expect_binder_name());
      expect_sym(":");
      g.type = expr();
      out.push_back(std::move(g));
      return out;
    }
    while (is_sym("(")) {
      BinderGroup g;
      g.loc = peek().loc;
      next();
      do {
        g.names.push_back(expect_binder_name());
      } while (!is_sym(":"));
      expect_sym(":");
      g.type = expr();
      expect_sym(")");
      out.push_back(std::move(g));
    }
    return out;
  }

  ExprPtr fix_expr() {
    Expr e{Expr::Fix, peek().loc};
    expect_kw("fix");
    e.text = expect_name();
    expect_sym("/");
    e.value = expect_nat();
    e.binders = binder_groups();
    expect_sym(":");
    e.annotation = expr();
    expect_sym(":=");
    e.args.push_back(expr());
    return make(std::move(e));
  }

  ExprPtr arrow_expr() {
    ExprPtr lhs = or_expr();
    if (!is_sym("->")) return lhs;
    Expr e{Expr::Arrow, peek().loc};
    next();
    e.args = {lhs, operand_or_binder([this] { return arrow_expr(); })};
    return make(std::move(e));
  }

  // A trailing binder form may appear as the right operand of an infix operator.
  template <typename F>
  ExprPtr operand_or_binder(F f) {
    if (is_kw("forall") || is_kw("exists") || is_kw("fun")) return binder_expr();
    if (is_kw("fix")) return fix_expr();
    return f();
  }

  ExprPtr right_assoc(const char* op, ExprPtr (Parser::*sub)(), ExprPtr (Parser::*self)()) {
    ExprPtr lhs = (this->*sub)();
    if (!is_sym(op)) return lhs;
    Expr e{Expr::BinOp, peek().loc};
    e.text = next().text;
    e.args = {lhs, operand_or_binder([&] { return (this->*self)(); })};
    return make(std::move(e));
  }

  ExprPtr or_expr() { return right_assoc("\\/", &Parser::and_expr, &Parser::or_expr); }
  ExprPtr and_expr() { return right_assoc("/\\", &Parser::not_expr, &Parser::and_expr); }

  ExprPtr not_expr() {
    if (!is_sym("~")) return compare_expr();
    Expr e{Expr::Not, peek().loc};
    next();
    e.args.push_back(operand_or_binder([this] { return not_expr(); }));
    return make(std::move(e));
  }

  ExprPtr compare_expr() {
    ExprPtr lhs = orb_expr();
    for (const char* op : {"=", "<>", "<=", "<"}) {
      if (is_sym(op) && !(no_equation_ && std::string_view(op) == "=")) {
        Expr e{Expr::BinOp, peek().loc};
        e.text = next().text;
        e.args = {lhs, operand_or_binder([this] { return orb_expr(); })};
        return make(std::move(e));
      }
    }
    return lhs;
  }

  ExprPtr left_assoc(std::initializer_list<const char*> ops, ExprPtr (Parser::*sub)()) {
    ExprPtr lhs = (this->*sub)();
    for (;;) {
      const char* hit = nullptr;
      for (const char* op : ops) {
        if (is_sym(op)) hit = op;
      }
      if (!hit) return lhs;
      Expr e{Expr::BinOp, peek().loc};
      e.text = next().text;
      e.args = {lhs, operand_or_binder([&] { return (this->*sub)(); })};
      lhs = make(std::move(e));
    }
  }

  ExprPtr orb_expr() { return left_assoc({"||"}, &Parser::andb_expr); }
  ExprPtr andb_expr() { return left_assoc({"&&"}, &Parser::sum_expr); }
  ExprPtr sum_expr() { return left_assoc({"+", "-"}, &Parser::product_expr); }
  ExprPtr product_expr() { return left_assoc({"*"}, &Parser::app_expr); }

  bool starts_atom() const {
    const Token& t = peek();
    if (t.kind == Tok::Int) return true;
    if (t.kind == Tok::Symbol) return t.text == "(";
    if (t.kind != Tok::Ident) return false;
    if (t.text == "match" || t.text == "Type" || t.text == "Prop" || t.text == "Int" ||
        t.text == "true_p" || t.text == "false_p") {
      return true;
    }
    return !is_reserved_word(t.text) || prim_from_identifier(t.text).has_value();
  }

  ExprPtr app_expr() {
    if (!starts_atom()) fail("expression");
    ExprPtr head = atom();
    if (!starts_atom()) return head;
    Expr e{Expr::App, head->loc};
    e.args.push_back(head);
    while (starts_atom()) e.args.push_back(atom());
    return make(std::move(e));
  }

  ExprPtr atom() {
    const Token t = peek();
    if (t.kind == Tok::Int) {
      Expr e{Expr::IntLit, t.loc};
      e.value = expect_nat();
      return make(std::move(e));
    }
    if (t.kind == Tok::Symbol) {
      next();
      if (is_sym("-") && peek(1).kind == Tok::Int && is_sym(")", 2)) {
        next();
        Expr e{Expr::IntLit, t.loc};
        e.value = -expect_nat();
        next();
        return make(std::move(e));
      }
      const bool saved = no_equation_;
      no_equation_ = false;
      ExprPtr inner = expr();
      no_equation_ = saved;
      expect_sym(")");
      return inner;
    }
    if (t.text == "match") return match_expr();
    next();
    Expr e{Expr::Ident, t.loc};
    if (t.text == "Type") e.kind = Expr::TypeSort;
    else if (t.text == "Prop") e.kind = Expr::PropSort;
    else if (t.text == "Int") e.kind = Expr::IntSort;
    else if (t.text == "true_p") e.kind = Expr::TrueP;
    else if (t.text == "false_p") e.kind = Expr::FalseP;
    e.text = t.text;
    return make(std::move(e));
  }

  ExprPtr match_expr() {
    Expr e{Expr::Match, peek().loc};
    expect_kw("match");
    e.args.push_back(expr());
    if (is_kw("return")) {
      next();
      e.annotation = expr();
    }
    expect_kw("with");
    while (is_sym("|")) {
      next();
      Branch b;
      b.loc = peek().loc;
      b.ctor = expect_name();
      while (!is_sym("=>")) b.vars.push_back(expect_binder_name());
      expect_sym("=>");
      b.body = expr();
      e.branches.push_back(std::move(b));
    }
    expect_kw("end");
    return make(std::move(e));
  }

  // Type expression of a definition, where a bare `=` separates the body.
  ExprPtr def_type() {
    no_equation_ = true;
    ExprPtr t = expr();
    no_equation_ = false;
    return t;
  }

 private:
  std::size_t pos_ = 0;
  std::vector<Token> toks_;
  bool no_equation_ = false;
};

// ---------------------------------------------------------------------------
// Elaboration to de Bruijn terms

std::string at(const SourceLocation& loc) { return to_string(loc) + ": "; }

class Elaborator {
 public:
  explicit Elaborator(const GlobalEnv& env) : env_(env) {}

  Term elab(Context& ctx, const ExprPtr& e) {
    switch (e->kind) {
      case Expr::Ident:
        return resolve(ctx, *e);
      case Expr::IntLit:
        return Term::int_lit(e->value);
      case Expr::TypeSort:
        return Term::type();
      case Expr::PropSort:
        return Term::prop();
      case Expr::IntSort:
        return Term::int_type();
      case Expr::TrueP:
        return Term::truth();
      case Expr::FalseP:
        return Term::falsity();
      case Expr::App: {
        Term head = elab(ctx, e->args[0]);
        std::vector<Term> args;
        for (std::size_t i = 1; i < e->args.size(); ++i) args.push_back(elab(ctx, e->args[i]));
        return Term::app(head, args);
      }
      case Expr::Binder:
        return elab_binder(ctx, *e, 0, 0);
      case Expr::Arrow: {
        Term a = elab(ctx, e->args[0]);
        Term b = elab(ctx, e->args[1]);
        return Term::arrow(a, b);
      }
      case Expr::BinOp:
        return elab_binop(ctx, *e);
      case Expr::Not:
        return Term::neg(elab(ctx, e->args[0]));
      case Expr::Match:
        return elab_match(ctx, *e);
      case Expr::Fix:
        return elab_fix(ctx, *e);
    }
    throw ParseError(e->loc, "expression", "?");
  }

  Term type_of(const Context& ctx, const Term& t) { return typecheck(env_, ctx, t); }

 private:
  Term resolve(const Context& ctx, const Expr& e) {
    const std::string& n = e.text;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      if (ctx.name_of(i) == n) return Term::var(i);
    }
    if (auto c = env_.find_constructor(n)) return Term::ctor(c->inductive->name, c->index);
    if (env_.find_inductive(n)) return Term::ind(n);
    if (env_.find_definition(n)) return Term::constant(n);
    if (auto p = prim_from_identifier(n)) return Term::prim(*p);
    throw ScopeError(at(e.loc) + "unknown identifier '" + n + "'");
  }

  // Expands binder groups one name at a time.
  Term elab_binder(Context& ctx, const Expr& e, std::size_t group, std::size_t name) {
    if (group == e.binders.size()) return elab(ctx, e.args[0]);
    const BinderGroup& g = e.binders[group];
    // The group's type is written once but elaborated per name, in the
    // context that name actually sees.
    Term dom = elab(ctx, g.type);
    const std::string& n = g.names[name];
    ctx.push(n, dom);
    Term body = name + 1 < g.names.size() ? elab_binder(ctx, e, group, name + 1)
                                          : elab_binder(ctx, e, group + 1, 0);
    ctx.pop();
    if (e.text == "forall") return Term::pi(n, dom, body);
    if (e.text == "exists") return Term::exists(n, dom, body);
    return Term::lam(n, dom, body);
  }

  Term elab_binop(Context& ctx, const Expr& e) {
    Term a = elab(ctx, e.args[0]);
    Term b = elab(ctx, e.args[1]);
    const std::string& op = e.text;
    if (op == "=" || op == "<>") {
      Term ty = type_of(ctx, a);
      Term eq = Term::eq(ty, a, b);
      return op == "=" ? eq : Term::neg(eq);
    }
    if (op == "/\\") return Term::conj(a, b);
    if (op == "\\/") return Term::disj(a, b);
    PrimOp p = PrimOp::Add;
    if (op == "+") p = PrimOp::Add;
    else if (op == "-") p = PrimOp::Sub;
    else if (op == "*") p = PrimOp::Mul;
    else if (op == "<=") p = PrimOp::Le;
    else if (op == "<") p = PrimOp::Lt;
    else if (op == "||") p = PrimOp::Orb;
    else if (op == "&&") p = PrimOp::Andb;
    else throw ParseError(e.loc, "operator", op);
    const Term args[] = {a, b};
    return Term::app(Term::prim(p), args);
  }

  Term elab_match(Context& ctx, const Expr& e) {
    Term scrut = elab(ctx, e.args[0]);
    Term sty = type_of(ctx, scrut);
    auto inst = as_inductive_instance(env_, sty);
    if (!inst) {
      throw TypeError(at(e.loc) + "match on a value that is not of an inductive type", "inductive type",
                      print_term(sty, env_, ctx.names()));
    }
    const InductiveDecl& decl = env_.inductive(inst->name);
    std::vector<const Branch*> slots(decl.constructors.size(), nullptr);
    for (const Branch& b : e.branches) {
      auto c = env_.find_constructor(b.ctor);
      if (!c || c->inductive->name != decl.name) {
        throw ScopeError(at(b.loc) + "'" + b.ctor + "' is not a constructor of " + decl.name);
      }
      if (slots[c->index]) throw ArityError(at(b.loc) + "duplicate branch for " + b.ctor);
      if (b.vars.size() != c->decl().arg_types.size()) {
        throw ArityError(at(b.loc) + "pattern " + b.ctor + " expects " +
                         std::to_string(c->decl().arg_types.size()) + " variables, got " +
                         std::to_string(b.vars.size()));
      }
      slots[c->index] = &b;
    }
    for (std::size_t k = 0; k < slots.size(); ++k) {
      if (!slots[k]) throw ArityError(at(e.loc) + "missing branch for " + decl.constructors[k].name);
    }
    std::optional<Term> ret;
    if (e.annotation) ret = elab(ctx, e.annotation);
    std::vector<MatchBranch> branches;
    for (std::size_t k = 0; k < slots.size(); ++k) {
      const Branch& b = *slots[k];
      auto arg_types = env_.constructor_arg_types(decl.name, k, inst->params);
      for (std::size_t j = 0; j < arg_types.size(); ++j) ctx.push(b.vars[j], arg_types[j]);
      Term body = elab(ctx, b.body);
      if (!ret) ret = lower(type_of(ctx, body), arg_types.size(), b.loc);
      for (std::size_t j = 0; j < arg_types.size(); ++j) ctx.pop();
      branches.push_back(MatchBranch{b.vars, body});
    }
    return Term::match(scrut, sty, *ret, std::move(branches));
  }

  // Moves a type out from under `n` pattern binders it must not mention.
  Term lower(const Term& ty, std::size_t n, const SourceLocation& loc) {
    for (std::size_t i = 0; i < n; ++i) {
      if (occurs_free(ty, i)) {
        throw TypeError(at(loc) + "match branch type depends on a pattern variable", "closed type",
                        "dependent type");
      }
    }
    std::vector<Term> dummy(n, Term::truth());
    return instantiate(ty, dummy);
  }

  Term elab_fix(Context& ctx, const Expr& e) {
    std::vector<std::pair<std::string, ExprPtr>> flat;
    for (const auto& g : e.binders) {
      for (const auto& n : g.names) flat.emplace_back(n, g.type);
    }
    if (static_cast<std::size_t>(e.value) >= flat.size()) {
      throw ArityError(at(e.loc) + "fixpoint " + e.text + " decreases on argument " +
                       std::to_string(e.value) + " but has " + std::to_string(flat.size()) + " binders");
    }
    // Type: forall binders, result.
    std::vector<Term> doms;
    for (const auto& [n, ty] : flat) {
      doms.push_back(elab(ctx, ty));
      ctx.push(n, doms.back());
    }
    Term full = elab(ctx, e.annotation);
    for (std::size_t i = flat.size(); i-- > 0;) {
      ctx.pop();
      full = Term::pi(flat[i].first, doms[i], full);
    }
    // Body: the binders again, now under the self binder.
    ctx.push(e.text, full);
    std::vector<Term> inner_doms;
    for (const auto& [n, ty] : flat) {
      inner_doms.push_back(elab(ctx, ty));
      ctx.push(n, inner_doms.back());
    }
    Term body = elab(ctx, e.args[0]);
    for (std::size_t i = flat.size(); i-- > 0;) {
      ctx.pop();
      body = Term::lam(flat[i].first, inner_doms[i], body);
    }
    ctx.pop();
    return Term::fix(e.text, static_cast<std::size_t>(e.value), full, body);
  }

  const GlobalEnv& env_;
};

// ---------------------------------------------------------------------------
// Declarations

class ProblemReader {
 public:
  explicit ProblemReader(std::string_view text) : parser_(Lexer(text).run()) {}

  Problem run() {
    Problem p;
    p.env = GlobalEnv::with_builtins();
    bool have_goal = false;
    while (!parser_.at_end()) {
      if (have_goal) parser_.fail("end of input after the goal");
      const Token kw = parser_.peek();
      if (kw.kind != Tok::Ident) parser_.fail("declaration keyword");
      if (kw.text == "data") {
        read_data(p);
      } else if (kw.text == "def") {
        read_def(p);
      } else if (kw.text == "param") {
        read_param(p);
      } else if (kw.text == "hyp" || kw.text == "lemma") {
        read_hyp(p);
      } else if (kw.text == "goal") {
        parser_.next();
        p.goal = read_prop(p.env, parser_.expr(), kw.loc);
        if (parser_.is_sym(".")) parser_.next();
        have_goal = true;
        continue;
      } else {
        parser_.fail("declaration keyword (data, def, param, hyp, lemma, goal)");
      }
      terminator();
    }
    if (!have_goal) parser_.fail("'goal'");
    return p;
  }

 private:
  void terminator() {
    if (parser_.at_end()) parser_.fail("'.'");
    parser_.expect_sym(".");
  }

  std::string decl_name(const Problem& p) {
    const Token t = parser_.peek();
    std::string name = parser_.expect_name();
    if (p.env.name_taken(name)) throw ScopeError(at(t.loc) + "duplicate declaration '" + name + "'");
    return name;
  }

  void read_data(Problem& p) {
    const SourceLocation loc = parser_.next().loc;
    InductiveDecl decl;
    decl.name = decl_name(p);
    Context params;
    while (parser_.is_sym("(")) {
      parser_.next();
      std::vector<std::string> names;
      do {
        names.push_back(parser_.expect_name());
      } while (!parser_.is_sym(":"));
      parser_.expect_sym(":");
      parser_.expect_kw("Type");
      parser_.expect_sym(")");
      for (auto& n : names) {
        if (std::find(decl.type_params.begin(), decl.type_params.end(), n) != decl.type_params.end()) {
          throw ScopeError(at(loc) + "duplicate type parameter '" + n + "'");
        }
        decl.type_params.push_back(n);
        params.push(n, Term::type());
      }
    }
    parser_.expect_sym("=");
    // Argument types may mention the datatype itself, so check them against
    // an environment where it already exists.
    GlobalEnv provisional = p.env;
    provisional.add_inductive(InductiveDecl{decl.name, decl.type_params, {Constructor{"$provisional", {}}}});
    Elaborator el(provisional);
    if (parser_.is_sym("|")) parser_.next();
    for (;;) {
      const Token ct = parser_.peek();
      Constructor c;
      c.name = decl_name(p);
      if (c.name == decl.name) throw ScopeError(at(ct.loc) + "constructor '" + c.name + "' reuses the type name");
      while (parser_.starts_atom()) {
        const ExprPtr a = parser_.atom();
        Term ty = el.elab(params, a);
        check_ctor_arg(provisional, params, ty, a->loc);
        c.arg_types.push_back(ty);
      }
      for (const auto& prev : decl.constructors) {
        if (prev.name == c.name) throw ScopeError(at(ct.loc) + "duplicate constructor '" + c.name + "'");
      }
      decl.constructors.push_back(std::move(c));
      if (!parser_.is_sym("|")) break;
      parser_.next();
    }
    p.env.add_inductive(std::move(decl));
  }

  static void check_ctor_arg(const GlobalEnv& env, const Context& params, const Term& ty,
                             const SourceLocation& loc) {
    if (ty.is(TermKind::Pi) || ty.is(TermKind::Sort)) {
      throw TypeError(at(loc) + "constructor argument must be a first-order object type",
                      "object type", print_term(ty, env, params.names()));
    }
    if (universe_of(env, params, ty) != Universe::Type) {
      throw TypeError(at(loc) + "constructor argument must be a type", "Type",
                      print_term(ty, env, params.names()));
    }
  }

  void read_def(Problem& p) {
    const SourceLocation loc = parser_.next().loc;
    std::string name = decl_name(p);
    auto groups = parser_.binder_groups();
    parser_.expect_sym(":");
    ExprPtr type_e = parser_.def_type();
    parser_.expect_sym("=");
    ExprPtr body_e = parser_.expr();

    Elaborator el(p.env);
    Context ctx;
    std::vector<std::pair<std::string, Term>> binders;
    for (const auto& g : groups) {
      for (const auto& n : g.names) {
        Term dom = el.elab(ctx, g.type);
        ctx.push(n, dom);
        binders.emplace_back(n, dom);
      }
    }
    Term type = el.elab(ctx, type_e);
    Term body = el.elab(ctx, body_e);
    for (std::size_t i = binders.size(); i-- > 0;) {
      // Parameters the result type does not depend on stay anonymous in the
      // signature, so it reads as an arrow.
      type = Term::pi(occurs_free(type, 0) ? binders[i].first : "_", binders[i].second, type);
      body = Term::lam(binders[i].first, binders[i].second, body);
    }
    universe_of(p.env, {}, type);
    Term actual = typecheck(p.env, {}, body);
    if (!convertible(p.env, {}, actual, type)) {
      throw TypeError(at(loc) + "body of " + name + " does not have its declared type",
                      print_term(type, p.env), print_term(actual, p.env));
    }
    p.env.add_definition(Definition{name, type, body});
  }

  void read_param(Problem& p) {
    parser_.next();
    std::string name = decl_name(p);
    parser_.expect_sym(":");
    ExprPtr type_e = parser_.expr();
    Elaborator el(p.env);
    Context ctx;
    Term type = el.elab(ctx, type_e);
    universe_of(p.env, {}, type);
    p.env.add_parameter(name, type);
  }

  void read_hyp(Problem& p) {
    const Token kw = parser_.next();
    const Token nt = parser_.peek();
    std::string name = parser_.expect_name();
    for (const auto& h : p.hypotheses) {
      if (h.name == name) throw ScopeError(at(nt.loc) + "duplicate hypothesis '" + name + "'");
    }
    parser_.expect_sym(":");
    Term stmt = read_prop(p.env, parser_.expr(), kw.loc);
    p.hypotheses.push_back(NamedStatement{name, stmt});
    if (kw.text == "lemma") p.lemma_params.push_back(name);
  }

  static Term read_prop(const GlobalEnv& env, const ExprPtr& e, const SourceLocation& loc) {
    Elaborator el(env);
    Context ctx;
    Term t = el.elab(ctx, e);
    if (universe_of(env, {}, t) != Universe::Prop) {
      throw TypeError(at(loc) + "statement is not a proposition", "Prop", "Type");
    }
    return t;
  }

  Parser parser_;
};

}  // namespace

Problem parse_problem(std::string_view text) { return ProblemReader(text).run(); }

Term parse_term(std::string_view text, const GlobalEnv& env, const Context& ctx) {
  Parser parser(Lexer(text).run());
  ExprPtr e = parser.expr();
  if (!parser.at_end()) parser.fail("end of input");
  Context local = ctx;
  Term t = Elaborator(env).elab(local, e);
  typecheck(env, ctx, t);
  return t;
}

}  // namespace folbridge
