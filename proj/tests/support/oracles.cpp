#include "support/oracles.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "folbridge/printer.hpp"

namespace folbridge::testing {

namespace {

// Named form: variables are constants spelled "%<name>", binder hints are
// the unique names themselves.
bool is_named_var(const Term& t) { return t.is(TermKind::Const) && !t.name().empty() && t.name()[0] == '%'; }

class Namer {
 public:
  Namer(std::vector<std::string> free, std::string prefix) : free_(std::move(free)), prefix_(std::move(prefix)) {}

  Term to_named(const Term& t) {
    switch (t.kind()) {
      case TermKind::Var: {
        const std::size_t i = t.index();
        if (i < bound_.size()) return Term::constant("%" + bound_[bound_.size() - 1 - i]);
        const std::size_t f = i - bound_.size();
        if (f >= free_.size()) throw std::logic_error("unnamed free variable");
        return Term::constant("%" + free_[f]);
      }
      case TermKind::Pi:
      case TermKind::Lam:
      case TermKind::Exists: {
        Term dom = to_named(t.domain());
        std::string n = fresh();
        bound_.push_back(n);
        Term body = to_named(t.body());
        bound_.pop_back();
        if (t.is(TermKind::Pi)) return Term::pi(n, dom, body);
        if (t.is(TermKind::Lam)) return Term::lam(n, dom, body);
        return Term::exists(n, dom, body);
      }
      case TermKind::Fix: {
        Term ty = to_named(t.full_type());
        std::string n = fresh();
        bound_.push_back(n);
        Term body = to_named(t.body());
        bound_.pop_back();
        return Term::fix(n, t.index(), ty, body);
      }
      case TermKind::Match: {
        std::vector<MatchBranch> bs;
        for (const auto& b : t.branches()) {
          std::vector<std::string> names;
          for (std::size_t j = 0; j < b.arity(); ++j) {
            names.push_back(fresh());
            bound_.push_back(names.back());
          }
          Term body = to_named(b.body);
          bound_.resize(bound_.size() - b.arity());
          bs.push_back({names, body});
        }
        return Term::match(to_named(t.scrutinee()), to_named(t.scrutinee_type()), to_named(t.return_type()),
                           std::move(bs));
      }
      case TermKind::App:
        return Term::app(to_named(t.fn()), to_named(t.arg()));
      case TermKind::Eq:
        return Term::eq(to_named(t.eq_type()), to_named(t.lhs()), to_named(t.rhs()));
      case TermKind::And:
        return Term::conj(to_named(t.lhs()), to_named(t.rhs()));
      case TermKind::Or:
        return Term::disj(to_named(t.lhs()), to_named(t.rhs()));
      case TermKind::Not:
        return Term::neg(to_named(t.operand()));
      default:
        return t;
    }
  }

 private:
  std::string fresh() { return prefix_ + std::to_string(counter_++); }

  std::vector<std::string> free_;
  std::string prefix_;
  std::vector<std::string> bound_;
  std::size_t counter_ = 0;
};

// Back to de Bruijn; `free` names the outer context, index 0 first.
class Unnamer {
 public:
  explicit Unnamer(std::vector<std::string> free) : free_(std::move(free)) {}

  Term run(const Term& t) {
    switch (t.kind()) {
      case TermKind::Const: {
        if (!is_named_var(t)) return t;
        const std::string n = t.name().substr(1);
        for (std::size_t i = 0; i < bound_.size(); ++i) {
          if (bound_[bound_.size() - 1 - i] == n) return Term::var(i);
        }
        auto it = std::find(free_.begin(), free_.end(), n);
        if (it == free_.end()) throw std::logic_error("unknown named variable " + n);
        return Term::var(bound_.size() + static_cast<std::size_t>(it - free_.begin()));
      }
      case TermKind::Pi:
      case TermKind::Lam:
      case TermKind::Exists: {
        Term dom = run(t.domain());
        bound_.push_back(t.name());
        Term body = run(t.body());
        bound_.pop_back();
        if (t.is(TermKind::Pi)) return Term::pi(t.name(), dom, body);
        if (t.is(TermKind::Lam)) return Term::lam(t.name(), dom, body);
        return Term::exists(t.name(), dom, body);
      }
      case TermKind::Fix: {
        Term ty = run(t.full_type());
        bound_.push_back(t.name());
        Term body = run(t.body());
        bound_.pop_back();
        return Term::fix(t.name(), t.index(), ty, body);
      }
      case TermKind::Match: {
        std::vector<MatchBranch> bs;
        for (const auto& b : t.branches()) {
          for (const auto& n : b.binders) bound_.push_back(n);
          Term body = run(b.body);
          bound_.resize(bound_.size() - b.arity());
          bs.push_back({b.binders, body});
        }
        return Term::match(run(t.scrutinee()), run(t.scrutinee_type()), run(t.return_type()), std::move(bs));
      }
      case TermKind::App:
        return Term::app(run(t.fn()), run(t.arg()));
      case TermKind::Eq:
        return Term::eq(run(t.eq_type()), run(t.lhs()), run(t.rhs()));
      case TermKind::And:
        return Term::conj(run(t.lhs()), run(t.rhs()));
      case TermKind::Or:
        return Term::disj(run(t.lhs()), run(t.rhs()));
      case TermKind::Not:
        return Term::neg(run(t.operand()));
      default:
        return t;
    }
  }

 private:
  std::vector<std::string> free_;
  std::vector<std::string> bound_;
};

// Replaces named variables by other named terms; binder names are unique,
// so no capture is possible.
Term replace_named(const Term& t, const std::map<std::string, Term>& m) {
  switch (t.kind()) {
    case TermKind::Const: {
      if (!is_named_var(t)) return t;
      auto it = m.find(t.name().substr(1));
      return it == m.end() ? t : it->second;
    }
    case TermKind::Pi:
      return Term::pi(t.name(), replace_named(t.domain(), m), replace_named(t.body(), m));
    case TermKind::Lam:
      return Term::lam(t.name(), replace_named(t.domain(), m), replace_named(t.body(), m));
    case TermKind::Exists:
      return Term::exists(t.name(), replace_named(t.domain(), m), replace_named(t.body(), m));
    case TermKind::Fix:
      return Term::fix(t.name(), t.index(), replace_named(t.full_type(), m), replace_named(t.body(), m));
    case TermKind::Match: {
      std::vector<MatchBranch> bs;
      for (const auto& b : t.branches()) bs.push_back({b.binders, replace_named(b.body, m)});
      return Term::match(replace_named(t.scrutinee(), m), replace_named(t.scrutinee_type(), m),
                         replace_named(t.return_type(), m), std::move(bs));
    }
    case TermKind::App:
      return Term::app(replace_named(t.fn(), m), replace_named(t.arg(), m));
    case TermKind::Eq:
      return Term::eq(replace_named(t.eq_type(), m), replace_named(t.lhs(), m), replace_named(t.rhs(), m));
    case TermKind::And:
      return Term::conj(replace_named(t.lhs(), m), replace_named(t.rhs(), m));
    case TermKind::Or:
      return Term::disj(replace_named(t.lhs(), m), replace_named(t.rhs(), m));
    case TermKind::Not:
      return Term::neg(replace_named(t.operand(), m));
    default:
      return t;
  }
}

std::vector<std::string> free_names(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

}  // namespace

Term named_lift(const Term& t, std::size_t amount, std::size_t cutoff) {
  const std::size_t n = t.loose_bound();
  Term named = Namer(free_names("f", n), "b").to_named(t);
  // Result context: f_i for i < cutoff, then `amount` unused slots, then the rest.
  std::vector<std::string> out;
  for (std::size_t i = 0; i < cutoff; ++i) out.push_back("f" + std::to_string(i));
  for (std::size_t i = 0; i < amount; ++i) out.push_back("gap" + std::to_string(i));
  for (std::size_t i = cutoff; i < n; ++i) out.push_back("f" + std::to_string(i));
  return Unnamer(out).run(named);
}

Term named_subst(const Term& t, std::size_t index, const Term& replacement) {
  const std::size_t n = std::max(t.loose_bound(), index + 1);
  Term named = Namer(free_names("f", n), "b").to_named(t);
  // The replacement's Var i is the outer variable f_{index+1+i}.
  const std::size_t m = replacement.loose_bound();
  std::vector<std::string> rnames;
  for (std::size_t i = 0; i < m; ++i) rnames.push_back("f" + std::to_string(index + 1 + i));
  Term rnamed = Namer(rnames, "r").to_named(replacement);
  std::map<std::string, Term> sub{{"f" + std::to_string(index), rnamed}};
  Term replaced = replace_named(named, sub);
  std::vector<std::string> out;
  const std::size_t total = std::max(n, index + 1 + m);
  for (std::size_t i = 0; i < total; ++i) {
    if (i != index) out.push_back("f" + std::to_string(i));
  }
  return Unnamer(out).run(replaced);
}

Term random_raw_term(Rng& rng, std::size_t scope, std::size_t size) {
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  if (size <= 1) {
    if (scope > 0 && pick(3) != 0) return Term::var(pick(scope));
    switch (pick(3)) {
      case 0: return Term::constant("c" + std::to_string(pick(3)));
      case 1: return Term::int_type();
      default: return Term::int_lit(static_cast<std::int64_t>(pick(5)));
    }
  }
  const std::size_t rest = size - 1;
  switch (pick(7)) {
    case 0:
      return Term::lam("x", random_raw_term(rng, scope, rest / 3 + 1), random_raw_term(rng, scope + 1, rest - rest / 3));
    case 1:
      return Term::pi("y", random_raw_term(rng, scope, rest / 3 + 1), random_raw_term(rng, scope + 1, rest - rest / 3));
    case 2:
      return Term::app(random_raw_term(rng, scope, rest / 2 + 1), random_raw_term(rng, scope, rest - rest / 2));
    case 3: {
      std::vector<MatchBranch> bs;
      bs.push_back({{}, random_raw_term(rng, scope, rest / 3 + 1)});
      bs.push_back({{"h", "t"}, random_raw_term(rng, scope + 2, rest / 3 + 1)});
      return Term::match(random_raw_term(rng, scope, rest / 3 + 1), Term::constant("ty"), Term::int_type(),
                         std::move(bs));
    }
    case 4:
      return Term::fix("f", 0, random_raw_term(rng, scope, rest / 3 + 1), random_raw_term(rng, scope + 1, rest / 2 + 1));
    case 5:
      return Term::eq(Term::int_type(), random_raw_term(rng, scope, rest / 2 + 1), random_raw_term(rng, scope, rest / 2 + 1));
    default:
      return Term::conj(random_raw_term(rng, scope, rest / 2 + 1), Term::neg(random_raw_term(rng, scope, rest / 2 + 1)));
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string corpus_path(const std::string& name) { return std::string(FOLBRIDGE_CORPUS_DIR) + "/" + name; }
std::string golden_path(const std::string& name) { return std::string(FOLBRIDGE_GOLDEN_DIR) + "/" + name; }

std::vector<std::string> corpus_files() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(FOLBRIDGE_CORPUS_DIR)) {
    if (e.path().extension() == ".fol") out.push_back(e.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace folbridge::testing

namespace folbridge {

void PrintTo(const Term& t, std::ostream* os) {
  try {
    *os << print_term(t, GlobalEnv::with_builtins());
  } catch (const std::exception&) {
    *os << "<term of size " << term_size(t) << ">";
  }
}

}  // namespace folbridge
