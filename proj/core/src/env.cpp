#include "folbridge/env.hpp"

#include <algorithm>

#include "folbridge/error.hpp"

namespace folbridge {

GlobalEnv GlobalEnv::with_builtins() {
  GlobalEnv env;
  env.add_inductive({kBoolName, {}, {{"true", {}}, {"false", {}}}});
  return env;
}

bool GlobalEnv::name_taken(const std::string& name) const {
  return inductive_index_.count(name) || definition_index_.count(name) ||
         ctor_index_.count(name);
}

void GlobalEnv::add_inductive(InductiveDecl decl) {
  if (name_taken(decl.name)) throw ScopeError("duplicate declaration: " + decl.name);
  if (decl.constructors.empty()) {
    throw ArityError("inductive " + decl.name + " has no constructors");
  }
  const std::size_t idx = inductives_.size();
  for (std::size_t k = 0; k < decl.constructors.size(); ++k) {
    const auto& c = decl.constructors[k];
    if (name_taken(c.name) || c.name == decl.name) {
      throw ScopeError("duplicate declaration: " + c.name);
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (decl.constructors[j].name == c.name) throw ScopeError("duplicate constructor: " + c.name);
    }
    ctor_index_[c.name] = {idx, k};
  }
  inductive_index_[decl.name] = idx;
  inductives_.push_back(std::move(decl));
}

void GlobalEnv::add_definition(Definition def) {
  if (name_taken(def.name)) throw ScopeError("duplicate declaration: " + def.name);
  definition_index_[def.name] = definitions_.size();
  definitions_.push_back(std::move(def));
}

void GlobalEnv::add_parameter(std::string name, Term type) {
  add_definition({std::move(name), std::move(type), std::nullopt});
}

const InductiveDecl* GlobalEnv::find_inductive(const std::string& name) const {
  auto it = inductive_index_.find(name);
  return it == inductive_index_.end() ? nullptr : &inductives_[it->second];
}

const Definition* GlobalEnv::find_definition(const std::string& name) const {
  auto it = definition_index_.find(name);
  return it == definition_index_.end() ? nullptr : &definitions_[it->second];
}

std::optional<CtorRef> GlobalEnv::find_constructor(const std::string& name) const {
  auto it = ctor_index_.find(name);
  if (it == ctor_index_.end()) return std::nullopt;
  return CtorRef{&inductives_[it->second.first], it->second.second};
}

const InductiveDecl& GlobalEnv::inductive(const std::string& name) const {
  const auto* d = find_inductive(name);
  if (!d) throw ScopeError("unknown inductive: " + name);
  return *d;
}

const Definition& GlobalEnv::definition(const std::string& name) const {
  const auto* d = find_definition(name);
  if (!d) throw ScopeError("unknown constant: " + name);
  return *d;
}

Term GlobalEnv::inductive_type(const std::string& name) const {
  const auto& d = inductive(name);
  Term t = Term::type();
  for (auto it = d.type_params.rbegin(); it != d.type_params.rend(); ++it) {
    t = Term::pi(*it, Term::type(), t);
  }
  return t;
}

Term GlobalEnv::constructor_type(const std::string& inductive_name, std::size_t index) const {
  const auto& d = inductive(inductive_name);
  const auto& c = d.constructors.at(index);
  const std::size_t p = d.type_params.size();
  const std::size_t n = c.arg_types.size();
  // Result: the inductive applied to its parameters, under p + n binders.
  std::vector<Term> params;
  for (std::size_t j = 0; j < p; ++j) params.push_back(Term::var(n + p - 1 - j));
  Term t = Term::app(Term::ind(d.name), params);
  for (std::size_t k = n; k-- > 0;) {
    t = Term::pi("_", lift(c.arg_types[k], k), t);
  }
  for (std::size_t j = p; j-- > 0;) t = Term::pi(d.type_params[j], Term::type(), t);
  return t;
}

std::vector<Term> GlobalEnv::constructor_arg_types(const std::string& inductive_name,
                                                   std::size_t index,
                                                   std::span<const Term> params) const {
  const auto& d = inductive(inductive_name);
  const auto& c = d.constructors.at(index);
  if (params.size() != d.type_params.size()) {
    throw ArityError("inductive " + d.name + " expects " + std::to_string(d.type_params.size()) +
                     " type arguments");
  }
  std::vector<Term> out;
  for (std::size_t k = 0; k < c.arg_types.size(); ++k) {
    out.push_back(lift(instantiate(c.arg_types[k], params), k));
  }
  return out;
}

bool Problem::is_lemma(const std::string& name) const {
  return std::find(lemma_params.begin(), lemma_params.end(), name) != lemma_params.end();
}

}  // namespace folbridge
