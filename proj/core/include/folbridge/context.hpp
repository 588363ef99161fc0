#pragma once

#include <string>
#include <vector>

#include "folbridge/term.hpp"

namespace folbridge {

/// Local typing context; the last entry is Var 0.
class Context {
 public:
  struct Entry {
    std::string name;
    Term type;
  };

  Context() = default;

  void push(std::string name, Term type) { entries_.push_back({std::move(name), std::move(type)}); }
  void pop() { entries_.pop_back(); }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// Type of Var(index), lifted into the full context.
  Term type_of(std::size_t index) const {
    return lift(entries_.at(entries_.size() - 1 - index).type, index + 1);
  }
  const std::string& name_of(std::size_t index) const {
    return entries_.at(entries_.size() - 1 - index).name;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.name);
    return out;
  }

  const std::vector<Entry>& entries() const { return entries_; }

 private:
  std::vector<Entry> entries_;
};

}  // namespace folbridge
