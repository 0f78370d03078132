#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace shk {

struct ContextError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class VariableContext;
using ContextPtr = std::shared_ptr<const VariableContext>;

// Ordered set of variable names. The order fixes the monomial term order and
// the positional pairing between a space and its dual. Immutable once built.
class VariableContext {
 public:
  static ContextPtr make(std::vector<std::string> names) {
    return ContextPtr(new VariableContext(std::move(names)));
  }

  // prefix1..prefixN
  static ContextPtr numbered(const std::string& prefix, size_t count) {
    std::vector<std::string> names;
    names.reserve(count);
    for (size_t i = 1; i <= count; ++i) names.push_back(prefix + std::to_string(i));
    return make(std::move(names));
  }

  size_t size() const { return names_.size(); }
  const std::string& name(size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<size_t> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool same(const VariableContext& o) const { return names_ == o.names_; }

  static bool equal(const ContextPtr& a, const ContextPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->same(*b);
  }

  // Name union: a's variables in order, then b's new ones in b's order.
  // Shared names must appear in the same relative order in both operands,
  // otherwise the merged term order would be ambiguous.
  static ContextPtr merge(const ContextPtr& a, const ContextPtr& b) {
    if (equal(a, b)) return a;
    std::vector<std::string> names = a->names_;
    for (const auto& n : b->names_)
      if (!a->find(n)) names.push_back(n);
    auto merged = make(std::move(names));
    size_t last = 0;
    bool first = true;
    for (const auto& n : b->names_) {
      size_t pos = *merged->find(n);
      if (!first && pos <= last)
        throw ContextError("conflicting variable order for '" + n + "'");
      last = pos;
      first = false;
    }
    return merged;
  }

 private:
  explicit VariableContext(std::vector<std::string> names) : names_(std::move(names)) {
    for (size_t i = 0; i < names_.size(); ++i) {
      validate(names_[i]);
      if (!index_.emplace(names_[i], i).second)
        throw ContextError("duplicate variable '" + names_[i] + "'");
    }
  }

  static void validate(const std::string& n) {
    auto lower = [](char c) { return c >= 'a' && c <= 'z'; };
    auto tail = [&](char c) { return lower(c) || (c >= '0' && c <= '9') || c == '_'; };
    bool ok = !n.empty() && lower(n[0]);
    for (size_t i = 1; ok && i < n.size(); ++i) ok = tail(n[i]);
    if (!ok) throw ContextError("invalid variable name '" + n + "'");
  }

  std::vector<std::string> names_;
  std::unordered_map<std::string, size_t> index_;
};

}  // namespace shk
