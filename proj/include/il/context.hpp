#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "il/syntax.hpp"

namespace il {

/// Variable environment V. Persistent: updates share structure with the
/// original, so configurations can be copied freely.
class Env {
 public:
  Env() = default;
  static Env from(const std::map<Name, Value>& bindings);

  std::optional<Value> lookup(const Name& x) const;
  Env bind(const Name& x, Value v) const;
  /// Simultaneous update V[xs -> vs]; the lists must have equal length.
  Env bind_all(std::span<const Name> xs, std::span<const Value> vs) const;

  /// Visible bindings, most recent binding for each name.
  std::map<Name, Value> bindings() const;

 private:
  struct Node {
    Name name;
    Value value;
    std::shared_ptr<const Node> next;
  };
  std::shared_ptr<const Node> head_;
};

/// A list of groups of named entries, most recent group first. Lookup finds
/// the first entry with the given name scanning from the most recent group;
/// rewind drops every group more recent than the one that binds the name.
template <class T>
class Layered {
 public:
  using Entry = std::pair<Name, T>;
  using Group = std::vector<Entry>;

  Layered() = default;

  Layered push(Group group) const {
    Layered out;
    out.head_ = std::make_shared<const Node>(Node{std::move(group), head_});
    out.size_ = size_ + 1;
    return out;
  }

  const T* lookup(const Name& name) const {
    for (const Node* n = head_.get(); n; n = n->next.get())
      for (const auto& [key, value] : n->group)
        if (key == name) return &value;
    return nullptr;
  }

  bool contains(const Name& name) const { return lookup(name) != nullptr; }

  Layered rewind(const Name& name) const {
    std::size_t size = size_;
    for (auto n = head_; n; n = n->next, --size)
      for (const auto& entry : n->group)
        if (entry.first == name) {
          Layered out;
          out.head_ = n;
          out.size_ = size;
          return out;
        }
    throw std::out_of_range("rewind: no group binds " + name);
  }

  /// Number of groups.
  std::size_t depth() const { return size_; }

  /// Groups from most recent to oldest.
  std::vector<const Group*> groups() const {
    std::vector<const Group*> out;
    for (const Node* n = head_.get(); n; n = n->next.get()) out.push_back(&n->group);
    return out;
  }

  /// True if `other` is a suffix of this context (shares the same tail).
  bool has_suffix(const Layered& other) const {
    for (auto n = head_;; n = n->next) {
      if (n == other.head_) return true;
      if (!n) return false;
    }
  }

 private:
  struct Node {
    Group group;
    std::shared_ptr<const Node> next;
  };
  std::shared_ptr<const Node> head_;
  std::size_t size_ = 0;
};

}  // namespace il
