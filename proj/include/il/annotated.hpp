#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "il/syntax.hpp"

namespace il {

/// A tree of analysis facts, one per term node, children in the order of
/// `il::children` (fundef: one fact per body, then the continuation).
template <class A>
struct FactTree {
  A fact;
  std::vector<FactTree<A>> sub;
};

/// A term where every node carries a fact. `sub[i]` annotates
/// `children(*term)[i]`.
template <class A>
struct Annotated {
  TermPtr term;
  A fact;
  std::vector<Annotated<A>> sub;
};

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <class A>
TermPtr strip(const Annotated<A>& t) {
  return t.term;
}

template <class A>
FactTree<A> facts(const Annotated<A>& t) {
  FactTree<A> out{t.fact, {}};
  out.sub.reserve(t.sub.size());
  for (const auto& s : t.sub) out.sub.push_back(facts(s));
  return out;
}

template <class A>
Annotated<A> zip_ann(const TermPtr& t, const FactTree<A>& f) {
  auto kids = children(*t);
  if (kids.size() != f.sub.size())
    throw ShapeError("fact tree does not match term at " + describe_node(*t) + ": expected " +
                     std::to_string(kids.size()) + " children, got " +
                     std::to_string(f.sub.size()));
  Annotated<A> out{t, f.fact, {}};
  out.sub.reserve(kids.size());
  for (std::size_t i = 0; i < kids.size(); ++i) out.sub.push_back(zip_ann(kids[i], f.sub[i]));
  return out;
}

template <class A>
void preorder(const Annotated<A>& t, std::vector<A>& out) {
  out.push_back(t.fact);
  for (const auto& s : t.sub) preorder(s, out);
}

namespace detail {

template <class A>
Annotated<A> zip_preorder(const TermPtr& t, const std::vector<A>& fs, std::size_t& pos) {
  if (pos >= fs.size()) throw ShapeError("too few facts: ran out at " + describe_node(*t));
  Annotated<A> out{t, fs[pos++], {}};
  for (const auto& k : children(*t)) out.sub.push_back(zip_preorder(k, fs, pos));
  return out;
}

}  // namespace detail

/// Pairs a pre-order fact listing with the nodes of `t`.
template <class A>
Annotated<A> zip_preorder(const TermPtr& t, const std::vector<A>& fs) {
  std::size_t pos = 0;
  auto out = detail::zip_preorder(t, fs, pos);
  if (pos != fs.size())
    throw ShapeError("too many facts: " + std::to_string(fs.size() - pos) + " left over");
  return out;
}

// Sidecar text: one fact per line in pre-order, indented by depth, with the
// node kind as a trailing '#' comment. `true`/`false` for reachability,
// `{x,y}` for variable sets.
std::string format_fact(bool b);
std::string format_fact(const VarSet& xs);

std::string write_sidecar(const Annotated<bool>& t);
std::string write_sidecar(const Annotated<VarSet>& t);

std::vector<bool> read_reach_sidecar(std::string_view text);
std::vector<VarSet> read_live_sidecar(std::string_view text);

}  // namespace il
