#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <unordered_map>

#include "il/annotated.hpp"
#include "il/harness.hpp"
#include "il/semantics.hpp"
#include "il/syntax.hpp"
#include "il/text.hpp"

namespace il::test {

inline TermPtr P(std::string_view text) { return parse_program(text); }
inline ExprPtr E(std::string_view text) { return parse_expr(text); }

inline Env env(std::map<Name, Value> m) { return Env::from(m); }

/// Programs that can only get stuck through the initial environment: no
/// division and no deliberately unbound variables.
inline GenConfig total_config(std::uint64_t seed) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.partial_ops = false;
  cfg.unbound_probability = 0;
  return cfg;
}

/// Checks that every application targets a visible function with matching
/// arity and that names in each group and parameter list are distinct.
inline bool well_scoped(const Term& t, std::map<Name, std::size_t> funs = {}) {
  if (well_formedness_error(t)) return false;
  return std::visit(
      overloaded{
          [&](const Let& l) { return well_scoped(*l.body, funs); },
          [&](const If& i) {
            return well_scoped(*i.then_branch, funs) && well_scoped(*i.else_branch, funs);
          },
          [&](const Exp&) { return true; },
          [&](const Fun& f) {
            for (const auto& d : f.group) funs[d.name] = d.params.size();
            for (const auto& d : f.group)
              if (!well_scoped(*d.body, funs)) return false;
            return well_scoped(*f.cont, funs);
          },
          [&](const App& a) {
            auto it = funs.find(a.fun);
            return it != funs.end() && it->second == a.args.size();
          },
      },
      t.node);
}

/// Maps every annotated node to its fact, by node identity.
template <class A>
void index_facts(const Annotated<A>& t, std::unordered_map<const Term*, A>& out) {
  out[t.term.get()] = t.fact;
  for (const auto& s : t.sub) index_facts(s, out);
}

/// Runs `c` to completion under `oracle`, calling `visit` on every focus.
template <class Visit>
void for_each_focus(Config c, const Oracle& oracle, std::uint64_t fuel, std::size_t max_events,
                    Visit&& visit) {
  auto observe = [&](const Config& k) { visit(k.focus.get()); };
  for (std::size_t i = 0;; ++i) {
    auto anchor = run_to_anchor(c, fuel, observe);
    auto* ready = std::get_if<Ready>(&anchor);
    if (!ready || i == max_events) return;
    c = apply_extern(ready->pending, oracle(i, ready->action, ready->args)).second;
  }
}

/// Kinds of term nodes, with the names of applications, externs and binders.
inline void node_kinds(const Term& t, std::multiset<std::string>& out) {
  std::visit(overloaded{
                 [&](const Let& l) {
                   if (auto* s = std::get_if<Syscall>(&l.rhs))
                     out.insert("extern " + s->action);
                   else
                     out.insert("let " + l.var);
                 },
                 [&](const If&) { out.insert("if"); },
                 [&](const Exp&) { out.insert("exp"); },
                 [&](const Fun& f) {
                   out.insert("fun");
                   for (const auto& d : f.group) out.insert("def " + d.name);
                 },
                 [&](const App& a) { out.insert("app " + a.fun); },
             },
             t.node);
  for (const auto& k : children(t)) node_kinds(*k, out);
}

inline bool multiset_includes(const std::multiset<std::string>& big,
                              const std::multiset<std::string>& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace il::test
