#pragma once

#include <cstddef>
#include <vector>

#include "il/annotated.hpp"
#include "il/mutation.hpp"
#include "il/syntax.hpp"
#include "il/tlive.hpp"

namespace il {

/// Keeps ys[i] exactly when pred(xs[i]); stops at the shorter list.
template <class X, class Y, class Pred>
std::vector<Y> filterby(Pred&& pred, const std::vector<X>& xs, const std::vector<Y>& ys) {
  std::vector<Y> out;
  for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i)
    if (pred(xs[i])) out.push_back(ys[i]);
  return out;
}

template <class X, class Pred>
std::vector<X> filter(Pred&& pred, const std::vector<X>& xs) {
  return filterby(std::forward<Pred>(pred), xs, xs);
}

/// Unreachable code elimination: folds statically decided conditionals and
/// deletes functions whose body is annotated unreachable, dropping a `fun`
/// node whose group becomes empty.
TermPtr uce(const Annotated<bool>& t, Mutation mutation = Mutation::none);

/// Thrown by dve when an application names a function absent from the contexts.
class UnknownFunction : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dead variable elimination: drops dead pure lets, dead parameters together
/// with their arguments at every call site, and folds static conditionals.
TermPtr dve(const ParamCtx& params, const LiveCtx& live, const Annotated<VarSet>& t,
            Mutation mutation = Mutation::none);

/// Replace `if e then a else b` by the taken branch wherever `e` is closed
/// and evaluates. Nothing else changes.
TermPtr fold_static_conditionals(const TermPtr& t);

/// Analyse-and-transform conveniences used by the CLI and the harness.
TermPtr optimize_uce(const TermPtr& t, Mutation mutation = Mutation::none);
TermPtr optimize_dve(const TermPtr& t, Mutation mutation = Mutation::none);

}  // namespace il
