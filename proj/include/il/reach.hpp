#pragma once

#include <optional>
#include <string>

#include "il/annotated.hpp"
#include "il/context.hpp"
#include "il/syntax.hpp"

namespace il {

/// Outcome of evaluating a condition under the empty environment.
enum class Branch { taken_true, taken_false, unknown };

Branch static_branch(const Expr& e);

/// Reachability of function bodies, by name, grouped like the function context.
using ReachCtx = Layered<bool>;

/// Failure of a judgment check: the first violated premise in pre-order.
/// `path` lists child indices from the root, e.g. "/1/0".
struct Rejection {
  std::string path;
  std::string rule;
  std::string detail;
};

/// Empty on acceptance.
using CheckResult = std::optional<Rejection>;

std::string describe(const Rejection& r);

/// Least reachability annotation with the root marked reachable.
Annotated<bool> infer_reach(const TermPtr& t);

/// Decides the inductive reachability judgment `ctx |- reach t`.
CheckResult check_reach(const ReachCtx& ctx, const Annotated<bool>& t);

}  // namespace il
