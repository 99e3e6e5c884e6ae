#pragma once

#include <vector>

#include "il/annotated.hpp"
#include "il/context.hpp"
#include "il/mutation.hpp"
#include "il/reach.hpp"
#include "il/syntax.hpp"

namespace il {

/// Parameter lists of the functions in scope.
using ParamCtx = Layered<std::vector<Name>>;
/// Variables live at the entry of each function body in scope.
using LiveCtx = Layered<VarSet>;

/// Least true-liveness annotation. Function body live sets are computed by
/// iterating rounds of a backward pass from empty sets until they are stable.
Annotated<VarSet> infer_tlive(const TermPtr& t, Mutation mutation = Mutation::none);

/// Decides the inductive true-liveness judgment `params | live |- tlive t`.
CheckResult check_tlive(const ParamCtx& params, const LiveCtx& live, const Annotated<VarSet>& t);

}  // namespace il
