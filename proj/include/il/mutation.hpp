#pragma once

#include <optional>
#include <string_view>

namespace il {

/// Deliberate defects that can be switched on in the analyses and passes.
/// They exist so the differential harness can demonstrate that it notices
/// broken optimizations; production callers always pass `none`.
enum class Mutation {
  none,
  dve_drop_live_param,        // dve deletes a parameter its function body reads
  dve_keep_param_drop_arg,    // dve keeps a dead parameter but drops its argument
  uce_wrong_branch,           // uce folds a static conditional to the other branch
  tlive_skip_context,         // infer_tlive forgets to bind a group's functions
};

std::string_view to_string(Mutation m);
std::optional<Mutation> mutation_from_string(std::string_view s);

}  // namespace il
