#include "il/mutation.hpp"

#include <array>
#include <utility>

namespace il {

namespace {

constexpr std::array<std::pair<Mutation, std::string_view>, 5> kNames{{
    {Mutation::none, "none"},
    {Mutation::dve_drop_live_param, "dve-drop-live-param"},
    {Mutation::dve_keep_param_drop_arg, "dve-keep-param-drop-arg"},
    {Mutation::uce_wrong_branch, "uce-wrong-branch"},
    {Mutation::tlive_skip_context, "tlive-skip-context"},
}};

}  // namespace

std::string_view to_string(Mutation m) {
  for (const auto& [k, name] : kNames)
    if (k == m) return name;
  return "?";
}

std::optional<Mutation> mutation_from_string(std::string_view s) {
  for (const auto& [k, name] : kNames)
    if (name == s) return k;
  return std::nullopt;
}

}  // namespace il
