#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "il/context.hpp"
#include "il/syntax.hpp"

namespace il {

/// A function closure (V, params, body). Closures capture variables only;
/// functions are resolved through the function context.
struct Closure {
  Env env;
  std::vector<Name> params;
  TermPtr body;
};

using FunContext = Layered<Closure>;

/// Runtime configuration (L, V, s).
struct Config {
  FunContext ctx;
  Env env;
  TermPtr focus;
};

/// Start configuration with an empty function context.
Config initial_config(TermPtr program, Env env = {});

/// Observable system-call event `result = action(args)`.
struct ExternEvent {
  Name action;
  std::vector<Value> args;
  Value result;

  auto operator<=>(const ExternEvent&) const = default;
};

struct Tau {
  bool operator==(const Tau&) const = default;
};
using Event = std::variant<Tau, ExternEvent>;

// ---------------------------------------------------------------------------
// Single steps
// ---------------------------------------------------------------------------

struct Stepped {
  Config next;
};
/// The focus is a system call whose arguments evaluated to `args`.
struct AtExtern {
  Name action;
  std::vector<Value> args;
};
struct Stuck {};

using StepResult = std::variant<Stepped, AtExtern, Stuck>;

/// One silent transition (rules Op, Cond, Fun, App). Stuck when no rule
/// applies, which includes a finished expression focus.
StepResult step_silent(const Config& c);

/// Rule Extern: resolve the pending system call with `result`.
/// Throws std::logic_error unless step_silent(c) is AtExtern.
std::pair<ExternEvent, Config> apply_extern(const Config& c, Value result);

/// res: the value of an expression focus, bottom for every other shape.
std::optional<Value> result_of(const Config& c);

// ---------------------------------------------------------------------------
// Runs to the next observable point
// ---------------------------------------------------------------------------

struct Terminal {
  std::optional<Value> result;
};
struct Ready {
  Name action;
  std::vector<Value> args;
  Config pending;
};
struct FuelExhausted {
  Config last;
};
using Anchor = std::variant<Terminal, Ready, FuelExhausted>;

/// Called with every configuration visited, including the start.
using StepObserver = std::function<void(const Config&)>;

/// Takes at most `fuel` silent steps.
Anchor run_to_anchor(Config c, std::uint64_t fuel, const StepObserver& observe = {});

// ---------------------------------------------------------------------------
// Traces
// ---------------------------------------------------------------------------

struct Terminated {
  std::optional<Value> result;
  auto operator<=>(const Terminated&) const = default;
};
struct Cutoff {
  auto operator<=>(const Cutoff&) const = default;
};
using Outcome = std::variant<Terminated, Cutoff>;

struct Trace {
  std::vector<ExternEvent> events;
  Outcome outcome;

  auto operator<=>(const Trace&) const = default;
};

/// Source of system-call results, keyed by call index, action and arguments.
using Oracle = std::function<Value(std::size_t index, const Name& action, std::span<const Value> args)>;

/// Deterministic pseudo-random results in [-2, 12], reproducible from `seed`.
Oracle seeded_oracle(std::uint64_t seed);
/// Replays `choices` in order, then answers `fallback`.
Oracle replay_oracle(std::vector<Value> choices, Value fallback = 0);

/// `fuel` bounds each silent run between events; `max_events` bounds the
/// number of system calls resolved.
Trace run_trace(const Config& c, const Oracle& oracle, std::uint64_t fuel, std::size_t max_events);

/// One line per event (`EVT a(1,2)=3`) then `END TERM w`, `END BOT` or `END CUTOFF`.
std::string format_trace(const Trace& t);
Trace parse_trace(std::string_view text);

}  // namespace il
