#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "il/semantics.hpp"
#include "il/syntax.hpp"

namespace il {

/// Candidate system-call results tried at every ready pair. Sorted and
/// deduplicated; never empty.
class ProbeSet {
 public:
  explicit ProbeSet(std::vector<Value> values);

  /// {0, 1} together with every literal occurring in the programs.
  static ProbeSet defaults(std::span<const TermPtr> programs);

  const std::vector<Value>& values() const { return values_; }

 private:
  std::vector<Value> values_;
};

enum class ExhaustReason { depth, fuel };

/// A replayable witness: feeding `choices` to both configurations as
/// system-call results reproduces the divergence.
struct Counterexample {
  std::vector<Value> choices;
  std::string divergence;
  Trace left;
  Trace right;
};

struct Equivalent {
  std::size_t depth;
};
struct Distinguished {
  Counterexample witness;
};
struct Exhausted {
  ExhaustReason reason;
};
using Verdict = std::variant<Equivalent, Distinguished, Exhausted>;

inline bool distinguished(const Verdict& v) { return std::holds_alternative<Distinguished>(v); }
inline bool equivalent(const Verdict& v) { return std::holds_alternative<Equivalent>(v); }

/// One-line summary, e.g. "equivalent to depth 8".
std::string summary(const Verdict& v);
/// Summary plus, for distinguished verdicts, both replayed traces.
std::string format_verdict(const Verdict& v);

/// Bounded bisimulation game. Both sides run silently (at most `fuel` steps)
/// to their next anchor; terminal results must agree, ready pairs must agree
/// on the action and arguments and stay related for every probe result, for
/// up to `depth` system calls.
Verdict check_bisim(const Config& left, const Config& right, std::size_t depth,
                    const ProbeSet& probes, std::uint64_t fuel);

/// As check_bisim, except a left side that gets stuck (result bottom) is
/// related to anything.
Verdict check_sim(const Config& left, const Config& right, std::size_t depth,
                  const ProbeSet& probes, std::uint64_t fuel);

/// Every trace obtained by resolving each system call with each probe,
/// cut off after `depth` events or when a silent run exceeds `fuel`.
std::set<Trace> enumerate_traces(const Config& c, std::size_t depth, const ProbeSet& probes,
                                 std::uint64_t fuel);

}  // namespace il
