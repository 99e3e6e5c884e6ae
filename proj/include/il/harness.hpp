#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "il/equiv.hpp"
#include "il/mutation.hpp"
#include "il/syntax.hpp"

namespace il {

struct GenConfig {
  std::uint64_t seed = 0;
  int max_depth = 6;
  int max_group_size = 3;
  int max_params = 3;
  /// Up to this many pool variables are free in the program (its inputs).
  int max_inputs = 3;
  double extern_probability = 0.15;
  /// Share of conditionals whose test is a closed expression.
  double const_cond_probability = 0.3;
  /// Chance that a variable reference names something never bound.
  double unbound_probability = 0.03;
  /// Emit division, which fails on a zero divisor.
  bool partial_ops = true;
  std::vector<Name> var_pool{"a", "b", "c", "x", "y", "z"};
  std::vector<Name> fun_pool{"f", "g", "h", "k"};
  std::vector<Name> action_pool{"read", "write"};
  /// Names that are referenced but never bound, by the program or the
  /// initial environment.
  std::vector<Name> unbound_pool{"u"};
  std::vector<Value> const_pool{0, 1, 2, 3, 5};
};

TermPtr gen_program(const GenConfig& cfg);

/// A closed conditional `if c then s1 else s2` whose test is a closed
/// expression that evaluates.
TermPtr gen_static_conditional(const GenConfig& cfg);

/// Binds every free variable of `t` outside the unbound pool to a random value.
Env random_env(const TermPtr& t, const GenConfig& cfg, std::mt19937_64& rng);

/// Rebinds every variable of `env` outside `keep` to a fresh value, or drops
/// it with the given probability.
Env perturb_env(const Env& env, const VarSet& keep, std::mt19937_64& rng,
                double drop_probability = 0.2);

/// Seed of trial `index` in a run seeded with `seed`.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t index);

enum class Pass { uce, dve };

struct DiffOptions {
  Pass pass = Pass::uce;
  std::size_t trials = 0;
  std::size_t depth = 8;
  std::uint64_t fuel = 10'000;
  /// Extended with the literals of both programs in every trial.
  std::vector<Value> probes{0, 1};
  Mutation mutation = Mutation::none;
  bool shrink = true;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned jobs = 0;
};

struct TrialRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::size_t size = 0;
  bool analysis_accepted = false;
  std::string rejection;
  bool transformed = false;
  Verdict verdict = Equivalent{0};
  /// Locally minimal failing program, for distinguished trials.
  std::optional<std::string> shrunk;
};

struct DiffReport {
  Pass pass = Pass::uce;
  std::vector<TrialRecord> trials;
  std::size_t accepted = 0;
  std::size_t transformed = 0;
  std::size_t equivalent = 0;
  std::size_t distinguished = 0;
  std::size_t exhausted = 0;
};

/// One trial on the program generated from `trial_seed`; fully determined by
/// its arguments.
TrialRecord run_trial(const GenConfig& base, std::uint64_t trial_seed, const DiffOptions& opts);

/// Trial pipeline on a given program, used for replay and shrinking.
TrialRecord run_trial_on(const TermPtr& program, std::uint64_t trial_seed, const GenConfig& base,
                         const DiffOptions& opts);

DiffReport difftest(const GenConfig& cfg, const DiffOptions& opts);

DiffReport difftest_uce(const GenConfig& cfg, std::size_t trials, std::size_t depth,
                        std::vector<Value> probes, std::uint64_t fuel,
                        Mutation mutation = Mutation::none);
DiffReport difftest_dve(const GenConfig& cfg, std::size_t trials, std::size_t depth,
                        std::vector<Value> probes, std::uint64_t fuel,
                        Mutation mutation = Mutation::none);

/// Greedy shrinking: repeatedly applies the first node-count-reducing move
/// for which `fails` still holds.
TermPtr shrink(const TermPtr& t, const std::function<bool(const TermPtr&)>& fails);

/// Line-delimited records plus a summary line.
std::string format_report(const DiffReport& r);
std::string format_record(const TrialRecord& t);

}  // namespace il
