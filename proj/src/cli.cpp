#include "il/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "il/annotated.hpp"
#include "il/equiv.hpp"
#include "il/harness.hpp"
#include "il/reach.hpp"
#include "il/semantics.hpp"
#include "il/text.hpp"
#include "il/tlive.hpp"
#include "il/transform.hpp"

namespace il::cli {

namespace {

struct Failure {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kNoInput, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Failure{kNoInput, "error reading " + path};
  return ss.str();
}

TermPtr load_program(const std::string& path) {
  auto text = read_file(path);
  try {
    return parse_program(text);
  } catch (const ParseError& e) {
    throw Failure{kExhausted, path + ":" + e.what()};
  }
}

Env parse_env(const std::string& spec) {
  std::map<Name, Value> bindings;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw Failure{kUsage, "--env expects name=value pairs"};
    try {
      bindings[item.substr(0, eq)] = std::stoll(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw Failure{kUsage, "--env: bad value in '" + item + "'"};
    }
  }
  return Env::from(bindings);
}

struct Options {
  std::string file, file2, env, facts, pass = "uce", mutation = "none";
  std::uint64_t fuel = 10'000, oracle_seed = 0, seed = 0;
  std::size_t max_events = 1000, depth = 8, trials = 100;
  std::vector<Value> probes;
  bool reach = false, tlive = false, uce = false, dve = false, bisim = false, sim = false;
  bool no_shrink = false;
  unsigned jobs = 0;
  std::optional<std::uint64_t> replay;
};

int cmd_parse(const Options& o, std::ostream& out) {
  out << print_program(*load_program(o.file));
  return kOk;
}

int cmd_run(const Options& o, std::ostream& out) {
  auto program = load_program(o.file);
  auto trace = run_trace(initial_config(program, parse_env(o.env)), seeded_oracle(o.oracle_seed),
                         o.fuel, o.max_events);
  out << format_trace(trace);
  return kOk;
}

int cmd_analyze(const Options& o, std::ostream& out) {
  if (o.reach == o.tlive) throw Failure{kUsage, "analyze: give exactly one of --reach, --tlive"};
  auto program = load_program(o.file);
  CheckResult verdict;
  try {
    if (o.reach) {
      auto ann = o.facts.empty() ? infer_reach(program)
                                 : zip_preorder(program, read_reach_sidecar(read_file(o.facts)));
      out << write_sidecar(ann);
      verdict = check_reach(ReachCtx{}, ann);
    } else {
      auto ann = o.facts.empty() ? infer_tlive(program)
                                 : zip_preorder(program, read_live_sidecar(read_file(o.facts)));
      out << write_sidecar(ann);
      verdict = check_tlive(ParamCtx{}, LiveCtx{}, ann);
    }
  } catch (const std::invalid_argument& e) {
    throw Failure{kExhausted, o.facts + ": " + e.what()};
  }
  out << "verdict: " << (verdict ? describe(*verdict) : "accepted") << '\n';
  return verdict ? kDistinguished : kOk;
}

int cmd_optimize(const Options& o, std::ostream& out) {
  if (!o.uce && !o.dve) throw Failure{kUsage, "optimize: give --uce, --dve, or both"};
  auto program = load_program(o.file);
  // Annotations do not survive a transformation, so each pass re-analyses.
  if (o.uce) program = optimize_uce(program);
  if (o.dve) {
    try {
      program = optimize_dve(program);
    } catch (const UnknownFunction& e) {
      throw Failure{kExhausted, e.what()};
    }
  }
  out << print_program(*program);
  return kOk;
}

int cmd_check(const Options& o, std::ostream& out) {
  if (o.bisim == o.sim) throw Failure{kUsage, "check: give exactly one of --bisim, --sim"};
  auto a = load_program(o.file);
  auto b = load_program(o.file2);
  Env env = parse_env(o.env);
  std::vector<TermPtr> programs{a, b};
  ProbeSet probes = o.probes.empty() ? ProbeSet::defaults(programs) : ProbeSet(o.probes);
  auto left = initial_config(a, env);
  auto right = initial_config(b, env);
  Verdict v = o.bisim ? check_bisim(left, right, o.depth, probes, o.fuel)
                      : check_sim(left, right, o.depth, probes, o.fuel);
  out << format_verdict(v);
  if (distinguished(v)) return kDistinguished;
  if (std::holds_alternative<Exhausted>(v)) return kExhausted;
  return kOk;
}

int cmd_difftest(const Options& o, std::ostream& out) {
  DiffOptions opts;
  opts.pass = o.pass == "dve" ? Pass::dve : Pass::uce;
  opts.trials = o.trials;
  opts.depth = o.depth;
  opts.fuel = o.fuel;
  opts.shrink = !o.no_shrink;
  opts.jobs = o.jobs;
  if (!o.probes.empty()) opts.probes = o.probes;
  auto m = mutation_from_string(o.mutation);
  if (!m) throw Failure{kUsage, "difftest: unknown mutation " + o.mutation};
  opts.mutation = *m;
  GenConfig cfg;
  cfg.seed = o.seed;
  if (o.replay) {
    auto rec = run_trial(cfg, *o.replay, opts);
    out << format_record(rec) << '\n';
    return distinguished(rec.verdict) ? kDistinguished : kOk;
  }
  auto report = difftest(cfg, opts);
  out << format_report(report);
  return report.distinguished ? kDistinguished : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"il: analyses, dead code elimination and bounded equivalence checking for IL"};
  app.name("il");
  app.require_subcommand(1, 1);
  Options o;

  auto* parse = app.add_subcommand("parse", "Parse and pretty-print a program");
  parse->add_option("file", o.file, "IL source file")->required();

  auto* run_cmd = app.add_subcommand("run", "Execute a program and print its trace");
  run_cmd->add_option("file", o.file, "IL source file")->required();
  run_cmd->add_option("--fuel", o.fuel, "Silent steps allowed between events");
  run_cmd->add_option("--oracle-seed", o.oracle_seed, "Seed for system-call results");
  run_cmd->add_option("--max-events", o.max_events, "System calls resolved before cutoff");
  run_cmd->add_option("--env", o.env, "Initial environment, e.g. x=1,y=2");

  auto* analyze = app.add_subcommand("analyze", "Print an analysis sidecar and check it");
  analyze->add_option("file", o.file, "IL source file")->required();
  analyze->add_flag("--reach", o.reach, "Reachability");
  analyze->add_flag("--tlive", o.tlive, "True liveness");
  analyze->add_option("--facts", o.facts, "Check this sidecar instead of inferring one");

  auto* optimize = app.add_subcommand("optimize", "Run UCE and/or DVE (UCE first)");
  optimize->add_option("file", o.file, "IL source file")->required();
  optimize->add_flag("--uce", o.uce, "Unreachable code elimination");
  optimize->add_flag("--dve", o.dve, "Dead variable elimination");

  auto* check = app.add_subcommand("check", "Bounded (bi)similarity of two programs");
  check->add_option("left", o.file, "Left program")->required();
  check->add_option("right", o.file2, "Right program")->required();
  check->add_flag("--bisim", o.bisim, "Bisimilarity");
  check->add_flag("--sim", o.sim, "Similarity (left stuck relates to anything)");
  check->add_option("--depth", o.depth, "System calls explored");
  check->add_option("--fuel", o.fuel, "Silent steps allowed between events");
  check->add_option("--probes", o.probes, "System-call results to try")->delimiter(',');
  check->add_option("--env", o.env, "Initial environment for both sides, e.g. x=1,y=2");

  auto* diff = app.add_subcommand("difftest", "Differential testing of a pass on random programs");
  diff->add_option("--pass", o.pass, "uce or dve")->check(CLI::IsMember({"uce", "dve"}));
  diff->add_option("--trials", o.trials, "Number of generated programs");
  diff->add_option("--seed", o.seed, "Run seed");
  diff->add_option("--depth", o.depth, "System calls explored");
  diff->add_option("--fuel", o.fuel, "Silent steps allowed between events");
  diff->add_option("--probes", o.probes, "Base probe values")->delimiter(',');
  diff->add_option("--jobs", o.jobs, "Worker threads (0 = all cores)");
  diff->add_option("--replay", o.replay, "Rerun the single trial with this trial seed");
  diff->add_flag("--no-shrink", o.no_shrink, "Do not shrink failing programs");
  diff->add_option("--mutation", o.mutation, "Inject a known defect (for harness validation)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*parse) return cmd_parse(o, out);
    if (*run_cmd) return cmd_run(o, out);
    if (*analyze) return cmd_analyze(o, out);
    if (*optimize) return cmd_optimize(o, out);
    if (*check) return cmd_check(o, out);
    return cmd_difftest(o, out);
  } catch (const Failure& f) {
    err << "il: " << f.message << '\n';
    return f.code;
  }
}

}  // namespace il::cli
