#include "il/harness.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "il/reach.hpp"
#include "il/text.hpp"
#include "il/tlive.hpp"
#include "il/transform.hpp"

namespace il {

namespace {

struct FunSig {
  Name name;
  std::size_t arity;
};

class Generator {
 public:
  explicit Generator(const GenConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {}

  TermPtr program() {
    auto inputs = cfg_.var_pool;
    std::shuffle(inputs.begin(), inputs.end(), rng_);
    std::size_t n = below(std::min<std::size_t>(cfg_.max_inputs, inputs.size()) + 1);
    inputs.resize(n);
    return term(cfg_.max_depth, inputs, {});
  }

  TermPtr static_conditional() {
    ExprPtr test;
    do test = closed_expr(); while (static_branch(*test) == Branch::unknown);
    int d = std::max(cfg_.max_depth - 1, 0);
    return cond(test, term(d, {}, {}), term(d, {}, {}));
  }

 private:
  bool chance(double p) { return std::uniform_real_distribution<double>(0, 1)(rng_) < p; }

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[below(xs.size())];
  }

  ExprPtr leaf(const std::vector<Name>& vars) {
    if (!cfg_.unbound_pool.empty() && chance(cfg_.unbound_probability))
      return var(pick(cfg_.unbound_pool));
    if (!vars.empty() && chance(0.6)) return var(pick(vars));
    return cst(pick(cfg_.const_pool));
  }

  BinOp random_op() {
    static constexpr BinOp ops[] = {BinOp::add, BinOp::sub, BinOp::mul, BinOp::eq,
                                    BinOp::lt,  BinOp::le,  BinOp::div};
    std::size_t n = cfg_.partial_ops ? 7 : 6;
    return ops[below(n)];
  }

  ExprPtr expr(int depth, const std::vector<Name>& vars) {
    if (depth <= 0 || chance(0.4)) return leaf(vars);
    if (chance(0.1)) return unop(chance(0.5) ? UnOp::neg : UnOp::lnot, expr(depth - 1, vars));
    return binop(random_op(), expr(depth - 1, vars), expr(depth - 1, vars));
  }

  ExprPtr closed_expr() {
    static const std::vector<Name> none;
    if (chance(0.4)) return cst(pick(cfg_.const_pool));
    return binop(random_op(), expr(1, none), expr(1, none));
  }

  std::vector<ExprPtr> exprs(std::size_t n, const std::vector<Name>& vars) {
    std::vector<ExprPtr> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(expr(2, vars));
    return out;
  }

  // The most recent signature for each visible function name.
  static std::vector<FunSig> visible(const std::vector<FunSig>& funs) {
    std::vector<FunSig> out;
    for (auto it = funs.rbegin(); it != funs.rend(); ++it)
      if (std::none_of(out.begin(), out.end(), [&](const FunSig& s) { return s.name == it->name; }))
        out.push_back(*it);
    return out;
  }

  TermPtr call(const std::vector<FunSig>& funs, const std::vector<Name>& vars) {
    auto vis = visible(funs);
    const auto& f = pick(vis);
    return app(f.name, exprs(f.arity, vars));
  }

  TermPtr term(int depth, const std::vector<Name>& vars, const std::vector<FunSig>& funs) {
    if (depth <= 0) {
      if (!funs.empty() && chance(0.5)) return call(funs, vars);
      return exp(expr(2, vars));
    }
    double r = std::uniform_real_distribution<double>(0, 1)(rng_);
    if (r < cfg_.extern_probability) {
      auto args = exprs(below(3), vars);
      Name x = pick(cfg_.var_pool);
      auto inner = with(vars, x);
      return let_extern(x, pick(cfg_.action_pool), std::move(args), term(depth - 1, inner, funs));
    }
    r = std::uniform_real_distribution<double>(0, 1)(rng_);
    if (r < 0.30) {
      Name x = pick(cfg_.var_pool);
      auto e = expr(2, vars);
      return let_pure(x, std::move(e), term(depth - 1, with(vars, x), funs));
    }
    if (r < 0.55) {
      auto test = chance(cfg_.const_cond_probability) ? closed_expr() : expr(2, vars);
      auto a = term(depth - 1, vars, funs);
      return cond(std::move(test), std::move(a), term(depth - 1, vars, funs));
    }
    if (r < 0.80) return group(depth, vars, funs);
    if (r < 0.92 && !funs.empty()) return call(funs, vars);
    return exp(expr(2, vars));
  }

  TermPtr group(int depth, const std::vector<Name>& vars, const std::vector<FunSig>& funs) {
    std::size_t size = 1 + below(static_cast<std::size_t>(std::max(cfg_.max_group_size, 1)));
    auto names = cfg_.fun_pool;
    std::shuffle(names.begin(), names.end(), rng_);
    size = std::min(size, names.size());

    std::vector<FunDef> defs;
    auto inner_funs = funs;
    for (std::size_t i = 0; i < size; ++i) {
      auto params = cfg_.var_pool;
      std::shuffle(params.begin(), params.end(), rng_);
      std::size_t arity = below(std::min<std::size_t>(cfg_.max_params, params.size()) + 1);
      params.resize(arity);
      defs.push_back(FunDef{names[i], params, nullptr});
      inner_funs.push_back(FunSig{names[i], arity});
    }
    for (auto& d : defs) {
      auto scope = vars;
      for (const auto& p : d.params) scope = with(scope, p);
      d.body = term(depth - 1, scope, inner_funs);
    }
    // Continuations usually call into the new group so the bodies run.
    TermPtr cont = chance(0.5) ? call(inner_funs, vars) : term(depth - 1, vars, inner_funs);
    return fun(std::move(defs), std::move(cont));
  }

  static std::vector<Name> with(std::vector<Name> vars, const Name& x) {
    if (std::find(vars.begin(), vars.end(), x) == vars.end()) vars.push_back(x);
    return vars;
  }

  const GenConfig& cfg_;
  std::mt19937_64 rng_;
};

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Value random_value(std::mt19937_64& rng) {
  return std::uniform_int_distribution<Value>(-3, 10)(rng);
}

}  // namespace

TermPtr gen_program(const GenConfig& cfg) { return Generator(cfg).program(); }

TermPtr gen_static_conditional(const GenConfig& cfg) { return Generator(cfg).static_conditional(); }

Env random_env(const TermPtr& t, const GenConfig& cfg, std::mt19937_64& rng) {
  std::map<Name, Value> bindings;
  for (const auto& x : free_vars(*t))
    if (std::find(cfg.unbound_pool.begin(), cfg.unbound_pool.end(), x) == cfg.unbound_pool.end())
      bindings[x] = random_value(rng);
  return Env::from(bindings);
}

Env perturb_env(const Env& env, const VarSet& keep, std::mt19937_64& rng, double drop_probability) {
  std::map<Name, Value> out;
  for (const auto& [x, v] : env.bindings()) {
    if (keep.contains(x)) {
      out[x] = v;
      continue;
    }
    if (std::uniform_real_distribution<double>(0, 1)(rng) < drop_probability) continue;
    out[x] = random_value(rng);
  }
  return Env::from(out);
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t index) {
  return mix(seed ^ mix(static_cast<std::uint64_t>(index) + 1));
}

// ---------------------------------------------------------------------------
// Trials
// ---------------------------------------------------------------------------

TrialRecord run_trial_on(const TermPtr& program, std::uint64_t seed, const GenConfig& base,
                         const DiffOptions& opts) {
  TrialRecord rec;
  rec.seed = seed;
  rec.size = node_count(*program);
  std::mt19937_64 rng(mix(seed ^ 0x5eedULL));
  Env env = random_env(program, base, rng);

  TermPtr transformed;
  Config left = initial_config(program, env);
  Config right;
  if (opts.pass == Pass::uce) {
    auto ann = infer_reach(program);
    auto rej = check_reach(ReachCtx{}, ann);
    rec.analysis_accepted = !rej;
    if (rej) rec.rejection = describe(*rej);
    transformed = uce(ann, opts.mutation);
    right = initial_config(transformed, env);
  } else {
    auto ann = infer_tlive(program, opts.mutation);
    auto rej = check_tlive(ParamCtx{}, LiveCtx{}, ann);
    rec.analysis_accepted = !rej;
    if (rej) rec.rejection = describe(*rej);
    transformed = dve(ParamCtx{}, LiveCtx{}, ann, opts.mutation);
    right = initial_config(transformed, perturb_env(env, ann.fact, rng));
  }
  rec.transformed = !same(program, transformed);

  std::vector<Value> probes = opts.probes;
  for (const auto& p : {program, transformed})
    for (Value v : constants(*p)) probes.push_back(v);
  ProbeSet ps(std::move(probes));
  rec.verdict = opts.pass == Pass::uce ? check_bisim(left, right, opts.depth, ps, opts.fuel)
                                       : check_sim(left, right, opts.depth, ps, opts.fuel);
  return rec;
}

TrialRecord run_trial(const GenConfig& base, std::uint64_t seed, const DiffOptions& opts) {
  GenConfig cfg = base;
  cfg.seed = seed;
  TermPtr program = gen_program(cfg);
  TrialRecord rec = run_trial_on(program, seed, base, opts);
  if (opts.shrink && distinguished(rec.verdict)) {
    auto fails = [&](const TermPtr& candidate) {
      if (well_formedness_error(*candidate)) return false;
      try {
        return distinguished(run_trial_on(candidate, seed, base, opts).verdict);
      } catch (const UnknownFunction&) {
        return false;
      }
    };
    rec.shrunk = print_program(*shrink(program, fails));
  }
  return rec;
}

DiffReport difftest(const GenConfig& cfg, const DiffOptions& opts) {
  DiffReport report;
  report.pass = opts.pass;
  report.trials.resize(opts.trials);
  unsigned jobs = opts.jobs ? opts.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(opts.trials, 1)));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < opts.trials; i = next++) {
      auto rec = run_trial(cfg, trial_seed(cfg.seed, i), opts);
      rec.index = i;
      report.trials[i] = std::move(rec);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (const auto& t : report.trials) {
    report.accepted += t.analysis_accepted;
    report.transformed += t.transformed;
    report.equivalent += equivalent(t.verdict);
    report.distinguished += distinguished(t.verdict);
    report.exhausted += std::holds_alternative<Exhausted>(t.verdict);
  }
  return report;
}

DiffReport difftest_uce(const GenConfig& cfg, std::size_t trials, std::size_t depth,
                        std::vector<Value> probes, std::uint64_t fuel, Mutation mutation) {
  DiffOptions opts;
  opts.pass = Pass::uce;
  opts.trials = trials;
  opts.depth = depth;
  opts.probes = std::move(probes);
  opts.fuel = fuel;
  opts.mutation = mutation;
  return difftest(cfg, opts);
}

DiffReport difftest_dve(const GenConfig& cfg, std::size_t trials, std::size_t depth,
                        std::vector<Value> probes, std::uint64_t fuel, Mutation mutation) {
  DiffOptions opts;
  opts.pass = Pass::dve;
  opts.trials = trials;
  opts.depth = depth;
  opts.probes = std::move(probes);
  opts.fuel = fuel;
  opts.mutation = mutation;
  return difftest(cfg, opts);
}

// ---------------------------------------------------------------------------
// Shrinking
// ---------------------------------------------------------------------------

namespace {

using Path = std::vector<std::size_t>;

void collect_paths(const TermPtr& t, Path& cur, std::vector<Path>& out) {
  out.push_back(cur);
  auto kids = children(*t);
  for (std::size_t i = 0; i < kids.size(); ++i) {
    cur.push_back(i);
    collect_paths(kids[i], cur, out);
    cur.pop_back();
  }
}

TermPtr at_path(const TermPtr& t, const Path& p, std::size_t pos = 0) {
  if (pos == p.size()) return t;
  return at_path(children(*t)[p[pos]], p, pos + 1);
}

TermPtr replace_at(const TermPtr& t, const Path& p, const TermPtr& with, std::size_t pos = 0) {
  if (pos == p.size()) return with;
  auto kids = children(*t);
  kids[p[pos]] = replace_at(kids[p[pos]], p, with, pos + 1);
  return with_children(*t, kids);
}

// Smaller replacements for a single node.
std::vector<TermPtr> moves(const TermPtr& n) {
  std::vector<TermPtr> out;
  for (const auto& k : children(*n)) out.push_back(k);
  if (const auto* f = std::get_if<Fun>(&n->node); f && f->group.size() > 1)
    for (std::size_t i = 0; i < f->group.size(); ++i) {
      auto group = f->group;
      group.erase(group.begin() + static_cast<std::ptrdiff_t>(i));
      out.push_back(fun(std::move(group), f->cont));
    }
  if (const auto* a = std::get_if<App>(&n->node))
    for (std::size_t i = 0; i < a->args.size(); ++i)
      if (node_count(*a->args[i]) > 1) {
        auto args = a->args;
        args[i] = cst(0);
        out.push_back(app(a->fun, std::move(args)));
      }
  out.push_back(exp(cst(0)));
  return out;
}

}  // namespace

TermPtr shrink(const TermPtr& t, const std::function<bool(const TermPtr&)>& fails) {
  TermPtr cur = t;
  for (bool progress = true; progress;) {
    progress = false;
    std::vector<Path> paths;
    Path tmp;
    collect_paths(cur, tmp, paths);
    const std::size_t size = node_count(*cur);
    for (const auto& p : paths) {
      for (const auto& m : moves(at_path(cur, p))) {
        auto candidate = replace_at(cur, p, m);
        if (node_count(*candidate) >= size || !fails(candidate)) continue;
        cur = candidate;
        progress = true;
        break;
      }
      if (progress) break;
    }
  }
  return cur;
}

// ---------------------------------------------------------------------------

std::string format_record(const TrialRecord& t) {
  std::ostringstream os;
  os << "trial=" << t.index << " seed=" << t.seed << " size=" << t.size
     << " accepted=" << (t.analysis_accepted ? "yes" : "no")
     << " transformed=" << (t.transformed ? "yes" : "no") << " verdict=" << summary(t.verdict);
  if (!t.rejection.empty()) os << "\n  analysis " << t.rejection;
  if (t.shrunk) {
    os << "\n  shrunk:";
    std::istringstream lines(*t.shrunk);
    for (std::string line; std::getline(lines, line);) os << "\n    " << line;
  }
  return os.str();
}

std::string format_report(const DiffReport& r) {
  std::ostringstream os;
  for (const auto& t : r.trials) os << format_record(t) << '\n';
  os << "summary pass=" << (r.pass == Pass::uce ? "uce" : "dve") << " trials=" << r.trials.size()
     << " accepted=" << r.accepted << " transformed=" << r.transformed
     << " equivalent=" << r.equivalent << " distinguished=" << r.distinguished
     << " exhausted=" << r.exhausted << '\n';
  return os.str();
}

}  // namespace il
