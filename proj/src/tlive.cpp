#include "il/tlive.hpp"

#include <algorithm>

namespace il {

namespace {

bool subset(const VarSet& a, const VarSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

void add_all(VarSet& into, const VarSet& from) { into.insert(from.begin(), from.end()); }

VarSet minus(VarSet a, const VarSet& b) {
  for (const auto& x : b) a.erase(x);
  return a;
}

std::string show_missing(const VarSet& need, const VarSet& have) {
  VarSet missing;
  std::set_difference(need.begin(), need.end(), have.begin(), have.end(),
                      std::inserter(missing, missing.end()));
  return format_fact(missing) + " not in " + format_fact(have);
}

// Body live sets are keyed by the pre-order index of the `fun` node and the
// position in its group, as in reachability inference.
class LiveInference {
 public:
  explicit LiveInference(Mutation mutation) : mutation_(mutation) {}

  Annotated<VarSet> run(const TermPtr& t) {
    for (;;) {
      changed_ = false;
      next_fun_ = 0;
      auto out = walk(t, ParamCtx{}, LiveCtx{});
      if (!changed_) return out;
    }
  }

 private:
  Annotated<VarSet> walk(const TermPtr& t, const ParamCtx& params, const LiveCtx& live) {
    Annotated<VarSet> out{t, {}, {}};
    VarSet& here = out.fact;
    std::visit(
        overloaded{
            [&](const Let& x) {
              out.sub.push_back(walk(x.body, params, live));
              const VarSet& after = out.sub[0].fact;
              if (const auto* p = std::get_if<Pure>(&x.rhs)) {
                here = after;
                if (here.erase(x.var) > 0) add_all(here, free_vars(*p->expr));
              } else {
                here = after;
                here.erase(x.var);
                add_all(here, free_vars(std::get<Syscall>(x.rhs).args));
              }
            },
            [&](const If& x) {
              out.sub.push_back(walk(x.then_branch, params, live));
              out.sub.push_back(walk(x.else_branch, params, live));
              Branch b = static_branch(*x.test);
              if (b == Branch::unknown) add_all(here, free_vars(*x.test));
              if (b != Branch::taken_false) add_all(here, out.sub[0].fact);
              if (b != Branch::taken_true) add_all(here, out.sub[1].fact);
            },
            [&](const Exp& x) { here = free_vars(*x.expr); },
            [&](const Fun& x) {
              std::size_t id = next_fun_++;
              if (bodies_.size() <= id) bodies_.resize(id + 1);
              bodies_[id].resize(x.group.size());
              ParamCtx inner_params = params;
              LiveCtx inner_live = live;
              if (mutation_ != Mutation::tlive_skip_context) {
                ParamCtx::Group pg;
                LiveCtx::Group lg;
                for (std::size_t i = 0; i < x.group.size(); ++i) {
                  pg.emplace_back(x.group[i].name, x.group[i].params);
                  lg.emplace_back(x.group[i].name, bodies_[id][i]);
                }
                inner_params = params.push(std::move(pg));
                inner_live = live.push(std::move(lg));
              }
              for (std::size_t i = 0; i < x.group.size(); ++i) {
                out.sub.push_back(walk(x.group[i].body, inner_params, inner_live));
                const VarSet& body = out.sub.back().fact;
                if (body != bodies_[id][i]) {
                  bodies_[id][i] = body;
                  changed_ = true;
                }
                const auto& ps = x.group[i].params;
                add_all(here, minus(body, VarSet(ps.begin(), ps.end())));
              }
              out.sub.push_back(walk(x.cont, inner_params, inner_live));
              add_all(here, out.sub.back().fact);
            },
            [&](const App& x) {
              const auto* ps = params.lookup(x.fun);
              const auto* body = live.lookup(x.fun);
              // An unknown callee or an arity mismatch is stuck in every
              // environment, so nothing is live there.
              if (!ps || !body || ps->size() != x.args.size()) return;
              for (std::size_t i = 0; i < ps->size(); ++i)
                if (body->contains((*ps)[i])) add_all(here, free_vars(*x.args[i]));
            },
        },
        t->node);
    return out;
  }

  Mutation mutation_;
  std::vector<std::vector<VarSet>> bodies_;
  std::size_t next_fun_ = 0;
  bool changed_ = false;
};

class LiveChecker {
 public:
  CheckResult walk(const ParamCtx& params, const LiveCtx& live, const Annotated<VarSet>& t,
                   const std::string& path) {
    if (t.sub.size() != children(*t.term).size())
      return Rejection{path, "shape", "annotation does not match " + describe_node(*t.term)};
    const VarSet& here = t.fact;
    auto reject = [&](const char* rule, std::string detail) -> CheckResult {
      return Rejection{path, rule, std::move(detail)};
    };
    auto child = [&](std::size_t i) { return path + "/" + std::to_string(i); };
    return std::visit(
        overloaded{
            [&](const Let& x) -> CheckResult {
              const VarSet& after = t.sub[0].fact;
              VarSet carried = after;
              carried.erase(x.var);
              if (const auto* p = std::get_if<Pure>(&x.rhs)) {
                if (!subset(carried, here))
                  return reject("TLive-Op", "live-after minus " + x.var + ": " +
                                                show_missing(carried, here));
                if (after.contains(x.var) && !subset(free_vars(*p->expr), here))
                  return reject("TLive-Op", "operands of live " + x.var + ": " +
                                                show_missing(free_vars(*p->expr), here));
              } else {
                if (!subset(carried, here))
                  return reject("TLive-Call", "live-after minus " + x.var + ": " +
                                                  show_missing(carried, here));
                auto used = free_vars(std::get<Syscall>(x.rhs).args);
                if (!subset(used, here))
                  return reject("TLive-Call", "call arguments: " + show_missing(used, here));
              }
              return walk(params, live, t.sub[0], child(0));
            },
            [&](const If& x) -> CheckResult {
              Branch b = static_branch(*x.test);
              if (b == Branch::unknown && !subset(free_vars(*x.test), here))
                return reject("TLive-Cond",
                              "condition: " + show_missing(free_vars(*x.test), here));
              if (b != Branch::taken_false && !subset(t.sub[0].fact, here))
                return reject("TLive-Cond", "consequence: " + show_missing(t.sub[0].fact, here));
              if (b != Branch::taken_true && !subset(t.sub[1].fact, here))
                return reject("TLive-Cond", "alternative: " + show_missing(t.sub[1].fact, here));
              // A statically excluded branch carries no premise at all.
              if (b != Branch::taken_false)
                if (auto r = walk(params, live, t.sub[0], child(0))) return r;
              if (b != Branch::taken_true)
                if (auto r = walk(params, live, t.sub[1], child(1))) return r;
              return std::nullopt;
            },
            [&](const Exp& x) -> CheckResult {
              if (!subset(free_vars(*x.expr), here))
                return reject("TLive-Exp", show_missing(free_vars(*x.expr), here));
              return std::nullopt;
            },
            [&](const Fun& x) -> CheckResult {
              const auto& cont = t.sub.back();
              if (!subset(cont.fact, here))
                return reject("TLive-Fun", "continuation: " + show_missing(cont.fact, here));
              ParamCtx::Group pg;
              LiveCtx::Group lg;
              for (std::size_t i = 0; i < x.group.size(); ++i) {
                const auto& ps = x.group[i].params;
                auto captured = minus(t.sub[i].fact, VarSet(ps.begin(), ps.end()));
                if (!subset(captured, here))
                  return reject("TLive-Fun", "captured by " + x.group[i].name + ": " +
                                                 show_missing(captured, here));
                pg.emplace_back(x.group[i].name, ps);
                lg.emplace_back(x.group[i].name, t.sub[i].fact);
              }
              auto inner_params = params.push(std::move(pg));
              auto inner_live = live.push(std::move(lg));
              for (std::size_t i = 0; i < x.group.size(); ++i)
                if (auto r = walk(inner_params, inner_live, t.sub[i], child(i))) return r;
              return walk(inner_params, inner_live, cont, child(x.group.size()));
            },
            [&](const App& x) -> CheckResult {
              const auto* ps = params.lookup(x.fun);
              const auto* body = live.lookup(x.fun);
              if (!ps || !body) return reject("TLive-App", "call to unbound function " + x.fun);
              if (ps->size() != x.args.size())
                return reject("TLive-App", "arity mismatch calling " + x.fun);
              for (std::size_t i = 0; i < ps->size(); ++i) {
                if (!body->contains((*ps)[i])) continue;
                auto used = free_vars(*x.args[i]);
                if (!subset(used, here))
                  return reject("TLive-App", "argument for live parameter " + (*ps)[i] + ": " +
                                                 show_missing(used, here));
              }
              return std::nullopt;
            },
        },
        t.term->node);
  }
};

}  // namespace

Annotated<VarSet> infer_tlive(const TermPtr& t, Mutation mutation) {
  return LiveInference{mutation}.run(t);
}

CheckResult check_tlive(const ParamCtx& params, const LiveCtx& live, const Annotated<VarSet>& t) {
  return LiveChecker{}.walk(params, live, t, "");
}

}  // namespace il
