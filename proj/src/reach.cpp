#include "il/reach.hpp"

#include <vector>

namespace il {

Branch static_branch(const Expr& e) {
  auto v = eval_expr(e, Env{});
  if (!v) return Branch::unknown;
  return beta(*v) ? Branch::taken_true : Branch::taken_false;
}

std::string describe(const Rejection& r) {
  return "rejected at " + (r.path.empty() ? std::string("/") : r.path) + " (" + r.rule +
         "): " + r.detail;
}

namespace {

// Function definitions are identified by the pre-order index of their
// `fun` node and their position in the group, which is stable across rounds.
struct FunRef {
  std::size_t node;
  std::size_t index;
};

class ReachInference {
 public:
  Annotated<bool> run(const TermPtr& t) {
    for (;;) {
      changed_ = false;
      next_fun_ = 0;
      auto out = walk(t, Layered<FunRef>{}, true);
      if (!changed_) return out;
    }
  }

 private:
  Annotated<bool> walk(const TermPtr& t, const Layered<FunRef>& ctx, bool bit) {
    Annotated<bool> out{t, bit, {}};
    std::visit(overloaded{
                   [&](const Let& x) { out.sub.push_back(walk(x.body, ctx, bit)); },
                   [&](const If& x) {
                     Branch b = static_branch(*x.test);
                     out.sub.push_back(walk(x.then_branch, ctx, bit && b != Branch::taken_false));
                     out.sub.push_back(walk(x.else_branch, ctx, bit && b != Branch::taken_true));
                   },
                   [](const Exp&) {},
                   [&](const Fun& x) {
                     std::size_t id = next_fun_++;
                     if (bits_.size() <= id) bits_.resize(id + 1);
                     bits_[id].resize(x.group.size(), false);
                     Layered<FunRef>::Group group;
                     for (std::size_t i = 0; i < x.group.size(); ++i)
                       group.emplace_back(x.group[i].name, FunRef{id, i});
                     auto inner = ctx.push(std::move(group));
                     for (std::size_t i = 0; i < x.group.size(); ++i)
                       out.sub.push_back(walk(x.group[i].body, inner, bits_[id][i]));
                     out.sub.push_back(walk(x.cont, inner, bit));
                   },
                   [&](const App& x) {
                     if (!bit) return;
                     if (const FunRef* f = ctx.lookup(x.fun); f && !bits_[f->node][f->index]) {
                       bits_[f->node][f->index] = true;
                       changed_ = true;
                     }
                   },
               },
               t->node);
    return out;
  }

  std::vector<std::vector<bool>> bits_;
  std::size_t next_fun_ = 0;
  bool changed_ = false;
};

class ReachChecker {
 public:
  CheckResult check(const ReachCtx& ctx, const Annotated<bool>& t) { return walk(ctx, t, ""); }

 private:
  static Rejection reject(const std::string& path, const char* rule, std::string detail) {
    return Rejection{path, rule, std::move(detail)};
  }

  static std::string child(const std::string& path, std::size_t i) {
    return path + "/" + std::to_string(i);
  }

  CheckResult walk(const ReachCtx& ctx, const Annotated<bool>& t, const std::string& path) {
    if (t.sub.size() != children(*t.term).size())
      return reject(path, "shape", "annotation does not match " + describe_node(*t.term));
    const bool b = t.fact;
    return std::visit(
        overloaded{
            [&](const Let&) -> CheckResult {
              if (b != t.sub[0].fact)
                return reject(path, "Reach-Let", "continuation bit differs from let bit");
              return walk(ctx, t.sub[0], child(path, 0));
            },
            [&](const If& x) -> CheckResult {
              Branch br = static_branch(*x.test);
              if (br != Branch::taken_false && b != t.sub[0].fact)
                return reject(path, "Reach-Cond", "consequence bit differs from conditional bit");
              if (br != Branch::taken_true && b != t.sub[1].fact)
                return reject(path, "Reach-Cond", "alternative bit differs from conditional bit");
              if (auto r = walk(ctx, t.sub[0], child(path, 0))) return r;
              return walk(ctx, t.sub[1], child(path, 1));
            },
            [](const Exp&) -> CheckResult { return std::nullopt; },
            [&](const Fun& x) -> CheckResult {
              if (b != t.sub.back().fact)
                return reject(path, "Reach-Fun", "continuation bit differs from definition bit");
              ReachCtx::Group group;
              for (std::size_t i = 0; i < x.group.size(); ++i)
                group.emplace_back(x.group[i].name, t.sub[i].fact);
              auto inner = ctx.push(std::move(group));
              for (std::size_t i = 0; i < x.group.size(); ++i)
                if (auto r = walk(inner, t.sub[i], child(path, i))) return r;
              return walk(inner, t.sub.back(), child(path, x.group.size()));
            },
            [&](const App& x) -> CheckResult {
              const bool* callee = ctx.lookup(x.fun);
              if (b && !(callee && *callee))
                return reject(path, "Reach-App",
                              callee ? "reachable call to unreachable function " + x.fun
                                     : "call to unbound function " + x.fun);
              return std::nullopt;
            },
        },
        t.term->node);
  }
};

}  // namespace

Annotated<bool> infer_reach(const TermPtr& t) { return ReachInference{}.run(t); }

CheckResult check_reach(const ReachCtx& ctx, const Annotated<bool>& t) {
  return ReachChecker{}.check(ctx, t);
}

}  // namespace il
