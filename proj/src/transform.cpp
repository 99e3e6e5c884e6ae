#include "il/transform.hpp"

#include "il/reach.hpp"

namespace il {

namespace {

// Which branch a static conditional folds to, or null when it stays.
const TermPtr* folded_branch(const If& x, bool wrong) {
  switch (static_branch(*x.test)) {
    case Branch::taken_true: return wrong ? &x.else_branch : &x.then_branch;
    case Branch::taken_false: return wrong ? &x.then_branch : &x.else_branch;
    case Branch::unknown: return nullptr;
  }
  return nullptr;
}

TermPtr uce_rec(const Annotated<bool>& t, Mutation mutation) {
  return std::visit(
      overloaded{
          [&](const Let& x) -> TermPtr {
            return std::make_shared<const Term>(Term{Let{x.var, x.rhs, uce_rec(t.sub[0], mutation)}});
          },
          [&](const If& x) -> TermPtr {
            const bool wrong = mutation == Mutation::uce_wrong_branch;
            if (const TermPtr* taken = folded_branch(x, wrong))
              return uce_rec(t.sub[taken == &x.then_branch ? 0 : 1], mutation);
            return cond(x.test, uce_rec(t.sub[0], mutation), uce_rec(t.sub[1], mutation));
          },
          [&](const Exp&) { return t.term; },
          [&](const Fun& x) -> TermPtr {
            std::vector<FunDef> kept;
            for (std::size_t i = 0; i < x.group.size(); ++i)
              if (t.sub[i].fact)
                kept.push_back(FunDef{x.group[i].name, x.group[i].params, uce_rec(t.sub[i], mutation)});
            auto cont = uce_rec(t.sub.back(), mutation);
            if (kept.empty()) return cont;
            return fun(std::move(kept), std::move(cont));
          },
          [&](const App&) { return t.term; },
      },
      t.term->node);
}

std::size_t first_index(const std::vector<Name>& ps, const VarSet& live, bool want_live) {
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (live.contains(ps[i]) == want_live) return i;
  return ps.size();
}

// Parameter and argument filters. Without a mutation both keep exactly the
// parameters live in the function body.
bool keep_param(const std::vector<Name>& ps, const VarSet& live, std::size_t i, Mutation m) {
  bool keep = live.contains(ps[i]);
  if (m == Mutation::dve_drop_live_param && i == first_index(ps, live, true)) return false;
  if (m == Mutation::dve_keep_param_drop_arg && i == first_index(ps, live, false)) return true;
  return keep;
}

bool keep_arg(const std::vector<Name>& ps, const VarSet& live, std::size_t i, Mutation m) {
  bool keep = live.contains(ps[i]);
  if (m == Mutation::dve_drop_live_param && i == first_index(ps, live, true)) return false;
  return keep;
}

std::vector<std::size_t> indices(std::size_t n) {
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = i;
  return out;
}

TermPtr dve_rec(const ParamCtx& params, const LiveCtx& live, const Annotated<VarSet>& t,
                Mutation m) {
  return std::visit(
      overloaded{
          [&](const Let& x) -> TermPtr {
            auto body = dve_rec(params, live, t.sub[0], m);
            if (std::holds_alternative<Pure>(x.rhs) && !t.sub[0].fact.contains(x.var)) return body;
            return std::make_shared<const Term>(Term{Let{x.var, x.rhs, std::move(body)}});
          },
          [&](const If& x) -> TermPtr {
            if (const TermPtr* taken = folded_branch(x, false))
              return dve_rec(params, live, t.sub[taken == &x.then_branch ? 0 : 1], m);
            return cond(x.test, dve_rec(params, live, t.sub[0], m),
                        dve_rec(params, live, t.sub[1], m));
          },
          [&](const Exp&) { return t.term; },
          [&](const Fun& x) -> TermPtr {
            ParamCtx::Group pg;
            LiveCtx::Group lg;
            for (std::size_t i = 0; i < x.group.size(); ++i) {
              pg.emplace_back(x.group[i].name, x.group[i].params);
              lg.emplace_back(x.group[i].name, t.sub[i].fact);
            }
            auto inner_params = params.push(std::move(pg));
            auto inner_live = live.push(std::move(lg));
            std::vector<FunDef> group;
            for (std::size_t i = 0; i < x.group.size(); ++i) {
              const auto& ps = x.group[i].params;
              const auto& body_live = t.sub[i].fact;
              auto kept = filterby([&](std::size_t k) { return keep_param(ps, body_live, k, m); },
                                   indices(ps.size()), ps);
              group.push_back(FunDef{x.group[i].name, std::move(kept),
                                     dve_rec(inner_params, inner_live, t.sub[i], m)});
            }
            return fun(std::move(group), dve_rec(inner_params, inner_live, t.sub.back(), m));
          },
          [&](const App& x) -> TermPtr {
            const auto* ps = params.lookup(x.fun);
            const auto* body_live = live.lookup(x.fun);
            if (!ps || !body_live) throw UnknownFunction("dve: call to unknown function " + x.fun);
            auto args = filterby([&](std::size_t k) { return keep_arg(*ps, *body_live, k, m); },
                                 indices(ps->size()), x.args);
            return app(x.fun, std::move(args));
          },
      },
      t.term->node);
}

}  // namespace

TermPtr uce(const Annotated<bool>& t, Mutation mutation) { return uce_rec(t, mutation); }

TermPtr dve(const ParamCtx& params, const LiveCtx& live, const Annotated<VarSet>& t,
            Mutation mutation) {
  return dve_rec(params, live, t, mutation);
}

TermPtr fold_static_conditionals(const TermPtr& t) {
  if (const auto* x = std::get_if<If>(&t->node))
    if (const TermPtr* taken = folded_branch(*x, false)) return fold_static_conditionals(*taken);
  auto kids = children(*t);
  if (kids.empty()) return t;
  for (auto& k : kids) k = fold_static_conditionals(k);
  return with_children(*t, kids);
}

TermPtr optimize_uce(const TermPtr& t, Mutation mutation) { return uce(infer_reach(t), mutation); }

TermPtr optimize_dve(const TermPtr& t, Mutation mutation) {
  return dve(ParamCtx{}, LiveCtx{}, infer_tlive(t, mutation), mutation);
}

}  // namespace il
