#include "il/syntax.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "il/context.hpp"

namespace il {

ExprPtr cst(Value v) { return std::make_shared<const Expr>(Expr{Const{v}}); }
ExprPtr var(Name name) { return std::make_shared<const Expr>(Expr{Var{std::move(name)}}); }
ExprPtr unop(UnOp op, ExprPtr arg) {
  return std::make_shared<const Expr>(Expr{Unary{op, std::move(arg)}});
}
ExprPtr binop(BinOp op, ExprPtr lhs, ExprPtr rhs) {
  return std::make_shared<const Expr>(Expr{Binary{op, std::move(lhs), std::move(rhs)}});
}

bool same(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

bool same(std::span<const ExprPtr> a, std::span<const ExprPtr> b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(),
                    [](const ExprPtr& x, const ExprPtr& y) { return same(x, y); });
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      overloaded{
          [&](const Const& x) { return x.value == std::get<Const>(b.node).value; },
          [&](const Var& x) { return x.name == std::get<Var>(b.node).name; },
          [&](const Unary& x) {
            const auto& y = std::get<Unary>(b.node);
            return x.op == y.op && same(x.arg, y.arg);
          },
          [&](const Binary& x) {
            const auto& y = std::get<Binary>(b.node);
            return x.op == y.op && same(x.lhs, y.lhs) && same(x.rhs, y.rhs);
          },
      },
      a.node);
}

TermPtr let_pure(Name x, ExprPtr e, TermPtr body) {
  return std::make_shared<const Term>(Term{Let{std::move(x), Pure{std::move(e)}, std::move(body)}});
}
TermPtr let_extern(Name x, Name action, std::vector<ExprPtr> args, TermPtr body) {
  return std::make_shared<const Term>(
      Term{Let{std::move(x), Syscall{std::move(action), std::move(args)}, std::move(body)}});
}
TermPtr cond(ExprPtr test, TermPtr then_branch, TermPtr else_branch) {
  return std::make_shared<const Term>(
      Term{If{std::move(test), std::move(then_branch), std::move(else_branch)}});
}
TermPtr exp(ExprPtr e) { return std::make_shared<const Term>(Term{Exp{std::move(e)}}); }
TermPtr fun(std::vector<FunDef> group, TermPtr cont) {
  return std::make_shared<const Term>(Term{Fun{std::move(group), std::move(cont)}});
}
TermPtr app(Name f, std::vector<ExprPtr> args) {
  return std::make_shared<const Term>(Term{App{std::move(f), std::move(args)}});
}

namespace {

bool same_rhs(const ExtExpr& a, const ExtExpr& b) {
  if (a.index() != b.index()) return false;
  if (const auto* p = std::get_if<Pure>(&a)) return same(p->expr, std::get<Pure>(b).expr);
  const auto& x = std::get<Syscall>(a);
  const auto& y = std::get<Syscall>(b);
  return x.action == y.action && same(x.args, y.args);
}

}  // namespace

bool same(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      overloaded{
          [&](const Let& x) {
            const auto& y = std::get<Let>(b.node);
            return x.var == y.var && same_rhs(x.rhs, y.rhs) && same(x.body, y.body);
          },
          [&](const If& x) {
            const auto& y = std::get<If>(b.node);
            return same(x.test, y.test) && same(x.then_branch, y.then_branch) &&
                   same(x.else_branch, y.else_branch);
          },
          [&](const Exp& x) { return same(x.expr, std::get<Exp>(b.node).expr); },
          [&](const Fun& x) {
            const auto& y = std::get<Fun>(b.node);
            if (x.group.size() != y.group.size()) return false;
            for (std::size_t i = 0; i < x.group.size(); ++i) {
              const auto& f = x.group[i];
              const auto& g = y.group[i];
              if (f.name != g.name || f.params != g.params || !same(f.body, g.body)) return false;
            }
            return same(x.cont, y.cont);
          },
          [&](const App& x) {
            const auto& y = std::get<App>(b.node);
            return x.fun == y.fun && same(x.args, y.args);
          },
      },
      a.node);
}

std::vector<TermPtr> children(const Term& t) {
  return std::visit(overloaded{
                        [](const Let& x) { return std::vector<TermPtr>{x.body}; },
                        [](const If& x) {
                          return std::vector<TermPtr>{x.then_branch, x.else_branch};
                        },
                        [](const Exp&) { return std::vector<TermPtr>{}; },
                        [](const Fun& x) {
                          std::vector<TermPtr> out;
                          for (const auto& f : x.group) out.push_back(f.body);
                          out.push_back(x.cont);
                          return out;
                        },
                        [](const App&) { return std::vector<TermPtr>{}; },
                    },
                    t.node);
}

TermPtr with_children(const Term& t, std::span<const TermPtr> kids) {
  if (kids.size() != children(t).size())
    throw std::invalid_argument("with_children: arity mismatch for " + describe_node(t));
  return std::visit(overloaded{
                        [&](const Let& x) {
                          return std::make_shared<const Term>(Term{Let{x.var, x.rhs, kids[0]}});
                        },
                        [&](const If& x) { return cond(x.test, kids[0], kids[1]); },
                        [&](const Exp& x) { return exp(x.expr); },
                        [&](const Fun& x) {
                          auto group = x.group;
                          for (std::size_t i = 0; i < group.size(); ++i) group[i].body = kids[i];
                          return fun(std::move(group), kids.back());
                        },
                        [&](const App& x) { return app(x.fun, x.args); },
                    },
                    t.node);
}

std::size_t node_count(const Expr& e) {
  return std::visit(overloaded{
                        [](const Const&) -> std::size_t { return 1; },
                        [](const Var&) -> std::size_t { return 1; },
                        [](const Unary& u) { return 1 + node_count(*u.arg); },
                        [](const Binary& b) { return 1 + node_count(*b.lhs) + node_count(*b.rhs); },
                    },
                    e.node);
}

namespace {

std::size_t count_all(std::span<const ExprPtr> es) {
  std::size_t n = 0;
  for (const auto& e : es) n += node_count(*e);
  return n;
}

}  // namespace

std::size_t node_count(const Term& t) {
  std::size_t n = 1 + std::visit(overloaded{
                          [](const Let& x) {
                            if (const auto* p = std::get_if<Pure>(&x.rhs))
                              return node_count(*p->expr);
                            return count_all(std::get<Syscall>(x.rhs).args);
                          },
                          [](const If& x) { return node_count(*x.test); },
                          [](const Exp& x) { return node_count(*x.expr); },
                          [](const Fun&) -> std::size_t { return 0; },
                          [](const App& x) { return count_all(x.args); },
                      },
                      t.node);
  for (const auto& c : children(t)) n += node_count(*c);
  return n;
}

std::string describe_node(const Term& t) {
  return std::visit(overloaded{
                        [](const Let& x) {
                          return std::string(std::holds_alternative<Syscall>(x.rhs) ? "let-extern "
                                                                                    : "let ") +
                                 x.var;
                        },
                        [](const If&) { return std::string("if"); },
                        [](const Exp&) { return std::string("exp"); },
                        [](const Fun& x) {
                          std::string s = "fun";
                          for (const auto& f : x.group) s += " " + f.name;
                          return s;
                        },
                        [](const App& x) { return "app " + x.fun; },
                    },
                    t.node);
}

// ---------------------------------------------------------------------------

namespace {

void collect_fv(const Expr& e, VarSet& out) {
  std::visit(overloaded{
                 [](const Const&) {},
                 [&](const Var& v) { out.insert(v.name); },
                 [&](const Unary& u) { collect_fv(*u.arg, out); },
                 [&](const Binary& b) {
                   collect_fv(*b.lhs, out);
                   collect_fv(*b.rhs, out);
                 },
             },
             e.node);
}

using U = std::uint64_t;

Value wrap(U v) { return static_cast<Value>(v); }

}  // namespace

VarSet free_vars(const Expr& e) {
  VarSet out;
  collect_fv(e, out);
  return out;
}

VarSet free_vars(std::span<const ExprPtr> es) {
  VarSet out;
  for (const auto& e : es) collect_fv(*e, out);
  return out;
}

namespace {

void term_fv(const Term& t, const VarSet& bound, VarSet& out) {
  auto add = [&](const VarSet& vs) {
    for (const auto& v : vs)
      if (!bound.contains(v)) out.insert(v);
  };
  std::visit(overloaded{
                 [&](const Let& x) {
                   if (const auto* p = std::get_if<Pure>(&x.rhs))
                     add(free_vars(*p->expr));
                   else
                     add(free_vars(std::get<Syscall>(x.rhs).args));
                   auto inner = bound;
                   inner.insert(x.var);
                   term_fv(*x.body, inner, out);
                 },
                 [&](const If& x) {
                   add(free_vars(*x.test));
                   term_fv(*x.then_branch, bound, out);
                   term_fv(*x.else_branch, bound, out);
                 },
                 [&](const Exp& x) { add(free_vars(*x.expr)); },
                 [&](const Fun& x) {
                   for (const auto& f : x.group) {
                     auto inner = bound;
                     inner.insert(f.params.begin(), f.params.end());
                     term_fv(*f.body, inner, out);
                   }
                   term_fv(*x.cont, bound, out);
                 },
                 [&](const App& x) { add(free_vars(x.args)); },
             },
             t.node);
}

}  // namespace

VarSet free_vars(const Term& t) {
  VarSet out;
  term_fv(t, {}, out);
  return out;
}

std::optional<Value> eval_expr(const Expr& e, const Env& env) {
  return std::visit(
      overloaded{
          [](const Const& c) -> std::optional<Value> { return c.value; },
          [&](const Var& v) { return env.lookup(v.name); },
          [&](const Unary& u) -> std::optional<Value> {
            auto a = eval_expr(*u.arg, env);
            if (!a) return std::nullopt;
            if (u.op == UnOp::neg) return wrap(U{0} - static_cast<U>(*a));
            return *a == 0 ? 1 : 0;
          },
          [&](const Binary& b) -> std::optional<Value> {
            auto l = eval_expr(*b.lhs, env);
            if (!l) return std::nullopt;
            auto r = eval_expr(*b.rhs, env);
            if (!r) return std::nullopt;
            switch (b.op) {
              case BinOp::add: return wrap(static_cast<U>(*l) + static_cast<U>(*r));
              case BinOp::sub: return wrap(static_cast<U>(*l) - static_cast<U>(*r));
              case BinOp::mul: return wrap(static_cast<U>(*l) * static_cast<U>(*r));
              case BinOp::div:
                if (*r == 0) return std::nullopt;
                // The only overflowing quotient wraps back to the minimum.
                if (*r == -1) return wrap(U{0} - static_cast<U>(*l));
                return *l / *r;
              case BinOp::eq: return *l == *r ? 1 : 0;
              case BinOp::lt: return *l < *r ? 1 : 0;
              case BinOp::le: return *l <= *r ? 1 : 0;
            }
            return std::nullopt;
          },
      },
      e.node);
}

std::optional<std::vector<Value>> eval_expr_list(std::span<const ExprPtr> es, const Env& env) {
  std::vector<Value> out;
  out.reserve(es.size());
  for (const auto& e : es) {
    auto v = eval_expr(*e, env);
    if (!v) return std::nullopt;
    out.push_back(*v);
  }
  return out;
}

namespace {

void expr_constants(const Expr& e, std::set<Value>& out) {
  std::visit(overloaded{
                 [&](const Const& c) { out.insert(c.value); },
                 [](const Var&) {},
                 [&](const Unary& u) { expr_constants(*u.arg, out); },
                 [&](const Binary& b) {
                   expr_constants(*b.lhs, out);
                   expr_constants(*b.rhs, out);
                 },
             },
             e.node);
}

void term_constants(const Term& t, std::set<Value>& out) {
  auto all = [&](std::span<const ExprPtr> es) {
    for (const auto& e : es) expr_constants(*e, out);
  };
  std::visit(overloaded{
                 [&](const Let& x) {
                   if (const auto* p = std::get_if<Pure>(&x.rhs))
                     expr_constants(*p->expr, out);
                   else
                     all(std::get<Syscall>(x.rhs).args);
                 },
                 [&](const If& x) { expr_constants(*x.test, out); },
                 [&](const Exp& x) { expr_constants(*x.expr, out); },
                 [](const Fun&) {},
                 [&](const App& x) { all(x.args); },
             },
             t.node);
  for (const auto& c : children(t)) term_constants(*c, out);
}

}  // namespace

std::set<Value> constants(const Term& t) {
  std::set<Value> out;
  term_constants(t, out);
  return out;
}

std::optional<std::string> well_formedness_error(const Term& t) {
  if (const auto* f = std::get_if<Fun>(&t.node)) {
    std::set<Name> names;
    for (const auto& def : f->group) {
      if (!names.insert(def.name).second) return "duplicate function '" + def.name + "' in group";
      std::set<Name> params(def.params.begin(), def.params.end());
      if (params.size() != def.params.size())
        return "duplicate parameter in definition of '" + def.name + "'";
    }
  }
  for (const auto& c : children(t))
    if (auto err = well_formedness_error(*c)) return err;
  return std::nullopt;
}

// ---------------------------------------------------------------------------

Env Env::from(const std::map<Name, Value>& bindings) {
  Env env;
  for (const auto& [k, v] : bindings) env = env.bind(k, v);
  return env;
}

std::optional<Value> Env::lookup(const Name& x) const {
  for (const Node* n = head_.get(); n; n = n->next.get())
    if (n->name == x) return n->value;
  return std::nullopt;
}

Env Env::bind(const Name& x, Value v) const {
  Env out;
  out.head_ = std::make_shared<const Node>(Node{x, v, head_});
  return out;
}

Env Env::bind_all(std::span<const Name> xs, std::span<const Value> vs) const {
  if (xs.size() != vs.size()) throw std::invalid_argument("Env::bind_all: length mismatch");
  Env out = *this;
  for (std::size_t i = 0; i < xs.size(); ++i) out = out.bind(xs[i], vs[i]);
  return out;
}

std::map<Name, Value> Env::bindings() const {
  std::map<Name, Value> out;
  for (const Node* n = head_.get(); n; n = n->next.get()) out.emplace(n->name, n->value);
  return out;
}

}  // namespace il
