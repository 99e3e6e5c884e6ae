#include <doctest.h>

#include <limits>
#include <random>

#include "il/annotated.hpp"
#include "il/context.hpp"
#include "support.hpp"

using namespace il;
using il::test::E;
using il::test::env;
using il::test::P;

namespace {

ExprPtr random_expr(std::mt19937_64& rng, int depth) {
  static const char* names[] = {"x", "y", "z", "w"};
  std::uniform_int_distribution<int> pick(0, 9);
  int r = pick(rng);
  if (depth == 0 || r < 3) {
    if (r % 2 == 0) return var(names[pick(rng) % 4]);
    return cst(std::uniform_int_distribution<Value>(-3, 5)(rng));
  }
  if (r == 3) return unop(r % 2 ? UnOp::neg : UnOp::lnot, random_expr(rng, depth - 1));
  static const BinOp ops[] = {BinOp::add, BinOp::sub, BinOp::mul, BinOp::div,
                              BinOp::eq,  BinOp::lt,  BinOp::le};
  return binop(ops[pick(rng) % 7], random_expr(rng, depth - 1), random_expr(rng, depth - 1));
}

std::map<Name, Value> random_bindings(std::mt19937_64& rng) {
  std::map<Name, Value> m;
  for (const char* x : {"x", "y", "z", "w"})
    if (rng() % 3) m[x] = std::uniform_int_distribution<Value>(-4, 4)(rng);
  return m;
}

}  // namespace

TEST_CASE("eval_expr") {
  CHECK(eval_expr(*E("x + 1"), env({{"x", 3}})) == 4);
  CHECK_FALSE(eval_expr(*E("y"), env({{"x", 3}})));
  CHECK_FALSE(eval_expr(*E("10 / x"), env({{"x", 0}})));
  CHECK(eval_expr(*E("7 / 2"), {}) == 3);
  CHECK(eval_expr(*E("-7 / 2"), {}) == -3);
  CHECK(eval_expr(*E("1 < 2"), {}) == 1);
  CHECK(eval_expr(*E("2 <= 1"), {}) == 0);
  CHECK(eval_expr(*E("3 = 3"), {}) == 1);
  CHECK(eval_expr(*E("!0"), {}) == 1);
  CHECK(eval_expr(*E("!5"), {}) == 0);
  CHECK(eval_expr(*E("-(4)"), {}) == -4);
}

TEST_CASE("arithmetic wraps") {
  constexpr Value max = std::numeric_limits<Value>::max();
  constexpr Value min = std::numeric_limits<Value>::min();
  auto e = env({{"m", max}, {"n", min}});
  CHECK(eval_expr(*E("m + 1"), e) == min);
  CHECK(eval_expr(*E("n - 1"), e) == max);
  CHECK(eval_expr(*E("m * 2"), e) == -2);
  CHECK(eval_expr(*E("-n"), e) == min);
  CHECK(eval_expr(*E("n / -1"), e) == min);
}

TEST_CASE("eval_expr_list is strict") {
  CHECK(eval_expr_list({}, {}) == std::vector<Value>{});
  std::vector<ExprPtr> ok{E("x"), E("x + 1")};
  CHECK(eval_expr_list(ok, env({{"x", 3}})) == std::vector<Value>{3, 4});
  std::vector<ExprPtr> bad{E("x"), E("y")};
  CHECK_FALSE(eval_expr_list(bad, env({{"x", 3}})));
}

TEST_CASE("beta") {
  CHECK_FALSE(beta(0));
  CHECK(beta(1));
  CHECK(beta(-7));
}

TEST_CASE("free_vars") {
  CHECK(free_vars(*cst(5)).empty());
  CHECK(free_vars(*E("x + y")) == VarSet{"x", "y"});
  CHECK(free_vars(*E("(x * x) < z")) == VarSet{"x", "z"});
  CHECK(free_vars(*P("let x = y in x + z")) == VarSet{"y", "z"});
  CHECK(free_vars(*P("fun f(a) = a + b in f(c)")) == VarSet{"b", "c"});
  CHECK(free_vars(*P("let x = extern r(y) in x")) == VarSet{"y"});
}

TEST_CASE("free_vars suffices: agreement on fv gives equal results") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    auto e = random_expr(rng, 4);
    auto a = random_bindings(rng);
    auto b = random_bindings(rng);
    for (const auto& x : free_vars(*e)) {
      if (a.contains(x))
        b[x] = a[x];
      else
        b.erase(x);
    }
    CHECK(eval_expr(*e, Env::from(a)) == eval_expr(*e, Env::from(b)));
  }
}

TEST_CASE("eval_expr is monotone in the environment") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 2000; ++i) {
    auto e = random_expr(rng, 4);
    auto small = random_bindings(rng);
    auto big = small;
    for (const char* x : {"x", "y", "z", "w"})
      if (!big.contains(x)) big[x] = std::uniform_int_distribution<Value>(-4, 4)(rng);
    auto r = eval_expr(*e, Env::from(small));
    if (r) CHECK(eval_expr(*e, Env::from(big)) == r);
  }
}

TEST_CASE("Env") {
  Env v = env({{"x", 1}});
  Env w = v.bind("y", 2).bind("x", 3);
  CHECK(w.lookup("x") == 3);
  CHECK(w.lookup("y") == 2);
  CHECK(v.lookup("x") == 1);
  CHECK_FALSE(v.lookup("y"));
  CHECK(w.bindings() == std::map<Name, Value>{{"x", 3}, {"y", 2}});
  std::vector<Name> xs{"a", "b"};
  std::vector<Value> vs{4, 5};
  CHECK(v.bind_all(xs, vs).lookup("b") == 5);
  std::vector<Value> short_vs{4};
  CHECK_THROWS(v.bind_all(xs, short_vs));
}

TEST_CASE("Layered context lookup and rewind") {
  Layered<int> ctx;
  ctx = ctx.push({{"f", 1}, {"g", 2}}).push({{"h", 3}}).push({{"f", 4}});
  CHECK(*ctx.lookup("f") == 4);
  CHECK(*ctx.lookup("g") == 2);
  CHECK(ctx.lookup("k") == nullptr);
  CHECK(ctx.rewind("f").depth() == 3);
  auto r = ctx.rewind("g");
  CHECK(r.depth() == 1);
  CHECK(*r.lookup("f") == 1);
  CHECK(ctx.has_suffix(r));
  CHECK_FALSE(r.has_suffix(ctx));
  CHECK_THROWS_AS(ctx.rewind("k"), std::out_of_range);
}

TEST_CASE("well-formedness") {
  CHECK_FALSE(well_formedness_error(*P("fun f(x) = x and g(y) = y in f(1)")));
  CHECK(well_formedness_error(*P("fun f(x) = x and f(y) = y in f(1)")));
  CHECK(well_formedness_error(*P("fun f(x, x) = x in f(1, 2)")));
  // Shadowing across groups is fine.
  CHECK_FALSE(well_formedness_error(*P("fun f(x) = x in fun f(y) = y in f(1)")));
}

TEST_CASE("constants and node_count") {
  auto t = P("let x = 3 + y in if x < 7 then 3 else f(-2)");
  CHECK(constants(*t) == std::set<Value>{-2, 3, 7});
  CHECK(node_count(*E("1 + x")) == 3);
  CHECK(node_count(*P("3")) == 2);
}

TEST_CASE("strip and zip_ann") {
  auto leaf = P("3");
  Annotated<int> a = zip_ann(leaf, FactTree<int>{7, {}});
  CHECK(a.fact == 7);
  CHECK(strip(a) == leaf);

  auto t = P("fun f(x) = x and g() = 1 in let y = 2 in g()");
  FactTree<int> f{0, {{1, {}}, {2, {}}, {3, {{4, {}}}}}};
  auto z = zip_ann(t, f);
  CHECK(strip(z) == t);
  std::vector<int> order;
  preorder(z, order);
  CHECK(order == std::vector<int>{0, 1, 2, 3, 4});
  CHECK(facts(z).sub[2].sub[0].fact == 4);

  FactTree<int> bad{0, {{1, {}}, {2, {}}}};
  CHECK_THROWS_AS(zip_ann(t, bad), ShapeError);
  CHECK_THROWS_AS(zip_preorder(t, std::vector<int>{0, 1, 2, 3}), ShapeError);
  CHECK_THROWS_AS(zip_preorder(t, std::vector<int>{0, 1, 2, 3, 4, 5}), ShapeError);
}

TEST_CASE("sidecar round trip") {
  auto t = P("fun f(x) = x in let y = extern r() in f(y)");
  Annotated<VarSet> live = zip_preorder(
      t, std::vector<VarSet>{{}, {"x"}, {}, {"y"}});
  auto text = write_sidecar(live);
  CHECK(text == "{}  # fun f\n  {x}  # exp\n  {}  # let-extern y\n    {y}  # app f\n");
  CHECK(read_live_sidecar(text) == std::vector<VarSet>{{}, {"x"}, {}, {"y"}});

  Annotated<bool> reach = zip_preorder(t, std::vector<bool>{true, false, true, true});
  CHECK(read_reach_sidecar(write_sidecar(reach)) == std::vector<bool>{true, false, true, true});
  CHECK(read_live_sidecar("{a, b}\n\n# only a comment\n{}") == std::vector<VarSet>{{"a", "b"}, {}});
  CHECK_THROWS_AS(read_reach_sidecar("true\nmaybe\n"), std::invalid_argument);
  CHECK_THROWS_AS(read_live_sidecar("{a,\n"), std::invalid_argument);
}
