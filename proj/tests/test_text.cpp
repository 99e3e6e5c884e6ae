#include <doctest.h>

#include "il/harness.hpp"
#include "il/text.hpp"
#include "support.hpp"

using namespace il;
using il::test::E;
using il::test::P;

namespace {

const char* kLeft = R"(
fun f(x, y) =
  if x > 9 then 1 else f(x + 1, y)
in
f(3, 2)
)";

const char* kRight = R"(
fun f(x) =
  if x > 9 then 1 else f(x + 1)
in
f(3)
)";

}  // namespace

TEST_CASE("smallest program") {
  CHECK(same(P("3"), exp(cst(3))));
  CHECK(print_program(*exp(cst(3))) == "3\n");
}

TEST_CASE("example program structure") {
  auto expected = fun({FunDef{"f",
                              {"x", "y"},
                              cond(binop(BinOp::lt, cst(9), var("x")), exp(cst(1)),
                                   app("f", {binop(BinOp::add, var("x"), cst(1)), var("y")}))}},
                      app("f", {cst(3), cst(2)}));
  CHECK(same(P(kLeft), expected));
}

TEST_CASE("right program round trips") {
  auto t = P(kRight);
  CHECK(same(P(print_program(*t)), t));
}

TEST_CASE("parse errors carry positions") {
  try {
    P("let x = f(");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 10);
  }
  try {
    P("let x = 1 in\nif x then 1 else");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(P(""), ParseError);
  CHECK_THROWS_AS(P("f(1,)"), ParseError);
  CHECK_THROWS_AS(P("1 +"), ParseError);
  CHECK_THROWS_AS(P("3 4"), ParseError);
  CHECK_THROWS_AS(P("let in = 1 in 2"), ParseError);
  CHECK_THROWS_AS(P("x $ y"), ParseError);
  CHECK_THROWS_AS(P("99999999999999999999"), ParseError);
}

TEST_CASE("grammar details") {
  CHECK(same(P("// leading comment\nlet x = extern read(1, y) in x"),
             let_extern("x", "read", {cst(1), var("y")}, exp(var("x")))));
  CHECK(same(P("f()"), app("f", {})));
  CHECK(same(P("fun f() = 1 and g(a) = a in g(2)"),
             fun({FunDef{"f", {}, exp(cst(1))}, FunDef{"g", {"a"}, exp(var("a"))}},
                 app("g", {cst(2)}))));
  CHECK(same(E("1 + 2 * 3"), binop(BinOp::add, cst(1), binop(BinOp::mul, cst(2), cst(3)))));
  CHECK(same(E("1 - 2 - 3"), binop(BinOp::sub, binop(BinOp::sub, cst(1), cst(2)), cst(3))));
  CHECK(same(E("a >= b"), binop(BinOp::le, var("b"), var("a"))));
  CHECK(same(E("-5"), cst(-5)));
  CHECK(same(E("-x"), unop(UnOp::neg, var("x"))));
  CHECK(same(E("-9223372036854775808"), cst(std::numeric_limits<Value>::min())));
  CHECK(same(E("x'"), var("x'")));
}

TEST_CASE("printing keeps structure") {
  for (const char* src : {"1 - (2 - 3)", "(1 < 2) = (3 < 4)", "-(3)", "--3", "!!x", "-(1 + 2)",
                          "2 * -3", "x / (y * z)"}) {
    auto e = E(src);
    CHECK(same(E(print_expr(*e)), e));
  }
  auto e = unop(UnOp::neg, cst(-3));
  CHECK(same(E(print_expr(*e)), e));
}

TEST_CASE("round trip on generated programs") {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    auto t = gen_program(cfg);
    auto text = print_program(*t);
    CHECK_MESSAGE(same(P(text), t), text);
  }
}
