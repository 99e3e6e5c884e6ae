#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace il {

/// IL values are two's-complement 64-bit integers; arithmetic wraps.
using Value = std::int64_t;
using Name = std::string;
using VarSet = std::set<Name>;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

enum class UnOp { neg, lnot };
enum class BinOp { add, sub, mul, div, eq, lt, le };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Const {
  Value value;
};
struct Var {
  Name name;
};
struct Unary {
  UnOp op;
  ExprPtr arg;
};
struct Binary {
  BinOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct Expr {
  std::variant<Const, Var, Unary, Binary> node;
};

ExprPtr cst(Value v);
ExprPtr var(Name name);
ExprPtr unop(UnOp op, ExprPtr arg);
ExprPtr binop(BinOp op, ExprPtr lhs, ExprPtr rhs);

bool operator==(const Expr& a, const Expr& b);
bool same(const ExprPtr& a, const ExprPtr& b);
bool same(std::span<const ExprPtr> a, std::span<const ExprPtr> b);

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

struct Term;
using TermPtr = std::shared_ptr<const Term>;

/// Right-hand side of a let: a pure expression or a system call.
struct Pure {
  ExprPtr expr;
};
struct Syscall {
  Name action;
  std::vector<ExprPtr> args;
};
using ExtExpr = std::variant<Pure, Syscall>;

struct Let {
  Name var;
  ExtExpr rhs;
  TermPtr body;
};
struct If {
  ExprPtr test;
  TermPtr then_branch;
  TermPtr else_branch;
};
struct Exp {
  ExprPtr expr;
};
struct FunDef {
  Name name;
  std::vector<Name> params;
  TermPtr body;
};
struct Fun {
  std::vector<FunDef> group;
  TermPtr cont;
};
struct App {
  Name fun;
  std::vector<ExprPtr> args;
};

struct Term {
  std::variant<Let, If, Exp, Fun, App> node;
};

TermPtr let_pure(Name x, ExprPtr e, TermPtr body);
TermPtr let_extern(Name x, Name action, std::vector<ExprPtr> args, TermPtr body);
TermPtr cond(ExprPtr test, TermPtr then_branch, TermPtr else_branch);
TermPtr exp(ExprPtr e);
TermPtr fun(std::vector<FunDef> group, TermPtr cont);
TermPtr app(Name f, std::vector<ExprPtr> args);

bool operator==(const Term& a, const Term& b);
bool same(const TermPtr& a, const TermPtr& b);

/// Subterms in annotation order: let -> [body], if -> [then, else],
/// fun -> [bodies..., cont], exp/app -> [].
std::vector<TermPtr> children(const Term& t);

/// Replace the subterms of `t` (same order as `children`).
TermPtr with_children(const Term& t, std::span<const TermPtr> kids);

/// Number of term and expression nodes.
std::size_t node_count(const Term& t);
std::size_t node_count(const Expr& e);

/// Human-readable node kind, used in diagnostics and sidecar comments.
std::string describe_node(const Term& t);

// ---------------------------------------------------------------------------
// Expression semantics
// ---------------------------------------------------------------------------

class Env;

VarSet free_vars(const Expr& e);
VarSet free_vars(std::span<const ExprPtr> es);

/// Variables a term reads without binding them first.
VarSet free_vars(const Term& t);

/// Evaluation yields nullopt (bottom) on an unbound variable or division by zero.
std::optional<Value> eval_expr(const Expr& e, const Env& env);
std::optional<std::vector<Value>> eval_expr_list(std::span<const ExprPtr> es, const Env& env);

inline bool beta(Value v) { return v != 0; }

/// Every integer literal occurring in the term.
std::set<Value> constants(const Term& t);

/// Structural well-formedness: distinct names in each group and parameter list.
/// Returns a description of the first violation, if any.
std::optional<std::string> well_formedness_error(const Term& t);

}  // namespace il
