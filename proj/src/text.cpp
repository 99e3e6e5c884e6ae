#include "il/text.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <sstream>
#include <vector>

namespace il {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { ident, integer, keyword, symbol, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

bool is_keyword(std::string_view s) {
  return s == "let" || s == "in" || s == "if" || s == "then" || s == "else" || s == "fun" ||
         s == "and" || s == "extern";
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    std::size_t start = i, l = line, cl = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) ||
                                src[i] == '_' || src[i] == '\''))
        advance(1);
      std::string word(src.substr(start, i - start));
      out.push_back({is_keyword(word) ? Tok::keyword : Tok::ident, word, l, cl});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) advance(1);
      out.push_back({Tok::integer, std::string(src.substr(start, i - start)), l, cl});
      continue;
    }
    if ((c == '<' || c == '>') && i + 1 < src.size() && src[i + 1] == '=') {
      advance(2);
      out.push_back({Tok::symbol, std::string(src.substr(start, 2)), l, cl});
      continue;
    }
    if (std::string_view("()=,+-*/<>!").find(c) != std::string_view::npos) {
      advance(1);
      out.push_back({Tok::symbol, std::string(1, c), l, cl});
      continue;
    }
    throw ParseError(l, cl, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::end, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  TermPtr program() {
    auto t = term();
    expect_end();
    return t;
  }

  ExprPtr expression() {
    auto e = expr();
    expect_end();
    return e;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }

  bool at(std::string_view text, std::size_t k = 0) const {
    const auto& t = peek(k);
    return (t.kind == Tok::symbol || t.kind == Tok::keyword) && t.text == text;
  }

  [[noreturn]] void fail(const Token& t, const std::string& expected) const {
    std::string found = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.line, t.column, "expected " + expected + ", found " + found);
  }

  void expect(std::string_view text) {
    if (!at(text)) fail(peek(), "'" + std::string(text) + "'");
    ++pos_;
  }

  void expect_end() {
    if (peek().kind != Tok::end) fail(peek(), "end of input");
  }

  Name ident(const char* what) {
    if (peek().kind != Tok::ident) fail(peek(), what);
    return toks_[pos_++].text;
  }

  TermPtr term() {
    if (at("let")) return let_term();
    if (at("if")) {
      ++pos_;
      auto test = expr();
      expect("then");
      auto a = term();
      expect("else");
      auto b = term();
      return cond(std::move(test), std::move(a), std::move(b));
    }
    if (at("fun")) {
      ++pos_;
      std::vector<FunDef> group;
      group.push_back(fundef());
      while (at("and")) {
        ++pos_;
        group.push_back(fundef());
      }
      expect("in");
      auto cont = term();
      return fun(std::move(group), std::move(cont));
    }
    if (peek().kind == Tok::ident && at("(", 1)) {
      Name f = ident("function name");
      return app(std::move(f), arguments());
    }
    return exp(expr());
  }

  TermPtr let_term() {
    expect("let");
    Name x = ident("variable name");
    expect("=");
    TermPtr body;
    if (at("extern")) {
      ++pos_;
      Name action = ident("action name");
      auto args = arguments();
      expect("in");
      return let_extern(std::move(x), std::move(action), std::move(args), term());
    }
    auto e = expr();
    if (!at("in")) {
      if (at("("))
        fail(peek(), "'in' (applications are terms, not expressions; use 'extern' for calls)");
      fail(peek(), "'in'");
    }
    ++pos_;
    return let_pure(std::move(x), std::move(e), term());
  }

  FunDef fundef() {
    FunDef def;
    def.name = ident("function name");
    expect("(");
    if (!at(")")) {
      def.params.push_back(ident("parameter name"));
      while (at(",")) {
        ++pos_;
        def.params.push_back(ident("parameter name"));
      }
    }
    expect(")");
    expect("=");
    def.body = term();
    return def;
  }

  std::vector<ExprPtr> arguments() {
    expect("(");
    std::vector<ExprPtr> args;
    if (!at(")")) {
      args.push_back(expr());
      while (at(",")) {
        ++pos_;
        args.push_back(expr());
      }
    }
    if (!at(")")) fail(peek(), "',' or ')' in argument list");
    ++pos_;
    return args;
  }

  ExprPtr expr() {
    auto lhs = additive();
    for (;;) {
      if (at("=")) {
        ++pos_;
        lhs = binop(BinOp::eq, lhs, additive());
      } else if (at("<")) {
        ++pos_;
        lhs = binop(BinOp::lt, lhs, additive());
      } else if (at("<=")) {
        ++pos_;
        lhs = binop(BinOp::le, lhs, additive());
      } else if (at(">")) {
        // a > b is sugar for b < a
        ++pos_;
        lhs = binop(BinOp::lt, additive(), lhs);
      } else if (at(">=")) {
        ++pos_;
        lhs = binop(BinOp::le, additive(), lhs);
      } else {
        return lhs;
      }
    }
  }

  ExprPtr additive() {
    auto lhs = multiplicative();
    for (;;) {
      if (at("+")) {
        ++pos_;
        lhs = binop(BinOp::add, lhs, multiplicative());
      } else if (at("-")) {
        ++pos_;
        lhs = binop(BinOp::sub, lhs, multiplicative());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr multiplicative() {
    auto lhs = unary();
    for (;;) {
      if (at("*")) {
        ++pos_;
        lhs = binop(BinOp::mul, lhs, unary());
      } else if (at("/")) {
        ++pos_;
        lhs = binop(BinOp::div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr unary() {
    if (at("-")) {
      ++pos_;
      if (peek().kind == Tok::integer) return cst(integer(true));
      return unop(UnOp::neg, unary());
    }
    if (at("!")) {
      ++pos_;
      return unop(UnOp::lnot, unary());
    }
    return atom();
  }

  Value integer(bool negative) {
    const auto& t = toks_[pos_];
    std::uint64_t magnitude = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), magnitude);
    const std::uint64_t limit =
        static_cast<std::uint64_t>(std::numeric_limits<Value>::max()) + (negative ? 1 : 0);
    if (ec != std::errc() || magnitude > limit)
      throw ParseError(t.line, t.column, "integer literal out of range");
    ++pos_;
    return static_cast<Value>(negative ? std::uint64_t{0} - magnitude : magnitude);
  }

  ExprPtr atom() {
    const auto& t = peek();
    if (t.kind == Tok::integer) return cst(integer(false));
    if (t.kind == Tok::ident) {
      ++pos_;
      return var(t.text);
    }
    if (at("(")) {
      ++pos_;
      auto e = expr();
      expect(")");
      return e;
    }
    fail(t, "expression");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// Binding strength: comparisons < additive < multiplicative < unary < atom.
int level(const Expr& e) {
  if (const auto* b = std::get_if<Binary>(&e.node)) {
    switch (b->op) {
      case BinOp::add:
      case BinOp::sub: return 2;
      case BinOp::mul:
      case BinOp::div: return 3;
      default: return 1;
    }
  }
  if (std::holds_alternative<Unary>(e.node)) return 4;
  if (const auto* c = std::get_if<Const>(&e.node)) return c->value < 0 ? 4 : 5;
  return 5;
}

const char* symbol(BinOp op) {
  switch (op) {
    case BinOp::add: return "+";
    case BinOp::sub: return "-";
    case BinOp::mul: return "*";
    case BinOp::div: return "/";
    case BinOp::eq: return "=";
    case BinOp::lt: return "<";
    case BinOp::le: return "<=";
  }
  return "?";
}

void print_expr_at(const Expr& e, int min_level, std::ostream& os) {
  bool parens = level(e) < min_level;
  if (parens) os << '(';
  std::visit(overloaded{
                 [&](const Const& c) { os << c.value; },
                 [&](const Var& v) { os << v.name; },
                 [&](const Unary& u) {
                   os << (u.op == UnOp::neg ? "-" : "!");
                   // "-3" would read back as a negative literal
                   if (u.op == UnOp::neg && std::holds_alternative<Const>(u.arg->node)) {
                     os << '(';
                     print_expr_at(*u.arg, 0, os);
                     os << ')';
                   } else {
                     print_expr_at(*u.arg, 4, os);
                   }
                 },
                 [&](const Binary& b) {
                   int l = level(e);
                   print_expr_at(*b.lhs, l, os);
                   os << ' ' << symbol(b.op) << ' ';
                   print_expr_at(*b.rhs, l + 1, os);
                 },
             },
             e.node);
  if (parens) os << ')';
}

void print_args(std::span<const ExprPtr> args, std::ostream& os) {
  os << '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) os << ", ";
    print_expr_at(*args[i], 0, os);
  }
  os << ')';
}

void indent(std::ostream& os, int depth) {
  for (int i = 0; i < depth; ++i) os << "  ";
}

void print_term(const Term& t, int depth, std::ostream& os) {
  indent(os, depth);
  std::visit(overloaded{
                 [&](const Let& x) {
                   os << "let " << x.var << " = ";
                   if (const auto* p = std::get_if<Pure>(&x.rhs)) {
                     print_expr_at(*p->expr, 0, os);
                   } else {
                     const auto& call = std::get<Syscall>(x.rhs);
                     os << "extern " << call.action;
                     print_args(call.args, os);
                   }
                   os << " in\n";
                   print_term(*x.body, depth, os);
                 },
                 [&](const If& x) {
                   os << "if ";
                   print_expr_at(*x.test, 0, os);
                   os << " then\n";
                   print_term(*x.then_branch, depth + 1, os);
                   os << '\n';
                   indent(os, depth);
                   os << "else\n";
                   print_term(*x.else_branch, depth + 1, os);
                 },
                 [&](const Exp& x) { print_expr_at(*x.expr, 0, os); },
                 [&](const Fun& x) {
                   for (std::size_t i = 0; i < x.group.size(); ++i) {
                     const auto& f = x.group[i];
                     if (i) {
                       os << '\n';
                       indent(os, depth);
                     }
                     os << (i ? "and " : "fun ") << f.name << '(';
                     for (std::size_t k = 0; k < f.params.size(); ++k)
                       os << (k ? ", " : "") << f.params[k];
                     os << ") =\n";
                     print_term(*f.body, depth + 1, os);
                   }
                   os << '\n';
                   indent(os, depth);
                   os << "in\n";
                   print_term(*x.cont, depth, os);
                 },
                 [&](const App& x) {
                   os << x.fun;
                   print_args(x.args, os);
                 },
             },
             t.node);
}

}  // namespace

TermPtr parse_program(std::string_view text) { return Parser(text).program(); }
ExprPtr parse_expr(std::string_view text) { return Parser(text).expression(); }

std::string print_program(const Term& t) {
  std::ostringstream os;
  print_term(t, 0, os);
  os << '\n';
  return os.str();
}

std::string print_expr(const Expr& e) {
  std::ostringstream os;
  print_expr_at(e, 0, os);
  return os.str();
}

}  // namespace il
