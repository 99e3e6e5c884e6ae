#include "il/semantics.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace il {

Config initial_config(TermPtr program, Env env) {
  return Config{FunContext{}, std::move(env), std::move(program)};
}

StepResult step_silent(const Config& c) {
  const Term& t = *c.focus;
  return std::visit(
      overloaded{
          [&](const Let& x) -> StepResult {
            if (const auto* p = std::get_if<Pure>(&x.rhs)) {
              auto v = eval_expr(*p->expr, c.env);
              if (!v) return Stuck{};
              return Stepped{Config{c.ctx, c.env.bind(x.var, *v), x.body}};
            }
            const auto& call = std::get<Syscall>(x.rhs);
            auto vs = eval_expr_list(call.args, c.env);
            if (!vs) return Stuck{};
            return AtExtern{call.action, std::move(*vs)};
          },
          [&](const If& x) -> StepResult {
            auto v = eval_expr(*x.test, c.env);
            if (!v) return Stuck{};
            return Stepped{Config{c.ctx, c.env, beta(*v) ? x.then_branch : x.else_branch}};
          },
          [&](const Exp&) -> StepResult { return Stuck{}; },
          [&](const Fun& x) -> StepResult {
            FunContext::Group group;
            group.reserve(x.group.size());
            for (const auto& f : x.group) group.emplace_back(f.name, Closure{c.env, f.params, f.body});
            return Stepped{Config{c.ctx.push(std::move(group)), c.env, x.cont}};
          },
          [&](const App& x) -> StepResult {
            const Closure* callee = c.ctx.lookup(x.fun);
            if (!callee) return Stuck{};
            auto vs = eval_expr_list(x.args, c.env);
            if (!vs || vs->size() != callee->params.size()) return Stuck{};
            return Stepped{
                Config{c.ctx.rewind(x.fun), callee->env.bind_all(callee->params, *vs), callee->body}};
          },
      },
      t.node);
}

std::pair<ExternEvent, Config> apply_extern(const Config& c, Value result) {
  const auto* let = std::get_if<Let>(&c.focus->node);
  const auto* call = let ? std::get_if<Syscall>(&let->rhs) : nullptr;
  if (!call) throw std::logic_error("apply_extern: focus is not a system call");
  auto vs = eval_expr_list(call->args, c.env);
  if (!vs) throw std::logic_error("apply_extern: system call arguments do not evaluate");
  return {ExternEvent{call->action, std::move(*vs), result},
          Config{c.ctx, c.env.bind(let->var, result), let->body}};
}

std::optional<Value> result_of(const Config& c) {
  if (const auto* e = std::get_if<Exp>(&c.focus->node)) return eval_expr(*e->expr, c.env);
  return std::nullopt;
}

Anchor run_to_anchor(Config c, std::uint64_t fuel, const StepObserver& observe) {
  for (;;) {
    if (observe) observe(c);
    auto r = step_silent(c);
    if (auto* s = std::get_if<Stepped>(&r)) {
      if (fuel == 0) return FuelExhausted{std::move(c)};
      --fuel;
      c = std::move(s->next);
      continue;
    }
    if (auto* e = std::get_if<AtExtern>(&r))
      return Ready{std::move(e->action), std::move(e->args), std::move(c)};
    return Terminal{result_of(c)};
  }
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

Oracle seeded_oracle(std::uint64_t seed) {
  return [seed](std::size_t index, const Name& action, std::span<const Value> args) -> Value {
    std::uint64_t h = splitmix(seed ^ splitmix(index));
    h = splitmix(h ^ fnv1a(action));
    for (Value a : args) h = splitmix(h ^ static_cast<std::uint64_t>(a));
    return static_cast<Value>(h % 15) - 2;
  };
}

Oracle replay_oracle(std::vector<Value> choices, Value fallback) {
  return [choices = std::move(choices), fallback](std::size_t index, const Name&,
                                                  std::span<const Value>) -> Value {
    return index < choices.size() ? choices[index] : fallback;
  };
}

Trace run_trace(const Config& start, const Oracle& oracle, std::uint64_t fuel,
                std::size_t max_events) {
  Trace trace{{}, Cutoff{}};
  Config c = start;
  for (;;) {
    auto anchor = run_to_anchor(std::move(c), fuel);
    if (auto* t = std::get_if<Terminal>(&anchor)) {
      trace.outcome = Terminated{t->result};
      return trace;
    }
    auto* r = std::get_if<Ready>(&anchor);
    if (!r || trace.events.size() >= max_events) return trace;
    Value v = oracle(trace.events.size(), r->action, r->args);
    auto [event, next] = apply_extern(r->pending, v);
    trace.events.push_back(std::move(event));
    c = std::move(next);
  }
}

std::string format_trace(const Trace& t) {
  std::ostringstream os;
  for (const auto& e : t.events) {
    os << "EVT " << e.action << '(';
    for (std::size_t i = 0; i < e.args.size(); ++i) os << (i ? "," : "") << e.args[i];
    os << ")=" << e.result << '\n';
  }
  std::visit(overloaded{
                 [&](const Terminated& x) {
                   if (x.result)
                     os << "END TERM " << *x.result << '\n';
                   else
                     os << "END BOT\n";
                 },
                 [&](const Cutoff&) { os << "END CUTOFF\n"; },
             },
             t.outcome);
  return os.str();
}

namespace {

Value parse_value(std::string_view s) {
  Value v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("trace: bad value '" + std::string(s) + "'");
  return v;
}

}  // namespace

Trace parse_trace(std::string_view text) {
  Trace t{{}, Cutoff{}};
  bool ended = false;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (ended) throw std::invalid_argument("trace: content after END");
    std::string_view l = line;
    if (l.starts_with("EVT ")) {
      l.remove_prefix(4);
      auto open = l.find('(');
      auto close = l.find(")=");
      if (open == std::string_view::npos || close == std::string_view::npos || close < open)
        throw std::invalid_argument("trace: malformed event '" + line + "'");
      ExternEvent e{std::string(l.substr(0, open)), {}, parse_value(l.substr(close + 2))};
      auto args = l.substr(open + 1, close - open - 1);
      while (!args.empty()) {
        auto comma = args.find(',');
        e.args.push_back(parse_value(args.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        args.remove_prefix(comma + 1);
      }
      t.events.push_back(std::move(e));
    } else if (l.starts_with("END TERM ")) {
      t.outcome = Terminated{parse_value(l.substr(9))};
      ended = true;
    } else if (l == "END BOT") {
      t.outcome = Terminated{std::nullopt};
      ended = true;
    } else if (l == "END CUTOFF") {
      t.outcome = Cutoff{};
      ended = true;
    } else {
      throw std::invalid_argument("trace: unrecognized line '" + line + "'");
    }
  }
  if (!ended) throw std::invalid_argument("trace: missing END line");
  return t;
}

}  // namespace il
