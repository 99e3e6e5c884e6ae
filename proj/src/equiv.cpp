#include "il/equiv.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace il {

ProbeSet::ProbeSet(std::vector<Value> values) : values_(std::move(values)) {
  std::sort(values_.begin(), values_.end());
  values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
  if (values_.empty()) throw std::invalid_argument("probe set must not be empty");
}

ProbeSet ProbeSet::defaults(std::span<const TermPtr> programs) {
  std::vector<Value> vs{0, 1};
  for (const auto& p : programs)
    for (Value v : constants(*p)) vs.push_back(v);
  return ProbeSet(std::move(vs));
}

namespace {

std::string show_result(const std::optional<Value>& v) {
  return v ? std::to_string(*v) : std::string("bottom");
}

std::string show_call(const Name& action, const std::vector<Value>& args) {
  std::string s = action + "(";
  for (std::size_t i = 0; i < args.size(); ++i) s += (i ? "," : "") + std::to_string(args[i]);
  return s + ")";
}

class Game {
 public:
  Game(const Config& left, const Config& right, const ProbeSet& probes, std::uint64_t fuel,
       bool similarity)
      : left_(left), right_(right), probes_(probes), fuel_(fuel), similarity_(similarity) {}

  Verdict play(std::size_t depth) {
    auto v = step(left_, right_, depth);
    if (std::holds_alternative<Equivalent>(v)) return Equivalent{depth};
    return v;
  }

 private:
  Verdict step(const Config& l, const Config& r, std::size_t depth) {
    Anchor a = run_to_anchor(l, fuel_);
    if (similarity_)
      if (const auto* t = std::get_if<Terminal>(&a); t && !t->result) return Equivalent{depth};
    if (std::holds_alternative<FuelExhausted>(a)) return Exhausted{ExhaustReason::fuel};
    Anchor b = run_to_anchor(r, fuel_);
    if (std::holds_alternative<FuelExhausted>(b)) return Exhausted{ExhaustReason::fuel};

    const auto* ta = std::get_if<Terminal>(&a);
    const auto* tb = std::get_if<Terminal>(&b);
    if (ta && tb) {
      if (ta->result == tb->result) return Equivalent{depth};
      return witness("results differ: " + show_result(ta->result) + " vs " +
                     show_result(tb->result));
    }
    const auto* ra = std::get_if<Ready>(&a);
    const auto* rb = std::get_if<Ready>(&b);
    if (ta) return witness("left terminates with " + show_result(ta->result) +
                           ", right calls " + show_call(rb->action, rb->args));
    if (tb) return witness("left calls " + show_call(ra->action, ra->args) +
                           ", right terminates with " + show_result(tb->result));

    if (depth == 0) return Equivalent{0};
    if (ra->action != rb->action || ra->args != rb->args)
      return witness("calls differ: " + show_call(ra->action, ra->args) + " vs " +
                     show_call(rb->action, rb->args));

    // Every probe branch is explored so the verdict does not depend on
    // which side is on the left: a distinction anywhere wins over fuel
    // exhaustion elsewhere.
    std::optional<Verdict> exhausted;
    for (Value v : probes_.values()) {
      choices_.push_back(v);
      auto next = step(apply_extern(ra->pending, v).second, apply_extern(rb->pending, v).second,
                       depth - 1);
      choices_.pop_back();
      if (distinguished(next)) return next;
      if (!exhausted && std::holds_alternative<Exhausted>(next)) exhausted = next;
    }
    if (exhausted) return *exhausted;
    return Equivalent{depth};
  }

  Verdict witness(std::string why) const {
    Counterexample cx;
    cx.choices = choices_;
    cx.divergence = std::move(why);
    auto oracle = replay_oracle(choices_);
    // One event past the choices so a mismatched pending call is recorded.
    cx.left = run_trace(left_, oracle, fuel_, choices_.size() + 1);
    cx.right = run_trace(right_, oracle, fuel_, choices_.size() + 1);
    return Distinguished{std::move(cx)};
  }

  const Config& left_;
  const Config& right_;
  const ProbeSet& probes_;
  std::uint64_t fuel_;
  bool similarity_;
  std::vector<Value> choices_;
};

void enumerate(const Config& c, std::size_t depth, const ProbeSet& probes, std::uint64_t fuel,
               std::vector<ExternEvent>& prefix, std::set<Trace>& out) {
  Anchor a = run_to_anchor(c, fuel);
  if (const auto* t = std::get_if<Terminal>(&a)) {
    out.insert(Trace{prefix, Terminated{t->result}});
    return;
  }
  const auto* r = std::get_if<Ready>(&a);
  if (!r || prefix.size() >= depth) {
    out.insert(Trace{prefix, Cutoff{}});
    return;
  }
  for (Value v : probes.values()) {
    auto [event, next] = apply_extern(r->pending, v);
    prefix.push_back(std::move(event));
    enumerate(next, depth, probes, fuel, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::string summary(const Verdict& v) {
  return std::visit(overloaded{
                        [](const Equivalent& e) {
                          return "equivalent to depth " + std::to_string(e.depth);
                        },
                        [](const Distinguished& d) {
                          return "distinguished: " + d.witness.divergence;
                        },
                        [](const Exhausted& e) {
                          return std::string("exhausted: ") +
                                 (e.reason == ExhaustReason::fuel ? "fuel" : "depth");
                        },
                    },
                    v);
}

std::string format_verdict(const Verdict& v) {
  std::ostringstream os;
  os << summary(v) << '\n';
  if (const auto* d = std::get_if<Distinguished>(&v)) {
    os << "choices:";
    for (Value c : d->witness.choices) os << ' ' << c;
    os << "\n# left\n" << format_trace(d->witness.left) << "# right\n"
       << format_trace(d->witness.right);
  }
  return os.str();
}

Verdict check_bisim(const Config& left, const Config& right, std::size_t depth,
                    const ProbeSet& probes, std::uint64_t fuel) {
  return Game(left, right, probes, fuel, false).play(depth);
}

Verdict check_sim(const Config& left, const Config& right, std::size_t depth,
                  const ProbeSet& probes, std::uint64_t fuel) {
  return Game(left, right, probes, fuel, true).play(depth);
}

std::set<Trace> enumerate_traces(const Config& c, std::size_t depth, const ProbeSet& probes,
                                 std::uint64_t fuel) {
  std::set<Trace> out;
  std::vector<ExternEvent> prefix;
  enumerate(c, depth, probes, fuel, prefix, out);
  return out;
}

}  // namespace il
