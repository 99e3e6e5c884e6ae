#include <doctest.h>

#include "il/equiv.hpp"
#include "il/harness.hpp"
#include "il/transform.hpp"
#include "support.hpp"

using namespace il;
using il::test::P;

namespace {

Config at(const char* src) { return initial_config(P(src)); }

const ProbeSet kBits({0, 1});

}  // namespace

TEST_CASE("ProbeSet") {
  CHECK(ProbeSet({3, 1, 3, 0}).values() == std::vector<Value>{0, 1, 3});
  CHECK_THROWS(ProbeSet({}));
  std::vector<TermPtr> ps{P("if x < 7 then 1 else -2"), P("let a = 3 in a")};
  CHECK(ProbeSet::defaults(ps).values() == std::vector<Value>{-2, 0, 1, 3, 7});
}

TEST_CASE("terminal pairs") {
  CHECK(equivalent(check_bisim(at("3"), at("3"), 4, kBits, 100)));
  auto v = check_bisim(at("3"), at("4"), 4, kBits, 100);
  REQUIRE(distinguished(v));
  CHECK(std::get<Distinguished>(v).witness.choices.empty());
  CHECK(equivalent(check_bisim(at("1 + 2"), at("let a = 1 in a + 2"), 0, kBits, 100)));
  CHECK(distinguished(check_bisim(at("1 / 0"), at("3"), 4, kBits, 100)));
  CHECK(equivalent(check_bisim(at("1 / 0"), at("f()"), 4, kBits, 100)));
}

TEST_CASE("ready pairs") {
  auto a = at("let x = extern r(1) in if x then 5 else 6");
  auto b = at("let y = extern r(1) in if y = 0 then 6 else 5");
  CHECK(equivalent(check_bisim(a, b, 4, ProbeSet({0, 1, 2}), 100)));
  CHECK(distinguished(check_bisim(a, at("let x = extern r(2) in 5"), 4, kBits, 100)));
  CHECK(distinguished(check_bisim(a, at("let x = extern s(1) in 5"), 4, kBits, 100)));
  CHECK(distinguished(check_bisim(a, at("5"), 4, kBits, 100)));

  // The difference only shows when the call returns 1.
  auto c = at("let x = extern r(1) in 6");
  auto v = check_bisim(a, c, 4, kBits, 100);
  REQUIRE(distinguished(v));
  const auto& w = std::get<Distinguished>(v).witness;
  CHECK(w.choices == std::vector<Value>{1});
  CHECK(format_trace(w.left) == "EVT r(1)=1\nEND TERM 5\n");
  CHECK(format_trace(w.right) == "EVT r(1)=1\nEND TERM 6\n");
  CHECK(format_verdict(v).find("# left\nEVT r(1)=1\nEND TERM 5\n") != std::string::npos);
  // With depth 0 the call is never resolved.
  CHECK(equivalent(check_bisim(a, c, 0, kBits, 100)));
}

TEST_CASE("fuel exhaustion is reported separately") {
  auto loop = at("fun f() = f() in f()");
  auto v = check_bisim(loop, loop, 4, kBits, 50);
  REQUIRE(std::holds_alternative<Exhausted>(v));
  CHECK(std::get<Exhausted>(v).reason == ExhaustReason::fuel);
  CHECK(summary(v).find("fuel") != std::string::npos);
  CHECK(std::holds_alternative<Exhausted>(check_bisim(loop, at("3"), 4, kBits, 50)));
  // A difference found on another probe branch wins over exhaustion.
  auto split = at("fun f() = f() in let x = extern r() in if x then 1 else f()");
  auto other = at("fun f() = f() in let x = extern r() in if x then 2 else f()");
  CHECK(distinguished(check_bisim(split, other, 4, kBits, 50)));
}

TEST_CASE("similarity") {
  CHECK(equivalent(check_sim(at("1 / 0"), at("3"), 4, kBits, 100)));
  CHECK(equivalent(check_sim(at("f()"), at("let x = extern r() in x"), 4, kBits, 100)));
  CHECK(distinguished(check_sim(at("3"), at("1 / 0"), 4, kBits, 100)));
  auto a = at("let x = extern r() in if x then 1 / 0 else 2");
  auto b = at("let x = extern r() in if x then 7 else 2");
  CHECK(equivalent(check_sim(a, b, 4, kBits, 100)));
  CHECK(distinguished(check_sim(b, a, 4, kBits, 100)));
  CHECK(distinguished(check_bisim(a, b, 4, kBits, 100)));
}

TEST_CASE("enumerate_traces") {
  CHECK(enumerate_traces(at("1 + 1"), 6, kBits, 100).size() == 1);
  auto two = enumerate_traces(at("let x = extern r() in x"), 6, kBits, 100);
  CHECK(two.size() == 2);
  auto loop = P("fun f(n) = let x = extern tick(n) in f(n + 1) in f(0)");
  auto cut = enumerate_traces(initial_config(loop), 3, ProbeSet({0}), 100);
  REQUIRE(cut.size() == 1);
  CHECK(cut.begin()->events.size() == 3);
  CHECK(std::holds_alternative<Cutoff>(cut.begin()->outcome));
  CHECK(enumerate_traces(at("let x = extern r() in let y = extern r() in x + y"), 6,
                         ProbeSet({0, 1, 2}), 100)
            .size() == 9);
}

TEST_CASE("checker properties on generated programs") {
  std::size_t bisimilar = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    auto s = gen_program(cfg);
    cfg.seed = seed + 100'000;
    auto t = gen_program(cfg);
    std::mt19937_64 rng(seed);
    std::vector<TermPtr> both{s, t};
    auto probes = ProbeSet::defaults(both);
    GenConfig scope;
    Env v = random_env(s, scope, rng);
    auto fv = free_vars(*t);
    auto vb = v.bindings();
    for (const auto& x : fv)
      if (!vb.contains(x) && x != "u") v = v.bind(x, static_cast<Value>(rng() % 7));
    auto cs = initial_config(s, v);
    auto ct = initial_config(t, v);

    CHECK_FALSE(distinguished(check_bisim(cs, cs, 6, probes, 2000)));
    auto st = check_bisim(cs, ct, 6, probes, 2000);
    auto ts = check_bisim(ct, cs, 6, probes, 2000);
    CHECK(distinguished(st) == distinguished(ts));
    if (equivalent(st)) {
      ++bisimilar;
      CHECK(equivalent(check_sim(cs, ct, 6, probes, 2000)));
    }
    // Monotone in depth.
    for (std::size_t k = 0; k < 6; ++k)
      if (distinguished(check_bisim(cs, ct, k, probes, 2000))) CHECK(distinguished(st));
  }
  CHECK(bisimilar > 0);
}

TEST_CASE("witnesses replay") {
  std::size_t seen = 0;
  for (std::uint64_t seed = 0; seed < 300 && seen < 30; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    auto s = gen_program(cfg);
    auto t = optimize_uce(s, Mutation::uce_wrong_branch);
    std::mt19937_64 rng(seed);
    Env v = random_env(s, cfg, rng);
    std::vector<TermPtr> both{s, t};
    auto verdict = check_bisim(initial_config(s, v), initial_config(t, v), 8,
                               ProbeSet::defaults(both), 10'000);
    if (!distinguished(verdict)) continue;
    ++seen;
    const auto& w = std::get<Distinguished>(verdict).witness;
    auto n = w.choices.size() + 1;
    auto l = run_trace(initial_config(s, v), replay_oracle(w.choices), 10'000, n);
    auto r = run_trace(initial_config(t, v), replay_oracle(w.choices), 10'000, n);
    CHECK(l == w.left);
    CHECK(r == w.right);
    CHECK(l != r);
  }
  CHECK(seen > 0);
}
