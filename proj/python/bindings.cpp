#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "il/equiv.hpp"
#include "il/harness.hpp"
#include "il/reach.hpp"
#include "il/semantics.hpp"
#include "il/text.hpp"
#include "il/tlive.hpp"
#include "il/transform.hpp"

namespace py = pybind11;
using namespace il;

namespace {

Config start(const std::string& program, const std::map<Name, Value>& env) {
  return initial_config(parse_program(program), Env::from(env));
}

py::dict verdict_dict(const Verdict& v) {
  py::dict d;
  d["summary"] = summary(v);
  std::visit(overloaded{
                 [&](const Equivalent& e) {
                   d["kind"] = "equivalent";
                   d["depth"] = e.depth;
                 },
                 [&](const Distinguished& x) {
                   d["kind"] = "distinguished";
                   d["choices"] = x.witness.choices;
                   d["left"] = format_trace(x.witness.left);
                   d["right"] = format_trace(x.witness.right);
                 },
                 [&](const Exhausted& x) {
                   d["kind"] = "exhausted";
                   d["reason"] = x.reason == ExhaustReason::fuel ? "fuel" : "depth";
                 },
             },
             v);
  return d;
}

Verdict check(bool bisim, const std::string& left, const std::string& right, std::size_t depth,
              std::uint64_t fuel, std::optional<std::vector<Value>> probes,
              const std::map<Name, Value>& env) {
  std::vector<TermPtr> both{parse_program(left), parse_program(right)};
  ProbeSet p = probes ? ProbeSet(*probes) : ProbeSet::defaults(both);
  auto a = initial_config(both[0], Env::from(env));
  auto b = initial_config(both[1], Env::from(env));
  py::gil_scoped_release release;
  return bisim ? check_bisim(a, b, depth, p, fuel) : check_sim(a, b, depth, p, fuel);
}

}  // namespace

PYBIND11_MODULE(ilopt, m) {
  m.doc() = "IL analyses, dead code elimination and bounded equivalence checking";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def("parse", [](const std::string& text) { return print_program(*parse_program(text)); },
        "Parse a program and return its canonical text.", py::arg("text"));

  m.def(
      "run",
      [](const std::string& program, std::uint64_t fuel, std::uint64_t oracle_seed,
         std::size_t max_events, const std::map<Name, Value>& env) {
        return format_trace(run_trace(start(program, env), seeded_oracle(oracle_seed), fuel, max_events));
      },
      "Execute a program; returns the trace text.", py::arg("program"), py::arg("fuel") = 10'000,
      py::arg("oracle_seed") = 0, py::arg("max_events") = 1000,
      py::arg("env") = std::map<Name, Value>{});

  m.def(
      "analyze_reach",
      [](const std::string& program) {
        auto a = infer_reach(parse_program(program));
        auto r = check_reach({}, a);
        return py::make_tuple(write_sidecar(a), r ? py::object(py::str(describe(*r))) : py::none());
      },
      "Infer reachability; returns (sidecar, rejection or None).", py::arg("program"));

  m.def(
      "analyze_tlive",
      [](const std::string& program) {
        auto a = infer_tlive(parse_program(program));
        auto r = check_tlive({}, {}, a);
        return py::make_tuple(write_sidecar(a), r ? py::object(py::str(describe(*r))) : py::none());
      },
      "Infer true liveness; returns (sidecar, rejection or None).", py::arg("program"));

  m.def(
      "optimize",
      [](const std::string& program, bool uce, bool dve) {
        auto t = parse_program(program);
        if (uce) t = optimize_uce(t);
        if (dve) t = optimize_dve(t);
        return print_program(*t);
      },
      "Run UCE then DVE, re-analysing in between.", py::arg("program"), py::arg("uce") = true,
      py::arg("dve") = true);

  m.def(
      "check_bisim",
      [](const std::string& l, const std::string& r, std::size_t depth, std::uint64_t fuel,
         std::optional<std::vector<Value>> probes, const std::map<Name, Value>& env) {
        return verdict_dict(check(true, l, r, depth, fuel, probes, env));
      },
      py::arg("left"), py::arg("right"), py::arg("depth") = 8, py::arg("fuel") = 10'000,
      py::arg("probes") = py::none(), py::arg("env") = std::map<Name, Value>{});

  m.def(
      "check_sim",
      [](const std::string& l, const std::string& r, std::size_t depth, std::uint64_t fuel,
         std::optional<std::vector<Value>> probes, const std::map<Name, Value>& env) {
        return verdict_dict(check(false, l, r, depth, fuel, probes, env));
      },
      py::arg("left"), py::arg("right"), py::arg("depth") = 8, py::arg("fuel") = 10'000,
      py::arg("probes") = py::none(), py::arg("env") = std::map<Name, Value>{});

  m.def(
      "generate",
      [](std::uint64_t seed, int max_depth) {
        GenConfig cfg;
        cfg.seed = seed;
        cfg.max_depth = max_depth;
        return print_program(*gen_program(cfg));
      },
      "A random well-scoped program.", py::arg("seed"), py::arg("max_depth") = 6);

  m.def(
      "difftest",
      [](const std::string& pass, std::size_t trials, std::uint64_t seed, std::size_t depth,
         std::uint64_t fuel, const std::string& mutation) {
        DiffOptions opts;
        if (pass != "uce" && pass != "dve") throw py::value_error("pass must be 'uce' or 'dve'");
        opts.pass = pass == "dve" ? Pass::dve : Pass::uce;
        opts.trials = trials;
        opts.depth = depth;
        opts.fuel = fuel;
        auto m = mutation_from_string(mutation);
        if (!m) throw py::value_error("unknown mutation " + mutation);
        opts.mutation = *m;
        GenConfig cfg;
        cfg.seed = seed;
        DiffReport r;
        {
          py::gil_scoped_release release;
          r = difftest(cfg, opts);
        }
        py::dict d;
        d["trials"] = r.trials.size();
        d["accepted"] = r.accepted;
        d["transformed"] = r.transformed;
        d["equivalent"] = r.equivalent;
        d["distinguished"] = r.distinguished;
        d["exhausted"] = r.exhausted;
        d["report"] = format_report(r);
        return d;
      },
      py::arg("pass_") = "uce", py::arg("trials") = 100, py::arg("seed") = 0,
      py::arg("depth") = 8, py::arg("fuel") = 10'000, py::arg("mutation") = "none");
}
