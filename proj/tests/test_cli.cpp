#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "il/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run il_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = il::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(IL_EXAMPLES_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& text) {
  auto p = fs::temp_directory_path() / ("il_cli_" + name);
  std::ofstream(p) << text;
  return p.string();
}

const char* kRightPrinted =
    "fun f(x) =\n"
    "  if 9 < x then\n"
    "    1\n"
    "  else\n"
    "    f(x + 1)\n"
    "in\n"
    "f(3)\n";

}  // namespace

TEST_CASE("parse") {
  auto r = il_run({"parse", data("dve_left.il")});
  CHECK(r.code == 0);
  CHECK(r.out.starts_with("fun f(x, y) =\n"));
  auto bad = il_run({"parse", temp_file("bad.il", "let x = f(")});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("1:10") != std::string::npos);
  CHECK(il_run({"parse", "/nonexistent/file.il"}).code == 66);
}

TEST_CASE("usage errors") {
  CHECK(il_run({}).code == 64);
  CHECK(il_run({"parse", data("dve_left.il"), "--frobnicate"}).code == 64);
  CHECK(il_run({"bogus"}).code == 64);
  CHECK(il_run({"check", "--bisim", data("dve_left.il")}).code == 64);
  CHECK(il_run({"analyze", data("dve_left.il")}).code == 64);
  CHECK(il_run({"optimize", data("dve_left.il")}).code == 64);
  CHECK(il_run({"run", data("dve_left.il"), "--env", "x"}).code == 64);
  CHECK(il_run({"difftest", "--pass", "cse"}).code == 64);
  CHECK(il_run({"difftest", "--mutation", "nope", "--trials", "1"}).code == 64);
  auto help = il_run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("difftest") != std::string::npos);
}

TEST_CASE("run") {
  auto r = il_run({"run", data("dve_left.il"), "--fuel", "1000", "--oracle-seed", "7"});
  CHECK(r.code == 0);
  CHECK(r.out == "END TERM 1\n");
  auto e = il_run({"run", temp_file("env.il", "let r = extern out(x * y) in r"), "--env",
                   "x=3,y=-2", "--oracle-seed", "1"});
  CHECK(e.out.starts_with("EVT out(-6)="));
  auto again = il_run({"run", temp_file("env.il", "let r = extern out(x * y) in r"), "--env",
                       "x=3,y=-2", "--oracle-seed", "1"});
  CHECK(again.out == e.out);
  CHECK(il_run({"run", temp_file("loop.il", "fun f() = f() in f()"), "--fuel", "50"}).out ==
        "END CUTOFF\n");
}

TEST_CASE("analyze") {
  auto reach = il_run({"analyze", "--reach", data("dve_left.il")});
  CHECK(reach.code == 0);
  CHECK(reach.out.ends_with("verdict: accepted\n"));
  auto live = il_run({"analyze", "--tlive", data("dve_left.il")});
  CHECK(live.code == 0);
  CHECK(live.out.find("  {x}  # if\n") != std::string::npos);

  auto facts = temp_file("facts.live", "{}\n{}\n{}\n{x}\n{}\n");
  auto rej = il_run({"analyze", "--tlive", data("dve_left.il"), "--facts", facts});
  CHECK(rej.code == 1);
  CHECK(rej.out.find("verdict: rejected at /0") != std::string::npos);

  auto given = temp_file("facts.given", live.out.substr(0, live.out.rfind("verdict")));
  CHECK(il_run({"analyze", "--tlive", data("dve_left.il"), "--facts", given}).code == 0);
  CHECK(il_run({"analyze", "--reach", data("dve_left.il"), "--facts",
                temp_file("short.reach", "true\n")})
            .code == 2);
}

TEST_CASE("optimize") {
  auto r = il_run({"optimize", "--dve", data("dve_left.il")});
  CHECK(r.code == 0);
  CHECK(r.out == kRightPrinted);
  auto src = temp_file("pipe.il", "fun f(a, b) = a and g() = 1 in if 0 then g() else f(1, 2)");
  auto both = il_run({"optimize", "--uce", "--dve", src});
  CHECK(both.out == "fun f(a) =\n  a\nin\nf(1)\n");
  auto u = il_run({"optimize", "--uce", src});
  auto then_dve = il_run({"optimize", "--dve", temp_file("pipe_u.il", u.out)});
  CHECK(both.out == then_dve.out);
}

TEST_CASE("check") {
  auto sim = il_run({"check", "--sim", "--depth", "16", data("dve_left.il"), data("dve_right.il")});
  CHECK(sim.code == 0);
  CHECK(sim.out == "equivalent to depth 16\n");
  auto a = temp_file("a.il", "let x = extern r() in if x then 1 else 2");
  auto b = temp_file("b.il", "let x = extern r() in 1");
  auto d = il_run({"check", "--bisim", "--probes", "0,1", a, b});
  CHECK(d.code == 1);
  CHECK(d.out.find("EVT r()=0") != std::string::npos);
  auto loop = temp_file("loop.il", "fun f() = f() in f()");
  CHECK(il_run({"check", "--bisim", "--fuel", "100", loop, loop}).code == 2);
}

TEST_CASE("difftest") {
  auto r = il_run({"difftest", "--pass", "dve", "--trials", "20", "--seed", "4"});
  CHECK(r.code == 0);
  CHECK(r.out.find("summary pass=dve trials=20 accepted=20") != std::string::npos);
  auto same = il_run({"difftest", "--pass", "dve", "--trials", "20", "--seed", "4", "--jobs", "3"});
  CHECK(same.out == r.out);
  auto m = il_run({"difftest", "--pass", "uce", "--trials", "60", "--mutation", "uce-wrong-branch",
                   "--no-shrink"});
  CHECK(m.code == 1);
}
