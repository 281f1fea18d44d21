#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "fixprov/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

std::string data(const std::string& name) { return std::string(FIXPROV_DATA_DIR) + "/" + name; }

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "fixprov");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = fixprov::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("eval") {
  CHECK(run({"eval", data("infpath.json")}).out == "x*y^inf\n");
  CHECK(run({"eval", data("infpath_loop.json")}).out == "x*y^inf + z^inf\n");
  CHECK(run({"eval", data("infpath_why.json")}).out == "x + x*y\n");
  CHECK(run({"eval", data("buchi.json")}).out == "x2*y1^inf + x2^inf*y2^inf\n");
  Run neg = run({"eval", data("buchi_negated.json")});
  CHECK(neg.code == 0);
  CHECK(neg.out == "~x1*~x2 + ~x1*~y1^2*~y2^2 + ~x2^inf + ~y1^inf*~y2^inf\n");
  CHECK(run({"eval", data("infpath.json"), "exists y. E(u,y)"}).out == "x\n");
}

TEST_CASE("specialization") {
  CHECK(run({"eval", data("infpath.json"), "--specialize", "viterbi", data("viterbi_one.json")}).out == "1\n");
  CHECK(run({"eval", data("infpath.json"), "--specialize", "viterbi", data("viterbi_almost.json")}).out == "0\n");
  CHECK(run({"eval", data("buchi.json"), "--specialize", "posbool", "identity"}).out == "x2*y1 + x2*y2\n");
}

TEST_CASE("trace goes to the error stream") {
  Run r = run({"eval", data("infpath.json"), "--trace"});
  CHECK(r.out == "x*y^inf\n");
  CHECK(r.err.find("gfp R B=8 step 1: ") == 0);
}

TEST_CASE("nnf") {
  Run r = run({"nnf", "!(lfp R(x). P(x) | R(x) @ (a))"});
  CHECK(r.code == 0);
  CHECK(r.out == "gfp R(x). !P(x) & R(x) @ (a)\n");
  CHECK(run({"nnf", "!(R(x)"}).code == 2);
}

TEST_CASE("game") {
  Run s = run({"game", data("buchi.json"), "--strategies"});
  REQUIRE(s.code == 0);
  CHECK(s.out.find("positions\t23\nchoice_positions\t4\nstrategies\t16\n") == 0);
  CHECK(s.out.find("\n3\ttrue\tx2*y1^inf\n") != std::string::npos);
  Run c = run({"game", data("buchi_negated.json"), "--check-sum"});
  CHECK(c.code == 0);
  CHECK(c.out.find("strategies\t64\n") != std::string::npos);
  CHECK(c.out.find("check_sum\t==\n") != std::string::npos);
  Run d = run({"game", data("infpath.json")});
  CHECK(d.out.find("digraph game {") == 0);
}

TEST_CASE("check") {
  Run r = run({"check", data("infpath.json"), "--seed", "3", "--cases", "5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAILED") == std::string::npos);
  CHECK_FALSE(r.out.empty());
}

TEST_CASE("errors") {
  CHECK(run({}).code == 1);
  CHECK(run({"eval"}).code == 1);
  CHECK(run({"bogus"}).code == 1);
  Run missing = run({"eval", data("nope.json")});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("fixprov: ") == 0);
  CHECK(run({"eval", data("infpath.json"), "--carrier", "natinf"}).code == 2);
  CHECK(run({"eval", data("infpath.json"), "Q(u)"}).code == 2);
}

}  // TEST_SUITE
