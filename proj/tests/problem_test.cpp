#include <string>

#include "doctest.h"
#include "fixprov/problem.hpp"

using namespace fixprov;

namespace {

std::string data(const std::string& name) { return std::string(FIXPROV_DATA_DIR) + "/" + name; }

std::string schema_error(const std::string& json) {
  try {
    parse_problem(json);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SchemaError);
    std::string what = e.what();
    return what.substr(what.find(": ") + 2);
  }
  FAIL("accepted: " << json);
  return "";
}

GroundLiteral lit(const Problem& p, const char* text) {
  return parse_literal(text, p.pi.vocabulary(), p.pi.universe());
}

std::string value(const Problem& p, const char* text) { return p.pi.semiring().format(p.pi.value(lit(p, text))); }

}  // namespace

TEST_SUITE("problem") {

TEST_CASE("most general problem of the Buechi example") {
  Problem p = load_problem(data("buchi.json"));
  const Semiring& k = p.pi.semiring();
  CHECK(k.kind() == CarrierKind::SorpDual);
  CHECK(k.token_set().size() == 8);
  CHECK(value(p, "E(u,u)") == "x1");
  CHECK(value(p, "!E(u,u)") == "~x1");
  CHECK(value(p, "E(v,u)") == "y2");
  CHECK(value(p, "P(u)") == "0");
  CHECK(value(p, "!P(u)") == "1");
  CHECK(value(p, "P(v)") == "1");
  CHECK(value(p, "!P(v)") == "0");
  CHECK(is_model_compatible(p.pi));
  REQUIRE(p.formula.has_value());
}

TEST_CASE("defaults fill unannotated literals") {
  Problem p = load_problem(data("infpath.json"));
  CHECK(value(p, "E(u,v)") == "x");
  CHECK(value(p, "E(u,u)") == "0");
  CHECK(value(p, "!E(u,u)") == "1");
}

TEST_CASE("carrier override") {
  std::string json = R"j({"universe": ["a"], "relations": {"P": 1}, "carrier": "bool",
                         "annotations": [["P(a)", "1/2"], ["!P(a)", 0]]})j";
  CHECK_THROWS_AS(parse_problem(json), Error);
  Problem p = parse_problem(json, "viterbi");
  CHECK(value(p, "P(a)") == "1/2");
}

TEST_CASE("fresh token pairs for unannotated atoms") {
  Problem p = parse_problem(R"j({"universe": ["a", "b"], "relations": {"P": 1}, "carrier": "sorpdual",
                                "tokens": ["t"], "most_general": true, "annotations": [["P(a)", "t"]]})j");
  CHECK(value(p, "P(a)") == "t");
  CHECK(value(p, "!P(a)") == "~t");
  CHECK(value(p, "P(b)") == "P_b");
  CHECK(value(p, "!P(b)") == "~P_b");
}

TEST_CASE("object form of annotations") {
  Problem p = parse_problem(R"j({"universe": ["a"], "relations": {"P": 1}, "carrier": "natinf",
                                "annotations": [{"literal": "P(a)", "value": "inf"}], "default_neg": 0})j");
  CHECK(value(p, "P(a)") == "inf");
  CHECK(value(p, "!P(a)") == "0");
}

TEST_CASE("schema violations name the offending member") {
  const std::string head = R"j("universe": ["a"], "relations": {"P": 1}, "carrier": "bool")j";
  CHECK(schema_error("[1, 2]").find("/:") == 0);
  CHECK(schema_error("{" + head + R"j(, "colour": 1})j").find("/colour") == 0);
  CHECK(schema_error(R"j({"relations": {"P": 1}, "carrier": "bool"})j").find("/universe") == 0);
  CHECK(schema_error(R"j({"universe": ["a"], "relations": {"P": 0}, "carrier": "bool"})j").find("/relations/P") == 0);
  CHECK(schema_error("{" + head + R"j(, "annotations": [["P(a)", 1], ["P(a)", 0]], "default_neg": 0})j")
            .find("/annotations/1") == 0);
  CHECK(schema_error("{" + head + R"j(, "annotations": [["Q(a)", 1]], "default_neg": 0})j").find("/annotations/0/0") ==
        0);
  CHECK(schema_error("{" + head + R"j(, "annotations": [["P(a)", 1]]})j").find("no value for !P(a)") !=
        std::string::npos);
  CHECK(schema_error("{" + head + R"j(, "annotations": [["P(a)", "x"]], "default_neg": 0})j")
            .find("/annotations/0/1") == 0);
  CHECK(schema_error("{" + head + R"j(, "most_general": true})j").find("/most_general") == 0);
  CHECK(schema_error("{not json").find("invalid JSON") != std::string::npos);
}

TEST_CASE("assignments") {
  Problem p = load_problem(data("infpath.json"));
  const Semiring& k = p.pi.semiring();
  Semiring v = specialization_target("viterbi", k);
  TokenAssignment h = parse_assignment(R"j({"x": "1", "y": "999/1000"})j", k, v);
  REQUIRE(h.size() == 2);
  CHECK(v.format(h[1]) == "999/1000");
  TokenAssignment d = parse_assignment(R"j({"*": "1/2", "y": 1})j", k, v);
  CHECK(v.format(d[0]) == "1/2");
  CHECK(v.format(d[1]) == "1");
  CHECK_THROWS_AS(parse_assignment(R"j({"x": "1"})j", k, v), Error);
  CHECK_THROWS_AS(parse_assignment(R"j({"x": 1, "y": 1, "w": 1})j", k, v), Error);
  Semiring pb = specialization_target("posbool", k);
  CHECK(pb.token_set() == k.token_set());
}

}  // TEST_SUITE
