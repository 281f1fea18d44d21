#include "doctest.h"
#include "fixprov/error.hpp"
#include "fixprov/parser.hpp"

using namespace fixprov;

namespace {

const Vocabulary& graph() {
  static const Vocabulary v({{"E", 2}, {"P", 1}, {"Q", 1}});
  return v;
}

Formula parse(const std::string& text) {
  ParseOptions o;
  o.vocabulary = &graph();
  return parse_formula(text, o);
}

std::string reprint(const std::string& text) { return to_string(parse(text)); }

ErrorCode error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error for " << text);
  return ErrorCode::ParseError;
}

}  // namespace

TEST_SUITE("parser") {

TEST_CASE("infinite path formula") {
  Formula f = parse("gfp R(x). exists y. (E(x,y) & R(y)) @ (u)");
  REQUIRE(f.kind() == NodeKind::Gfp);
  CHECK(f->name == "R");
  CHECK(f->params == std::vector<std::string>{"x"});
  REQUIRE(f->args.size() == 1);
  CHECK(f->args[0] == cst("u"));
  const Formula& body = f.child();
  REQUIRE(body.kind() == NodeKind::Exists);
  const Formula& conj = body.child();
  REQUIRE(conj.kind() == NodeKind::And);
  CHECK(conj.child(0) == rel("E", {var("x"), var("y")}));
  CHECK(conj.child(1) == fpvar("R", {var("y")}));
  CHECK(f == gfp("R", {"x"}, exists("y", land(rel("E", {var("x"), var("y")}), fpvar("R", {var("y")}))), {cst("u")}));
}

TEST_CASE("negation forms") {
  Formula f = parse("!(P(u) | Q(u))");
  REQUIRE(f.kind() == NodeKind::Not);
  CHECK(f.child().kind() == NodeKind::Or);
  CHECK(parse("!P(u)").kind() == NodeKind::NegRelAtom);
  CHECK(parse("!(P(u))").kind() == NodeKind::Not);
  CHECK(parse("!!P(u)").kind() == NodeKind::Not);
}

TEST_CASE("equality atoms") {
  Formula f = parse("forall x. x = x");
  REQUIRE(f.kind() == NodeKind::Forall);
  CHECK(f.child() == eq(var("x"), var("x")));
  CHECK(parse("u != v") == neq(cst("u"), cst("v")));
}

TEST_CASE("conjunction binds tighter than disjunction") {
  Formula f = parse("P(u) | Q(u) & P(v)");
  REQUIRE(f.kind() == NodeKind::Or);
  CHECK(f.child(1).kind() == NodeKind::And);
  Formula g = parse("P(u) & Q(u) | P(v)");
  REQUIRE(g.kind() == NodeKind::Or);
  CHECK(g.child(0).kind() == NodeKind::And);
  // left associative
  Formula h = parse("P(u) | P(v) | Q(u)");
  CHECK(h.child(0).kind() == NodeKind::Or);
}

TEST_CASE("quantifiers extend to the right") {
  Formula f = parse("exists x. P(x) | Q(x)");
  REQUIRE(f.kind() == NodeKind::Exists);
  CHECK(f.child().kind() == NodeKind::Or);
  Formula g = parse("P(u) & exists x. P(x) | Q(x)");
  REQUIRE(g.kind() == NodeKind::And);
  CHECK(g.child(1).kind() == NodeKind::Exists);
}

TEST_CASE("nested binders") {
  Formula f = parse("gfp X(x). lfp Y(x). exists y. (E(x,y) & ((X(y) & P(y)) | Y(y))) @ (x) @ (u)");
  REQUIRE(f.kind() == NodeKind::Gfp);
  const Formula& inner = f.child();
  REQUIRE(inner.kind() == NodeKind::Lfp);
  CHECK(inner->args[0] == var("x"));
  CHECK(f->args[0] == cst("u"));
}

TEST_CASE("binary fixed points") {
  Formula f = parse("lfp T(a,b). E(a,b) | exists c. (E(a,c) & T(c,b)) @ (u, v)");
  REQUIRE(f.kind() == NodeKind::Lfp);
  CHECK(f->params.size() == 2);
  CHECK(f->args.size() == 2);
}

TEST_CASE("comments and whitespace") {
  CHECK(parse("# reachability\nexists x.\n  P(x)   # done\n") == exists("x", rel("P", {var("x")})));
}

TEST_CASE("printing round trips") {
  for (const char* text : {"gfp R(x). exists y. E(x,y) & R(y) @ (u)", "!(P(u) | Q(u))", "forall x. x = x",
                           "P(u) | Q(u) & P(v)", "(P(u) | Q(u)) & P(v)", "!P(u) & u != v",
                           "gfp X(x). lfp Y(x). exists y. E(x,y) & (X(y) & P(y) | Y(y)) @ (x) @ (u)",
                           "(exists x. P(x)) & Q(u)", "!(Q(u))", "!!P(u)", "P(u) & (Q(u) & P(v))",
                           "P(u) | (Q(u) | P(v))", "lfp T(a,b). E(a,b) | (exists c. E(a,c) & T(c,b)) @ (u,v)"}) {
    CAPTURE(text);
    CHECK(reprint(text) == text);
    CHECK(parse(reprint(text)) == parse(text));
  }
}

TEST_CASE("parse errors carry positions") {
  try {
    parse("exists x.\n  P(x) &");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("2:") != std::string::npos);
  }
  CHECK(error_of("P(u") == ErrorCode::ParseError);
  CHECK(error_of("exists . P(u)") == ErrorCode::ParseError);
  CHECK(error_of("P(u) Q(u)") == ErrorCode::ParseError);
  CHECK(error_of("lfp R(x). R(x)") == ErrorCode::ParseError);
  CHECK(error_of("") == ErrorCode::ParseError);
  CHECK(error_of("P(u) $ Q(u)") == ErrorCode::ParseError);
}

TEST_CASE("vocabulary errors") {
  CHECK(error_of("Z(u)") == ErrorCode::UnknownRelation);
  CHECK(error_of("E(u)") == ErrorCode::ArityMismatch);
  CHECK(error_of("lfp R(x). R(x,x) @ (u)") == ErrorCode::ArityMismatch);
  CHECK(error_of("lfp R(x). R(x) @ (u,v)") == ErrorCode::ArityMismatch);
  CHECK(error_of("lfp E(x). E(x) @ (u)") == ErrorCode::ParseError);
}

TEST_CASE("without a vocabulary any relation is accepted") {
  Formula f = parse_formula("Z(u, v) & Z(v, u)");
  CHECK(f.kind() == NodeKind::And);
  CHECK_THROWS_AS(parse_formula("Z(u) & Z(u,v)"), Error);
}

TEST_CASE("free names from options") {
  ParseOptions o;
  o.vocabulary = &graph();
  o.free_fixpoints = {{"R", 1}};
  o.free_variables = {"x"};
  Formula f = parse_formula("exists y. E(x,y) & R(y)", o);
  CHECK(f.child().child(1) == fpvar("R", {var("y")}));
  CHECK(f.child().child(0) == rel("E", {var("x"), var("y")}));
}

}  // TEST_SUITE
