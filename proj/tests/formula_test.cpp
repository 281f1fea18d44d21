#include <set>

#include "doctest.h"
#include "fixprov/error.hpp"
#include "fixprov/parser.hpp"

using namespace fixprov;

namespace {

Formula parse(const std::string& text) { return parse_formula(text); }
Formula parse_open(const std::string& text, std::set<std::string> vars) {
  ParseOptions o;
  o.free_variables = std::move(vars);
  return parse_formula(text, o);
}
std::string nnf_of(const std::string& text) { return to_string(nnf(parse(text))); }

ErrorCode validation_error(const Formula& f, const ValidationContext& ctx = {}) {
  try {
    validate(f, ctx);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("formula validated: " << to_string(f));
  return ErrorCode::MalformedFormula;
}

}  // namespace

TEST_SUITE("formula") {

TEST_CASE("printer precedence") {
  Formula p = rel("P", {cst("u")}), q = rel("Q", {cst("u")});
  CHECK(to_string(land(lor(p, q), p)) == "(P(u) | Q(u)) & P(u)");
  CHECK(to_string(lor(land(p, q), p)) == "P(u) & Q(u) | P(u)");
  CHECK(to_string(lnot(lor(p, q))) == "!(P(u) | Q(u))");
  CHECK(to_string(lnot(p)) == "!(P(u))");
  CHECK(to_string(neg_rel("P", {cst("u")})) == "!P(u)");
  CHECK(to_string(land(exists("x", rel("P", {var("x")})), q)) == "(exists x. P(x)) & Q(u)");
  CHECK(to_string(neq(var("x"), cst("v"))) == "x != v");
}

TEST_CASE("structural equality") {
  CHECK(parse("P(u) & Q(x)") == parse("P(u) & Q(x)"));
  CHECK_FALSE(parse("P(u) & Q(v)") == parse("Q(v) & P(u)"));
  // constants and variables differ
  CHECK_FALSE(rel("P", {var("u")}) == rel("P", {cst("u")}));
}

TEST_CASE("free variables") {
  Formula f = parse_open("exists y. E(x,y) & P(z)", {"x", "z"});
  CHECK(free_variables(f) == std::set<std::string>{"x", "z"});
  CHECK(free_variables(parse("gfp R(x). exists y. (E(x,y) & R(y)) @ (u)")).empty());
  Formula g = parse_open("lfp R(x). E(x,w) | R(x) @ (y)", {"w", "y"});
  CHECK(free_variables(parse("lfp R(x). E(x,w) | R(x) @ (y)")).empty());
  CHECK(free_variables(g) == std::set<std::string>{"w", "y"});
  ParseOptions o;
  o.free_fixpoints = {{"R", 1}};
  Formula h = parse_formula("exists y. R(y) | lfp S(a,b). S(a,b) & R(a) @ (y,y)", o);
  CHECK(free_fixpoint_variables(h) == std::map<std::string, int>{{"R", 1}});
}

TEST_CASE("substitution replaces free occurrences only") {
  Formula f = parse_open("E(x,y) & exists x. P(x)", {"x", "y"});
  Formula g = substitute(f, {{"x", "u"}});
  CHECK(to_string(g) == "E(u,y) & (exists x. P(x))");
  Formula b = parse_open("lfp R(x). E(x,z) | R(x) @ (x)", {"x", "z"});
  CHECK(to_string(substitute(b, {{"x", "v"}, {"z", "u"}})) == "lfp R(x). E(x,u) | R(x) @ (v)");
}

TEST_CASE("fixed-point detection") {
  CHECK(contains_gfp(parse("P(u) | gfp R(x). R(x) @ (u)")));
  CHECK_FALSE(contains_gfp(parse("lfp R(x). R(x) @ (u)")));
  CHECK(contains_fixpoint(parse("lfp R(x). R(x) @ (u)")));
  CHECK_FALSE(contains_fixpoint(parse("exists x. P(x)")));
}

TEST_CASE("negation normal form") {
  CHECK(nnf_of("!(P(u) | Q(u))") == "!P(u) & !Q(u)");
  CHECK(nnf_of("!(P(u) & !Q(u))") == "!P(u) | Q(u)");
  CHECK(nnf_of("!(exists x. P(x))") == "forall x. !P(x)");
  CHECK(nnf_of("!(forall x. x = u)") == "exists x. x != u");
  CHECK(nnf_of("!!P(u)") == "P(u)");
  CHECK(nnf_of("!(gfp R(x). exists y. (E(x,y) & R(y)) @ (u))") == "lfp R(x). forall y. !E(x,y) | R(y) @ (u)");
  CHECK(nnf_of("!(gfp X(x). lfp Y(x). exists y. (E(x,y) & ((X(y) & P(y)) | Y(y))) @ (x) @ (u))") ==
        "lfp X(x). gfp Y(x). forall y. !E(x,y) | (X(y) | !P(y)) & Y(y) @ (x) @ (u)");
  // negation under a binder that leaves the fixed-point variable alone
  CHECK(nnf_of("lfp R(x). !(P(x) & Q(x)) | R(x) @ (u)") == "lfp R(x). !P(x) | !Q(x) | R(x) @ (u)");
  CHECK(is_nnf(nnf(parse("!(P(u) | !(exists x. Q(x)))"))));
  CHECK_FALSE(is_nnf(parse("!(P(u))")));
  CHECK(is_nnf(parse("!P(u)")));
}

TEST_CASE("positivity") {
  ParseOptions o;
  CHECK(check_positivity(parse("lfp R(x). !(!R(x)) @ (u)")).ok);
  auto bad = check_positivity(parse("lfp R(x). !(R(x)) @ (u)"));
  CHECK_FALSE(bad.ok);
  CHECK(bad.path == "lfp R > ! > R(x)");
  auto deep = check_positivity(parse("gfp S(x). P(x) & !(exists y. S(y)) @ (u)"));
  CHECK_FALSE(deep.ok);
  CHECK(deep.path == "gfp S > & > ! > exists y > S(y)");
}

TEST_CASE("validation") {
  Vocabulary v({{"E", 2}, {"P", 1}});
  Universe u({"u", "v"});
  ValidationContext ctx{&v, &u, {}, {}};
  CHECK_NOTHROW(validate(parse("gfp R(x). exists y. (E(x,y) & R(y)) @ (u)"), ctx));
  CHECK(validation_error(parse("P(x)"), ctx) == ErrorCode::MalformedFormula);
  CHECK(validation_error(parse("P(w)"), ctx) == ErrorCode::MalformedFormula);
  CHECK(validation_error(parse("Q(u)"), ctx) == ErrorCode::UnknownRelation);
  CHECK(validation_error(rel("E", {cst("u")}), ctx) == ErrorCode::ArityMismatch);
  CHECK(validation_error(parse("lfp R(x). !(R(x)) @ (u)"), ctx) == ErrorCode::MalformedFormula);
  CHECK(validation_error(lfp("R", {"x", "x"}, fpvar("R", {var("x"), var("x")}), {cst("u"), cst("u")}), ctx) ==
        ErrorCode::MalformedFormula);
  // an inner binder may not reuse the name of an enclosing one
  Formula shadow = lfp("R", {"x"}, lfp("R", {"y"}, fpvar("R", {var("y")}), {var("x")}), {cst("u")});
  CHECK(validation_error(shadow, ctx) == ErrorCode::MalformedFormula);
  ValidationContext open{&v, &u, {}, {"x"}};
  CHECK_NOTHROW(validate(parse_open("P(x)", {"x"}), open));
  CHECK_THROWS_AS(validate(parse_open("P(x)", {"x"}), ctx), Error);
}

}  // TEST_SUITE
