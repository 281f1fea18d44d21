#include <memory>

#include "doctest.h"
#include "fixprov/hom.hpp"

using namespace fixprov;

namespace {

struct Fixture {
  std::shared_ptr<const TokenSet> ts = std::make_shared<const TokenSet>(std::vector<std::string>{"x", "y"});
  Semiring sorp = Semiring::sorp(ts);
  Semiring viterbi = Semiring::viterbi();

  Value h(const char* poly, const char* vx, const char* vy, const Semiring& target) {
    TokenAssignment a{target.parse(vx), target.parse(vy)};
    return eval_hom(*ts, sorp.parse(poly).as<SorpPoly>(), a, target);
  }
};

}  // namespace

TEST_SUITE("hom") {

TEST_CASE_FIXTURE(Fixture, "Viterbi images of the infinite path value") {
  CHECK(viterbi.format(h("x*y^inf", "1", "1", viterbi)) == "1");
  CHECK(viterbi.format(h("x*y^inf", "1", "999/1000", viterbi)) == "0");
  CHECK(viterbi.format(h("x*y^2", "1/2", "1/2", viterbi)) == "1/8");
  CHECK(viterbi.format(h("x + y", "1/2", "1/3", viterbi)) == "1/2");
  CHECK(viterbi.format(h("0", "1", "1", viterbi)) == "0");
}

TEST_CASE_FIXTURE(Fixture, "tropical images") {
  auto t = Semiring::tropical();
  CHECK(t.format(h("x*y^2", "1", "2", t)) == "5");
  CHECK(t.format(h("x*y^inf", "1", "0", t)) == "1");
  CHECK(t.format(h("x*y^inf", "1", "1/2", t)) == "inf");
  CHECK(t.format(h("x + y", "1", "3", t)) == "1");
}

TEST_CASE_FIXTURE(Fixture, "non-absorptive targets are rejected") {
  CHECK_THROWS_AS(h("x", "1", "1", Semiring::natural()), Error);
  CHECK_THROWS_AS(h("x", "1", "1", Semiring::natinf()), Error);
}

TEST_CASE("duality must be respected") {
  auto ts = std::make_shared<const TokenSet>(TokenSet::dual({"x"}));
  auto k = Semiring::sorpdual(ts);
  auto b = Semiring::boolean();
  // ids: x, ~x
  CHECK(b.format(eval_hom(*ts, k.parse("x").as<SorpPoly>(), {b.one(), b.zero()}, b)) == "1");
  CHECK_THROWS_AS(eval_hom(*ts, k.parse("x").as<SorpPoly>(), {b.one(), b.one()}, b), Error);
}

TEST_CASE("dropping exponents") {
  auto ts = std::make_shared<const TokenSet>(TokenSet::dual({"x1", "x2", "y1", "y2"}));
  auto k = Semiring::sorpdual(ts);
  auto pb = Semiring::posbool(ts);
  CHECK(pb.format(drop_exponents(k.parse("x2*y1^inf + x2^inf*y2^inf").as<SorpPoly>(), pb)) == "x2*y1 + x2*y2");
  CHECK(pb.format(drop_exponents(k.parse("~x1*~x2 + ~x1*~y1^2*~y2^2 + ~x2^inf + ~y1^inf*~y2^inf").as<SorpPoly>(), pb)) ==
        "~x2 + ~y1*~y2");
  CHECK(pb.format(drop_exponents(SorpPoly(), pb)) == "0");
}

TEST_CASE("identity assignment") {
  auto ts = std::make_shared<const TokenSet>(std::vector<std::string>{"a", "b"});
  auto k = Semiring::sorp(ts);
  auto id = identity_assignment(k);
  REQUIRE(id.size() == 2);
  CHECK(k.format(eval_hom(*ts, k.parse("a*b^inf + a^2").as<SorpPoly>(), id, k)) == "a^2 + a*b^inf");
  auto w = Semiring::why(ts);
  CHECK_THROWS_AS(eval_hom(*ts, k.parse("a").as<SorpPoly>(), identity_assignment(w), w), Error);
}

}  // TEST_SUITE
