#include <catch2/catch_amalgamated.hpp>

#include "plusctl/chain.hpp"
#include "plusctl/fox.hpp"
#include "support/presets.hpp"

using namespace plusctl;

namespace {

IntegerComplex torus_like() {
  IntegerComplex c;
  c.ranks = {1, 2, 1};
  c.boundaries = {IntMatrix(1, 2), IntMatrix(2, 1)};
  return c;
}

}  // namespace

TEST_CASE("homology group formatting") {
  REQUIRE(HomologyGroup{}.to_string() == "0");
  REQUIRE(HomologyGroup{1, {}}.to_string() == "Z");
  REQUIRE(HomologyGroup{2, {Int(2)}}.to_string() == "Z^2 + Z/2");
  REQUIRE(HomologyGroup{0, {Int(2), Int(4)}}.to_string() == "Z/2 + Z/4");
}

TEST_CASE("integer homology of hand-built complexes") {
  SECTION("zero boundaries give free homology everywhere") {
    const IntegerComplex c = torus_like();
    REQUIRE(homology(c, 0) == HomologyGroup{1, {}});
    REQUIRE(homology(c, 1) == HomologyGroup{2, {}});
    REQUIRE(homology(c, 2) == HomologyGroup{1, {}});
    REQUIRE(homology(c, 3).is_trivial());
    REQUIRE(homology(c, -1).is_trivial());
  }
  SECTION("multiplication by two") {
    IntegerComplex c;
    c.ranks = {1, 1};
    c.boundaries = {IntMatrix(1, 1)};
    c.boundaries[0].at(0, 0) = 2;
    REQUIRE(homology(c, 0) == HomologyGroup{0, {Int(2)}});
    REQUIRE(homology(c, 1).is_trivial());
  }
  SECTION("an exact three-term complex") {
    // Z --(1,0)--> Z^2 --(0 1)--> Z ... built to be exact in the middle
    IntegerComplex c;
    c.ranks = {1, 2, 1};
    IntMatrix d1(1, 2);
    d1.at(0, 1) = 1;
    IntMatrix d2(2, 1);
    d2.at(0, 0) = 1;
    c.boundaries = {d1, d2};
    c.validate();
    REQUIRE(homology(c, 1).is_trivial());
    REQUIRE(homology(c, 0).is_trivial());
    REQUIRE(homology(c, 2).is_trivial());
  }
}

TEST_CASE("validation catches broken complexes") {
  IntegerComplex c;
  c.ranks = {1, 1, 1};
  c.boundaries = {IntMatrix(1, 1), IntMatrix(1, 1)};
  c.boundaries[0].at(0, 0) = 1;
  c.boundaries[1].at(0, 0) = 1;  // composition is 1, not 0
  REQUIRE_THROWS_AS(c.validate(), ValidationError);
  c.boundaries[1].at(0, 0) = 0;
  REQUIRE_NOTHROW(c.validate());
  c.ranks = {1, 2, 1};
  REQUIRE_THROWS_AS(c.validate(), ValidationError);
}

TEST_CASE("euler characteristic") {
  REQUIRE(euler_characteristic({1, 2, 1}) == 0);
  REQUIRE(euler_characteristic({1, 2, 5, 2}) == 2);
  REQUIRE(euler_characteristic({}) == 0);
  REQUIRE(euler_characteristic({3}) == 3);
}

TEST_CASE("splitting witnesses over the integers") {
  const auto one = share(FiniteRealization::trivial(1));
  SECTION("identity splits") {
    const RingMatrix d = RingMatrix::identity(3, one);
    const auto phi = split_injection_test(d);
    REQUIRE(phi.has_value());
    REQUIRE(*phi * d == RingMatrix::identity(3, one));
  }
  SECTION("multiplication by two does not split") {
    RingMatrix d(1, 1, one);
    d.at(0, 0) = RingElement::scalar(Int(2));
    REQUIRE_FALSE(split_injection_test(d).has_value());
  }
  SECTION("a tall unimodular-completable map splits") {
    RingMatrix d(2, 1, one);
    d.at(0, 0) = RingElement::scalar(Int(2));
    d.at(1, 0) = RingElement::scalar(Int(3));
    const auto phi = split_injection_test(d);
    REQUIRE(phi.has_value());
    REQUIRE((*phi * d) == RingMatrix::identity(1, one));
  }
  SECTION("rank zero splits vacuously") {
    const RingMatrix d(4, 0, one);
    const auto phi = split_injection_test(d);
    REQUIRE(phi.has_value());
    REQUIRE(phi->rows == 0);
    REQUIRE(phi->cols == 4);
  }
}

TEST_CASE("splitting witnesses over a group ring") {
  const auto g = share(todd_coxeter(presets::rp2()));
  SECTION("a unit splits") {
    RingMatrix d(1, 1, g);
    d.at(0, 0) = RingElement::unit(1);
    const auto phi = split_injection_test(d);
    REQUIRE(phi.has_value());
    REQUIRE(phi->at(0, 0) == RingElement::unit(1));  // t is its own inverse
  }
  SECTION("the norm element does not split") {
    RingMatrix d(1, 1, g);
    d.at(0, 0) = RingElement::unit(0) + RingElement::unit(1);
    REQUIRE_FALSE(split_injection_test(d).has_value());
  }
  SECTION("augmentation-one combinations can still split") {
    // (1, t) as a column: phi = (1, 0) works
    RingMatrix d(2, 1, g);
    d.at(0, 0) = RingElement::unit(0);
    d.at(1, 0) = RingElement::unit(1);
    const auto phi = split_injection_test(d);
    REQUIRE(phi.has_value());
  }
}

TEST_CASE("exactness through the regular specialization") {
  const Presentation p = presets::rp2();
  const auto g = share(todd_coxeter(p));
  const AlgebraicComplex c = cayley_complex(p, g);
  REQUIRE(exactness_check(c, 1));         // regular degree-one homology vanishes
  REQUIRE_FALSE(exactness_check(c, 0));   // H_0 of the point survives
  REQUIRE_FALSE(exactness_check(c, 2));   // top kernel is the norm
}
