#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "plusctl/groupring.hpp"
#include "support/presets.hpp"

using namespace plusctl;

namespace {

RingElement random_element(std::mt19937_64& rng, int order, int max_terms, int magnitude) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<int> id(0, order - 1);
  std::uniform_int_distribution<int> coeff(-magnitude, magnitude);
  RingElement e;
  const int n = nterms(rng);
  for (int i = 0; i < n; ++i) e.add_term(id(rng), coeff(rng));
  return e;
}

RingMatrix random_ring_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                              const RealizationPtr& g) {
  RingMatrix m(rows, cols, g);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = random_element(rng, g->order(), 3, 4);
  return m;
}

}  // namespace

TEST_CASE("ring axioms hold on random elements") {
  const auto g = share(todd_coxeter(presets::a5()));
  std::mt19937_64 rng(31);
  const RingElement one = RingElement::unit(0);
  for (int trial = 0; trial < 200; ++trial) {
    const RingElement a = random_element(rng, g->order(), 4, 5);
    const RingElement b = random_element(rng, g->order(), 4, 5);
    const RingElement c = random_element(rng, g->order(), 4, 5);
    REQUIRE(ring_mul(ring_mul(a, b, *g), c, *g) == ring_mul(a, ring_mul(b, c, *g), *g));
    REQUIRE(ring_mul(a, b + c, *g) == ring_mul(a, b, *g) + ring_mul(a, c, *g));
    REQUIRE(ring_mul(a + b, c, *g) == ring_mul(a, c, *g) + ring_mul(b, c, *g));
    REQUIRE(ring_mul(a, one, *g) == a);
    REQUIRE(ring_mul(one, a, *g) == a);
    REQUIRE(ring_mul(a, RingElement::zero(), *g).is_zero());
    REQUIRE((a - a).is_zero());
    // augmentation is a ring homomorphism
    REQUIRE(augmentation(ring_mul(a, b, *g)) == augmentation(a) * augmentation(b));
    REQUIRE(augmentation(a + b) == augmentation(a) + augmentation(b));
  }
}

TEST_CASE("word images multiply") {
  const Presentation p = presets::a5();
  const auto g = share(todd_coxeter(p));
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    const Word u = presets::random_word(rng, 2, 8);
    const Word v = presets::random_word(rng, 2, 8);
    REQUIRE(ring_unit_of_word(u * v, *g) ==
            ring_mul(ring_unit_of_word(u, *g), ring_unit_of_word(v, *g), *g));
    REQUIRE(ring_unit_of_word(free_reduce(u), *g) == ring_unit_of_word(u, *g));
  }
}

TEST_CASE("regular blocks of the order-two group") {
  const auto g = share(todd_coxeter(presets::rp2()));
  REQUIRE(g->order() == 2);
  const RingElement one_plus_t = RingElement::unit(0) + RingElement::unit(1);
  const RingElement t_minus_one = RingElement::unit(1) - RingElement::unit(0);
  IntMatrix expected(2, 2);
  expected.at(0, 0) = 1;
  expected.at(0, 1) = 1;
  expected.at(1, 0) = 1;
  expected.at(1, 1) = 1;
  REQUIRE(left_regular_block(one_plus_t, *g) == expected);
  expected.at(0, 0) = -1;
  expected.at(1, 1) = -1;
  REQUIRE(left_regular_block(t_minus_one, *g) == expected);
}

TEST_CASE("regular representation is functorial") {
  const auto g = share(todd_coxeter(presets::s3()));
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const RingElement s = random_element(rng, g->order(), 3, 4);
    const RingElement t = random_element(rng, g->order(), 3, 4);
    REQUIRE(left_regular_block(ring_mul(s, t, *g), *g) ==
            left_regular_block(s, *g) * left_regular_block(t, *g));
    // right multiplication reverses products
    REQUIRE(right_regular_block(ring_mul(s, t, *g), *g) ==
            right_regular_block(t, *g) * right_regular_block(s, *g));
  }
  REQUIRE(left_regular_block(RingElement::unit(0), *g) ==
          IntMatrix::identity(static_cast<std::size_t>(g->order())));
}

TEST_CASE("matrix specializations commute with products") {
  const auto g = share(todd_coxeter(presets::s3()));
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 25; ++trial) {
    const RingMatrix a = random_ring_matrix(rng, 2, 3, g);
    const RingMatrix b = random_ring_matrix(rng, 3, 2, g);
    const RingMatrix ab = a * b;
    REQUIRE(augment(ab) == augment(a) * augment(b));
    REQUIRE(regular_matrix(ab) == regular_matrix(a) * regular_matrix(b));
  }
  const RingMatrix id = RingMatrix::identity(3, g);
  REQUIRE(regular_matrix(id) == IntMatrix::identity(3 * static_cast<std::size_t>(g->order())));
  REQUIRE(augment(id) == IntMatrix::identity(3));
}

TEST_CASE("matrix arithmetic sanity") {
  const auto g = share(todd_coxeter(presets::rp2()));
  const auto h = share(todd_coxeter(presets::s3()));
  RingMatrix a(1, 1, g);
  a.at(0, 0) = RingElement::unit(1);
  RingMatrix b(1, 1, h);
  REQUIRE_THROWS_AS(a * b, ValidationError);
  REQUIRE_THROWS_AS(a + b, ValidationError);
  RingMatrix c(1, 2, g);
  REQUIRE_THROWS_AS(c * c, ValidationError);
  REQUIRE((a - a).is_zero());
  // normalization drops cancelled terms entirely
  RingElement e = RingElement::unit(1);
  e.add_term(1, Int(-1));
  REQUIRE(e.is_zero());
  REQUIRE(e == RingElement::zero());
}
