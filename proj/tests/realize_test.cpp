#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "plusctl/realize.hpp"
#include "support/presets.hpp"

using namespace plusctl;

namespace {

// Every realization must describe a regular action: the permutation group
// generated by its tables has exactly `order` elements.
void check_regular(const FiniteRealization& r) {
  const auto closure = presets::perm_closure(r.tables(), 4 * static_cast<std::size_t>(r.order()));
  REQUIRE(closure.size() == static_cast<std::size_t>(r.order()));
}

void check_group_laws(const FiniteRealization& r, std::mt19937_64& rng, int samples) {
  std::uniform_int_distribution<int> pick(0, r.order() - 1);
  for (int i = 0; i < samples; ++i) {
    const int x = pick(rng), y = pick(rng), z = pick(rng);
    REQUIRE(r.mult(x, r.mult(y, z)) == r.mult(r.mult(x, y), z));
    REQUIRE(r.mult(x, r.inv(x)) == 0);
    REQUIRE(r.mult(r.inv(x), x) == 0);
    REQUIRE(r.mult(0, x) == x);
    REQUIRE(r.mult(x, 0) == x);
  }
}

}  // namespace

TEST_CASE("cyclic group of order five") {
  const FiniteRealization r = todd_coxeter(parse_presentation("gens: a; rels: a^5"));
  REQUIRE(r.order() == 5);
  check_regular(r);
  // the generator's left translation is a 5-cycle
  int x = 0;
  for (int i = 0; i < 5; ++i) x = r.apply_letter(1, x);
  REQUIRE(x == 0);
  for (int e = 0; e < 5; ++e) {
    const Word w = power(Word::generator(1), e);
    const int id = r.image_of_word(w);
    REQUIRE(r.image_of_word(r.word_for_element(id)) == id);
  }
}

TEST_CASE("words act on the left, right to left") {
  // In S3 with a, b transpositions, the word "a b" sends the identity to the
  // element a*b; applying letters left to right instead would compute b*a.
  const FiniteRealization r = todd_coxeter(presets::s3());
  REQUIRE(r.order() == 6);
  const Word ab = parse_word("a b", presets::s3());
  const int im = r.image_of_word(ab);
  REQUIRE(im == r.mult(r.image_of_word(Word::generator(1)), r.image_of_word(Word::generator(2))));
  // a*b has order 3 in S3
  int x = 0;
  for (int i = 0; i < 3; ++i) x = r.apply_word(ab, x);
  REQUIRE(x == 0);
}

TEST_CASE("alternating group on five letters") {
  const FiniteRealization r = todd_coxeter(presets::a5());
  REQUIRE(r.order() == 60);
  check_regular(r);
  REQUIRE(relators_act_trivially(presets::a5(), r));
  std::mt19937_64 rng(5);
  check_group_laws(r, rng, 400);

  // independent lower bound: concrete even permutations on five points
  // satisfying the defining relations generate a group of order 60
  bool found = false;
  const auto id5 = std::vector<int>{0, 1, 2, 3, 4};
  std::vector<presets::Perm> all5;
  {
    presets::Perm p = id5;
    std::sort(p.begin(), p.end());
    do all5.push_back(p); while (std::next_permutation(p.begin(), p.end()));
  }
  auto order_of = [](const presets::Perm& p) {
    presets::Perm q = p;
    int k = 1;
    presets::Perm id(p.size());
    for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
    while (q != id) {
      q = presets::perm_compose(q, p);
      ++k;
    }
    return k;
  };
  for (const auto& pa : all5) {
    if (found) break;
    if (pa == id5 || order_of(pa) != 2) continue;
    for (const auto& pb : all5) {
      if (pb == id5 || order_of(pb) != 3) continue;
      if (order_of(presets::perm_compose(pa, pb)) != 5) continue;
      const auto closure = presets::perm_closure({pa, pb}, 200);
      if (closure.size() == 60) {
        found = true;
        break;
      }
    }
  }
  REQUIRE(found);
}

TEST_CASE("direct product with a central involution") {
  const FiniteRealization r = todd_coxeter(presets::a5_x_z2());
  REQUIRE(r.order() == 120);
  check_regular(r);
  // c is central of order 2
  const int c = r.image_of_word(Word::generator(3));
  REQUIRE(r.mult(c, c) == 0);
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> pick(0, 119);
  for (int i = 0; i < 100; ++i) {
    const int x = pick(rng);
    REQUIRE(r.mult(c, x) == r.mult(x, c));
  }
}

TEST_CASE("infinite groups exhaust the coset budget") {
  REQUIRE_THROWS_AS(todd_coxeter(parse_presentation("gens: a, b; rels:"), 500), ResourceExhausted);
  REQUIRE_THROWS_AS(todd_coxeter(presets::two_gen_b_squared(), 500), ResourceExhausted);
}

TEST_CASE("trivial quotient realization") {
  const FiniteRealization t = FiniteRealization::trivial(3);
  REQUIRE(t.order() == 1);
  REQUIRE(t.generator_count() == 3);
  REQUIRE(t.image_of_word(Word({1, -2, 3})) == 0);
  // the one-relator collapse gens: a; rels: a gives the same thing
  const FiniteRealization r = todd_coxeter(parse_presentation("gens: a; rels: a"));
  REQUIRE(r.order() == 1);
}

TEST_CASE("word_for_element inverts image_of_word everywhere") {
  const FiniteRealization r = todd_coxeter(presets::a5());
  for (int x = 0; x < r.order(); ++x) {
    REQUIRE(r.image_of_word(r.word_for_element(x)) == x);
    REQUIRE(r.mult(x, r.inv(x)) == 0);
  }
  REQUIRE(r.word_for_element(0).empty());
}

TEST_CASE("canonical renumbering is stable and separates groups") {
  const FiniteRealization a5a = todd_coxeter(presets::a5());
  // same group enumerated from a reordered presentation
  const FiniteRealization a5b =
      todd_coxeter(parse_presentation("gens: a, b; rels: (a b)^5, b^3, a^2"));
  REQUIRE(isomorphic_realizations(a5a, a5b));
  // canonical tables are a fixed point of canonicalization
  const FiniteRealization canon = FiniteRealization::from_tables(a5a.canonical_tables());
  REQUIRE(canon.canonical_tables() == canon.tables());

  const FiniteRealization klein = todd_coxeter(presets::klein_four());
  const FiniteRealization c4 = todd_coxeter(presets::cyclic_four_two_gens());
  REQUIRE(klein.order() == 4);
  REQUIRE(c4.order() == 4);
  REQUIRE_FALSE(isomorphic_realizations(klein, c4));
}

TEST_CASE("table validation rejects malformed input") {
  // not a bijection
  REQUIRE_THROWS_AS(FiniteRealization::from_tables({{0, 0}}), ValidationError);
  // bijections, but 0 cannot reach 1
  REQUIRE_THROWS_AS(FiniteRealization::from_tables({{0, 1}}), ValidationError);
  // entry out of range
  REQUIRE_THROWS_AS(FiniteRealization::from_tables({{2, 0}}), ValidationError);
  // valid two-element group
  const FiniteRealization r = FiniteRealization::from_tables({{1, 0}});
  REQUIRE(r.order() == 2);
  REQUIRE(r.inv(1) == 1);
}

TEST_CASE("dense and chained products agree") {
  // order 120 is inside the dense-product regime; rebuild the same group and
  // compare mult against explicit word application
  const FiniteRealization r = todd_coxeter(presets::a5_x_z2());
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> pick(0, r.order() - 1);
  for (int i = 0; i < 200; ++i) {
    const int x = pick(rng), y = pick(rng);
    const Word wx = r.word_for_element(x);
    REQUIRE(r.mult(x, y) == r.apply_word(wx, y));
  }
}
