#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "plusctl/kernel.hpp"
#include "support/presets.hpp"

using namespace plusctl;

namespace {

// Quotient of a two-generator presentation by killing every generator image
// except b, which gets order two.
RealizationPtr z2_by_b(const Presentation& p) {
  Presentation q = p;
  q.relators.push_back(parse_word("a", p));
  q.relators.push_back(parse_word("b^2", p));
  return share(todd_coxeter(q));
}

// Image of a realization element under the quotient map, computed through any
// word representing it.  Well defined because the quotient relators act
// trivially on the quotient realization.
std::size_t element_image(const FiniteRealization& ambient,
                          const FiniteRealization& quotient, std::size_t x) {
  return quotient.image_of_word(ambient.word_for_element(x));
}

// Subgroup of `g` generated by all commutators of elements in `members`.
std::set<std::size_t> commutator_subgroup(const FiniteRealization& g,
                                          const std::set<std::size_t>& members) {
  std::set<std::size_t> gens;
  for (std::size_t x : members)
    for (std::size_t y : members)
      gens.insert(g.mult(g.mult(x, y), g.inv(g.mult(y, x))));
  std::set<std::size_t> closed = {0};
  std::vector<std::size_t> frontier(closed.begin(), closed.end());
  while (!frontier.empty()) {
    const std::size_t x = frontier.back();
    frontier.pop_back();
    for (std::size_t s : gens) {
      const std::size_t y = g.mult(x, s);
      if (closed.insert(y).second) frontier.push_back(y);
    }
  }
  return closed;
}

}  // namespace

TEST_CASE("trivial quotient returns the presentation itself") {
  const Presentation p = presets::a5();
  const SubgroupPresentation sp =
      reidemeister_schreier(p, share(FiniteRealization::trivial(2)));
  REQUIRE(sp.presentation == p);
  REQUIRE(sp.transversal.size() == 1);
  REQUIRE(sp.defining_words.size() == 2);
  REQUIRE(free_reduce(sp.defining_words[0]) == Word({1}));
  REQUIRE(free_reduce(sp.defining_words[1]) == Word({2}));
}

TEST_CASE("free group index two") {
  // <a | > onto Z/2 by a: kernel is free on a^2
  const Presentation p = parse_presentation("gens: a; rels:");
  const Presentation pq = parse_presentation("gens: a; rels: a^2");
  const SubgroupPresentation sp = reidemeister_schreier(p, share(todd_coxeter(pq)));
  REQUIRE(sp.presentation.generators == std::vector<std::string>{"a_1"});
  REQUIRE(sp.presentation.relators.empty());
  REQUIRE(free_reduce(sp.defining_words[0]) == parse_word("a^2", p));
  REQUIRE(sp.generator_origin[0].ambient_gen == 1);
  REQUIRE(sp.generator_origin[0].coset == 1);
}

TEST_CASE("index-two subgroup of a one-relator group") {
  const Presentation p = presets::two_gen_b_squared();
  const SubgroupPresentation sp = reidemeister_schreier(p, z2_by_b(p));
  REQUIRE(sp.quotient->order() == 2);
  REQUIRE(sp.presentation.generators ==
          std::vector<std::string>{"a_0", "a_1", "b_1"});
  REQUIRE(free_reduce(sp.defining_words[0]) == parse_word("a", p));
  REQUIRE(free_reduce(sp.defining_words[1]) == parse_word("(b)^-1 a b", p));
  REQUIRE(free_reduce(sp.defining_words[2]) == parse_word("b^2", p));
  // both rewritten conjugates of b^2 name the single subgroup generator b_1
  REQUIRE(sp.presentation.relators.size() == 2);
  const int b1 = sp.presentation.generator_index("b_1");
  REQUIRE(sp.presentation.relators[0] == Word({b1}));
  REQUIRE(sp.presentation.relators[1] == Word({b1}));

  const PerfectnessCertificate cert = is_perfect(sp.presentation);
  REQUIRE_FALSE(cert.perfect);
  REQUIRE(cert.h1.free_rank == 2);
  REQUIRE(cert.h1.torsion.empty());
}

TEST_CASE("rewriting inverts expansion on kernel words") {
  const Presentation p = presets::two_gen_b_squared();
  const SubgroupPresentation sp = reidemeister_schreier(p, z2_by_b(p));
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    Word w = presets::random_word(rng, 2, 9);
    if (sp.quotient->image_of_word(w) != 0) w = w * parse_word("b", p);
    REQUIRE(sp.quotient->image_of_word(w) == 0);
    const Word u = sp.rewrite(w);
    REQUIRE(free_reduce(sp.expand(u)) == free_reduce(w));
  }
  REQUIRE_THROWS_AS(sp.rewrite(parse_word("b", p)), ValidationError);
}

TEST_CASE("rewritten relator conjugates land in the kernel") {
  const Presentation p = presets::a5_x_z2();
  Presentation q = p;
  q.relators.push_back(parse_word("a", p));
  q.relators.push_back(parse_word("b", p));
  const SubgroupPresentation sp = reidemeister_schreier(p, share(todd_coxeter(q)));
  REQUIRE(sp.presentation.generators.size() ==
          2 * 3 - 1);  // |G| n - (|G| - 1) Schreier generators
  REQUIRE(sp.presentation.relators.size() == 2 * 6);
  for (const Word& r : sp.presentation.relators)
    REQUIRE(sp.quotient->image_of_word(sp.expand(r)) == 0);
}

TEST_CASE("perfectness certificates") {
  SECTION("the icosahedral presentation is perfect") {
    const PerfectnessCertificate cert = is_perfect(presets::a5());
    REQUIRE(cert.perfect);
    REQUIRE(cert.h1.is_trivial());
    REQUIRE(cert.invariant_factors == std::vector<Int>{1, 1});
  }
  SECTION("an order-two abelianization is caught") {
    const PerfectnessCertificate cert = is_perfect(presets::rp2());
    REQUIRE_FALSE(cert.perfect);
    REQUIRE(cert.h1.free_rank == 0);
    REQUIRE(cert.h1.torsion == std::vector<Int>{2});
  }
  SECTION("free generators contribute free rank") {
    const PerfectnessCertificate cert = is_perfect(presets::two_gen_b_squared());
    REQUIRE_FALSE(cert.perfect);
    REQUIRE(cert.h1.free_rank == 1);
    REQUIRE(cert.h1.torsion == std::vector<Int>{2});
  }
}

TEST_CASE("perfectness agrees with a direct subgroup computation") {
  struct Case {
    Presentation ambient;
    Presentation quotiented;
    bool expect_perfect;
  };
  const std::vector<Case> cases = {
      // A5 x Z/2 onto Z/2: kernel A5 is perfect
      {presets::a5_x_z2(),
       parse_presentation("gens: a, b, c; rels: a^2, b^3, (a b)^5, c^2, "
                          "a c (a)^-1 (c)^-1, b c (b)^-1 (c)^-1, a, b"),
       true},
      // S3 onto Z/2 by both generators: kernel Z/3 is abelian
      {presets::s3(),
       parse_presentation("gens: a, b; rels: a^2, b^2, (a b)^3, a b"), false},
  };
  for (const Case& c : cases) {
    const auto ambient = share(todd_coxeter(c.ambient));
    const auto quotient = share(todd_coxeter(c.quotiented));
    const SubgroupPresentation sp = reidemeister_schreier(c.ambient, quotient);
    const PerfectnessCertificate cert = is_perfect(sp.presentation);
    REQUIRE(cert.perfect == c.expect_perfect);

    // oracle: list the kernel inside the ambient realization and close the
    // commutators of its elements into a subgroup
    std::set<std::size_t> kernel;
    for (std::size_t x = 0; x < ambient->order(); ++x)
      if (element_image(*ambient, *quotient, x) == 0) kernel.insert(x);
    REQUIRE(kernel.size() * quotient->order() == ambient->order());
    const std::set<std::size_t> derived = commutator_subgroup(*ambient, kernel);
    REQUIRE((derived == kernel) == c.expect_perfect);
  }
}

TEST_CASE("commutator decomposition in a free group") {
  const Presentation p = parse_presentation("gens: a, b; rels:");
  const SubgroupPresentation sp =
      reidemeister_schreier(p, share(FiniteRealization::trivial(2)));
  const Word k = commutator(parse_word("a", p), parse_word("b", p));
  const CommutatorDecomposition d = commutator_decompose(k, sp);
  REQUIRE(d.ok());
  REQUIRE(d.certificate.empty());
  REQUIRE(d.pairs.size() == 1);
  REQUIRE(free_reduce(d.pairs[0].first) == Word({1}));
  REQUIRE(free_reduce(d.pairs[0].second) == Word({2}));
}

TEST_CASE("decomposition failure modes") {
  const Presentation p = presets::two_gen_b_squared();
  const SubgroupPresentation sp = reidemeister_schreier(p, z2_by_b(p));
  SECTION("words outside the kernel are refused") {
    const CommutatorDecomposition d = commutator_decompose(parse_word("b", p), sp);
    REQUIRE(d.status == CommutatorDecomposition::Status::not_in_kernel);
  }
  SECTION("a class that survives abelianization has no certificate") {
    const CommutatorDecomposition d = commutator_decompose(parse_word("a", p), sp);
    REQUIRE(d.status == CommutatorDecomposition::Status::no_integer_solution);
  }
}

TEST_CASE("decomposition over the icosahedral group") {
  const Presentation p = presets::a5();
  const SubgroupPresentation sp =
      reidemeister_schreier(p, share(FiniteRealization::trivial(2)));
  const auto ambient = share(todd_coxeter(p));

  SECTION("a single generator decomposes") {
    const CommutatorDecomposition d = commutator_decompose(parse_word("a", p), sp);
    REQUIRE(d.ok());
    REQUIRE_FALSE(d.certificate.empty());
    // the certificate really multiplies out to the input in the free group
    Word check = conjugate_relator_product(d.certificate);
    for (const auto& [x, y] : d.pairs) check = check * commutator(x, y);
    REQUIRE(free_reduce(check) == parse_word("a", p));
    // and the pair product alone already equals `a` in the group
    std::size_t img = 0;
    for (const auto& [x, y] : d.pairs)
      img = ambient->mult(img, ambient->image_of_word(commutator(x, y)));
    REQUIRE(img == ambient->image_of_word(parse_word("a", p)));
  }
  SECTION("random kernel words decompose and verify") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
      const Word k = presets::random_word(rng, 2, 7);
      const CommutatorDecomposition d = commutator_decompose(k, sp);
      REQUIRE(d.ok());
      Word check = conjugate_relator_product(d.certificate);
      for (const auto& [x, y] : d.pairs) check = check * commutator(x, y);
      REQUIRE(free_reduce(check) == free_reduce(k));
    }
  }
  SECTION("a tiny budget trips the bound") {
    const CommutatorDecomposition d =
        commutator_decompose(parse_word("a", p), sp, 2);
    REQUIRE(d.status == CommutatorDecomposition::Status::bound_exceeded);
  }
}
