#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "plusctl/plus.hpp"
#include "support/presets.hpp"

using namespace plusctl;

namespace {

KernelSpec two_word_kernel(const Presentation& p) {
  KernelSpec ks;
  ks.kernel_words = {parse_word("a", p), parse_word("b", p)};
  return ks;
}

PlusComplex a5_trivial_quotient() {
  const Presentation p = presets::a5();
  return build_plus_complex(p, share(FiniteRealization::trivial(2)), two_word_kernel(p));
}

PlusComplex a5_x_z2_over_z2() {
  const Presentation p = presets::a5_x_z2();
  Presentation q = p;
  q.relators.push_back(parse_word("a", p));
  q.relators.push_back(parse_word("b", p));
  return build_plus_complex(p, share(todd_coxeter(q)), two_word_kernel(p));
}

}  // namespace

TEST_CASE("kernel spec files parse") {
  const Presentation p = presets::a5();
  SECTION("plain word list") {
    const KernelSpec ks = parse_kernel_spec("kernel: a, b", p);
    REQUIRE(ks.kernel_words.size() == 2);
    REQUIRE(ks.decompositions.empty());
  }
  SECTION("empty list") {
    REQUIRE(parse_kernel_spec("kernel:", p).kernel_words.empty());
  }
  SECTION("decompositions attach to their word") {
    const KernelSpec ks =
        parse_kernel_spec("kernel: a, b\ndecomp 2: (a b, b a) ((a)^-1, b)", p);
    REQUIRE(ks.decompositions.size() == 1);
    const auto& pairs = ks.decompositions.at(1);
    REQUIRE(pairs.size() == 2);
    REQUIRE(pairs[0].first == parse_word("a b", p));
    REQUIRE(pairs[1].first == Word({-1}));
  }
  SECTION("bad indices and duplicates are rejected") {
    REQUIRE_THROWS_AS(parse_kernel_spec("kernel: a\ndecomp 2: (a, b)", p), ParseError);
    REQUIRE_THROWS_AS(parse_kernel_spec("kernel: a\ndecomp 0: (a, b)", p), ParseError);
    REQUIRE_THROWS_AS(parse_kernel_spec("kernel: a\ndecomp 1: (a, b)\ndecomp 1: (b, a)", p),
                      ParseError);
    REQUIRE_THROWS_AS(parse_kernel_spec("kernel: a\ndecomp 1:", p), ParseError);
    REQUIRE_THROWS_AS(parse_kernel_spec("kernel: a extra;", p), ParseError);
  }
}

TEST_CASE("plus complex over the trivial quotient") {
  const PlusComplex pc = a5_trivial_quotient();
  REQUIRE(pc.full.ranks == std::vector<std::size_t>{1, 2, 5, 2});
  REQUIRE(pc.base.ranks == std::vector<std::size_t>{1, 2, 3});
  // degree-3 boundary is the inclusion of the two added coordinates
  const RingMatrix& d3 = pc.full.boundary(3);
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t i = 0; i < 5; ++i)
      REQUIRE(d3.at(i, j) == (i == 3 + j ? RingElement::unit(0) : RingElement::zero()));
  // added degree-2 columns are zero
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 3; j < 5; ++j) REQUIRE(pc.full.boundary(2).at(i, j).is_zero());
  REQUIRE(euler_characteristic(pc.full.ranks) == euler_characteristic(pc.base.ranks));
  REQUIRE(euler_characteristic(pc.full.ranks) == 2);  // 1 - deficiency, deficiency = -1
}

TEST_CASE("plus complex over an order-two quotient") {
  const PlusComplex pc = a5_x_z2_over_z2();
  REQUIRE(pc.realization->order() == 2);
  REQUIRE(pc.full.ranks == std::vector<std::size_t>{1, 3, 8, 2});
  REQUIRE(euler_characteristic(pc.full.ranks) == 4);  // deficiency -3
}

TEST_CASE("r = 0 keeps the base complex") {
  const Presentation p = presets::a5();
  const PlusComplex pc = build_plus_complex(p, share(todd_coxeter(p)), KernelSpec{});
  REQUIRE(pc.full.ranks == std::vector<std::size_t>{1, 2, 3, 0});
  for (long long d = 0; d <= 3; ++d) {
    REQUIRE(homology(pc.full, Coefficients::trivial, d) ==
            homology(pc.base, Coefficients::trivial, d));
    REQUIRE(homology(pc.full, Coefficients::regular, d) ==
            homology(pc.base, Coefficients::regular, d));
  }
}

TEST_CASE("wrong quotient is rejected") {
  const Presentation p = presets::a5_x_z2();
  // the quotient by {a, b} has order 2, not 1
  REQUIRE_THROWS_AS(
      build_plus_complex(p, share(FiniteRealization::trivial(3)), two_word_kernel(p)),
      ValidationError);
}

TEST_CASE("full complex has the homology of its base") {
  for (const PlusComplex& pc : {a5_trivial_quotient(), a5_x_z2_over_z2()}) {
    for (long long d = 0; d <= 3; ++d) {
      CAPTURE(d);
      REQUIRE(homology(pc.full, Coefficients::trivial, d) ==
              homology(pc.base, Coefficients::trivial, d));
      REQUIRE(homology(pc.full, Coefficients::regular, d) ==
              homology(pc.base, Coefficients::regular, d));
    }
    const auto phi = split_injection_test(pc.full.boundary(3));
    REQUIRE(phi.has_value());
  }
}

TEST_CASE("relative complex is acyclic") {
  const Presentation p = presets::a5();
  for (const PlusComplex& pc :
       {a5_trivial_quotient(), a5_x_z2_over_z2(),
        build_plus_complex(p, share(todd_coxeter(p)), KernelSpec{})}) {
    const AlgebraicComplex rel = relative_complex(pc);
    REQUIRE(rel.ranks ==
            std::vector<std::size_t>{0, 0, pc.added_cells(), pc.added_cells()});
    for (long long d = 0; d <= 3; ++d) {
      REQUIRE(homology(rel, Coefficients::trivial, d).is_trivial());
      REQUIRE(homology(rel, Coefficients::regular, d).is_trivial());
    }
  }
}

TEST_CASE("kernel word verification") {
  const Presentation p = presets::a5_x_z2();
  Presentation q = p;
  q.relators.push_back(parse_word("a", p));
  q.relators.push_back(parse_word("b", p));
  const auto quotient = share(todd_coxeter(q));

  SECTION("quotient-trivial letters pass with zero boundary") {
    KernelSpec ks = two_word_kernel(p);
    ks.decompositions[0] = {{parse_word("a b", p), parse_word("b a", p)}};
    // a b and b a both die in the quotient (a, b both do)
    const KernelVerification v = verify_kernel_words(ks, *quotient);
    REQUIRE(v.failures.empty());
  }
  SECTION("a surviving letter fails the image check") {
    KernelSpec ks = two_word_kernel(p);
    ks.decompositions[0] = {{parse_word("c", p), parse_word("a", p)}};
    const KernelVerification v = verify_kernel_words(ks, *quotient);
    REQUIRE_FALSE(v.ok);
    REQUIRE(v.failures.front().find("first word") != std::string::npos);
  }
  SECTION("ambient realization certifies exact equality") {
    const Presentation a5 = presets::a5();
    const auto ambient = share(todd_coxeter(a5));
    KernelSpec ks;
    ks.kernel_words = {commutator(parse_word("a", a5), parse_word("b", a5))};
    ks.decompositions[0] = {{parse_word("a", a5), parse_word("b", a5)}};
    const KernelVerification good =
        verify_kernel_words(ks, *share(FiniteRealization::trivial(2)), ambient.get());
    REQUIRE(good.ok);
    ks.kernel_words = {parse_word("a", a5)};
    const KernelVerification bad =
        verify_kernel_words(ks, *share(FiniteRealization::trivial(2)), ambient.get());
    REQUIRE_FALSE(bad.ok);
  }
}

TEST_CASE("commutator products of quotient-trivial words have zero boundary") {
  const Presentation p = presets::a5_x_z2();
  Presentation q = p;
  q.relators.push_back(parse_word("a", p));
  q.relators.push_back(parse_word("b", p));
  const auto quotient = share(todd_coxeter(q));
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 60; ++trial) {
    Word product;
    const int pairs = 1 + static_cast<int>(rng() % 3);
    for (int j = 0; j < pairs; ++j) {
      Word a = presets::random_word(rng, 3, 6);
      Word b = presets::random_word(rng, 3, 6);
      // steer each word into the kernel of the quotient map
      a = a * inverse(quotient->word_for_element(quotient->image_of_word(a)));
      b = b * inverse(quotient->word_for_element(quotient->image_of_word(b)));
      REQUIRE(quotient->image_of_word(a) == 0);
      REQUIRE(quotient->image_of_word(b) == 0);
      product = product * commutator(a, b);
    }
    for (const RingElement& e : fox_derivative(product, *quotient)) REQUIRE(e.is_zero());
  }
}
