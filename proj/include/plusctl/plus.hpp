#pragma once

// Kill a normally generating set of a perfect normal subgroup at chain level:
// given a presentation of E, words k_1..k_r whose normal closure is K, and a
// realization of E/K, extend the presentation 2-complex by r new 2-cells
// (attached along the k_i, with zero boundary over Z[E/K]) and r matching
// 3-cells whose boundary is the inclusion of the new coordinates.  The result
// has the homology of the original complex and a split degree-3 boundary.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "plusctl/chain.hpp"
#include "plusctl/errors.hpp"
#include "plusctl/fox.hpp"
#include "plusctl/realize.hpp"
#include "plusctl/words.hpp"

namespace plusctl {

/// Normal generators k_1..k_r of the subgroup to kill, with optional
/// commutator decompositions k_i = prod_j [A_ij, B_ij].
struct KernelSpec {
  std::vector<Word> kernel_words;
  /// Keyed by 0-based kernel word index; each entry lists (A, B) pairs.
  std::map<std::size_t, std::vector<std::pair<Word, Word>>> decompositions;

  std::size_t count() const { return kernel_words.size(); }

  void validate(const Presentation& alphabet) const {
    const auto check_word = [&](const Word& w, const char* what) {
      for (std::int32_t l : w.letters) {
        const int idx = l > 0 ? l : -l;
        if (l == 0 || idx > alphabet.generator_count())
          throw ValidationError(std::string(what) + " uses a letter outside the generator list");
      }
    };
    for (const Word& w : kernel_words) check_word(w, "kernel word");
    for (const auto& [i, pairs] : decompositions) {
      if (i >= kernel_words.size())
        throw ValidationError("decomposition index " + std::to_string(i + 1) +
                              " has no kernel word");
      for (const auto& [a, b] : pairs) {
        check_word(a, "decomposition word");
        check_word(b, "decomposition word");
      }
    }
  }
};

/// Outcome of the decomposition checks; failures name the offending index.
struct KernelVerification {
  bool ok = true;
  std::vector<std::string> failures;

  void fail(std::string msg) {
    ok = false;
    failures.push_back(std::move(msg));
  }
};

/// Check the decomposition data of a KernelSpec against the quotient:
/// (a) every kernel word and every decomposition letter word has identity
///     image in the quotient;
/// (b) the Fox vector over the quotient of each commutator product is zero;
/// (c) optionally, against a realization of the ambient group, that each k_i
///     actually equals its commutator product there.
inline KernelVerification verify_kernel_words(const KernelSpec& ks,
                                              const FiniteRealization& quotient,
                                              const FiniteRealization* ambient = nullptr) {
  KernelVerification v;
  for (std::size_t i = 0; i < ks.kernel_words.size(); ++i)
    if (quotient.image_of_word(ks.kernel_words[i]) != 0)
      v.fail("kernel word " + std::to_string(i + 1) + " has non-identity quotient image");
  for (const auto& [i, pairs] : ks.decompositions) {
    if (i >= ks.kernel_words.size()) {
      v.fail("decomposition " + std::to_string(i + 1) + " has no kernel word");
      continue;
    }
    Word product;
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      const auto& [a, b] = pairs[j];
      if (quotient.image_of_word(a) != 0)
        v.fail("decomposition " + std::to_string(i + 1) + ", pair " + std::to_string(j + 1) +
               ": first word has non-identity quotient image");
      if (quotient.image_of_word(b) != 0)
        v.fail("decomposition " + std::to_string(i + 1) + ", pair " + std::to_string(j + 1) +
               ": second word has non-identity quotient image");
      product = product * commutator(a, b);
    }
    const auto fox = fox_derivative(product, quotient);
    for (const RingElement& e : fox)
      if (!e.is_zero()) {
        v.fail("decomposition " + std::to_string(i + 1) +
               ": commutator product has nonzero boundary over the quotient");
        break;
      }
    if (ambient != nullptr &&
        ambient->image_of_word(ks.kernel_words[i]) != ambient->image_of_word(product))
      v.fail("decomposition " + std::to_string(i + 1) +
             ": commutator product disagrees with the kernel word in the ambient group");
  }
  return v;
}

/// The extended complex together with what it was built from.
struct PlusComplex {
  Presentation presentation;   // the input presentation of E
  KernelSpec kernel;           // the words that were killed
  RealizationPtr realization;  // E/K
  AlgebraicComplex base;       // presentation 2-complex of E over Z[E/K]
  AlgebraicComplex full;       // ranks (1, n, m+r, r)
  bool perfectness_verified = false;  // set by callers that certified the kernel

  std::size_t added_cells() const { return kernel.kernel_words.size(); }
};

/// Build the extended complex.  The supplied realization must be exactly the
/// quotient by the kernel words: this is enforced by enumerating
/// eps + kernel words and comparing canonical tables.
inline PlusComplex build_plus_complex(const Presentation& eps, RealizationPtr quotient,
                                      KernelSpec ks,
                                      std::size_t max_cosets = kDefaultMaxCosets) {
  eps.validate();
  ks.validate(eps);
  if (!quotient) throw ValidationError("plus construction needs a quotient realization");
  Presentation quotient_pres = eps;
  for (const Word& w : ks.kernel_words) quotient_pres.relators.push_back(w);
  const FiniteRealization enumerated = todd_coxeter(quotient_pres, max_cosets);
  if (!isomorphic_realizations(enumerated, *quotient))
    throw ValidationError(
        "realization is not the quotient by the kernel words (order " +
        std::to_string(quotient->order()) + " given, " +
        std::to_string(enumerated.order()) + " enumerated)");
  if (!ks.decompositions.empty()) {
    const KernelVerification v = verify_kernel_words(ks, *quotient);
    if (!v.ok) throw ValidationError("kernel decomposition rejected: " + v.failures.front());
  }

  PlusComplex pc;
  pc.presentation = eps;
  pc.kernel = std::move(ks);
  pc.realization = quotient;
  pc.base = cayley_complex(eps, quotient);

  const std::size_t n = static_cast<std::size_t>(eps.generator_count());
  const std::size_t m = eps.relators.size();
  const std::size_t r = pc.kernel.kernel_words.size();
  pc.full.realization = quotient;
  pc.full.ranks = {1, n, m + r, r};
  RingMatrix d2(n, m + r, quotient);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) d2.at(i, j) = pc.base.boundary(2).at(i, j);
  // The r added columns stay zero: each new 2-cell is attached along a
  // product of commutators of words that die in E/K, and the boundary of
  // such a product vanishes identically over the quotient ring.  The kernel
  // word itself only equals that product in the group, so its own Fox vector
  // may be a nonzero combination of relator columns; what the construction
  // needs from it is exactly quotient-triviality, checked here directly.
  for (std::size_t j = 0; j < r; ++j)
    if (!quotient->acts_trivially(pc.kernel.kernel_words[j]))
      throw ValidationError("kernel word " + std::to_string(j + 1) +
                            " does not die in the quotient");
  RingMatrix d3(m + r, r, quotient);
  for (std::size_t j = 0; j < r; ++j) d3.at(m + j, j) = RingElement::unit(0);
  pc.full.boundaries = {pc.base.boundary(1), std::move(d2), std::move(d3)};
  pc.full.validate();
  return pc;
}

/// The quotient complex of full by base: zeros in degrees 0 and 1, then the
/// identity between the added 2- and 3-cell coordinates.  Acyclic under every
/// coefficient specialization.
inline AlgebraicComplex relative_complex(const PlusComplex& pc) {
  const std::size_t r = pc.added_cells();
  AlgebraicComplex c;
  c.realization = pc.realization;
  c.ranks = {0, 0, r, r};
  c.boundaries = {RingMatrix(0, 0, pc.realization), RingMatrix(0, r, pc.realization),
                  RingMatrix::identity(r, pc.realization)};
  c.validate();
  return c;
}

namespace detail {

/// Parse "kernel: w, ..." plus following "decomp i: (A,B)..." lines; stops at
/// end of input or at any token that cannot start another section.
inline KernelSpec parse_kernel_sections(PresentationParser& p, const Presentation& alphabet) {
  KernelSpec ks;
  p.set_alphabet(alphabet);
  p.expect_keyword("kernel");
  p.expect(Token::Colon, "':' after 'kernel'");
  if (PresentationParser::starts_word(p.lexer().peek())) {
    ks.kernel_words.push_back(p.parse_word());
    while (p.lexer().peek().kind == Token::Comma) {
      p.lexer().take();
      ks.kernel_words.push_back(p.parse_word());
    }
  }
  while (p.lexer().peek().kind == Token::Ident && p.lexer().peek().text == "decomp") {
    p.lexer().take();
    const Token it = p.lexer().take();
    if (it.kind != Token::Integer || it.value < 1 ||
        it.value > static_cast<long long>(ks.kernel_words.size()))
      throw ParseError("decomp needs a kernel word index between 1 and " +
                           std::to_string(ks.kernel_words.size()),
                       it.pos);
    p.expect(Token::Colon, "':' after decomp index");
    std::vector<std::pair<Word, Word>> pairs;
    while (p.lexer().peek().kind == Token::LParen) {
      p.expect(Token::LParen, "'('");
      Word a = p.parse_word();
      p.expect(Token::Comma, "',' between decomposition words");
      Word b = p.parse_word();
      p.expect(Token::RParen, "')'");
      pairs.emplace_back(std::move(a), std::move(b));
    }
    if (pairs.empty())
      throw ParseError("decomp line needs at least one (A, B) pair", p.lexer().peek().pos);
    const std::size_t idx = static_cast<std::size_t>(it.value - 1);
    if (!ks.decompositions.emplace(idx, std::move(pairs)).second)
      throw ParseError("duplicate decomp line for index " + std::to_string(it.value), it.pos);
  }
  return ks;
}

}  // namespace detail

/// Parse a kernel spec file over a known generator alphabet.
inline KernelSpec parse_kernel_spec(std::string_view text, const Presentation& alphabet) {
  detail::PresentationParser p(text);
  KernelSpec ks = detail::parse_kernel_sections(p, alphabet);
  p.expect_end();
  ks.validate(alphabet);
  return ks;
}

}  // namespace plusctl
