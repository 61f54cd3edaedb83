#pragma once

// Free differential calculus over a finite quotient, and the chain complex
// of the presentation 2-complex built from it.

#include <vector>

#include "plusctl/chain.hpp"
#include "plusctl/groupring.hpp"
#include "plusctl/realize.hpp"
#include "plusctl/words.hpp"

namespace plusctl {

/// Derivatives of a word with respect to each generator, with letter images
/// taken in g.  Satisfies the product rule d(uv) = d(u) * image(v) + d(v) and
/// the fundamental identity
///
///   sum_i (image(g_i) - 1) * d(w)_i == image(w) - 1
///
/// in Z[G].  Computed in one right-to-left sweep carrying the suffix image.
inline std::vector<RingElement> fox_derivative(const Word& w, const FiniteRealization& g) {
  std::vector<RingElement> d(static_cast<std::size_t>(g.generator_count()));
  int cur = 0;  // image of the suffix strictly after the current letter
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    const std::int32_t l = *it;
    const std::size_t idx = static_cast<std::size_t>((l > 0 ? l : -l) - 1);
    if (idx >= d.size()) throw ValidationError("letter outside realization alphabet");
    if (l > 0) {
      d[idx].add_term(cur, 1);
      cur = g.apply_letter(l, cur);
    } else {
      cur = g.apply_letter(l, cur);
      d[idx].add_term(cur, -1);
    }
  }
  return d;
}

/// The chain complex of the 2-complex of a presentation, with coefficients
/// pushed into Z[G] for the given finite quotient:
///
///   C_2 = Z[G]^relators --d2--> C_1 = Z[G]^generators --d1--> C_0 = Z[G]
///
/// d1 has entries image(g_i) - 1; column j of d2 is the Fox derivative of
/// relator j.  Every relator must act trivially in g (g realizes a quotient
/// of the presented group); proper quotients are fine and are what the plus
/// construction feeds in.
inline AlgebraicComplex cayley_complex(const Presentation& p, RealizationPtr g) {
  p.validate();
  if (!g) throw ValidationError("cayley complex needs a realization");
  if (g->generator_count() != p.generator_count())
    throw ValidationError("realization generator count disagrees with the presentation");
  for (const Word& r : p.relators)
    if (!g->acts_trivially(r))
      throw ValidationError("a relator acts nontrivially in the given realization");
  const std::size_t n = static_cast<std::size_t>(p.generator_count());
  const std::size_t m = p.relators.size();
  AlgebraicComplex c;
  c.realization = g;
  c.ranks = {1, n, m};
  RingMatrix d1(1, n, g);
  for (std::size_t i = 0; i < n; ++i)
    d1.at(0, i) =
        RingElement::unit(g->image_of_word(Word::generator(static_cast<int>(i) + 1))) -
        RingElement::unit(0);
  RingMatrix d2(n, m, g);
  for (std::size_t j = 0; j < m; ++j) {
    const auto col = fox_derivative(p.relators[j], *g);
    for (std::size_t i = 0; i < n; ++i) d2.at(i, j) = col[i];
  }
  c.boundaries = {std::move(d1), std::move(d2)};
  c.validate();
  return c;
}

}  // namespace plusctl
