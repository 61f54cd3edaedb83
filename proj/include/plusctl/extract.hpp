#pragma once

// Reverse direction of the plus construction: start from an algebraic
// 3-complex whose degree-3 boundary splits, rebuild a presentation-with-kernel
// datum whose extended complex has the same homological invariants.
//
// Pipeline: validate_three_complex checks the input and produces a retraction
// phi of the 3-boundary; stabilize wedges on one trivial (generator, relator)
// pair per 3-cell so the complement of the 3-boundary image becomes free with
// an explicit basis; derive_partial_presentation reads that basis off as
// conjugated-relator words; round_trip_verify rebuilds the extended complex
// from the derived data and compares invariants with the input.

#include <cstdlib>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plusctl/chain.hpp"
#include "plusctl/errors.hpp"
#include "plusctl/fox.hpp"
#include "plusctl/groupring.hpp"
#include "plusctl/plus.hpp"
#include "plusctl/realize.hpp"
#include "plusctl/snf.hpp"
#include "plusctl/words.hpp"

namespace plusctl {

/// A single-vertex 3-complex in algebraic form: 1-cells and 2-cells are given
/// by a presentation (generators and attaching words), 3-cell boundaries by a
/// matrix over the group ring of the fundamental group.
struct CellThreeComplex {
  Presentation presentation;  // generators = 1-cells, relators = 2-cells
  RealizationPtr quotient;    // the group the presentation presents
  RingMatrix d3;              // relator_count x three_cell_count

  std::size_t three_cells() const { return d3.cols; }

  /// The chain complex (1, n, m, q) the data describes.
  AlgebraicComplex complex() const {
    AlgebraicComplex base = cayley_complex(presentation, quotient);
    AlgebraicComplex c;
    c.realization = quotient;
    c.ranks = {base.ranks[0], base.ranks[1], base.ranks[2], d3.cols};
    c.boundaries = {base.boundary(1), base.boundary(2), d3};
    c.validate();
    return c;
  }
};

struct ThreeComplexReport {
  bool ok = true;
  std::vector<std::string> failures;
  std::optional<RingMatrix> phi;  // retraction with phi * d3 = identity

  void fail(std::string why) {
    ok = false;
    failures.push_back(std::move(why));
  }
};

/// Check every structural requirement on the input complex separately:
/// the realization presents the right group, boundaries compose to zero,
/// the regular chain complex is exact in degree 1, and the 3-boundary is a
/// split injection.  The retraction is returned for the next stage.
inline ThreeComplexReport validate_three_complex(const CellThreeComplex& x,
                                                 std::size_t max_cosets = kDefaultMaxCosets) {
  ThreeComplexReport report;
  x.presentation.validate();
  if (!x.quotient) throw ValidationError("three-complex needs a realization");
  if (!(*x.d3.realization == *x.quotient))
    throw ValidationError("degree-3 boundary lives over a different group");
  if (x.d3.rows != x.presentation.relators.size())
    throw ValidationError("degree-3 boundary must have one row per 2-cell");

  if (!relators_act_trivially(x.presentation, *x.quotient)) {
    report.fail("a relator acts nontrivially on the supplied realization");
    return report;  // nothing downstream is meaningful
  }
  const FiniteRealization enumerated = todd_coxeter(x.presentation, max_cosets);
  if (!isomorphic_realizations(enumerated, *x.quotient))
    report.fail("realization is not the presented group (orders " +
                std::to_string(enumerated.order()) + " vs " +
                std::to_string(x.quotient->order()) + ")");

  const AlgebraicComplex base = cayley_complex(x.presentation, x.quotient);
  if (!(base.boundary(2) * x.d3).is_zero())
    report.fail("2-boundary composed with 3-boundary is nonzero");
  else {
    AlgebraicComplex full;
    full.realization = x.quotient;
    full.ranks = {base.ranks[0], base.ranks[1], base.ranks[2], x.d3.cols};
    full.boundaries = {base.boundary(1), base.boundary(2), x.d3};
    if (!exactness_check(full, 1))
      report.fail("chain complex is not exact in degree 1");
  }

  report.phi = split_injection_test(x.d3);
  if (!report.phi.has_value()) {
    report.fail("3-boundary admits no retraction: not cohomologically 2-dimensional");
  }
  return report;
}

/// The complex after wedging one disc per 3-cell: each disc contributes a new
/// generator together with a relator consisting of that single letter, so the
/// presented group is unchanged and the new 2-cells receive no 3-boundary.
struct StabilizedComplex {
  Presentation presentation;  // n + q generators, m + q relators
  RealizationPtr realization; // input realization extended by identity tables
  RingMatrix d3;              // (m + q) x q: input d3 over zero rows
  RingMatrix phi;             // q x (m + q): input phi padded with zero columns

  std::size_t original_generators = 0;
  std::size_t original_relators = 0;
  std::size_t three_cells = 0;
};

namespace detail {

/// A fresh generator name for disc t (1-based), dodging existing names.
inline std::string disc_generator_name(const std::vector<std::string>& taken,
                                       std::size_t t) {
  std::string name = "d" + std::to_string(t);
  auto clashes = [&taken](const std::string& s) {
    for (const auto& g : taken)
      if (g == s) return true;
    return false;
  };
  while (clashes(name)) name += "_";
  return name;
}

}  // namespace detail

inline StabilizedComplex stabilize(const CellThreeComplex& x, const RingMatrix& phi) {
  const std::size_t m = x.presentation.relators.size();
  const std::size_t q = x.three_cells();
  if (phi.rows != q || phi.cols != m)
    throw ValidationError("retraction has the wrong shape for this complex");
  {
    const RingMatrix check = phi * x.d3;
    if (check != RingMatrix::identity(q, x.quotient))
      throw ValidationError("retraction does not invert the 3-boundary");
  }

  StabilizedComplex s;
  s.original_generators = static_cast<std::size_t>(x.presentation.generator_count());
  s.original_relators = m;
  s.three_cells = q;

  s.presentation = x.presentation;
  std::vector<std::vector<int>> tables = x.quotient->tables();
  std::vector<int> identity_table(static_cast<std::size_t>(x.quotient->order()));
  for (std::size_t i = 0; i < identity_table.size(); ++i)
    identity_table[i] = static_cast<int>(i);
  for (std::size_t t = 1; t <= q; ++t) {
    const std::string name = detail::disc_generator_name(s.presentation.generators, t);
    s.presentation.generators.push_back(name);
    s.presentation.relators.push_back(
        Word({static_cast<std::int32_t>(s.presentation.generators.size())}));
    tables.push_back(identity_table);
  }
  s.presentation.validate();
  s.realization = share(FiniteRealization::from_tables(std::move(tables)));

  // element ids are untouched by the extension, so entries copy across
  s.d3 = RingMatrix(m + q, q, s.realization);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < q; ++j) s.d3.at(i, j) = x.d3.at(i, j);
  s.phi = RingMatrix(q, m + q, s.realization);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < m; ++j) s.phi.at(i, j) = phi.at(i, j);
  return s;
}

/// One factor of a derived relator: conjugate 2-cell `cell` by a word for
/// group element `element`, with orientation `sign`.
struct RelatorTerm {
  std::size_t cell = 0;
  std::size_t element = 0;
  int sign = 1;
};

/// The derived presentation data: relators assembled from the basis of the
/// complement of the 3-boundary image, plus the original attaching words
/// reinterpreted as normal generators of the kernel.
struct PartialPresentationResult {
  Presentation eps;
  RealizationPtr realization;  // the stabilized realization
  std::vector<std::vector<RelatorTerm>> coordinates;  // one list per relator
  std::vector<Word> kernel_relators;  // all stabilized attaching words
};

/// Read the free basis x_j = (1 - d3 phi) E_j + iota(phi E_j) of the
/// complement of the 3-boundary image off as words: a coordinate entry c at
/// (cell i, element id) contributes |c| conjugates of attaching word i by a
/// transversal word for the element, oriented by the sign of c.  Terms are
/// emitted sorted by (cell, element id); within one coordinate the expansion
/// is unique, which pins the output words byte-exactly.
inline PartialPresentationResult derive_partial_presentation(const StabilizedComplex& sx) {
  const std::size_t m = sx.original_relators;
  const std::size_t q = sx.three_cells;

  // basis columns over all m + q stabilized 2-cells
  const RingMatrix projector = sx.d3 * sx.phi;  // (m+q) x (m+q)
  RingMatrix basis(m + q, m, sx.realization);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < m + q; ++i) basis.at(i, j) = -projector.at(i, j);
    basis.at(j, j).add_term(0, 1);
    for (std::size_t t = 0; t < q; ++t) basis.at(m + t, j) = sx.phi.at(t, j);
  }

  // {d3 columns} followed by {basis columns} must be a basis of the whole
  // degree-2 module: its regular realization is a unimodular integer matrix
  RingMatrix square(m + q, m + q, sx.realization);
  for (std::size_t i = 0; i < m + q; ++i) {
    for (std::size_t j = 0; j < q; ++j) square.at(i, j) = sx.d3.at(i, j);
    for (std::size_t j = 0; j < m; ++j) square.at(i, q + j) = basis.at(i, j);
  }
  if (!is_unimodular(regular_matrix(square)))
    throw ValidationError("internal: derived columns do not form a module basis");

  PartialPresentationResult out;
  out.realization = sx.realization;
  out.eps.generators = sx.presentation.generators;
  out.kernel_relators = sx.presentation.relators;

  for (std::size_t j = 0; j < m; ++j) {
    std::vector<RelatorTerm> terms;
    std::vector<ConjugatedRelator> factors;
    for (std::size_t i = 0; i < m + q; ++i) {
      for (const auto& [element, coeff] : basis.at(i, j).terms) {
        const int sign = coeff > 0 ? 1 : -1;
        if (abs(coeff) > Int(1u << 20))
          throw ValidationError("internal: basis coordinate too large to expand");
        const auto copies = static_cast<std::size_t>(abs(coeff));
        const Word w = sx.realization->word_for_element(element);
        for (std::size_t c = 0; c < copies; ++c) {
          terms.push_back({i, static_cast<std::size_t>(element), sign});
          factors.push_back({w, sx.presentation.relators[i], sign});
        }
      }
    }
    out.coordinates.push_back(std::move(terms));
    out.eps.relators.push_back(conjugate_relator_product(factors));
  }
  out.eps.validate();

  for (const Word& s : out.eps.relators)
    if (!sx.realization->acts_trivially(s))
      throw ValidationError("internal: derived relator survives in the quotient");

  // the derived 2-complex must stay exact in degree 1 over the group ring;
  // failure here means the input complex was not exact to begin with
  const AlgebraicComplex derived = cayley_complex(out.eps, out.realization);
  if (!exactness_check(derived, 1))
    throw ValidationError(
        "derived presentation has nonvanishing first homology over the group ring; "
        "the input complex was not exact in degree 1");
  return out;
}

struct RoundTripReport {
  bool ok = true;
  std::vector<std::string> failures;
  long long euler = 0;
  PlusComplex rebuilt;

  void fail(std::string why) {
    ok = false;
    failures.push_back(std::move(why));
  }
};

/// Rebuild the extended complex of the derived data and compare it with the
/// input: equal Euler characteristics and equal homology in degrees 0..3
/// under both coefficient specializations.
inline RoundTripReport round_trip_verify(const CellThreeComplex& x,
                                         const PartialPresentationResult& result,
                                         std::size_t max_cosets = kDefaultMaxCosets) {
  KernelSpec ks;
  ks.kernel_words = result.kernel_relators;
  RoundTripReport report;
  report.rebuilt = build_plus_complex(result.eps, result.realization, ks, max_cosets);
  report.euler = euler_characteristic(report.rebuilt.full.ranks);

  const AlgebraicComplex input = x.complex();
  if (euler_characteristic(input.ranks) != report.euler)
    report.fail("Euler characteristics differ: input " +
                std::to_string(euler_characteristic(input.ranks)) + ", rebuilt " +
                std::to_string(report.euler));
  for (const Coefficients coeffs : {Coefficients::trivial, Coefficients::regular}) {
    for (long long deg = 0; deg <= 3; ++deg) {
      const HomologyGroup a = homology(input, coeffs, deg);
      const HomologyGroup b = homology(report.rebuilt.full, coeffs, deg);
      if (a != b)
        report.fail("homology mismatch in degree " + std::to_string(deg) + " with " +
                    to_string(coeffs) + " coefficients: input " + a.to_string() +
                    ", rebuilt " + b.to_string());
    }
  }
  return report;
}

}  // namespace plusctl
