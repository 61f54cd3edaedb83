#pragma once

// Deficiency arithmetic around a short exact sequence 1 -> K -> E -> G -> 1:
// presentation deficiencies, abelianization ranks, two-sided bounds on the
// number of module generators of the abelianized kernel, the obstruction
// inequality rk + Def(G) < Def(E), and the candidate complex whose Euler
// characteristic realizes 1 - Def(eps).
//
// Group-level deficiency is not computable, so conclusions that need it are
// only ever reported conditional on user-asserted values; everything computed
// here from presentations is exact integer arithmetic.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plusctl/chain.hpp"
#include "plusctl/errors.hpp"
#include "plusctl/intmat.hpp"
#include "plusctl/kernel.hpp"
#include "plusctl/plus.hpp"
#include "plusctl/realize.hpp"
#include "plusctl/snf.hpp"
#include "plusctl/words.hpp"

namespace plusctl {

/// A short exact sequence datum: a presentation of the ambient group, words
/// normally generating the kernel, and the finite quotient they define.
/// Deficiencies of the abstract groups may be asserted by the user; they are
/// carried verbatim and every conclusion built on them is labeled conditional.
struct SesSpec {
  Presentation eps;       // presents E
  KernelSpec kernel;      // k_1..k_r with optional decompositions
  RealizationPtr quotient;  // realizes E modulo the normal closure of the k_i
  std::optional<long long> asserted_def_E;
  std::optional<long long> asserted_def_G;
};

/// Generators minus relators.
inline long long deficiency(const Presentation& p) {
  return p.generator_count() - static_cast<long long>(p.relators.size());
}

/// Free rank and torsion of the abelianization presented by the relator
/// exponent matrix.  The free rank bounds the deficiency of any presentation
/// of the same group from above.
inline HomologyGroup abelianization_rank(const Presentation& p) {
  return is_perfect(p).h1;
}

struct RkBounds {
  long long lower = 0;
  long long upper = 0;
};

/// Bounds on the minimal number of module generators of the abelianized
/// kernel over the group ring of the quotient.  The upper bound is the count
/// of supplied kernel words (they normally generate, so their classes
/// generate the abelianization as a module).  The lower bound is the minimal
/// generator count of the coinvariants: abelianize the rewritten kernel
/// presentation, then identify each generator with its conjugates under the
/// ambient generators, and read the rank off the Smith form.
inline RkBounds rk_bounds(const SesSpec& s) {
  RkBounds b;
  b.upper = static_cast<long long>(s.kernel.kernel_words.size());

  const SubgroupPresentation sp = reidemeister_schreier(s.eps, s.quotient);
  const std::size_t kgens = static_cast<std::size_t>(sp.presentation.generator_count());
  const std::size_t krels = sp.presentation.relators.size();
  const std::size_t n = static_cast<std::size_t>(s.eps.generator_count());

  IntMatrix rel(krels + kgens * n, kgens);
  for (std::size_t i = 0; i < krels; ++i) {
    const auto row = exponent_sum_vector(sp.presentation.relators[i],
                                         sp.presentation.generator_count());
    for (std::size_t j = 0; j < kgens; ++j) rel.at(i, j) = row[j];
  }
  std::size_t next = krels;
  for (std::size_t t = 0; t < kgens; ++t) {
    for (std::size_t i = 1; i <= n; ++i) {
      const Word g({static_cast<std::int32_t>(i)});
      const Word conj = free_reduce(g * sp.defining_words[t] * inverse(g));
      const auto row = exponent_sum_vector(sp.rewrite(conj),
                                           sp.presentation.generator_count());
      for (std::size_t j = 0; j < kgens; ++j) rel.at(next, j) = row[j];
      rel.at(next, t) -= 1;
      ++next;
    }
  }

  const SmithNormalForm snf = smith_normal_form(rel);
  long long torsion = 0;
  for (std::size_t i = 0; i < snf.rank; ++i)
    if (snf.diagonal[i] > 1) ++torsion;
  b.lower = static_cast<long long>(kgens) - static_cast<long long>(snf.rank) + torsion;
  if (b.lower > b.upper)
    throw ValidationError("internal: coinvariant bound exceeds the generator count");
  return b;
}

/// Outcome of the obstruction inequality rk + Def(G) < Def(E).
struct ObstructionReport {
  enum class Conclusion {
    holds_conditional,  // certified with the asserted deficiencies
    fails,              // false even for the most favorable rk in bounds
    indeterminate,      // depends on where rk falls between the bounds
    bounds_only,        // asserted deficiencies missing; numbers reported
  };

  long long def_eps = 0;
  long long chi = 0;  // of the extended complex: 1 - def_eps
  RkBounds rk;
  std::optional<long long> asserted_def_E;
  std::optional<long long> asserted_def_G;
  Conclusion conclusion = Conclusion::bounds_only;
  std::vector<std::string> notes;
};

inline const char* to_string(ObstructionReport::Conclusion c) {
  switch (c) {
    case ObstructionReport::Conclusion::holds_conditional: return "holds (conditional)";
    case ObstructionReport::Conclusion::fails: return "fails";
    case ObstructionReport::Conclusion::indeterminate: return "indeterminate";
    default: return "bounds only";
  }
}

inline ObstructionReport check_inequality(const SesSpec& s) {
  ObstructionReport report;
  report.def_eps = deficiency(s.eps);
  report.chi = 1 - report.def_eps;
  report.rk = rk_bounds(s);
  report.asserted_def_E = s.asserted_def_E;
  report.asserted_def_G = s.asserted_def_G;
  report.notes.push_back("chi of the extended complex = 1 - Def(presentation) = " +
                         std::to_string(report.chi));

  if (!s.asserted_def_E.has_value() || !s.asserted_def_G.has_value()) {
    report.conclusion = ObstructionReport::Conclusion::bounds_only;
    report.notes.push_back(
        "bounds, not group deficiencies: assert defE and defG to evaluate the inequality");
    return report;
  }
  const long long def_e = *s.asserted_def_E;
  const long long def_g = *s.asserted_def_G;

  if (report.rk.upper + def_g < def_e) {
    report.conclusion = ObstructionReport::Conclusion::holds_conditional;
    report.notes.push_back("rk + Def(G) < Def(E) holds for every rk within bounds (" +
                           std::to_string(report.rk.upper) + " + " + std::to_string(def_g) +
                           " < " + std::to_string(def_e) + "), conditional on the asserted " +
                           "deficiencies");
  } else if (report.rk.lower + def_g >= def_e) {
    report.conclusion = ObstructionReport::Conclusion::fails;
    report.notes.push_back("no obstruction exhibited: rk + Def(G) < Def(E) fails even at " +
                           std::string("the lower bound (") + std::to_string(report.rk.lower) +
                           " + " + std::to_string(def_g) + " >= " + std::to_string(def_e) + ")");
  } else {
    report.conclusion = ObstructionReport::Conclusion::indeterminate;
    report.notes.push_back("inequality undecided: depends on where rk falls in [" +
                           std::to_string(report.rk.lower) + ", " +
                           std::to_string(report.rk.upper) + "]");
  }

  if (def_e > def_g && report.def_eps == def_e) {
    report.notes.push_back(
        "minimal presentation chain: for any presentation of the quotient with deficiency at "
        "most " +
        std::to_string(def_g) + ", chi of its complex is at least " +
        std::to_string(1 - def_g) + " > " + std::to_string(report.chi) +
        " = chi of the extended complex here");
  }
  return report;
}

/// The Euler-characteristic witness built from the sequence data: kill the
/// kernel words, after certifying that the subgroup they cut out is perfect.
struct CandidateReport {
  PlusComplex complex;
  PerfectnessCertificate certificate;
  long long def_eps = 0;
  long long chi = 0;
};

inline CandidateReport construct_candidate(const SesSpec& s,
                                           std::size_t max_cosets = kDefaultMaxCosets) {
  CandidateReport report;
  const SubgroupPresentation sp = reidemeister_schreier(s.eps, s.quotient);
  report.certificate = is_perfect(sp);
  if (!report.certificate.perfect)
    throw ValidationError("kernel is not perfect (first homology " +
                          report.certificate.h1.to_string() +
                          "); the construction needs a perfect kernel");
  report.complex = build_plus_complex(s.eps, s.quotient, s.kernel, max_cosets);
  report.complex.perfectness_verified = true;
  report.def_eps = deficiency(s.eps);
  report.chi = 1 - report.def_eps;
  if (euler_characteristic(report.complex.full.ranks) != report.chi)
    throw ValidationError("internal: candidate Euler characteristic mismatch");
  return report;
}

/// Parse a sequence spec: a presentation, then "kernel:" (with optional
/// decomp lines), then optional "assert defE: n" / "assert defG: n" lines.
/// The quotient is enumerated from the presentation plus kernel words.
inline SesSpec parse_ses_spec(std::string_view text,
                              std::size_t max_cosets = kDefaultMaxCosets) {
  detail::PresentationParser p(text);
  SesSpec s;
  s.eps = p.parse_header_and_relators();
  if (!p.at_end() && p.lexer().peek().kind == detail::Token::Ident &&
      p.lexer().peek().text == "kernel")
    s.kernel = detail::parse_kernel_sections(p, s.eps);
  while (!p.at_end()) {
    p.expect_keyword("assert");
    const detail::Token name = p.lexer().take();
    if (name.kind != detail::Token::Ident)
      throw ParseError("expected defE or defG after 'assert'", name.pos);
    p.expect(detail::Token::Colon, "':' after assert name");
    const long long value = p.take_integer();
    if (name.text == "defE") {
      if (s.asserted_def_E.has_value())
        throw ParseError("duplicate assert defE", name.pos);
      s.asserted_def_E = value;
    } else if (name.text == "defG") {
      if (s.asserted_def_G.has_value())
        throw ParseError("duplicate assert defG", name.pos);
      s.asserted_def_G = value;
    } else {
      throw ParseError("unknown assertion '" + name.text + "' (expected defE or defG)",
                       name.pos);
    }
  }
  s.kernel.validate(s.eps);

  Presentation quotiented = s.eps;
  for (const Word& k : s.kernel.kernel_words) quotiented.relators.push_back(k);
  s.quotient = share(todd_coxeter(quotiented, max_cosets));
  return s;
}

}  // namespace plusctl
