#pragma once

// Bounded chain complexes of finitely generated free modules over Z[G],
// their integer specializations, and homology via Smith normal form.
//
// Complexes are indexed C_0 .. C_top; boundary k maps C_k to C_(k-1) and is
// stored as a ranks[k-1] x ranks[k] matrix acting on column vectors from the
// left.  Homology in degrees outside the stored range is reported trivial.

#include <optional>
#include <string>
#include <vector>

#include "plusctl/errors.hpp"
#include "plusctl/groupring.hpp"
#include "plusctl/intmat.hpp"
#include "plusctl/snf.hpp"

namespace plusctl {

/// Which coefficient module to specialize through.
enum class Coefficients {
  trivial,  // augmentation: Z as a Z[G]-module
  regular,  // Z[G] itself: the underlying integral chain complex
};

inline const char* to_string(Coefficients c) {
  return c == Coefficients::trivial ? "trivial" : "regular";
}

/// Chain complex of free Z[G]-modules.
struct AlgebraicComplex {
  RealizationPtr realization;
  std::vector<std::size_t> ranks;     // ranks[k] = rank of C_k
  std::vector<RingMatrix> boundaries; // boundaries[k-1] = boundary map C_k -> C_(k-1)

  std::size_t top_degree() const { return ranks.empty() ? 0 : ranks.size() - 1; }

  const RingMatrix& boundary(std::size_t k) const { return boundaries.at(k - 1); }
  RingMatrix& boundary(std::size_t k) { return boundaries.at(k - 1); }

  /// Structural invariants: matching dimensions, matching group, and the
  /// chain condition boundary(k) * boundary(k+1) == 0.
  void validate() const {
    if (!realization) throw ValidationError("complex has no realization");
    if (ranks.empty()) throw ValidationError("complex has no chain groups");
    if (boundaries.size() + 1 != ranks.size())
      throw ValidationError("complex needs exactly one boundary per adjacent degree pair");
    for (std::size_t k = 1; k < ranks.size(); ++k) {
      const RingMatrix& d = boundary(k);
      if (d.rows != ranks[k - 1] || d.cols != ranks[k])
        throw ValidationError("boundary dimensions disagree with chain ranks at degree " +
                              std::to_string(k));
      if (!(*d.realization == *realization))
        throw ValidationError("boundary at degree " + std::to_string(k) +
                              " lives over a different group");
    }
    for (std::size_t k = 1; k + 1 < ranks.size(); ++k)
      if (!(boundary(k) * boundary(k + 1)).is_zero())
        throw ValidationError("boundary composition is nonzero at degree " + std::to_string(k));
  }
};

/// Chain complex of free abelian groups.
struct IntegerComplex {
  std::vector<std::size_t> ranks;
  std::vector<IntMatrix> boundaries;

  std::size_t top_degree() const { return ranks.empty() ? 0 : ranks.size() - 1; }

  /// Boundary map C_k -> C_(k-1), a zero map of the right shape off the ends.
  IntMatrix boundary_or_zero(long long k) const {
    if (k >= 1 && k <= static_cast<long long>(boundaries.size()))
      return boundaries[static_cast<std::size_t>(k - 1)];
    const auto rank_at = [&](long long d) -> std::size_t {
      return d >= 0 && d < static_cast<long long>(ranks.size())
                 ? ranks[static_cast<std::size_t>(d)]
                 : 0;
    };
    return IntMatrix(rank_at(k - 1), rank_at(k));
  }

  void validate() const {
    if (ranks.empty()) throw ValidationError("complex has no chain groups");
    if (boundaries.size() + 1 != ranks.size())
      throw ValidationError("complex needs exactly one boundary per adjacent degree pair");
    for (std::size_t k = 1; k < ranks.size(); ++k)
      if (boundaries[k - 1].rows != ranks[k - 1] || boundaries[k - 1].cols != ranks[k])
        throw ValidationError("boundary dimensions disagree with chain ranks at degree " +
                              std::to_string(k));
    for (std::size_t k = 1; k + 1 < ranks.size(); ++k)
      if (!(boundaries[k - 1] * boundaries[k]).is_zero())
        throw ValidationError("boundary composition is nonzero at degree " + std::to_string(k));
  }
};

/// Specialize a Z[G]-complex to an integer complex.  Trivial coefficients
/// apply the augmentation entrywise; regular coefficients expand each entry
/// through the left-regular representation, which is exactly the complex of
/// underlying abelian groups.
inline IntegerComplex specialize(const AlgebraicComplex& c, Coefficients coeffs) {
  IntegerComplex r;
  const std::size_t n = static_cast<std::size_t>(c.realization->order());
  for (const std::size_t rk : c.ranks)
    r.ranks.push_back(coeffs == Coefficients::trivial ? rk : rk * n);
  for (const RingMatrix& d : c.boundaries)
    r.boundaries.push_back(coeffs == Coefficients::trivial ? augment(d) : regular_matrix(d));
  return r;
}

/// A finitely generated abelian group: free part plus invariant factors
/// (each > 1, each dividing the next).
struct HomologyGroup {
  long long free_rank = 0;
  std::vector<Int> torsion;

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }

  std::string to_string() const {
    if (is_trivial()) return "0";
    std::string s;
    if (free_rank == 1) s = "Z";
    else if (free_rank > 1) s = "Z^" + std::to_string(free_rank);
    for (const Int& t : torsion) {
      if (!s.empty()) s += " + ";
      s += "Z/" + t.str();
    }
    return s;
  }

  friend bool operator==(const HomologyGroup& a, const HomologyGroup& b) {
    return a.free_rank == b.free_rank && a.torsion == b.torsion;
  }
  friend bool operator!=(const HomologyGroup& a, const HomologyGroup& b) { return !(a == b); }
};

/// Homology of an integer complex at one degree: ker(boundary out) modulo
/// im(boundary in), computed in kernel coordinates from one Smith form.
inline HomologyGroup homology(const IntegerComplex& c, long long degree) {
  if (degree < 0 || degree >= static_cast<long long>(c.ranks.size())) return {};
  const IntMatrix a = c.boundary_or_zero(degree);      // C_deg -> C_(deg-1)
  const IntMatrix b = c.boundary_or_zero(degree + 1);  // C_(deg+1) -> C_deg
  const std::size_t dim = c.ranks[static_cast<std::size_t>(degree)];
  const SmithNormalForm sa = smith_normal_form(a);
  const std::size_t kdim = dim - sa.rank;  // kernel rank of the outgoing map
  // Kernel coordinates: columns sa.rank.. of sa.right span ker(a), and
  // sa.right_inv converts ambient coordinates into that basis.
  const IntMatrix yfull = sa.right_inv * b;
  IntMatrix y(kdim, b.cols);
  for (std::size_t i = 0; i < kdim; ++i)
    for (std::size_t j = 0; j < b.cols; ++j) y.at(i, j) = yfull.at(sa.rank + i, j);
  // Rows above the kernel block must vanish because a * b == 0.
  for (std::size_t i = 0; i < sa.rank; ++i)
    for (std::size_t j = 0; j < b.cols; ++j)
      if (yfull.at(i, j) != 0)
        throw ValidationError("homology requested where boundaries do not compose to zero");
  const SmithNormalForm sy = smith_normal_form(y);
  HomologyGroup h;
  h.free_rank = static_cast<long long>(kdim) - static_cast<long long>(sy.rank);
  for (std::size_t i = 0; i < sy.rank; ++i)
    if (sy.diagonal[i] > 1) h.torsion.push_back(sy.diagonal[i]);
  return h;
}

/// Homology of a Z[G]-complex with the chosen coefficients.
inline HomologyGroup homology(const AlgebraicComplex& c, Coefficients coeffs, long long degree) {
  return homology(specialize(c, coeffs), degree);
}

/// Alternating sum of ranks.  For Z[G]-complexes this is the module-rank
/// count, independent of the group order.
inline long long euler_characteristic(const std::vector<std::size_t>& ranks) {
  long long chi = 0;
  for (std::size_t i = 0; i < ranks.size(); ++i)
    chi += (i % 2 == 0 ? 1 : -1) * static_cast<long long>(ranks[i]);
  return chi;
}

/// Exactness at a degree, checked on the underlying integral complex (the
/// regular specialization is that complex verbatim).
inline bool exactness_check(const AlgebraicComplex& c, long long degree) {
  return homology(c, Coefficients::regular, degree).is_trivial();
}

/// Search for a Z[G]-linear left inverse: phi with phi * d == identity, where
/// d is the boundary C_top -> C_(top-1) handed in directly.  Returns the
/// witness phi (top_rank x lower_rank) or nothing when no integral solution
/// exists.  The module equations are turned into one integer system through
/// right-multiplication blocks, one block column per unknown entry of phi.
inline std::optional<RingMatrix> split_injection_test(const RingMatrix& d) {
  const FiniteRealization& g = *d.realization;
  const std::size_t n = static_cast<std::size_t>(g.order());
  const std::size_t r = d.cols;   // rank of the top module
  const std::size_t m = d.rows;   // rank of the module below
  if (r == 0) return RingMatrix(0, m, d.realization);
  // Unknown vector stacks coordinates of phi_i0, phi_i1, ... for one row i of
  // phi; the same coefficient matrix serves every row.
  IntMatrix s(r * n, m * n);
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t j = 0; j < m; ++j) {
      const IntMatrix block = right_regular_block(d.at(j, k), g);
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
          if (block.at(u, v) != 0) s.at(k * n + u, j * n + v) = block.at(u, v);
    }
  IntMatrix rhs(r * n, r);
  for (std::size_t i = 0; i < r; ++i) rhs.at(i * n, i) = 1;  // identity unit in block i
  const auto sol = solve_integer_matrix(s, rhs);
  if (!sol) return std::nullopt;
  RingMatrix phi(r, m, d.realization);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t h = 0; h < n; ++h)
        phi.at(i, j).add_term(static_cast<int>(h), sol->at(j * n + h, i));
  if (!(phi * d == RingMatrix::identity(r, d.realization)))
    throw ValidationError("internal: splitting witness fails verification");
  return phi;
}

}  // namespace plusctl
