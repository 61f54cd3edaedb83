#pragma once

// Smith normal form over the integers with full transform tracking, plus the
// exact linear solver built on it.  Arbitrary precision throughout: pivot
// growth in intermediate steps overflows fixed-width integers even for small
// inputs, so all arithmetic is on cpp_int.

#include <cstdlib>
#include <optional>
#include <utility>
#include <vector>

#include "plusctl/intmat.hpp"

namespace plusctl {

/// Decomposition left * M * right == diag(diagonal), with left and right
/// unimodular.  The diagonal is a divisibility chain d1 | d2 | ... with all
/// entries nonnegative and zeros trailing.  right_inv is maintained alongside
/// right so callers can change basis into kernel coordinates exactly.
struct SmithNormalForm {
  std::vector<Int> diagonal;
  IntMatrix left, right, right_inv;
  std::size_t rank = 0;  // count of nonzero diagonal entries
};

namespace detail {

struct SnfWork {
  IntMatrix a, l, r, rinv;

  void row_swap(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a.cols; ++c) std::swap(a.at(i, c), a.at(j, c));
    for (std::size_t c = 0; c < l.cols; ++c) std::swap(l.at(i, c), l.at(j, c));
  }

  void row_addmul(std::size_t i, std::size_t j, const Int& q) {
    // row_i -= q * row_j
    if (q == 0) return;
    for (std::size_t c = 0; c < a.cols; ++c) a.at(i, c) -= q * a.at(j, c);
    for (std::size_t c = 0; c < l.cols; ++c) l.at(i, c) -= q * l.at(j, c);
  }

  void row_negate(std::size_t i) {
    for (std::size_t c = 0; c < a.cols; ++c) a.at(i, c) = -a.at(i, c);
    for (std::size_t c = 0; c < l.cols; ++c) l.at(i, c) = -l.at(i, c);
  }

  void col_swap(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r0 = 0; r0 < a.rows; ++r0) std::swap(a.at(r0, i), a.at(r0, j));
    for (std::size_t r0 = 0; r0 < r.rows; ++r0) std::swap(r.at(r0, i), r.at(r0, j));
    for (std::size_t c = 0; c < rinv.cols; ++c) std::swap(rinv.at(i, c), rinv.at(j, c));
  }

  void col_addmul(std::size_t i, std::size_t j, const Int& q) {
    // col_i -= q * col_j; the inverse transform adds q * row_i to row_j
    if (q == 0) return;
    for (std::size_t r0 = 0; r0 < a.rows; ++r0) a.at(r0, i) -= q * a.at(r0, j);
    for (std::size_t r0 = 0; r0 < r.rows; ++r0) r.at(r0, i) -= q * r.at(r0, j);
    for (std::size_t c = 0; c < rinv.cols; ++c) rinv.at(j, c) += q * rinv.at(i, c);
  }

  // Least nonzero |entry| in the block from (t,t); ties to lowest row, then
  // lowest column.  Returns false when the block is all zero.
  bool find_pivot(std::size_t t, std::size_t& pi, std::size_t& pj) const {
    bool found = false;
    Int best;
    for (std::size_t i = t; i < a.rows; ++i)
      for (std::size_t j = t; j < a.cols; ++j) {
        const Int& x = a.at(i, j);
        if (x == 0) continue;
        Int ax = x < 0 ? Int(-x) : x;
        if (!found || ax < best) {
          found = true;
          best = std::move(ax);
          pi = i;
          pj = j;
        }
      }
    return found;
  }

  // Clear row t and column t outside the pivot, repicking the globally
  // smallest pivot after every sweep.  The pivot magnitude is nonincreasing
  // and drops whenever a division leaves a remainder, so this terminates.
  bool eliminate_at(std::size_t t) {
    while (true) {
      std::size_t pi = t, pj = t;
      if (!find_pivot(t, pi, pj)) return false;
      row_swap(t, pi);
      col_swap(t, pj);
      for (std::size_t i = t + 1; i < a.rows; ++i)
        if (a.at(i, t) != 0) row_addmul(i, t, a.at(i, t) / a.at(t, t));
      for (std::size_t j = t + 1; j < a.cols; ++j)
        if (a.at(t, j) != 0) col_addmul(j, t, a.at(t, j) / a.at(t, t));
      bool clear = true;
      for (std::size_t i = t + 1; i < a.rows && clear; ++i)
        if (a.at(i, t) != 0) clear = false;
      for (std::size_t j = t + 1; j < a.cols && clear; ++j)
        if (a.at(t, j) != 0) clear = false;
      if (clear) return true;
    }
  }
};

}  // namespace detail

inline SmithNormalForm smith_normal_form(const IntMatrix& m) {
  detail::SnfWork w;
  w.a = m;
  w.l = IntMatrix::identity(m.rows);
  w.r = IntMatrix::identity(m.cols);
  w.rinv = IntMatrix::identity(m.cols);

  const std::size_t k = m.rows < m.cols ? m.rows : m.cols;
  std::size_t rank = 0;
  for (std::size_t t = 0; t < k; ++t) {
    if (!w.eliminate_at(t)) break;
    ++rank;
  }

  // Enforce the divisibility chain d_t | d_j by folding the offender into
  // column t and re-diagonalizing the trailing block.  |d_t| strictly drops
  // on every fold (it becomes at most gcd(d_t, d_j)), so the rescan stops.
  for (std::size_t t = 0; t + 1 < rank; ++t) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t j = t + 1; j < rank; ++j) {
        if (w.a.at(j, j) % w.a.at(t, t) != 0) {
          w.col_addmul(t, j, Int(-1));
          for (std::size_t tt = t; tt < k; ++tt)
            if (!w.eliminate_at(tt)) break;
          changed = true;
          break;
        }
      }
    }
  }

  for (std::size_t t = 0; t < rank; ++t)
    if (w.a.at(t, t) < 0) w.row_negate(t);

  SmithNormalForm out;
  out.diagonal.resize(k);
  for (std::size_t t = 0; t < k; ++t) out.diagonal[t] = w.a.at(t, t);
  out.left = std::move(w.l);
  out.right = std::move(w.r);
  out.right_inv = std::move(w.rinv);
  out.rank = rank;
  return out;
}

inline std::size_t integer_rank(const IntMatrix& m) { return smith_normal_form(m).rank; }

/// True iff m is square with determinant +-1 (all invariant factors 1).
inline bool is_unimodular(const IntMatrix& m) {
  if (m.rows != m.cols) return false;
  const SmithNormalForm s = smith_normal_form(m);
  if (s.rank != m.rows) return false;
  for (const Int& d : s.diagonal)
    if (d != 1) return false;
  return true;
}

/// Solve a * x = b exactly over the integers from a precomputed decomposition
/// of a.  Returns nullopt when no integral solution exists.
inline std::optional<std::vector<Int>> solve_from_snf(const SmithNormalForm& s,
                                                      const std::vector<Int>& b) {
  if (s.left.cols != b.size()) throw ValidationError("solve dimension mismatch");
  const std::vector<Int> c = s.left * b;
  std::vector<Int> y(s.right.rows, Int(0));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < s.diagonal.size() && s.diagonal[i] != 0) {
      if (c[i] % s.diagonal[i] != 0) return std::nullopt;
      y[i] = c[i] / s.diagonal[i];
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return s.right * y;
}

inline std::optional<std::vector<Int>> solve_integer(const IntMatrix& a,
                                                     const std::vector<Int>& b) {
  return solve_from_snf(smith_normal_form(a), b);
}

/// Columnwise solve a * X = B; one decomposition shared across columns.
inline std::optional<IntMatrix> solve_integer_matrix(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows != b.rows) throw ValidationError("solve dimension mismatch");
  const SmithNormalForm s = smith_normal_form(a);
  IntMatrix x(a.cols, b.cols);
  std::vector<Int> col(b.rows);
  for (std::size_t j = 0; j < b.cols; ++j) {
    for (std::size_t i = 0; i < b.rows; ++i) col[i] = b.at(i, j);
    auto sol = solve_from_snf(s, col);
    if (!sol) return std::nullopt;
    for (std::size_t i = 0; i < a.cols; ++i) x.at(i, j) = (*sol)[i];
  }
  return x;
}

}  // namespace plusctl
