#pragma once

// Elements and matrices over the integral group ring of a finite group.
// Coefficients are kept in an ordered map keyed by element id, so iteration
// order (and everything serialized from it) is deterministic.  Matrices act on
// column vectors from the left; scalars act on module coordinates from the
// right, which is why the regular specialization below uses the left-regular
// representation.

#include <map>
#include <memory>
#include <vector>

#include "plusctl/errors.hpp"
#include "plusctl/intmat.hpp"
#include "plusctl/realize.hpp"
#include "plusctl/words.hpp"

namespace plusctl {

/// An element of Z[G]; keys are element ids of a FiniteRealization, values
/// are nonzero coefficients.
struct RingElement {
  std::map<int, Int> terms;

  static RingElement zero() { return {}; }

  /// The basis element for one group element.
  static RingElement unit(int id) {
    RingElement e;
    e.terms.emplace(id, 1);
    return e;
  }

  /// c times the identity of the group.
  static RingElement scalar(Int c) {
    RingElement e;
    if (c != 0) e.terms.emplace(0, std::move(c));
    return e;
  }

  bool is_zero() const { return terms.empty(); }

  Int coeff(int id) const {
    const auto it = terms.find(id);
    return it == terms.end() ? Int(0) : it->second;
  }

  /// Add c at id, dropping the term if it cancels to zero.
  void add_term(int id, const Int& c) {
    if (c == 0) return;
    const auto [it, fresh] = terms.try_emplace(id, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }

  friend bool operator==(const RingElement& a, const RingElement& b) { return a.terms == b.terms; }
  friend bool operator!=(const RingElement& a, const RingElement& b) { return !(a == b); }
};

inline RingElement operator+(const RingElement& a, const RingElement& b) {
  RingElement r = a;
  for (const auto& [id, c] : b.terms) r.add_term(id, c);
  return r;
}

inline RingElement operator-(const RingElement& a) {
  RingElement r;
  for (const auto& [id, c] : a.terms) r.terms.emplace(id, -c);
  return r;
}

inline RingElement operator-(const RingElement& a, const RingElement& b) { return a + (-b); }

inline RingElement operator*(const Int& c, const RingElement& a) {
  RingElement r;
  if (c != 0)
    for (const auto& [id, x] : a.terms) r.terms.emplace(id, c * x);
  return r;
}

/// Product in Z[G]; needs the group law.
inline RingElement ring_mul(const RingElement& a, const RingElement& b,
                            const FiniteRealization& g) {
  RingElement r;
  for (const auto& [x, cx] : a.terms)
    for (const auto& [y, cy] : b.terms) r.add_term(g.mult(x, y), cx * cy);
  return r;
}

/// The augmentation Z[G] -> Z, sum of coefficients.  A ring homomorphism.
inline Int augmentation(const RingElement& a) {
  Int s = 0;
  for (const auto& [id, c] : a.terms) s += c;
  return s;
}

/// The image of a word as a ring unit.
inline RingElement ring_unit_of_word(const Word& w, const FiniteRealization& g) {
  return RingElement::unit(g.image_of_word(w));
}

/// Dense matrix over Z[G].  The realization travels with the matrix because
/// entry multiplication needs the group law.
struct RingMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<RingElement> data;
  RealizationPtr realization;

  RingMatrix() = default;
  RingMatrix(std::size_t r, std::size_t c, RealizationPtr g)
      : rows(r), cols(c), data(r * c), realization(std::move(g)) {
    if (!realization) throw ValidationError("ring matrix needs a realization");
  }

  static RingMatrix identity(std::size_t n, RealizationPtr g) {
    RingMatrix m(n, n, std::move(g));
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = RingElement::unit(0);
    return m;
  }

  RingElement& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const RingElement& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  bool is_zero() const {
    for (const auto& e : data)
      if (!e.is_zero()) return false;
    return true;
  }

  const FiniteRealization& group() const { return *realization; }

  friend bool operator==(const RingMatrix& a, const RingMatrix& b) {
    return a.rows == b.rows && a.cols == b.cols && a.data == b.data &&
           *a.realization == *b.realization;
  }
  friend bool operator!=(const RingMatrix& a, const RingMatrix& b) { return !(a == b); }
};

namespace detail {
inline void require_same_group(const RingMatrix& a, const RingMatrix& b) {
  if (!(*a.realization == *b.realization))
    throw ValidationError("ring matrices live over different groups");
}
}  // namespace detail

inline RingMatrix operator*(const RingMatrix& a, const RingMatrix& b) {
  detail::require_same_group(a, b);
  if (a.cols != b.rows) throw ValidationError("ring matrix dimension mismatch in product");
  RingMatrix c(a.rows, b.cols, a.realization);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      const RingElement& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols; ++j) {
        const RingElement& bkj = b.at(k, j);
        if (bkj.is_zero()) continue;
        const RingElement prod = ring_mul(aik, bkj, *a.realization);
        for (const auto& [id, cc] : prod.terms) c.at(i, j).add_term(id, cc);
      }
    }
  return c;
}

inline RingMatrix operator+(const RingMatrix& a, const RingMatrix& b) {
  detail::require_same_group(a, b);
  if (a.rows != b.rows || a.cols != b.cols)
    throw ValidationError("ring matrix dimension mismatch in sum");
  RingMatrix c = a;
  for (std::size_t i = 0; i < a.data.size(); ++i)
    for (const auto& [id, cc] : b.data[i].terms) c.data[i].add_term(id, cc);
  return c;
}

inline RingMatrix operator-(const RingMatrix& a, const RingMatrix& b) {
  detail::require_same_group(a, b);
  if (a.rows != b.rows || a.cols != b.cols)
    throw ValidationError("ring matrix dimension mismatch in difference");
  RingMatrix c = a;
  for (std::size_t i = 0; i < a.data.size(); ++i)
    for (const auto& [id, cc] : b.data[i].terms) c.data[i].add_term(id, -cc);
  return c;
}

/// Entrywise augmentation: the specialization through the trivial module.
inline IntMatrix augment(const RingMatrix& m) {
  IntMatrix r(m.rows, m.cols);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) r.at(i, j) = augmentation(m.at(i, j));
  return r;
}

/// Left-regular representation of a single ring element: the |G| x |G|
/// integer matrix with L(s)[g*h, h] = s_g, i.e. L(s)[h', h] = s(h' * h^-1).
/// L is a ring homomorphism: L(s*t) == L(s) * L(t).
inline IntMatrix left_regular_block(const RingElement& s, const FiniteRealization& g) {
  const std::size_t n = static_cast<std::size_t>(g.order());
  IntMatrix m(n, n);
  for (const auto& [x, c] : s.terms)
    for (int h = 0; h < g.order(); ++h)
      m.at(static_cast<std::size_t>(g.mult(x, h)), static_cast<std::size_t>(h)) = c;
  return m;
}

/// Right-multiplication matrix: Rt(s)[g*x, g] = s_x, i.e. Rt(s)[h, g] =
/// s(g^-1 * h).  As v |-> Rt(s) v this is x |-> x * s in coordinates, so it is
/// an anti-homomorphism: Rt(s*t) == Rt(t) * Rt(s).
inline IntMatrix right_regular_block(const RingElement& s, const FiniteRealization& g) {
  const std::size_t n = static_cast<std::size_t>(g.order());
  IntMatrix m(n, n);
  for (const auto& [x, c] : s.terms)
    for (int h = 0; h < g.order(); ++h)
      m.at(static_cast<std::size_t>(g.mult(h, x)), static_cast<std::size_t>(h)) = c;
  return m;
}

/// Blow a ring matrix up to its integer form under the left-regular
/// representation: each entry becomes a |G| x |G| block.  Row i*|G| + h'
/// corresponds to basis element h' of module coordinate i.
inline IntMatrix regular_matrix(const RingMatrix& m) {
  const FiniteRealization& g = m.group();
  const std::size_t n = static_cast<std::size_t>(g.order());
  IntMatrix r(m.rows * n, m.cols * n);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j)
      for (const auto& [x, c] : m.at(i, j).terms)
        for (int h = 0; h < g.order(); ++h)
          r.at(i * n + static_cast<std::size_t>(g.mult(x, h)),
               j * n + static_cast<std::size_t>(h)) = c;
  return r;
}

}  // namespace plusctl
